// Circulant-matrix algebra, the discrete Fourier eigenbasis, and the
// association scheme of the n-cycle, with analytic eigenvalue formulas.
#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tspbound {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// First-entry coefficients (c_0, ..., c_{n-1}) of an n x n circulant matrix
/// M with M(i,j) = c[(j - i) mod n].
struct CirculantCoefficients {
  int n = 0;
  Vector c;

  CirculantCoefficients(int n_, Vector c_);

  /// True iff c_k == c_{n-k} for k = 1..n-1, i.e. the matrix is symmetric.
  bool symmetric(double tol = 0.0) const;
};

/// The distance matrices A^(0) = I, A^(1), ..., A^(d) of the n-cycle, where
/// d = floor(n/2) and A^(k)(i,j) = 1 iff the cycle distance of i and j is k.
/// All entries are exact integers.
struct SchemeFamily {
  int n = 0;
  int d = 0;
  std::vector<IntMatrix> matrices;  // size d + 1, indexed by distance
};

/// Unitary DFT matrix Q with Q(i,j) = exp(-2*pi*sqrt(-1)*i*j/n) / sqrt(n).
/// Its columns are a shared eigenbasis of every circulant matrix of order n;
/// column m carries the eigenvalue with Fourier index m.
struct FourierMatrix {
  int n = 0;
  ComplexMatrix entries;

  explicit FourierMatrix(int n_);
};

/// Assembles the dense circulant matrix from its coefficient vector.
Matrix circulant_from_coefficients(const CirculantCoefficients& coeffs);

/// Analytic eigenvalues lambda_m = c_0 + sum_k c_k exp(-2*pi*i*m*k/n),
/// ordered by Fourier index m = 0..n-1.
ComplexVector circulant_eigenvalues(const CirculantCoefficients& coeffs);

/// Basis matrix C^(k) of the symmetric circulants: the 0/1 circulant with
/// c_k = c_{n-k} = 1 for 0 < k < n/2, scaled to C^(0) = 2I at k = 0 and to
/// twice the antipodal matching at k = n/2 (n even). With this scaling
/// every C^(k) has row sums 2 and eigenvalues 2*cos(2*pi*m*k/n).
Matrix basis_matrix(int n, int k);

/// Distance matrices of the n-cycle (0/1 convention, no doubling).
SchemeFamily scheme_matrices(int n);

/// Verdict of verify_scheme_axioms, one flag per axiom.
struct SchemeAxiomReport {
  bool zero_one_and_identity = false;  // all 0/1 entries and B_0 == I
  bool sums_to_all_ones = false;       // sum of the family equals J
  bool transpose_closed = false;       // each B_i^T is some B_j
  bool commuting = false;              // B_i B_j == B_j B_i
  bool products_in_span = false;       // B_i B_j in span(B_0..B_t)
  double max_span_residual = 0.0;      // worst least-squares residual seen

  bool all() const {
    return zero_one_and_identity && sums_to_all_ones && transpose_closed &&
           commuting && products_in_span;
  }
};

/// Checks the five association-scheme axioms on an arbitrary family of square
/// 0/1 matrices. Failures are reported, never thrown.
SchemeAxiomReport verify_scheme_axioms(const std::vector<IntMatrix>& matrices,
                                       double span_tol = 1e-9);

/// T(m, k) = lambda_m(A^(k)) for m = 0..n-1, k = 0..d, in the shared Fourier
/// ordering: T(m, k) = 2*cos(2*pi*m*k/n) for 1 <= k <= floor((n-1)/2),
/// T(m, n/2) = (-1)^m when n is even, T(m, 0) = 1.
Matrix eigenvalue_table(int n);

}  // namespace tspbound
