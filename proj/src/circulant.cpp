#include "tspbound/circulant.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tspbound {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

CirculantCoefficients::CirculantCoefficients(int n_, Vector c_)
    : n(n_), c(std::move(c_)) {
  if (n < 3) throw std::invalid_argument("circulant: order must be at least 3");
  if (c.size() != n)
    throw std::invalid_argument("circulant: coefficient vector length " +
                                std::to_string(c.size()) +
                                " does not match order " + std::to_string(n));
}

bool CirculantCoefficients::symmetric(double tol) const {
  for (int k = 1; k < n; ++k)
    if (std::abs(c[k] - c[n - k]) > tol) return false;
  return true;
}

Matrix circulant_from_coefficients(const CirculantCoefficients& coeffs) {
  const int n = coeffs.n;
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = coeffs.c[((j - i) % n + n) % n];
  return m;
}

ComplexVector circulant_eigenvalues(const CirculantCoefficients& coeffs) {
  const int n = coeffs.n;
  ComplexVector lambda(n);
  for (int m = 0; m < n; ++m) {
    std::complex<double> acc = coeffs.c[0];
    for (int k = 1; k < n; ++k) {
      const double phi = -kTwoPi * static_cast<double>(m) * k / n;
      acc += coeffs.c[k] * std::complex<double>(std::cos(phi), std::sin(phi));
    }
    lambda[m] = acc;
  }
  return lambda;
}

Matrix basis_matrix(int n, int k) {
  if (n < 3) throw std::invalid_argument("basis_matrix: order must be at least 3");
  if (k < 0 || k > n / 2)
    throw std::invalid_argument("basis_matrix: index " + std::to_string(k) +
                                " out of range 0.." + std::to_string(n / 2));
  Vector c = Vector::Zero(n);
  if (k == 0) {
    c[0] = 2.0;
  } else if (2 * k == n) {
    c[k] = 2.0;
  } else {
    c[k] = 1.0;
    c[n - k] = 1.0;
  }
  return circulant_from_coefficients(CirculantCoefficients(n, c));
}

SchemeFamily scheme_matrices(int n) {
  if (n < 3) throw std::invalid_argument("scheme_matrices: order must be at least 3");
  SchemeFamily fam;
  fam.n = n;
  fam.d = n / 2;
  fam.matrices.reserve(fam.d + 1);
  for (int k = 0; k <= fam.d; ++k) {
    IntMatrix a = IntMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int diff = std::abs(i - j);
        if (std::min(diff, n - diff) == k) a(i, j) = 1;
      }
    fam.matrices.push_back(std::move(a));
  }
  return fam;
}

SchemeAxiomReport verify_scheme_axioms(const std::vector<IntMatrix>& matrices,
                                       double span_tol) {
  SchemeAxiomReport rep;
  if (matrices.empty()) return rep;
  const int t = static_cast<int>(matrices.size());
  const Eigen::Index n = matrices[0].rows();
  for (const auto& b : matrices)
    if (b.rows() != n || b.cols() != n)
      throw std::invalid_argument("verify_scheme_axioms: matrices must be square of equal order");

  rep.zero_one_and_identity = matrices[0].isIdentity();
  for (const auto& b : matrices)
    for (Eigen::Index i = 0; i < n && rep.zero_one_and_identity; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (b(i, j) != 0 && b(i, j) != 1) {
          rep.zero_one_and_identity = false;
          break;
        }

  IntMatrix sum = IntMatrix::Zero(n, n);
  for (const auto& b : matrices) sum += b;
  rep.sums_to_all_ones = (sum.array() == 1).all();

  rep.transpose_closed = true;
  for (const auto& b : matrices) {
    IntMatrix bt = b.transpose();
    bool found = false;
    for (const auto& other : matrices)
      if (bt == other) {
        found = true;
        break;
      }
    if (!found) {
      rep.transpose_closed = false;
      break;
    }
  }

  rep.commuting = true;
  for (int i = 0; i < t && rep.commuting; ++i)
    for (int j = i + 1; j < t; ++j)
      if (matrices[i] * matrices[j] != matrices[j] * matrices[i]) {
        rep.commuting = false;
        break;
      }

  // Least squares of vec(B_i B_j) against the span of the family.
  Matrix basis(n * n, t);
  for (int k = 0; k < t; ++k)
    basis.col(k) = matrices[k].cast<double>().reshaped();
  Eigen::ColPivHouseholderQR<Matrix> qr(basis);
  rep.products_in_span = true;
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) {
      Matrix prod = (matrices[i] * matrices[j]).cast<double>();
      Vector v = prod.reshaped();
      Vector coef = qr.solve(v);
      double resid = (basis * coef - v).cwiseAbs().maxCoeff();
      rep.max_span_residual = std::max(rep.max_span_residual, resid);
      if (resid > span_tol) rep.products_in_span = false;
    }
  return rep;
}

Matrix eigenvalue_table(int n) {
  if (n < 3) throw std::invalid_argument("eigenvalue_table: order must be at least 3");
  const int d = n / 2;
  Matrix t(n, d + 1);
  t.col(0).setOnes();
  for (int k = 1; k <= d; ++k) {
    const bool antipodal = (2 * k == n);
    for (int m = 0; m < n; ++m)
      t(m, k) = antipodal ? (m % 2 == 0 ? 1.0 : -1.0)
                          : 2.0 * std::cos(kTwoPi * m * k / n);
  }
  return t;
}

FourierMatrix::FourierMatrix(int n_) : n(n_), entries(n_, n_) {
  if (n < 1) throw std::invalid_argument("FourierMatrix: order must be positive");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double phi = -kTwoPi * static_cast<double>(i) * j / n;
      entries(i, j) = scale * std::complex<double>(std::cos(phi), std::sin(phi));
    }
}

}  // namespace tspbound
