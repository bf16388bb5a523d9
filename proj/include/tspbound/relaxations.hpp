// The three convex relaxations of the symmetric TSP assembled as conic
// programs, together with the feasibility and dominance certificates and
// the spanning-tree minor inequality.
#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "tspbound/circulant.hpp"
#include "tspbound/conic.hpp"
#include "tspbound/instances.hpp"

namespace tspbound {

/// The tuple (X^(1), ..., X^(d)) of the multi-block relaxation's matrix
/// variables, d = floor(n/2).
struct MultiBlockPoint {
  int n = 0;
  int d = 0;
  std::vector<Matrix> blocks;  // d symmetric n x n matrices, X^(1)..X^(d)
};

/// Nonnegative weights aggregating the multi-block LMIs into the single-LMI
/// relaxation's matrix inequality; index 0 pairs with I + sum_k X^(k).
struct AggregationWeights {
  int n = 0;
  Vector x;  // length d + 1
};

/// The lifted variable of the QAP-style relaxation: Y of order n^2 with its
/// border vector y (the diagonal of Y at feasible points).
struct LiftedPoint {
  int n = 0;
  Vector y;  // length n^2
  Matrix Y;  // n^2 x n^2 symmetric
};

/// Violation measures of the lifted-point invariants: the bordered matrix
/// [[1, y'],[y, Y]] PSD, Y >= 0, diag(Y) = y, the gangster trace, and
/// trace(Y) - 2 e'y = -n.
struct LiftedPointCheck {
  double bordered_min_eigenvalue = 0.0;
  double min_entry = 0.0;
  double max_diag_deviation = 0.0;
  double gangster_trace = 0.0;
  double trace_identity_error = 0.0;

  bool pass(double tol = 1e-6) const {
    return bordered_min_eigenvalue >= -tol && min_entry >= -tol &&
           max_diag_deviation <= tol && std::abs(gangster_trace) <= tol &&
           std::abs(trace_identity_error) <= tol;
  }
};

enum class BoundMethod { NewSdp, Cvetkovic, QapSdp, HeldKarp };
std::string to_string(BoundMethod m);

/// A computed lower bound: `raw` is the certified value extracted from the
/// dual solution (b'y corrected for the exact cone violation of c - A'y,
/// hence a true lower bound up to the correction accuracy), and `rounded`
/// applies ceil(raw - 1e-6) when the instance data is integral.
struct BoundResult {
  BoundMethod method = BoundMethod::NewSdp;
  double raw = 0.0;
  double rounded = 0.0;
  bool integral_data = false;
  SolveReport report;
  double wall_seconds = 0.0;
};

double apply_rounding(double raw, bool integral_data);

/// Options shared by the relaxation builders.
struct NewSdpOptions {
  bool include_row_sums = true;  // the X^(k) e row-sum equalities
};

/// The multi-block relaxation: nonnegative variables X^(1)..X^(d) (strict
/// upper triangles), d PSD slack blocks of order n, equalities for
/// sum_k X^(k) = J - I, the d matrix inequalities
/// I + sum_k cos(2 pi i k / n) X^(k) >= 0, and the row sums.
ConicProgram build_new_sdp(const DistanceMatrix& d, const NewSdpOptions& opts = {});

/// The single-matrix relaxation: X e = 2e, diag X = 0, 0 <= X <= J and
/// 2I - X + (2 - 2 cos(2 pi / n)) (J - I) >= 0.
ConicProgram build_cvetkovic_sdp(const DistanceMatrix& d);

struct QapSdpOptions {
  int max_n = 10;  // the lifted matrix has order n^2 + 1
};

/// The lifted relaxation over Y of order n^2 (plus border): gangster zeros,
/// trace(Y) - 2 e'y = -n, diag(Y) = y, block-sum structure rows, entrywise
/// nonnegativity, and the bordered PSD constraint.
ConicProgram build_qap_sdp(const DistanceMatrix& d, const QapSdpOptions& opts = {});

/// X^(k) = A^(k): the scheme matrices of the cycle, an exact feasible point
/// whose objective value is the length of the identity tour.
MultiBlockPoint canonical_point(int n);

/// Embeds a multi-block point into build_new_sdp coordinates (nonnegative
/// variables plus the implied PSD slack values).
Vector embed_multiblock_point(const MultiBlockPoint& point, const DistanceMatrix& d,
                              const NewSdpOptions& opts = {});

/// Extracts the X^(k) blocks from a solver point of build_new_sdp.
MultiBlockPoint extract_multiblock_point(int n, const Vector& primal);

/// Extracts (y, Y) from a solver point of build_qap_sdp.
LiftedPoint extract_lifted_point(int n, const Vector& primal);
LiftedPointCheck check_lifted_point(const LiftedPoint& point);

/// Closed-form solution of A x = b with A(i,j) = cos(2 pi i j / n); odd and
/// even branches per the dominance argument.
AggregationWeights aggregation_weights(int n);

struct CvetkovicProjection {
  Matrix x;                        // the projected single matrix, X^(1)
  double max_degree_error = 0.0;   // ||X e - 2 e||_inf
  double max_diag_abs = 0.0;
  double min_entry = 0.0;
  double max_entry = 0.0;
  double lmi_min_eigenvalue = 0.0;     // of 2I - X + (2 - 2cos(2pi/n))(J - I)
  double aggregation_residual = 0.0;   // || sum_i w_i L_i - LMI ||_max
  bool pass = false;
};

/// Projects a multi-block point onto the single-matrix relaxation and
/// certifies the LMI as the nonnegative aggregation of the multi-block ones.
CvetkovicProjection project_to_cvetkovic(const MultiBlockPoint& point,
                                         double feasibility_tol = 1e-6);

struct ExtendabilityResult {
  bool feasible = false;
  SolveReport report;
  std::optional<MultiBlockPoint> witness;
};

/// Decides whether a degree-feasible symmetric matrix extends to a feasible
/// point of the multi-block relaxation with X^(1) pinned to it.
ExtendabilityResult extendability_check(const Matrix& xbar,
                                        const SolverConfig& config = {});

struct MinorCheck {
  double value = 0.0;
  bool pass = false;
};

/// det of (2I - X) with row/column 1 deleted; pass iff >= n - 1e-6.
MinorCheck minor_inequality_check(const Matrix& x);

/// Number of spanning trees via the matrix-tree theorem (exact integer
/// determinant of the reduced Laplacian).
long long spanning_tree_minor(const IntMatrix& adjacency);

/// Upper bounds on the primal blocks of the programs built here, used to
/// turn a dual solution into a certified lower bound. `nonneg_upper[i]`
/// bounds nonnegative segment i entrywise; `psd_trace[i]` bounds the trace
/// of PSD segment i.
struct BoundProfile {
  std::vector<double> nonneg_upper;
  std::vector<double> psd_trace;
};

BoundProfile new_sdp_profile(const DistanceMatrix& d, const NewSdpOptions& opts = {});
BoundProfile cvetkovic_profile(const DistanceMatrix& d);
BoundProfile qap_profile(const DistanceMatrix& d);

/// b'y minus the exact cone violation of c - A'y weighted by the profile's
/// primal bounds; a valid lower bound on the program's optimum.
double certified_lower_bound(const ConicProgram& program, const SolveReport& report,
                             const BoundProfile& profile);

/// Solves one of the SDP relaxations and packages the certified bound.
BoundResult solve_bound(BoundMethod method, const DistanceMatrix& d,
                        const SolverConfig& config = {});

}  // namespace tspbound
