// Linear-objective problems over products of free, nonnegative, and
// positive-semidefinite cones with linear equality constraints, and the
// primal-dual interior-point solver for them. LP is the PSD-free case.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace tspbound {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

enum class ConeKind { Free, Nonnegative, Psd };

/// One segment of the variable vector. For Free/Nonnegative, `dim` entries;
/// for Psd, the scaled upper-triangle vectorization (svec) of a symmetric
/// matrix of order `order`, so dim = order*(order+1)/2.
struct ConeSegment {
  ConeKind kind = ConeKind::Nonnegative;
  int dim = 0;
  int order = 0;  // PSD only

  static ConeSegment free(int dim) { return {ConeKind::Free, dim, 0}; }
  static ConeSegment nonnegative(int dim) { return {ConeKind::Nonnegative, dim, 0}; }
  static ConeSegment psd(int order) {
    return {ConeKind::Psd, order * (order + 1) / 2, order};
  }
};

/// svec packs a symmetric matrix column-major by upper triangle with
/// off-diagonal entries scaled by sqrt(2), so that svec(A).dot(svec(B))
/// equals the trace inner product <A, B>.
Vector svec(const Matrix& symmetric);
Matrix smat(const Vector& packed, int order);
int svec_index(int i, int j, int order);  // i <= j

/// min c'x  s.t.  A x = b,  x in K (product of the cone segments).
struct ConicProgram {
  Vector objective;
  SparseMatrix equality;  // m x n
  Vector rhs;             // m
  std::vector<ConeSegment> cones;

  int total_dim() const;
  std::vector<int> segment_offsets() const;
  /// Throws std::invalid_argument when dimensions are inconsistent.
  void validate() const;
  /// Plain-text sparse dump (header with cone list, then one line per
  /// nonzero: row, column, value) for cross-solver comparison.
  void dump(std::ostream& os) const;
};

enum class SolveStatus {
  Optimal,
  Infeasible,
  Unbounded,
  SlowProgress,
  IterationLimit,
};

std::string to_string(SolveStatus status);

struct SolverConfig {
  double gap_tolerance = 1e-8;          // relative duality gap
  double feasibility_tolerance = 1e-8;  // relative equality/cone residuals
  int max_iterations = 200;
  double step_fraction = 0.98;          // fraction-to-boundary
  bool verbose = false;
};

struct SolveReport {
  SolveStatus status = SolveStatus::SlowProgress;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double duality_gap = 0.0;       // |primal - dual|
  double primal_residual = 0.0;   // ||Ax - b||_inf
  double dual_residual = 0.0;     // ||A'y + z - c||_inf
  int iterations = 0;
  Vector primal;      // x
  Vector dual;        // y (equality multipliers, full row indexing)
  Vector dual_slack;  // z
  int dropped_rows = 0;  // dependent equality rows removed by presolve
};

SolveReport solve(const ConicProgram& program, const SolverConfig& config = {});

struct ResidualReport {
  Vector equality;                    // A x - b
  std::vector<double> cone_violation;  // per segment, >= 0
  double max_equality_abs = 0.0;
  double max_cone_violation = 0.0;
};

/// Pure evaluation of A x - b and per-cone violation at an arbitrary point.
ResidualReport residuals(const ConicProgram& program, const Vector& point);

}  // namespace tspbound
