#include "tspbound/conic.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace tspbound {

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

Vector svec(const Matrix& symmetric) {
  const int q = static_cast<int>(symmetric.rows());
  if (symmetric.cols() != q)
    throw std::invalid_argument("svec: matrix must be square");
  Vector v(q * (q + 1) / 2);
  int idx = 0;
  for (int j = 0; j < q; ++j)
    for (int i = 0; i <= j; ++i)
      v[idx++] = (i == j) ? symmetric(i, j) : kSqrt2 * symmetric(i, j);
  return v;
}

Matrix smat(const Vector& packed, int order) {
  if (packed.size() != order * (order + 1) / 2)
    throw std::invalid_argument("smat: packed length does not match order");
  Matrix m(order, order);
  int idx = 0;
  for (int j = 0; j < order; ++j)
    for (int i = 0; i <= j; ++i) {
      const double v = (i == j) ? packed[idx] : packed[idx] / kSqrt2;
      m(i, j) = v;
      m(j, i) = v;
      ++idx;
    }
  return m;
}

int svec_index(int i, int j, int order) {
  if (i > j) std::swap(i, j);
  if (j >= order) throw std::invalid_argument("svec_index: out of range");
  return j * (j + 1) / 2 + i;
}

int ConicProgram::total_dim() const {
  int total = 0;
  for (const auto& seg : cones) total += seg.dim;
  return total;
}

std::vector<int> ConicProgram::segment_offsets() const {
  std::vector<int> offsets;
  offsets.reserve(cones.size());
  int at = 0;
  for (const auto& seg : cones) {
    offsets.push_back(at);
    at += seg.dim;
  }
  return offsets;
}

void ConicProgram::validate() const {
  const int n = total_dim();
  if (objective.size() != n)
    throw std::invalid_argument("ConicProgram: objective length " +
                                std::to_string(objective.size()) +
                                " != variable dimension " + std::to_string(n));
  if (equality.cols() != n)
    throw std::invalid_argument("ConicProgram: equality matrix has " +
                                std::to_string(equality.cols()) +
                                " columns, expected " + std::to_string(n));
  if (equality.rows() != rhs.size())
    throw std::invalid_argument("ConicProgram: rhs length does not match equality rows");
  for (const auto& seg : cones) {
    if (seg.dim <= 0) throw std::invalid_argument("ConicProgram: empty cone segment");
    if (seg.kind == ConeKind::Psd && seg.dim != seg.order * (seg.order + 1) / 2)
      throw std::invalid_argument("ConicProgram: psd segment length mismatch");
  }
}

void ConicProgram::dump(std::ostream& os) const {
  os << "conic_program " << equality.rows() << " " << total_dim() << "\n";
  os << "cones";
  for (const auto& seg : cones) {
    switch (seg.kind) {
      case ConeKind::Free: os << " free:" << seg.dim; break;
      case ConeKind::Nonnegative: os << " nonneg:" << seg.dim; break;
      case ConeKind::Psd: os << " psd:" << seg.order; break;
    }
  }
  os << "\nobjective\n";
  for (int i = 0; i < objective.size(); ++i)
    if (objective[i] != 0.0) os << i << " " << objective[i] << "\n";
  os << "rhs\n";
  for (int i = 0; i < rhs.size(); ++i)
    if (rhs[i] != 0.0) os << i << " " << rhs[i] << "\n";
  os << "equality\n";
  for (int k = 0; k < equality.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(equality, k); it; ++it)
      os << it.row() << " " << it.col() << " " << it.value() << "\n";
}

ResidualReport residuals(const ConicProgram& program, const Vector& point) {
  program.validate();
  if (point.size() != program.total_dim())
    throw std::invalid_argument("residuals: point length does not match program");
  ResidualReport rep;
  rep.equality = program.equality * point - program.rhs;
  rep.max_equality_abs =
      rep.equality.size() ? rep.equality.cwiseAbs().maxCoeff() : 0.0;
  const auto offsets = program.segment_offsets();
  for (size_t s = 0; s < program.cones.size(); ++s) {
    const auto& seg = program.cones[s];
    double violation = 0.0;
    if (seg.kind == ConeKind::Nonnegative) {
      violation = std::max(0.0, -point.segment(offsets[s], seg.dim).minCoeff());
    } else if (seg.kind == ConeKind::Psd) {
      Matrix block = smat(point.segment(offsets[s], seg.dim), seg.order);
      Eigen::SelfAdjointEigenSolver<Matrix> eig(block, Eigen::EigenvaluesOnly);
      violation = std::max(0.0, -eig.eigenvalues().minCoeff());
    }
    rep.cone_violation.push_back(violation);
    rep.max_cone_violation = std::max(rep.max_cone_violation, violation);
  }
  return rep;
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::SlowProgress: return "slow-progress";
    case SolveStatus::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

}  // namespace tspbound
