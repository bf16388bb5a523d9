// Primal-dual path-following interior-point method with Mehrotra
// predictor-corrector steps and Nesterov-Todd scaling for PSD blocks.
// Infeasible start: PSD blocks begin at the identity, nonnegative variables
// at one, and the equality residuals are driven to zero inside the
// iteration. Dense linear algebra throughout; the Schur complement
// A*W*A' is formed explicitly and factored by Cholesky each iteration.
//
// Termination heuristics (all scale-invariant):
//  - optimal: relative equality residuals <= feasibility tolerance on both
//    sides and |primal - dual| <= gap tolerance * (1 + |primal|);
//  - infeasible: b'y > 0 and the normalized Farkas residual
//    ||A'y + z||_inf / b'y falls below 1e-7 * (1 + amax * ||y||_inf / b'y);
//  - unbounded: c'x < 0 and ||A x||_inf / (-c'x) below the same form;
//  - slow progress: both step lengths collapse, or the best merit seen
//    stops improving for 15 consecutive iterations.
#include "tspbound/conic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <vector>

namespace tspbound {

namespace {

const double kSqrt2 = std::sqrt(2.0);
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Segment {
  ConeKind kind;
  int offset;
  int dim;
  int order;
};

// One nonzero of an equality row restricted to a PSD segment, in matrix
// (not svec) coordinates: coefficient w on entries (i,j) and (j,i).
struct MatrixEntry {
  int i, j;
  double w;
};

struct PsdRowPattern {
  int row;  // row index in the kept system
  std::vector<MatrixEntry> entries;
};

struct PsdScaling {
  Matrix r, rinv;  // NT factors: r^{-1} X r^{-T} = r^T Z r = diag(lambda)
  Matrix g;        // r r^T
  Vector lambda;
};

Vector pack_symmetric(const Matrix& m) { return svec(m); }

// Maximum step alpha with X + alpha*D staying PSD, given X = L L^T.
double psd_max_step(const Eigen::LLT<Matrix>& llt, const Matrix& d) {
  Matrix s = llt.matrixL().solve(d);
  s = llt.matrixL().solve(s.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s, Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues().minCoeff();
  return lmin >= 0.0 ? kInf : -1.0 / lmin;
}

// Pivoted Cholesky of S (destroyed) detecting dependent rows. Returns the
// pivot order; `rank` receives the numerical rank.
std::vector<int> pivoted_cholesky_order(Matrix& s, double tol, int* rank) {
  const int m = static_cast<int>(s.rows());
  std::vector<int> perm(m);
  for (int i = 0; i < m; ++i) perm[i] = i;
  int r = 0;
  for (int k = 0; k < m; ++k) {
    int p = k;
    double best = s(k, k);
    for (int i = k + 1; i < m; ++i)
      if (s(i, i) > best) {
        best = s(i, i);
        p = i;
      }
    if (best <= tol) break;
    if (p != k) {
      s.row(k).swap(s.row(p));
      s.col(k).swap(s.col(p));
      std::swap(perm[k], perm[p]);
    }
    const double piv = std::sqrt(s(k, k));
    const int rest = m - k - 1;
    if (rest > 0) {
      Vector l = s.col(k).tail(rest) / piv;
      // full symmetric update so both triangles stay valid across pivot swaps
      s.bottomRightCorner(rest, rest).noalias() -= l * l.transpose();
      s.col(k).tail(rest) = l;
    }
    ++r;
  }
  *rank = r;
  return perm;
}

struct Workspace {
  std::vector<Segment> segments;
  SparseMatrix a;   // kept rows
  Vector b;         // kept rhs
  Vector c;         // scaled objective
  double obj_scale = 1.0;
  std::vector<int> kept_rows;
  int full_rows = 0;

  // Per PSD segment: rows touching it, with matrix-coordinate patterns.
  std::vector<std::vector<PsdRowPattern>> psd_rows;
  std::vector<int> free_cols;  // global column indices of free variables
};

// Equality rows restricted to a PSD segment, decoded from svec coordinates.
std::vector<PsdRowPattern> collect_psd_rows(const SparseMatrix& a,
                                            const Segment& seg) {
  std::vector<std::vector<MatrixEntry>> by_row(a.rows());
  for (int local = 0; local < seg.dim; ++local) {
    const int col = seg.offset + local;
    // invert svec index: local = j*(j+1)/2 + i with i <= j
    int j = static_cast<int>((std::sqrt(8.0 * local + 1.0) - 1.0) / 2.0);
    while (j * (j + 1) / 2 > local) --j;
    while ((j + 1) * (j + 2) / 2 <= local) ++j;
    int i = local - j * (j + 1) / 2;
    for (SparseMatrix::InnerIterator it(a, col); it; ++it) {
      const double w = (i == j) ? it.value() : it.value() / kSqrt2;
      by_row[it.row()].push_back({i, j, w});
    }
  }
  std::vector<PsdRowPattern> rows;
  for (int r = 0; r < a.rows(); ++r)
    if (!by_row[r].empty()) rows.push_back({r, std::move(by_row[r])});
  return rows;
}

class Solver {
 public:
  Solver(const ConicProgram& program, const SolverConfig& config)
      : config_(config) {
    program.validate();
    ws_.full_rows = static_cast<int>(program.equality.rows());
    int at = 0;
    for (const auto& seg : program.cones) {
      ws_.segments.push_back({seg.kind, at, seg.dim, seg.order});
      if (seg.kind == ConeKind::Free)
        for (int k = 0; k < seg.dim; ++k) ws_.free_cols.push_back(at + k);
      at += seg.dim;
    }
    n_ = at;
    ws_.obj_scale = std::max(1.0, program.objective.cwiseAbs().maxCoeff());
    ws_.c = program.objective / ws_.obj_scale;
    amax_ = 1.0;
    for (int k = 0; k < program.equality.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(program.equality, k); it; ++it)
        amax_ = std::max(amax_, std::abs(it.value()));
    presolve(program);
    for (const auto& seg : ws_.segments)
      if (seg.kind == ConeKind::Psd)
        ws_.psd_rows.push_back(collect_psd_rows(ws_.a, seg));
      else
        ws_.psd_rows.emplace_back();
    nu_ = 0;
    for (const auto& seg : ws_.segments) {
      if (seg.kind == ConeKind::Nonnegative) nu_ += seg.dim;
      if (seg.kind == ConeKind::Psd) nu_ += seg.order;
    }
    nu_ = std::max(nu_, 1);
  }

  SolveReport run() {
    init_point();
    SolveReport best;
    double best_merit = kInf;
    int stall = 0;
    SolveReport rep;
    for (iter_ = 0; iter_ < config_.max_iterations; ++iter_) {
      rep = evaluate();
      rep.iterations = iter_;
      const double merit =
          std::max({rep.primal_residual / (1.0 + bnorm_),
                    rep.dual_residual / (1.0 + ws_.obj_scale * cnorm_),
                    rel_gap(rep)});
      if (merit < best_merit * 0.999) {
        best_merit = merit;
        best = rep;
        stall = 0;
      } else {
        ++stall;
      }
      if (config_.verbose)
        std::printf("it %3d  p % .8e  d % .8e  rp %.2e  rd %.2e  mu %.2e\n",
                    iter_, rep.primal_objective, rep.dual_objective,
                    rep.primal_residual, rep.dual_residual, mu_);
      if (converged(rep)) {
        rep.status = SolveStatus::Optimal;
        return rep;
      }
      if (detect_infeasible(rep)) return rep;
      if (stall >= 15) {
        best.status = SolveStatus::SlowProgress;
        return best;
      }
      if (!newton_step()) {
        best.status = SolveStatus::SlowProgress;
        return best;
      }
    }
    rep = evaluate();
    rep.iterations = iter_;
    if (converged(rep)) {
      rep.status = SolveStatus::Optimal;
      return rep;
    }
    rep.status = SolveStatus::IterationLimit;
    return rep;
  }

 private:
  void presolve(const ConicProgram& program) {
    const int m = ws_.full_rows;
    if (m == 0) {
      ws_.a = program.equality;
      ws_.b = program.rhs;
      return;
    }
    SparseMatrix at = program.equality.transpose();
    Matrix gram = (program.equality * at).toDense();
    const double tol = 1e-12 * std::max(1.0, gram.diagonal().maxCoeff());
    int rank = 0;
    std::vector<int> order = pivoted_cholesky_order(gram, tol, &rank);
    if (rank == m) {
      ws_.a = program.equality;
      ws_.b = program.rhs;
      for (int i = 0; i < m; ++i) ws_.kept_rows.push_back(i);
      return;
    }
    std::vector<int> kept(order.begin(), order.begin() + rank);
    std::sort(kept.begin(), kept.end());
    ws_.kept_rows = kept;
    std::vector<int> map(m, -1);
    for (int i = 0; i < rank; ++i) map[kept[i]] = i;
    std::vector<Triplet> trip;
    for (int k = 0; k < program.equality.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(program.equality, k); it; ++it)
        if (map[it.row()] >= 0)
          trip.emplace_back(map[it.row()], static_cast<int>(it.col()), it.value());
    ws_.a.resize(rank, n_);
    ws_.a.setFromTriplets(trip.begin(), trip.end());
    ws_.b.resize(rank);
    for (int i = 0; i < rank; ++i) ws_.b[i] = program.rhs[kept[i]];
  }

  void init_point() {
    x_ = Vector::Zero(n_);
    z_ = Vector::Zero(n_);
    y_ = Vector::Zero(ws_.a.rows());
    for (const auto& seg : ws_.segments) {
      if (seg.kind == ConeKind::Nonnegative) {
        x_.segment(seg.offset, seg.dim).setOnes();
        z_.segment(seg.offset, seg.dim).setOnes();
      } else if (seg.kind == ConeKind::Psd) {
        Vector id = pack_symmetric(Matrix::Identity(seg.order, seg.order));
        x_.segment(seg.offset, seg.dim) = id;
        z_.segment(seg.offset, seg.dim) = id;
      }
    }
    bnorm_ = ws_.b.size() ? ws_.b.cwiseAbs().maxCoeff() : 0.0;
    cnorm_ = ws_.c.size() ? ws_.c.cwiseAbs().maxCoeff() : 0.0;
    mu_ = duality_product() / nu_;
  }

  double duality_product() const {
    double acc = 0.0;
    for (const auto& seg : ws_.segments)
      if (seg.kind != ConeKind::Free)
        acc += x_.segment(seg.offset, seg.dim).dot(z_.segment(seg.offset, seg.dim));
    return acc;
  }

  double rel_gap(const SolveReport& rep) const {
    return std::abs(rep.primal_objective - rep.dual_objective) /
           (1.0 + std::abs(rep.primal_objective));
  }

  bool converged(const SolveReport& rep) const {
    return rep.primal_residual <= config_.feasibility_tolerance * (1.0 + bnorm_) &&
           rep.dual_residual <=
               config_.feasibility_tolerance * (1.0 + ws_.obj_scale * cnorm_) &&
           rep.duality_gap <=
               config_.gap_tolerance * (1.0 + std::abs(rep.primal_objective));
  }

  SolveReport evaluate() {
    SolveReport rep;
    rp_ = ws_.a * x_ - ws_.b;
    rd_ = ws_.a.transpose() * y_ + z_ - ws_.c;
    rep.primal_objective = ws_.obj_scale * ws_.c.dot(x_);
    rep.dual_objective = ws_.obj_scale * ws_.b.dot(y_);
    rep.duality_gap = std::abs(rep.primal_objective - rep.dual_objective);
    rep.primal_residual = rp_.size() ? rp_.cwiseAbs().maxCoeff() : 0.0;
    rep.dual_residual = (rd_.size() ? rd_.cwiseAbs().maxCoeff() : 0.0) * ws_.obj_scale;
    rep.primal = x_;
    rep.dual_slack = ws_.obj_scale * z_;
    rep.dual = Vector::Zero(ws_.full_rows);
    if (ws_.kept_rows.empty()) {
      rep.dual = ws_.obj_scale * y_;
    } else {
      for (size_t i = 0; i < ws_.kept_rows.size(); ++i)
        rep.dual[ws_.kept_rows[i]] = ws_.obj_scale * y_[i];
    }
    rep.dropped_rows = ws_.full_rows - static_cast<int>(ws_.a.rows());
    rep.status = SolveStatus::IterationLimit;
    return rep;
  }

  bool detect_infeasible(SolveReport& rep) {
    // Farkas-type certificates, normalized to be scale invariant. The first
    // guard keeps tiny near-zero objectives of feasible problems from being
    // mistaken for diverging rays.
    const double by = ws_.b.dot(y_);
    const double ynorm_abs = y_.size() ? y_.cwiseAbs().maxCoeff() : 0.0;
    if (by > 1e-6 * (1.0 + bnorm_) * (1.0 + ynorm_abs)) {
      Vector farkas = ws_.a.transpose() * y_ + z_;
      const double q = farkas.cwiseAbs().maxCoeff() / by;
      const double ynorm = ynorm_abs / by;
      if (q <= 1e-7 * (1.0 + amax_ * ynorm)) {
        rep.status = SolveStatus::Infeasible;
        return true;
      }
    }
    const double cx = ws_.c.dot(x_);
    const double xnorm_abs = x_.cwiseAbs().maxCoeff();
    if (-cx > 1e-6 * (1.0 + cnorm_) * (1.0 + xnorm_abs)) {
      Vector ray = ws_.a * x_;
      const double q = (ray.size() ? ray.cwiseAbs().maxCoeff() : 0.0) / (-cx);
      const double xnorm = xnorm_abs / (-cx);
      if (q <= 1e-7 * (1.0 + amax_ * xnorm)) {
        rep.status = SolveStatus::Unbounded;
        return true;
      }
    }
    return false;
  }

  // Scaling state, recomputed once per iteration.
  struct IterationScaling {
    Vector d;       // nonneg: x ./ z
    Vector w;       // sqrt(d)
    Vector lam_nn;  // sqrt(x .* z)
    std::vector<PsdScaling> psd;
    std::vector<Eigen::LLT<Matrix>> xllt, zllt;
    bool ok = false;
  };

  bool compute_scaling() {
    scal_.d.resize(n_);
    scal_.w.resize(n_);
    scal_.lam_nn.resize(n_);
    scal_.psd.clear();
    scal_.xllt.clear();
    scal_.zllt.clear();
    for (const auto& seg : ws_.segments) {
      if (seg.kind == ConeKind::Nonnegative) {
        auto xs = x_.segment(seg.offset, seg.dim);
        auto zs = z_.segment(seg.offset, seg.dim);
        if (xs.minCoeff() <= 0.0 || zs.minCoeff() <= 0.0) return false;
        scal_.d.segment(seg.offset, seg.dim) = xs.cwiseQuotient(zs);
        scal_.w.segment(seg.offset, seg.dim) =
            scal_.d.segment(seg.offset, seg.dim).cwiseSqrt();
        scal_.lam_nn.segment(seg.offset, seg.dim) = xs.cwiseProduct(zs).cwiseSqrt();
      } else if (seg.kind == ConeKind::Psd) {
        Matrix xm = smat(x_.segment(seg.offset, seg.dim), seg.order);
        Matrix zm = smat(z_.segment(seg.offset, seg.dim), seg.order);
        Eigen::LLT<Matrix> lx(xm), lz(zm);
        if (lx.info() != Eigen::Success || lz.info() != Eigen::Success) return false;
        Matrix lzt_lx = Matrix(lz.matrixL()).transpose() * Matrix(lx.matrixL());
        Eigen::JacobiSVD<Matrix> svd(lzt_lx, Eigen::ComputeFullU | Eigen::ComputeFullV);
        Vector lam = svd.singularValues();
        if (lam.minCoeff() <= 0.0) return false;
        Vector inv_sqrt = lam.cwiseSqrt().cwiseInverse();
        PsdScaling ps;
        ps.r = Matrix(lx.matrixL()) * svd.matrixV() * inv_sqrt.asDiagonal();
        ps.rinv = inv_sqrt.asDiagonal() * svd.matrixU().transpose() *
                  Matrix(lz.matrixL()).transpose();
        ps.g = ps.r * ps.r.transpose();
        ps.lambda = lam;
        scal_.psd.push_back(std::move(ps));
        scal_.xllt.push_back(std::move(lx));
        scal_.zllt.push_back(std::move(lz));
      }
    }
    return true;
  }

  // v <- What * u segmentwise (free: identity copy is fine, unused).
  Vector apply_what(const Vector& u) const {
    Vector out = u;
    int psd_idx = 0;
    for (const auto& seg : ws_.segments) {
      if (seg.kind == ConeKind::Nonnegative) {
        out.segment(seg.offset, seg.dim) =
            scal_.d.segment(seg.offset, seg.dim)
                .cwiseProduct(u.segment(seg.offset, seg.dim));
      } else if (seg.kind == ConeKind::Psd) {
        const auto& g = scal_.psd[psd_idx].g;
        Matrix um = smat(u.segment(seg.offset, seg.dim), seg.order);
        out.segment(seg.offset, seg.dim) = pack_symmetric(g * um * g);
        ++psd_idx;
      }
      if (seg.kind == ConeKind::Free) out.segment(seg.offset, seg.dim).setZero();
    }
    return out;
  }

  // Schur complement M = sum_seg A_seg What_seg A_seg^T over non-free cones.
  void assemble_schur(Matrix& m) const {
    const int rows = static_cast<int>(ws_.a.rows());
    m.setZero(rows, rows);
    // nonnegative columns: rank-one contributions per column
    for (const auto& seg : ws_.segments) {
      if (seg.kind != ConeKind::Nonnegative) continue;
      for (int local = 0; local < seg.dim; ++local) {
        const int col = seg.offset + local;
        const double dj = scal_.d[col];
        for (SparseMatrix::InnerIterator it1(ws_.a, col); it1; ++it1)
          for (SparseMatrix::InnerIterator it2(ws_.a, col); it2 && it2.row() <= it1.row(); ++it2)
            m(it1.row(), it2.row()) += dj * it1.value() * it2.value();
      }
    }
    // PSD segments: dense coupling between the rows touching the block
    int psd_idx = 0;
    for (size_t si = 0; si < ws_.segments.size(); ++si) {
      const auto& seg = ws_.segments[si];
      if (seg.kind != ConeKind::Psd) continue;
      const auto& rows_here = ws_.psd_rows[si];
      const Matrix& g = scal_.psd[psd_idx].g;
      Matrix h(seg.order, seg.order), p(seg.order, seg.order);
      std::vector<int> touched;
      std::vector<char> seen(seg.order, 0);
      for (const auto& rowp : rows_here) {
        // h = G * A_r * G; A_r * G has nonzero rows only where A_r does
        p.setZero();
        touched.clear();
        std::fill(seen.begin(), seen.end(), 0);
        for (const auto& e : rowp.entries) {
          p.row(e.i) += e.w * g.row(e.j);
          if (!seen[e.i]) { seen[e.i] = 1; touched.push_back(e.i); }
          if (e.i != e.j) {
            p.row(e.j) += e.w * g.row(e.i);
            if (!seen[e.j]) { seen[e.j] = 1; touched.push_back(e.j); }
          }
        }
        h.setZero();
        for (int k : touched) h.noalias() += g.col(k) * p.row(k);
        for (const auto& rowq : rows_here) {
          if (rowq.row > rowp.row) break;
          double acc = 0.0;
          for (const auto& e : rowq.entries) {
            acc += e.w * h(e.i, e.j);
            if (e.i != e.j) acc += e.w * h(e.j, e.i);
          }
          m(rowp.row, rowq.row) += acc;
        }
      }
      ++psd_idx;
    }
    m.triangularView<Eigen::StrictlyUpper>() = m.transpose();
  }

  // Factor the Newton matrix (augmented when free variables exist).
  // LLT copies internally, so schur_ stays intact for refinement; on
  // breakdown a shifted copy is retried with escalating regularization.
  bool factorize() {
    const int f = static_cast<int>(ws_.free_cols.size());
    if (f == 0) {
      llt_.compute(schur_);
      if (llt_.info() == Eigen::Success) return true;
      Matrix m = schur_;
      double shift = 1e-13 * (1.0 + m.diagonal().maxCoeff());
      for (int attempt = 0; attempt < 6; ++attempt) {
        m.diagonal().array() += shift;
        llt_.compute(m);
        if (llt_.info() == Eigen::Success) return true;
        shift *= 100.0;
      }
      return false;
    }
    const int rows = static_cast<int>(ws_.a.rows());
    Matrix k = Matrix::Zero(rows + f, rows + f);
    k.topLeftCorner(rows, rows) = schur_;
    for (int j = 0; j < f; ++j)
      for (SparseMatrix::InnerIterator it(ws_.a, ws_.free_cols[j]); it; ++it) {
        k(it.row(), rows + j) = it.value();
        k(rows + j, it.row()) = it.value();
      }
    k.bottomRightCorner(f, f).diagonal().array() -= 1e-12;
    ldlt_.compute(k);
    return ldlt_.info() == Eigen::Success;
  }

  Vector solve_newton(const Vector& rhs_y, const Vector& rd_free) {
    const int f = static_cast<int>(ws_.free_cols.size());
    const int rows = static_cast<int>(ws_.a.rows());
    if (f == 0) {
      Vector dy = llt_.solve(rhs_y);
      dy += llt_.solve(rhs_y - schur_ * dy);  // one refinement step
      return dy;
    }
    Vector rhs(rows + f);
    rhs.head(rows) = rhs_y;
    rhs.tail(f) = rd_free;
    Vector sol = ldlt_.solve(rhs);
    free_step_ = sol.tail(f);
    return sol.head(rows);
  }

  // One Mehrotra predictor-corrector step. Returns false on breakdown.
  bool newton_step() {
    if (!compute_scaling()) return false;
    assemble_schur(schur_);
    if (!factorize()) return false;

    // scaled current point lambda and the affine right-hand side d_c = -lambda
    Vector dc = Vector::Zero(n_);
    int psd_idx = 0;
    for (const auto& seg : ws_.segments) {
      if (seg.kind == ConeKind::Nonnegative)
        dc.segment(seg.offset, seg.dim) = -scal_.lam_nn.segment(seg.offset, seg.dim);
      else if (seg.kind == ConeKind::Psd) {
        dc.segment(seg.offset, seg.dim) =
            -pack_symmetric(Matrix(scal_.psd[psd_idx].lambda.asDiagonal()));
        ++psd_idx;
      }
    }

    Vector dx_aff(n_), dy_aff, dz_aff(n_);
    solve_direction(dc, dx_aff, dy_aff, dz_aff);
    const double ap_aff = max_step_primal(dx_aff);
    const double ad_aff = max_step_dual(dz_aff);
    // Mehrotra centering from the affine trial point
    double gap_aff = 0.0;
    {
      Vector xt = x_ + std::min(1.0, ap_aff) * dx_aff;
      Vector zt = z_ + std::min(1.0, ad_aff) * dz_aff;
      for (const auto& seg : ws_.segments)
        if (seg.kind != ConeKind::Free)
          gap_aff += xt.segment(seg.offset, seg.dim).dot(zt.segment(seg.offset, seg.dim));
    }
    const double gap_now = duality_product();
    double sigma = gap_now > 0 ? std::pow(std::max(0.0, gap_aff / gap_now), 3.0) : 0.0;
    sigma = std::min(1.0, sigma);
    const double target = sigma * mu_;

    // corrector right-hand side: -lambda - eta + sigma*mu*lambda^{-1}
    psd_idx = 0;
    for (const auto& seg : ws_.segments) {
      if (seg.kind == ConeKind::Nonnegative) {
        for (int k = 0; k < seg.dim; ++k) {
          const int at = seg.offset + k;
          const double lam = scal_.lam_nn[at];
          const double eta = dx_aff[at] * dz_aff[at] / lam;
          dc[at] = -lam - eta + target / lam;
        }
      } else if (seg.kind == ConeKind::Psd) {
        const auto& ps = scal_.psd[psd_idx];
        Matrix dxm = smat(dx_aff.segment(seg.offset, seg.dim), seg.order);
        Matrix dzm = smat(dz_aff.segment(seg.offset, seg.dim), seg.order);
        Matrix d1 = ps.rinv * dxm * ps.rinv.transpose();
        Matrix d2 = ps.r.transpose() * dzm * ps.r;
        Matrix prod = 0.5 * (d1 * d2 + d2 * d1);
        Matrix eta(seg.order, seg.order);
        for (int i = 0; i < seg.order; ++i)
          for (int j = 0; j < seg.order; ++j)
            eta(i, j) = 2.0 * prod(i, j) / (ps.lambda[i] + ps.lambda[j]);
        Matrix m = -Matrix(ps.lambda.asDiagonal()) - 0.5 * (eta + eta.transpose());
        m.diagonal() += target * ps.lambda.cwiseInverse();
        dc.segment(seg.offset, seg.dim) = pack_symmetric(m);
        ++psd_idx;
      }
    }

    Vector dx(n_), dz(n_);
    Vector dy;
    solve_direction(dc, dx, dy, dz);
    const double ap = std::min(1.0, config_.step_fraction * max_step_primal(dx));
    const double ad = std::min(1.0, config_.step_fraction * max_step_dual(dz));
    if (ap < 1e-10 && ad < 1e-10) return false;
    x_ += ap * dx;
    y_ += ad * dy;
    z_ += ad * dz;
    mu_ = duality_product() / nu_;
    return true;
  }

  // Solves the reduced Newton system for the given complementarity rhs.
  void solve_direction(const Vector& dc, Vector& dx, Vector& dy, Vector& dz) {
    // dx = W' dc + What rd + What A' dy;  A dx = -rp
    Vector wt_dc = Vector::Zero(n_);
    int psd_idx = 0;
    for (const auto& seg : ws_.segments) {
      if (seg.kind == ConeKind::Nonnegative)
        wt_dc.segment(seg.offset, seg.dim) =
            scal_.w.segment(seg.offset, seg.dim)
                .cwiseProduct(dc.segment(seg.offset, seg.dim));
      else if (seg.kind == ConeKind::Psd) {
        const auto& ps = scal_.psd[psd_idx];
        Matrix dcm = smat(dc.segment(seg.offset, seg.dim), seg.order);
        wt_dc.segment(seg.offset, seg.dim) =
            pack_symmetric(ps.r * dcm * ps.r.transpose());
        ++psd_idx;
      }
    }
    Vector what_rd = apply_what(rd_);
    Vector rhs_y = -rp_ - ws_.a * (wt_dc + what_rd);
    Vector rd_free(ws_.free_cols.size());
    for (size_t j = 0; j < ws_.free_cols.size(); ++j)
      rd_free[j] = -rd_[ws_.free_cols[j]];
    dy = solve_newton(rhs_y, rd_free);
    dz = -rd_ - ws_.a.transpose() * dy;
    for (size_t j = 0; j < ws_.free_cols.size(); ++j) dz[ws_.free_cols[j]] = 0.0;
    dx = wt_dc - apply_what(dz);
    for (size_t j = 0; j < ws_.free_cols.size(); ++j)
      dx[ws_.free_cols[j]] = free_step_.size() ? free_step_[j] : 0.0;
  }

  double max_step_primal(const Vector& dx) const {
    double alpha = kInf;
    int psd_idx = 0;
    for (const auto& seg : ws_.segments) {
      if (seg.kind == ConeKind::Nonnegative) {
        for (int k = 0; k < seg.dim; ++k) {
          const int at = seg.offset + k;
          if (dx[at] < 0.0) alpha = std::min(alpha, -x_[at] / dx[at]);
        }
      } else if (seg.kind == ConeKind::Psd) {
        Matrix d = smat(dx.segment(seg.offset, seg.dim), seg.order);
        alpha = std::min(alpha, psd_max_step(scal_.xllt[psd_idx], d));
        ++psd_idx;
      }
    }
    return alpha;
  }

  double max_step_dual(const Vector& dz) const {
    double alpha = kInf;
    int psd_idx = 0;
    for (const auto& seg : ws_.segments) {
      if (seg.kind == ConeKind::Nonnegative) {
        for (int k = 0; k < seg.dim; ++k) {
          const int at = seg.offset + k;
          if (dz[at] < 0.0) alpha = std::min(alpha, -z_[at] / dz[at]);
        }
      } else if (seg.kind == ConeKind::Psd) {
        Matrix d = smat(dz.segment(seg.offset, seg.dim), seg.order);
        alpha = std::min(alpha, psd_max_step(scal_.zllt[psd_idx], d));
        ++psd_idx;
      }
    }
    return alpha;
  }

  SolverConfig config_;
  Workspace ws_;
  int n_ = 0;
  int nu_ = 1;
  int iter_ = 0;
  double amax_ = 1.0, bnorm_ = 0.0, cnorm_ = 0.0, mu_ = 0.0;
  Vector x_, y_, z_, rp_, rd_, free_step_;
  IterationScaling scal_;
  Matrix schur_;
  Eigen::LLT<Matrix> llt_;
  Eigen::LDLT<Matrix> ldlt_;
};

}  // namespace

SolveReport solve(const ConicProgram& program, const SolverConfig& config) {
  if (config.gap_tolerance <= 0 || config.feasibility_tolerance <= 0)
    throw std::invalid_argument("solve: tolerances must be positive");
  if (config.step_fraction <= 0 || config.step_fraction >= 1)
    throw std::invalid_argument("solve: step fraction must lie in (0,1)");
  Solver solver(program, config);
  return solver.run();
}

}  // namespace tspbound
