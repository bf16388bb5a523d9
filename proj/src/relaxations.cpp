#include "tspbound/relaxations.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tspbound {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

int pair_index(int a, int b) {  // a < b
  return b * (b - 1) / 2 + a;
}

int pair_count(int n) { return n * (n - 1) / 2; }

void check_distance(const DistanceMatrix& d, int min_n) {
  if (d.n < min_n)
    throw std::invalid_argument("relaxation: instance needs at least " +
                                std::to_string(min_n) + " cities");
}

}  // namespace

std::string to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::NewSdp: return "new-sdp";
    case BoundMethod::Cvetkovic: return "cvetkovic";
    case BoundMethod::QapSdp: return "qap-sdp";
    case BoundMethod::HeldKarp: return "held-karp";
  }
  return "unknown";
}

double apply_rounding(double raw, bool integral_data) {
  return integral_data ? std::ceil(raw - 1e-6) : raw;
}

ConicProgram build_new_sdp(const DistanceMatrix& d, const NewSdpOptions& opts) {
  check_distance(d, 4);
  const int n = d.n;
  const int nd = n / 2;
  const int np = pair_count(n);
  const int nq = n * (n + 1) / 2;
  const int nn_total = nd * np;

  ConicProgram p;
  p.cones.push_back(ConeSegment::nonnegative(nn_total));
  for (int i = 0; i < nd; ++i) p.cones.push_back(ConeSegment::psd(n));
  const int total = nn_total + nd * nq;

  auto nn_idx = [&](int k, int a, int b) {  // k in 1..d, a < b
    return (k - 1) * np + pair_index(a, b);
  };
  auto psd_idx = [&](int i, int a, int b) {  // i in 1..d
    return nn_total + (i - 1) * nq + svec_index(a, b, n);
  };

  p.objective = Vector::Zero(total);
  for (int b = 1; b < n; ++b)
    for (int a = 0; a < b; ++a) p.objective[nn_idx(1, a, b)] = d.entries(a, b);

  const int rows_sum = np;
  const int rows_lmi = nd * nq;
  const int rows_deg = opts.include_row_sums ? nd * n : 0;
  const int m = rows_sum + rows_lmi + rows_deg;
  p.rhs = Vector::Zero(m);
  std::vector<Triplet> trip;
  trip.reserve(static_cast<size_t>(m) * (nd + 2));

  // sum_k X^(k) = J - I, one row per pair
  for (int b = 1; b < n; ++b)
    for (int a = 0; a < b; ++a) {
      const int r = pair_index(a, b);
      for (int k = 1; k <= nd; ++k) trip.emplace_back(r, nn_idx(k, a, b), 1.0);
      p.rhs[r] = 1.0;
    }

  // S_i - sum_k cos(2 pi i k / n) X^(k) = I, entrywise
  for (int i = 1; i <= nd; ++i) {
    for (int b = 0; b < n; ++b)
      for (int a = 0; a <= b; ++a) {
        const int r = rows_sum + (i - 1) * nq + svec_index(a, b, n);
        trip.emplace_back(r, psd_idx(i, a, b), a == b ? 1.0 : 1.0 / kSqrt2);
        if (a != b)
          for (int k = 1; k <= nd; ++k)
            trip.emplace_back(r, nn_idx(k, a, b), -std::cos(kTwoPi * i * k / n));
        p.rhs[r] = (a == b) ? 1.0 : 0.0;
      }
  }

  // X^(k) e = 2e (or e at the antipodal index)
  if (opts.include_row_sums) {
    const int base = rows_sum + rows_lmi;
    for (int k = 1; k <= nd; ++k) {
      const double target = (2 * k == n) ? 1.0 : 2.0;
      for (int a = 0; a < n; ++a) {
        const int r = base + (k - 1) * n + a;
        for (int b = 0; b < n; ++b)
          if (b != a) trip.emplace_back(r, nn_idx(k, std::min(a, b), std::max(a, b)), 1.0);
        p.rhs[r] = target;
      }
    }
  }

  p.equality.resize(m, total);
  p.equality.setFromTriplets(trip.begin(), trip.end());
  p.validate();
  return p;
}

ConicProgram build_cvetkovic_sdp(const DistanceMatrix& d) {
  check_distance(d, 4);
  const int n = d.n;
  const int np = pair_count(n);
  const int nq = n * (n + 1) / 2;
  const double gamma = 2.0 - 2.0 * std::cos(kTwoPi / n);

  ConicProgram p;
  p.cones = {ConeSegment::nonnegative(2 * np), ConeSegment::psd(n)};
  const int total = 2 * np + nq;
  auto x_idx = [&](int a, int b) { return pair_index(std::min(a, b), std::max(a, b)); };
  auto u_idx = [&](int a, int b) { return np + pair_index(std::min(a, b), std::max(a, b)); };
  auto s_idx = [&](int a, int b) { return 2 * np + svec_index(a, b, n); };

  p.objective = Vector::Zero(total);
  for (int b = 1; b < n; ++b)
    for (int a = 0; a < b; ++a) p.objective[x_idx(a, b)] = d.entries(a, b);

  const int m = n + np + nq;
  p.rhs = Vector::Zero(m);
  std::vector<Triplet> trip;

  // degree rows X e = 2e
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (b != a) trip.emplace_back(a, x_idx(a, b), 1.0);
    p.rhs[a] = 2.0;
  }
  // upper bounds X + U = J off-diagonal
  for (int b = 1; b < n; ++b)
    for (int a = 0; a < b; ++a) {
      const int r = n + pair_index(a, b);
      trip.emplace_back(r, x_idx(a, b), 1.0);
      trip.emplace_back(r, u_idx(a, b), 1.0);
      p.rhs[r] = 1.0;
    }
  // S = 2I - X + gamma (J - I)
  for (int b = 0; b < n; ++b)
    for (int a = 0; a <= b; ++a) {
      const int r = n + np + svec_index(a, b, n);
      trip.emplace_back(r, s_idx(a, b), a == b ? 1.0 : 1.0 / kSqrt2);
      if (a != b) {
        trip.emplace_back(r, x_idx(a, b), 1.0);
        p.rhs[r] = gamma;
      } else {
        p.rhs[r] = 2.0;
      }
    }

  p.equality.resize(m, total);
  p.equality.setFromTriplets(trip.begin(), trip.end());
  p.validate();
  return p;
}

ConicProgram build_qap_sdp(const DistanceMatrix& d, const QapSdpOptions& opts) {
  check_distance(d, 4);
  const int n = d.n;
  if (n > opts.max_n)
    throw CapacityError("build_qap_sdp: n = " + std::to_string(n) +
                        " exceeds the lifted-variable cap of " + std::to_string(opts.max_n));
  const int nn = n * n;
  const int order = nn + 1;
  const int nq = order * (order + 1) / 2;
  auto z_of = [&](int city, int pos) { return 1 + city * n + pos; };

  // nonnegative links for the off-diagonal position pairs of distinct cities
  const int links = pair_count(n) * n * (n - 1);
  ConicProgram p;
  p.cones = {ConeSegment::psd(order), ConeSegment::nonnegative(links)};
  const int total = nq + links;

  // objective (1/2) <D (x) C_1, Y> over city blocks with the cycle inside
  Matrix obj = Matrix::Zero(order, order);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      for (int q = 0; q < n; ++q) {
        const int qp1 = (q + 1) % n, qm1 = (q + n - 1) % n;
        obj(z_of(a, q), z_of(b, qp1)) += 0.5 * d.entries(a, b);
        obj(z_of(a, q), z_of(b, qm1)) += 0.5 * d.entries(a, b);
      }
    }
  obj = (0.5 * (obj + obj.transpose())).eval();
  p.objective = Vector::Zero(total);
  p.objective.head(nq) = svec(obj);

  std::vector<Triplet> trip;
  std::vector<double> rhs;
  int r = 0;
  auto entry = [&](int row, int i, int j, double w) {
    // functional contribution w * Z(i, j) in svec coordinates
    const int idx = svec_index(i, j, order);
    trip.emplace_back(row, idx, i == j ? w : w / kSqrt2);
  };

  // corner
  entry(r, 0, 0, 1.0);
  rhs.push_back(1.0);
  ++r;
  // gangster zeros: same city, distinct positions
  for (int a = 0; a < n; ++a)
    for (int q = 0; q < n; ++q)
      for (int s = q + 1; s < n; ++s) {
        entry(r, z_of(a, q), z_of(a, s), 1.0);
        rhs.push_back(0.0);
        ++r;
      }
  // gangster zeros: distinct cities, same position
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int q = 0; q < n; ++q) {
        entry(r, z_of(a, q), z_of(b, q), 1.0);
        rhs.push_back(0.0);
        ++r;
      }
  // arrow: border equals diagonal
  for (int a = 0; a < n; ++a)
    for (int q = 0; q < n; ++q) {
      entry(r, 0, z_of(a, q), 1.0);
      entry(r, z_of(a, q), z_of(a, q), -1.0);
      rhs.push_back(0.0);
      ++r;
    }
  // trace(Y) - 2 e'y = -n
  for (int a = 0; a < n; ++a)
    for (int q = 0; q < n; ++q) {
      entry(r, z_of(a, q), z_of(a, q), 1.0);
      entry(r, 0, z_of(a, q), -2.0);
    }
  rhs.push_back(-static_cast<double>(n));
  ++r;
  // block sums <J, Y^(ab)> = 1
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      if (a == b) {
        for (int q = 0; q < n; ++q) entry(r, z_of(a, q), z_of(a, q), 1.0);
      } else {
        for (int q = 0; q < n; ++q)
          for (int s = 0; s < n; ++s) entry(r, z_of(a, q), z_of(b, s), 1.0);
      }
      rhs.push_back(1.0);
      ++r;
    }
  // column block sums: sum_a Y^(ab) = e (y^(b))'
  for (int b = 0; b < n; ++b)
    for (int q = 0; q < n; ++q)
      for (int s = 0; s < n; ++s) {
        for (int a = 0; a < n; ++a) entry(r, z_of(a, q), z_of(b, s), 1.0);
        entry(r, 0, z_of(b, s), -1.0);
        rhs.push_back(0.0);
        ++r;
      }
  // entrywise nonnegativity via slack links
  {
    int link = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int q = 0; q < n; ++q)
          for (int s = 0; s < n; ++s) {
            if (q == s) continue;
            entry(r, z_of(a, q), z_of(b, s), 1.0);
            trip.emplace_back(r, nq + link, -1.0);
            rhs.push_back(0.0);
            ++r;
            ++link;
          }
  }

  p.rhs = Eigen::Map<Vector>(rhs.data(), rhs.size());
  p.equality.resize(r, total);
  p.equality.setFromTriplets(trip.begin(), trip.end());
  p.validate();
  return p;
}

MultiBlockPoint canonical_point(int n) {
  if (n < 4) throw std::invalid_argument("canonical_point: need n >= 4");
  SchemeFamily fam = scheme_matrices(n);
  MultiBlockPoint pt;
  pt.n = n;
  pt.d = fam.d;
  for (int k = 1; k <= fam.d; ++k) pt.blocks.push_back(fam.matrices[k].cast<double>());
  return pt;
}

Vector embed_multiblock_point(const MultiBlockPoint& point, const DistanceMatrix& d,
                              const NewSdpOptions& opts) {
  (void)opts;
  const int n = point.n;
  if (d.n != n) throw std::invalid_argument("embed_multiblock_point: size mismatch");
  const int nd = n / 2;
  const int np = pair_count(n);
  const int nq = n * (n + 1) / 2;
  Vector x = Vector::Zero(nd * np + nd * nq);
  for (int k = 1; k <= nd; ++k)
    for (int b = 1; b < n; ++b)
      for (int a = 0; a < b; ++a)
        x[(k - 1) * np + pair_index(a, b)] = point.blocks[k - 1](a, b);
  for (int i = 1; i <= nd; ++i) {
    Matrix s = Matrix::Identity(n, n);
    for (int k = 1; k <= nd; ++k)
      s += std::cos(kTwoPi * i * k / n) * point.blocks[k - 1];
    x.segment(nd * np + (i - 1) * nq, nq) = svec(s);
  }
  return x;
}

MultiBlockPoint extract_multiblock_point(int n, const Vector& primal) {
  const int nd = n / 2;
  const int np = pair_count(n);
  if (primal.size() < nd * np)
    throw std::invalid_argument("extract_multiblock_point: point too short");
  MultiBlockPoint pt;
  pt.n = n;
  pt.d = nd;
  for (int k = 1; k <= nd; ++k) {
    Matrix x = Matrix::Zero(n, n);
    for (int b = 1; b < n; ++b)
      for (int a = 0; a < b; ++a) x(a, b) = x(b, a) = primal[(k - 1) * np + pair_index(a, b)];
    pt.blocks.push_back(std::move(x));
  }
  return pt;
}

LiftedPoint extract_lifted_point(int n, const Vector& primal) {
  const int order = n * n + 1;
  const int nq = order * (order + 1) / 2;
  if (primal.size() < nq)
    throw std::invalid_argument("extract_lifted_point: point too short");
  Matrix z = smat(primal.head(nq), order);
  LiftedPoint pt;
  pt.n = n;
  pt.y = z.row(0).tail(n * n);
  pt.Y = z.bottomRightCorner(n * n, n * n);
  return pt;
}

LiftedPointCheck check_lifted_point(const LiftedPoint& point) {
  const int n = point.n;
  const int nn = n * n;
  LiftedPointCheck check;
  Matrix bordered(nn + 1, nn + 1);
  bordered(0, 0) = 1.0;
  bordered.row(0).tail(nn) = point.y;
  bordered.col(0).tail(nn) = point.y;
  bordered.bottomRightCorner(nn, nn) = point.Y;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(bordered, Eigen::EigenvaluesOnly);
  check.bordered_min_eigenvalue = eig.eigenvalues().minCoeff();
  check.min_entry = point.Y.minCoeff();
  check.max_diag_deviation = (point.Y.diagonal() - point.y).cwiseAbs().maxCoeff();
  // gangster pattern: same city block off-diagonal plus distinct cities at
  // equal positions (city-major block indexing)
  double gangster = 0.0;
  for (int a = 0; a < n; ++a)
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        if (p != q) gangster += point.Y(a * n + p, a * n + q);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b)
        for (int p = 0; p < n; ++p) gangster += point.Y(a * n + p, b * n + p);
  check.gangster_trace = gangster;
  check.trace_identity_error =
      point.Y.trace() - 2.0 * point.y.sum() + static_cast<double>(n);
  return check;
}

AggregationWeights aggregation_weights(int n) {
  if (n < 4) throw std::invalid_argument("aggregation_weights: need n >= 4");
  const int nd = n / 2;
  const double c1 = std::cos(kTwoPi / n);
  AggregationWeights w;
  w.n = n;
  w.x = Vector::Zero(nd + 1);
  const double scale = 4.0 / n;
  if (n % 2 == 1) {
    w.x[0] = scale * nd * (1.0 - c1);
    for (int i = 1; i <= nd; ++i) w.x[i] = scale * (c1 - std::cos(kTwoPi * i / n));
  } else {
    w.x[0] = scale * 0.5 * (n - 1) * (1.0 - c1);
    for (int i = 1; i < nd; ++i) w.x[i] = scale * (c1 - std::cos(kTwoPi * i / n));
    w.x[nd] = scale * 0.5 * (c1 - std::cos(kTwoPi * nd / n));
  }
  return w;
}

CvetkovicProjection project_to_cvetkovic(const MultiBlockPoint& point, double tol) {
  const int n = point.n;
  const int nd = point.d;
  if (static_cast<int>(point.blocks.size()) != nd)
    throw std::invalid_argument("project_to_cvetkovic: malformed point");
  // validate the multi-block invariants up to `tol`
  Matrix sum = Matrix::Zero(n, n);
  for (int k = 1; k <= nd; ++k) {
    const Matrix& x = point.blocks[k - 1];
    if ((x - x.transpose()).cwiseAbs().maxCoeff() > tol)
      throw std::invalid_argument("project_to_cvetkovic: block not symmetric");
    if (x.minCoeff() < -tol)
      throw std::invalid_argument("project_to_cvetkovic: negative entry beyond tolerance");
    if (x.diagonal().cwiseAbs().maxCoeff() > tol)
      throw std::invalid_argument("project_to_cvetkovic: nonzero diagonal");
    const double target = (2 * k == n) ? 1.0 : 2.0;
    if ((x.rowwise().sum().array() - target).abs().maxCoeff() > tol * n)
      throw std::invalid_argument("project_to_cvetkovic: row sums off");
    sum += x;
  }
  Matrix j_minus_i = Matrix::Constant(n, n, 1.0) - Matrix::Identity(n, n);
  if ((sum - j_minus_i).cwiseAbs().maxCoeff() > tol * n)
    throw std::invalid_argument("project_to_cvetkovic: blocks do not sum to J - I");

  CvetkovicProjection out;
  out.x = point.blocks[0];
  out.max_degree_error = (out.x.rowwise().sum().array() - 2.0).abs().maxCoeff();
  out.max_diag_abs = out.x.diagonal().cwiseAbs().maxCoeff();
  out.min_entry = out.x.minCoeff();
  out.max_entry = out.x.maxCoeff();

  const double gamma = 2.0 - 2.0 * std::cos(kTwoPi / n);
  Matrix lmi = 2.0 * Matrix::Identity(n, n) - out.x + gamma * j_minus_i;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(lmi, Eigen::EigenvaluesOnly);
  out.lmi_min_eigenvalue = eig.eigenvalues().minCoeff();

  // certificate: the LMI is the nonnegative aggregation of the multi-block
  // matrix inequalities with the closed-form weights
  AggregationWeights w = aggregation_weights(n);
  Matrix agg = Matrix::Zero(n, n);
  for (int i = 0; i <= nd; ++i) {
    Matrix li = Matrix::Identity(n, n);
    for (int k = 1; k <= nd; ++k)
      li += std::cos(kTwoPi * i * k / n) * point.blocks[k - 1];
    agg += w.x[i] * li;
  }
  out.aggregation_residual = (agg - lmi).cwiseAbs().maxCoeff();
  out.pass = out.lmi_min_eigenvalue >= -1e-6 && out.max_degree_error <= 1e-5 &&
             out.min_entry >= -1e-6 && out.max_entry <= 1.0 + 1e-6;
  return out;
}

ExtendabilityResult extendability_check(const Matrix& xbar, const SolverConfig& config) {
  const int n = static_cast<int>(xbar.rows());
  if (xbar.cols() != n || n < 4)
    throw std::invalid_argument("extendability_check: need a square matrix, n >= 4");
  if ((xbar - xbar.transpose()).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("extendability_check: matrix must be symmetric");
  if (xbar.diagonal().cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("extendability_check: diagonal must be zero");
  if (xbar.minCoeff() < -1e-8 || xbar.maxCoeff() > 1.0 + 1e-8)
    throw std::invalid_argument("extendability_check: entries must lie in [0, 1]");
  if ((xbar.rowwise().sum().array() - 2.0).abs().maxCoeff() > 1e-8)
    throw std::invalid_argument("extendability_check: row sums must equal 2");

  DistanceMatrix zero_d(Matrix::Zero(n, n));
  ConicProgram p = build_new_sdp(zero_d);
  p.objective.setZero();
  const int np = pair_count(n);
  // pin X^(1) to xbar
  const int m0 = static_cast<int>(p.equality.rows());
  std::vector<Triplet> trip;
  for (int k = 0; k < p.equality.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(p.equality, k); it; ++it)
      trip.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
  Vector rhs(m0 + np);
  rhs.head(m0) = p.rhs;
  for (int b = 1; b < n; ++b)
    for (int a = 0; a < b; ++a) {
      const int r = m0 + pair_index(a, b);
      trip.emplace_back(r, pair_index(a, b), 1.0);
      rhs[r] = xbar(a, b);
    }
  p.equality.resize(m0 + np, p.total_dim());
  p.equality.setFromTriplets(trip.begin(), trip.end());
  p.rhs = rhs;

  ExtendabilityResult res;
  res.report = solve(p, config);
  // A feasibility problem has constant objective zero, so the duality-gap
  // part of the optimality test is noise; accept any returned point that
  // certifies itself against the pinned system.
  if (res.report.status == SolveStatus::Optimal) {
    res.feasible = true;
  } else if (res.report.status == SolveStatus::SlowProgress ||
             res.report.status == SolveStatus::IterationLimit) {
    ResidualReport rr = residuals(p, res.report.primal);
    res.feasible = rr.max_equality_abs <= 1e-6 && rr.max_cone_violation <= 1e-6;
  }
  if (res.feasible) res.witness = extract_multiblock_point(n, res.report.primal);
  return res;
}

namespace {

// Fraction-free Bareiss determinant over the integers.
long long bareiss_determinant(std::vector<std::vector<long long>> a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return 1;
  __int128 prev = 1;
  int sign = 1;
  std::vector<std::vector<__int128>> w(n, std::vector<__int128>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w[i][j] = a[i][j];
  for (int k = 0; k < n - 1; ++k) {
    if (w[k][k] == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i)
        if (w[i][k] != 0) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return 0;
      std::swap(w[k], w[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        w[i][j] = (w[i][j] * w[k][k] - w[i][k] * w[k][j]) / prev;
    prev = w[k][k];
  }
  return sign * static_cast<long long>(w[n - 1][n - 1]);
}

bool nearly_integral(const Matrix& x, double tol = 1e-9) {
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j)
      if (std::abs(x(i, j) - std::round(x(i, j))) > tol) return false;
  return true;
}

}  // namespace

MinorCheck minor_inequality_check(const Matrix& x) {
  const int n = static_cast<int>(x.rows());
  if (x.cols() != n) throw std::invalid_argument("minor_inequality_check: square matrix required");
  Matrix m = 2.0 * Matrix::Identity(n, n) - x;
  Matrix minor = m.bottomRightCorner(n - 1, n - 1);
  MinorCheck out;
  if (nearly_integral(minor)) {
    std::vector<std::vector<long long>> a(n - 1, std::vector<long long>(n - 1));
    for (int i = 0; i < n - 1; ++i)
      for (int j = 0; j < n - 1; ++j) a[i][j] = llround(minor(i, j));
    out.value = static_cast<double>(bareiss_determinant(std::move(a)));
  } else {
    out.value = minor.partialPivLu().determinant();
  }
  out.pass = out.value >= static_cast<double>(n) - 1e-6;
  return out;
}

long long spanning_tree_minor(const IntMatrix& adjacency) {
  const int n = static_cast<int>(adjacency.rows());
  if (adjacency.cols() != n)
    throw std::invalid_argument("spanning_tree_minor: square matrix required");
  for (int i = 0; i < n; ++i) {
    if (adjacency(i, i) != 0)
      throw std::invalid_argument("spanning_tree_minor: diagonal must be zero");
    for (int j = 0; j < n; ++j) {
      if (adjacency(i, j) != 0 && adjacency(i, j) != 1)
        throw std::invalid_argument("spanning_tree_minor: entries must be 0/1");
      if (adjacency(i, j) != adjacency(j, i))
        throw std::invalid_argument("spanning_tree_minor: matrix must be symmetric");
    }
  }
  if (n <= 1) return 1;
  std::vector<std::vector<long long>> lap(n - 1, std::vector<long long>(n - 1, 0));
  for (int i = 1; i < n; ++i) {
    long long deg = 0;
    for (int j = 0; j < n; ++j) deg += adjacency(i, j);
    lap[i - 1][i - 1] = deg;
    for (int j = 1; j < n; ++j)
      if (j != i) lap[i - 1][j - 1] = -adjacency(i, j);
  }
  return bareiss_determinant(std::move(lap));
}

BoundProfile new_sdp_profile(const DistanceMatrix& d, const NewSdpOptions&) {
  BoundProfile prof;
  prof.nonneg_upper = {1.0};
  prof.psd_trace.assign(d.n / 2, static_cast<double>(d.n));
  return prof;
}

BoundProfile cvetkovic_profile(const DistanceMatrix& d) {
  BoundProfile prof;
  prof.nonneg_upper = {1.0};
  prof.psd_trace = {2.0 * d.n};
  return prof;
}

BoundProfile qap_profile(const DistanceMatrix& d) {
  BoundProfile prof;
  prof.nonneg_upper = {1.0};
  prof.psd_trace = {1.0 + d.n};
  return prof;
}

double certified_lower_bound(const ConicProgram& program, const SolveReport& report,
                             const BoundProfile& profile) {
  Vector ztilde = program.objective - program.equality.transpose() * report.dual;
  double bound = program.rhs.dot(report.dual);
  const auto offsets = program.segment_offsets();
  size_t nn_seen = 0, psd_seen = 0;
  for (size_t s = 0; s < program.cones.size(); ++s) {
    const auto& seg = program.cones[s];
    if (seg.kind == ConeKind::Free)
      throw std::invalid_argument("certified_lower_bound: free segments unsupported");
    if (seg.kind == ConeKind::Nonnegative) {
      const double upper = profile.nonneg_upper.at(nn_seen++);
      auto zs = ztilde.segment(offsets[s], seg.dim);
      for (int i = 0; i < seg.dim; ++i)
        if (zs[i] < 0.0) bound += zs[i] * upper;
    } else {
      const double trace_bound = profile.psd_trace.at(psd_seen++);
      Matrix zm = smat(ztilde.segment(offsets[s], seg.dim), seg.order);
      Eigen::SelfAdjointEigenSolver<Matrix> eig(zm, Eigen::EigenvaluesOnly);
      const double lmin = eig.eigenvalues().minCoeff();
      if (lmin < 0.0) bound += lmin * trace_bound;
    }
  }
  return bound;
}

BoundResult solve_bound(BoundMethod method, const DistanceMatrix& d,
                        const SolverConfig& config) {
  ConicProgram program;
  BoundProfile profile;
  switch (method) {
    case BoundMethod::NewSdp:
      program = build_new_sdp(d);
      profile = new_sdp_profile(d);
      break;
    case BoundMethod::Cvetkovic:
      program = build_cvetkovic_sdp(d);
      profile = cvetkovic_profile(d);
      break;
    case BoundMethod::QapSdp:
      program = build_qap_sdp(d);
      profile = qap_profile(d);
      break;
    case BoundMethod::HeldKarp:
      throw std::invalid_argument("solve_bound: the held-karp bound lives in held_karp");
  }
  const auto t0 = std::chrono::steady_clock::now();
  SolveReport rep = solve(program, config);
  const auto t1 = std::chrono::steady_clock::now();
  BoundResult res;
  res.method = method;
  res.integral_data = d.integral();
  res.raw = certified_lower_bound(program, rep, profile);
  res.rounded = apply_rounding(res.raw, res.integral_data);
  res.report = std::move(rep);
  res.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  return res;
}

}  // namespace tspbound
