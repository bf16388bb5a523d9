#include "tspbound/held_karp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>

namespace tspbound {

namespace {

int pair_index(int a, int b) {  // a < b
  return b * (b - 1) / 2 + a;
}

// Builds the degree/bounds LP with one surplus row per pooled cut.
// Variables: X pairs, U = J - X slack pairs, one surplus per cut.
struct LpLayout {
  int n = 0;
  int np = 0;
  int ncuts = 0;
  int x_idx(int a, int b) const { return pair_index(std::min(a, b), std::max(a, b)); }
  int u_idx(int a, int b) const { return np + x_idx(a, b); }
  int s_idx(int c) const { return 2 * np + c; }
  int total() const { return 2 * np + ncuts; }
};

ConicProgram build_lp(const DistanceMatrix& d, const CutPool& pool) {
  const int n = d.n;
  LpLayout lay{n, n * (n - 1) / 2, static_cast<int>(pool.subsets.size())};
  ConicProgram p;
  p.cones = {ConeSegment::nonnegative(lay.total())};
  p.objective = Vector::Zero(lay.total());
  for (int b = 1; b < n; ++b)
    for (int a = 0; a < b; ++a) p.objective[lay.x_idx(a, b)] = d.entries(a, b);

  const int m = n + lay.np + lay.ncuts;
  p.rhs = Vector::Zero(m);
  std::vector<Triplet> trip;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (b != a) trip.emplace_back(a, lay.x_idx(a, b), 1.0);
    p.rhs[a] = 2.0;
  }
  for (int b = 1; b < n; ++b)
    for (int a = 0; a < b; ++a) {
      const int r = n + pair_index(a, b);
      trip.emplace_back(r, lay.x_idx(a, b), 1.0);
      trip.emplace_back(r, lay.u_idx(a, b), 1.0);
      p.rhs[r] = 1.0;
    }
  for (int c = 0; c < lay.ncuts; ++c) {
    const int r = n + lay.np + c;
    std::vector<char> inside(n, 0);
    for (int v : pool.subsets[c]) inside[v] = 1;
    for (int b = 1; b < n; ++b)
      for (int a = 0; a < b; ++a)
        if (inside[a] != inside[b]) trip.emplace_back(r, lay.x_idx(a, b), 1.0);
    trip.emplace_back(r, lay.s_idx(c), -1.0);
    p.rhs[r] = 2.0;
  }
  p.equality.resize(m, lay.total());
  p.equality.setFromTriplets(trip.begin(), trip.end());
  return p;
}

Matrix extract_x(const DistanceMatrix& d, const Vector& primal) {
  const int n = d.n;
  Matrix x = Matrix::Zero(n, n);
  for (int b = 1; b < n; ++b)
    for (int a = 0; a < b; ++a) x(a, b) = x(b, a) = primal[pair_index(a, b)];
  return x;
}

BoundProfile lp_profile(const DistanceMatrix& d, int ncuts) {
  BoundProfile prof;
  // X and U entries sit in [0,1]; a cut surplus is at most the cut's edge
  // count, crudely bounded by n^2/4.
  (void)ncuts;
  prof.nonneg_upper = {std::max(1.0, d.n * d.n / 4.0)};
  return prof;
}

BoundResult package_bound(const DistanceMatrix& d, const ConicProgram& p,
                          SolveReport rep, double seconds) {
  BoundResult res;
  res.method = BoundMethod::HeldKarp;
  res.integral_data = d.integral();
  res.raw = certified_lower_bound(p, rep, lp_profile(d, 0));
  res.rounded = apply_rounding(res.raw, res.integral_data);
  res.report = std::move(rep);
  res.wall_seconds = seconds;
  return res;
}

}  // namespace

std::vector<int> CutPool::canonical(std::vector<int> subset, int n) {
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  // canonical side: the one not containing vertex 0
  const bool has_zero = !subset.empty() && subset.front() == 0;
  if (!has_zero) return subset;
  std::vector<char> inside(n, 0);
  for (int v : subset) inside[v] = 1;
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (!inside[v]) out.push_back(v);
  return out;
}

bool CutPool::add(std::vector<int> subset, int n) {
  std::vector<int> canon = canonical(std::move(subset), n);
  if (canon.empty() || static_cast<int>(canon.size()) >= n) return false;
  for (const auto& s : subsets)
    if (s == canon) return false;
  subsets.push_back(std::move(canon));
  return true;
}

std::pair<std::vector<int>, double> global_min_cut(const Matrix& weights) {
  const int n = static_cast<int>(weights.rows());
  if (n < 2 || weights.cols() != n)
    throw std::invalid_argument("global_min_cut: need a square matrix, n >= 2");
  if ((weights - weights.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("global_min_cut: weights must be symmetric");
  if (weights.minCoeff() < -1e-12)
    throw std::invalid_argument("global_min_cut: weights must be nonnegative");

  Matrix w = weights;
  w.diagonal().setZero();
  std::vector<std::vector<int>> groups(n);
  std::vector<int> active(n);
  for (int i = 0; i < n; ++i) {
    groups[i] = {i};
    active[i] = i;
  }
  double best_weight = std::numeric_limits<double>::infinity();
  std::vector<int> best_side;

  int live = n;
  while (live > 1) {
    // maximum-adjacency order starting from the first active vertex
    std::vector<int> order;
    std::vector<char> added(n, 0);
    std::vector<double> adj(n, 0.0);
    int first = active[0];
    order.push_back(first);
    added[first] = 1;
    for (int i = 0; i < live; ++i) {
      int v = active[i];
      if (v != first) adj[v] = w(first, v);
    }
    for (int step = 1; step < live; ++step) {
      int pick = -1;
      double best_adj = -1.0;
      for (int i = 0; i < live; ++i) {
        int v = active[i];
        if (!added[v] && adj[v] > best_adj) {
          best_adj = adj[v];
          pick = v;
        }
      }
      order.push_back(pick);
      added[pick] = 1;
      for (int i = 0; i < live; ++i) {
        int v = active[i];
        if (!added[v]) adj[v] += w(pick, v);
      }
    }
    const int t = order.back();
    const int s = order[order.size() - 2];
    const double cut_of_phase = adj[t];
    if (cut_of_phase < best_weight) {
      best_weight = cut_of_phase;
      best_side = groups[t];
    }
    // merge t into s
    for (int i = 0; i < live; ++i) {
      int v = active[i];
      if (v != t && v != s) {
        w(s, v) += w(t, v);
        w(v, s) = w(s, v);
      }
    }
    groups[s].insert(groups[s].end(), groups[t].begin(), groups[t].end());
    active.erase(std::find(active.begin(), active.end(), t));
    --live;
  }
  std::sort(best_side.begin(), best_side.end());
  return {best_side, best_weight};
}

SeparationResult separate(const Matrix& xfrac, double tolerance) {
  const int n = static_cast<int>(xfrac.rows());
  auto [side, weight] = global_min_cut(xfrac);
  SeparationResult res;
  res.cut_weight = weight;
  if (weight < 2.0 - tolerance) {
    res.violated = true;
    res.subset = CutPool::canonical(std::move(side), n);
  }
  return res;
}

HeldKarpResult held_karp_bound(const DistanceMatrix& d, const HeldKarpConfig& config) {
  if (d.n < 4) throw std::invalid_argument("held_karp_bound: need n >= 4");
  if (config.max_cut_rounds < 1)
    throw std::invalid_argument("held_karp_bound: need at least one round");
  const auto t0 = std::chrono::steady_clock::now();
  HeldKarpResult out;
  ConicProgram p;
  SolveReport rep;
  for (out.rounds = 0; out.rounds < config.max_cut_rounds; ++out.rounds) {
    p = build_lp(d, out.pool);
    rep = solve(p, config.lp);
    out.round_values.push_back(rep.primal_objective);
    out.x = extract_x(d, rep.primal);
    SeparationResult sep = separate(out.x, config.separation_tolerance);
    if (!sep.violated) {
      out.converged = true;
      break;
    }
    if (!out.pool.add(sep.subset, d.n)) {
      // the most violated cut is already pooled: numerical stall
      break;
    }
  }
  const auto t1 = std::chrono::steady_clock::now();
  out.bound = package_bound(d, p, std::move(rep), std::chrono::duration<double>(t1 - t0).count());
  return out;
}

HeldKarpResult full_enumeration_lp(const DistanceMatrix& d, const SolverConfig& config) {
  const int n = d.n;
  if (n < 4) throw std::invalid_argument("full_enumeration_lp: need n >= 4");
  if (n > 12)
    throw CapacityError("full_enumeration_lp: n = " + std::to_string(n) +
                        " exceeds the enumeration cap of 12");
  const auto t0 = std::chrono::steady_clock::now();
  HeldKarpResult out;
  // every proper subset of {1..n-1} (vertex 0 on the complement side) with
  // 2 <= |S| <= n - 2; singleton cuts are implied by the degree rows
  for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
    std::vector<int> subset;
    for (int v = 0; v < n - 1; ++v)
      if (mask & (1u << v)) subset.push_back(v + 1);
    const int size = static_cast<int>(subset.size());
    if (size < 2 || size > n - 2) continue;
    out.pool.add(std::move(subset), n);
  }
  ConicProgram p = build_lp(d, out.pool);
  SolveReport rep = solve(p, config);
  out.x = extract_x(d, rep.primal);
  out.rounds = 1;
  out.converged = rep.status == SolveStatus::Optimal;
  out.round_values.push_back(rep.primal_objective);
  const auto t1 = std::chrono::steady_clock::now();
  out.bound = package_bound(d, p, std::move(rep), std::chrono::duration<double>(t1 - t0).count());
  return out;
}

}  // namespace tspbound
