// The subtour-elimination LP bound, computed by cutting planes with exact
// minimum-cut separation, plus the full-enumeration oracle.
#pragma once

#include <optional>
#include <vector>

#include "tspbound/conic.hpp"
#include "tspbound/instances.hpp"
#include "tspbound/relaxations.hpp"

namespace tspbound {

/// Canonically stored vertex subsets (proper, nonempty, deduplicated; the
/// side not containing vertex 0 is kept, smaller side on ties).
struct CutPool {
  std::vector<std::vector<int>> subsets;

  /// Returns true when the subset was new.
  bool add(std::vector<int> subset, int n);
  static std::vector<int> canonical(std::vector<int> subset, int n);
};

struct SeparationResult {
  bool violated = false;
  std::vector<int> subset;  // canonical form when violated
  double cut_weight = 0.0;  // weight of the reported (or global minimum) cut
};

/// Deterministic Stoer-Wagner global minimum cut on nonnegative symmetric
/// weights. Returns one side of an optimal cut and its weight.
std::pair<std::vector<int>, double> global_min_cut(const Matrix& weights);

/// Reports a subset whose cut weight is below 2 - tolerance (preferring the
/// global minimum cut) or certifies that the minimum cut weight is >= 2.
SeparationResult separate(const Matrix& xfrac, double tolerance = 1e-7);

struct HeldKarpConfig {
  SolverConfig lp;
  int max_cut_rounds = 500;
  double separation_tolerance = 1e-7;
};

struct HeldKarpResult {
  BoundResult bound;
  CutPool pool;
  int rounds = 0;
  bool converged = false;  // false: iteration cap hit with violation present
  std::vector<double> round_values;  // LP value per cutting-plane round
  Matrix x;                          // final fractional point
};

/// Cutting-plane computation of the subtour-elimination LP value.
HeldKarpResult held_karp_bound(const DistanceMatrix& d, const HeldKarpConfig& config = {});

/// Solves the LP with every subtour inequality present (n <= 12); the oracle
/// for the cutting-plane loop.
HeldKarpResult full_enumeration_lp(const DistanceMatrix& d, const SolverConfig& config = {});

}  // namespace tspbound
