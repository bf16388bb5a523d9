// Instance ingestion (TSPLIB subset), facet-instance generation, and a
// brute-force tour oracle.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tspbound {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Symmetric nonnegative edge-length matrix with zero diagonal.
struct DistanceMatrix {
  int n = 0;
  Matrix entries;

  DistanceMatrix() = default;
  /// Validates symmetry (exact) and a zero diagonal (exact).
  explicit DistanceMatrix(Matrix m);

  bool integral(double tol = 1e-9) const;
};

enum class WeightType {
  ExplicitFullMatrix,
  ExplicitLowerDiagRow,
  ExplicitUpperRow,
  Euclidean2d,
};

std::string to_string(WeightType t);

struct TsplibInstance {
  std::string name;
  int dimension = 0;
  WeightType weight_type = WeightType::ExplicitFullMatrix;
  std::vector<double> raw_payload;  // weights, or flattened coordinates
  DistanceMatrix distances;
};

struct TsplibParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses a TSPLIB-format instance of a supported weight type. Header keys
/// are case-insensitive; EDGE_WEIGHT_SECTION is consumed as whitespace
/// separated numbers regardless of line wrapping; EUC_2D uses the TSPLIB
/// nearest-integer rounding rule.
TsplibInstance parse_tsplib(const std::string& text);
TsplibInstance parse_tsplib_file(const std::string& path);

/// Serializes as an explicit FULL_MATRIX instance (round-trip safe).
std::string to_tsplib_full_matrix(const std::string& name, const DistanceMatrix& d);

/// A TSP instance built from a facet-defining inequality; the optimal tour
/// length equals `rhs` by construction.
struct FacetInstance {
  int n = 0;
  int subset_size = 0;
  DistanceMatrix distances;
  long long rhs = 0;
  std::string class_label;  // subtour-2, subtour-3, ...
};

/// One representative subtour-facet instance per subset size s = 2..n/2:
/// D(i,j) = 1 iff exactly one of i, j lies in {0..s-1}.
std::vector<FacetInstance> subtour_facet_instances(int n = 8);

struct TourResult {
  double length = 0.0;
  std::vector<int> tour;  // 0-based city order, starts at city 0
};

/// Deterministic SplitMix64 stream; the one generator behind every seeded
/// instance in the test suites and the CLI.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  /// uniform integer in [lo, hi]
  long long uniform(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

/// Random symmetric integral instance with entries uniform in [1, max_weight].
DistanceMatrix random_integral_instance(int n, std::uint64_t seed, int max_weight = 50);

/// Exhaustive tour enumeration, n <= 12. City 0 is fixed first and the
/// orientation is normalized (second city below the last) to kill the
/// reflection symmetry; ties break toward the lexicographically first tour.
TourResult brute_force_tsp(const DistanceMatrix& d);

}  // namespace tspbound
