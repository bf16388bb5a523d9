#include "tspbound/instances.hpp"

#include <cstdint>
#include <vector>

#include "doctest.h"

using namespace tspbound;

namespace {

const char* kTiny3 =
    "NAME: tiny3\n"
    "TYPE: TSP\n"
    "DIMENSION: 3\n"
    "EDGE_WEIGHT_TYPE: EXPLICIT\n"
    "EDGE_WEIGHT_FORMAT: FULL_MATRIX\n"
    "EDGE_WEIGHT_SECTION\n"
    "0 1 2\n"
    "1 0 3\n"
    "2 3 0\n"
    "EOF\n";

// exact Held-Karp dynamic program, the independent oracle for brute force
double dp_tsp(const DistanceMatrix& d) {
  const int n = d.n;
  const int m = n - 1;
  const std::uint32_t ns = 1u << m;
  std::vector<double> dp(static_cast<size_t>(ns) * m, 1e18);
  for (int j = 0; j < m; ++j) dp[(size_t)(1u << j) * m + j] = d.entries(0, j + 1);
  for (std::uint32_t s = 1; s < ns; ++s)
    for (int j = 0; j < m; ++j) {
      if (!(s & (1u << j))) continue;
      const double cur = dp[(size_t)s * m + j];
      if (cur > 1e17) continue;
      for (int k = 0; k < m; ++k) {
        if (s & (1u << k)) continue;
        const std::uint32_t t = s | (1u << k);
        const double cand = cur + d.entries(j + 1, k + 1);
        if (cand < dp[(size_t)t * m + k]) dp[(size_t)t * m + k] = cand;
      }
    }
  double best = 1e18;
  for (int j = 0; j < m; ++j)
    best = std::min(best, dp[(size_t)(ns - 1) * m + j] + d.entries(j + 1, 0));
  return best;
}

}  // namespace

TEST_CASE("tsplib parsing") {
  SUBCASE("synthetic full matrix") {
    TsplibInstance inst = parse_tsplib(kTiny3);
    CHECK(inst.name == "tiny3");
    CHECK(inst.dimension == 3);
    CHECK(inst.weight_type == WeightType::ExplicitFullMatrix);
    Matrix expect(3, 3);
    expect << 0, 1, 2, 1, 0, 3, 2, 3, 0;
    CHECK((inst.distances.entries - expect).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("unsupported weight type is an explicit error naming the type") {
    std::string text = kTiny3;
    auto at = text.find("EXPLICIT");
    text.replace(at, 8, "GEO");
    try {
      parse_tsplib(text);
      FAIL("expected UnsupportedFormatError");
    } catch (const UnsupportedFormatError& e) {
      CHECK(std::string(e.what()).find("GEO") != std::string::npos);
    }
  }
  SUBCASE("truncated section reports the token position") {
    std::string text =
        "DIMENSION: 3\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: FULL_MATRIX\n"
        "EDGE_WEIGHT_SECTION\n0 1 2\n1 0\n";
    try {
      parse_tsplib(text);
      FAIL("expected TsplibParseError");
    } catch (const TsplibParseError& e) {
      CHECK(std::string(e.what()).find("token") != std::string::npos);
    }
  }
  SUBCASE("lower-diag-row layout") {
    std::string text =
        "DIMENSION: 3\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: LOWER_DIAG_ROW\n"
        "EDGE_WEIGHT_SECTION\n0 5 0 6 7 0\nEOF\n";
    TsplibInstance inst = parse_tsplib(text);
    CHECK(inst.distances.entries(0, 1) == 5);
    CHECK(inst.distances.entries(0, 2) == 6);
    CHECK(inst.distances.entries(1, 2) == 7);
  }
  SUBCASE("euc2d uses nearest-integer rounding") {
    std::string text =
        "DIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n"
        "1 0.0 0.0\n2 3.0 4.0\n3 0.0 1.2\nEOF\n";
    TsplibInstance inst = parse_tsplib(text);
    CHECK(inst.distances.entries(0, 1) == 5.0);
    CHECK(inst.distances.entries(0, 2) == 1.0);  // 1.2 rounds to 1
  }
  SUBCASE("round trip through full-matrix serialization") {
    TsplibInstance inst = parse_tsplib(kTiny3);
    std::string text = to_tsplib_full_matrix("tiny3", inst.distances);
    TsplibInstance again = parse_tsplib(text);
    CHECK((inst.distances.entries - again.distances.entries).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("fixture instances parse to the right shapes") {
  const std::string dir = TSPBOUND_FIXTURE_DIR;
  struct Row {
    const char* name;
    int n;
  } rows[] = {{"gr17", 17}, {"gr21", 21}, {"gr24", 24}, {"bays29", 29}};
  for (const auto& row : rows) {
    TsplibInstance inst = parse_tsplib_file(dir + "/" + std::string(row.name) + ".tsp");
    CHECK(inst.dimension == row.n);
    CHECK(inst.distances.n == row.n);
    // DistanceMatrix construction already guarantees exact symmetry
    CHECK(inst.distances.integral());
  }
}

TEST_CASE("subtour facet instances") {
  auto facets = subtour_facet_instances(8);
  REQUIRE(facets.size() == 3);
  CHECK(facets[0].subset_size == 2);
  CHECK(facets[2].subset_size == 4);
  // s = 2: 2 * 6 = 12 unit entries above the diagonal
  int count = 0;
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) count += facets[0].distances.entries(i, j) > 0 ? 1 : 0;
  CHECK(count == 12);
  count = 0;
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) count += facets[2].distances.entries(i, j) > 0 ? 1 : 0;
  CHECK(count == 16);
  for (const auto& f : facets) {
    CHECK(brute_force_tsp(f.distances).length == doctest::Approx(f.rhs));
  }
}

TEST_CASE("brute force tour enumeration") {
  SUBCASE("uniform distances") {
    DistanceMatrix d(Matrix::Constant(6, 6, 1.0) - Matrix::Identity(6, 6));
    auto res = brute_force_tsp(d);
    CHECK(res.length == doctest::Approx(6.0));
    CHECK(res.tour.size() == 6);
    CHECK(res.tour[0] == 0);
  }
  SUBCASE("matches the dynamic-programming oracle on seeded instances") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
      DistanceMatrix d = random_integral_instance(7, seed);
      CHECK(brute_force_tsp(d).length == doctest::Approx(dp_tsp(d)));
    }
  }
  SUBCASE("capacity error above the cap") {
    DistanceMatrix d(Matrix::Zero(13, 13));
    CHECK_THROWS_AS(brute_force_tsp(d), CapacityError);
  }
  SUBCASE("deterministic witness tour evaluates to its own length") {
    DistanceMatrix d = random_integral_instance(8, 11);
    auto res = brute_force_tsp(d);
    double len = 0.0;
    for (size_t i = 0; i < res.tour.size(); ++i)
      len += d.entries(res.tour[i], res.tour[(i + 1) % res.tour.size()]);
    CHECK(len == doctest::Approx(res.length));
  }
}

TEST_CASE("distance matrix validation") {
  Matrix bad = Matrix::Zero(4, 4);
  bad(0, 1) = 1.0;  // asymmetric
  CHECK_THROWS_AS(DistanceMatrix{bad}, std::invalid_argument);
  Matrix diag = Matrix::Identity(4, 4);
  CHECK_THROWS_AS(DistanceMatrix{diag}, std::invalid_argument);
}
