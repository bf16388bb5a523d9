#include "tspbound/held_karp.hpp"

#include <cmath>

#include "doctest.h"

using namespace tspbound;

namespace {

Matrix cycle_adjacency(int n) {
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, (i + 1) % n) = 1.0;
    m((i + 1) % n, i) = 1.0;
  }
  return m;
}

Matrix two_squares() {
  Matrix m = Matrix::Zero(8, 8);
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < 4; ++i) {
      int a = 4 * c + i, b = 4 * c + (i + 1) % 4;
      m(a, b) = m(b, a) = 1.0;
    }
  return m;
}

// exhaustive minimum cut over all proper subsets, the oracle for n <= 16
std::pair<double, std::vector<int>> min_cut_by_enumeration(const Matrix& w) {
  const int n = static_cast<int>(w.rows());
  double best = 1e18;
  unsigned best_mask = 1;
  for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
    double cut = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const bool ii = i == 0 ? false : (mask >> (i - 1)) & 1;
        const bool jj = j == 0 ? false : (mask >> (j - 1)) & 1;
        if (ii != jj) cut += w(i, j);
      }
    if (cut < best) {
      best = cut;
      best_mask = mask;
    }
  }
  std::vector<int> side;
  for (int v = 1; v < n; ++v)
    if ((best_mask >> (v - 1)) & 1) side.push_back(v);
  return {best, side};
}

double cut_weight(const Matrix& w, const std::vector<int>& subset) {
  const int n = static_cast<int>(w.rows());
  std::vector<char> in(n, 0);
  for (int v : subset) in[v] = 1;
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (in[i] != in[j]) acc += w(i, j);
  return acc;
}

}  // namespace

TEST_CASE("global minimum cut") {
  SUBCASE("unit 4-cycle has weight 2") {
    auto [side, weight] = global_min_cut(cycle_adjacency(4));
    CHECK(weight == doctest::Approx(2.0));
    CHECK(!side.empty());
  }
  SUBCASE("path of three unit edges has weight 1") {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 1) = m(1, 0) = 1;
    m(1, 2) = m(2, 1) = 1;
    m(2, 3) = m(3, 2) = 1;
    auto [side, weight] = global_min_cut(m);
    CHECK(weight == doctest::Approx(1.0));
  }
  SUBCASE("matches exhaustive enumeration on seeded weights") {
    for (std::uint64_t seed : {5ull, 6ull, 7ull}) {
      const int n = 10;
      SplitMix64 rng(seed);
      Matrix w = Matrix::Zero(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          w(i, j) = w(j, i) = static_cast<double>(rng.uniform(0, 9)) / 3.0;
      auto [side, weight] = global_min_cut(w);
      auto [oracle_weight, oracle_side] = min_cut_by_enumeration(w);
      CHECK(weight == doctest::Approx(oracle_weight).epsilon(1e-10));
      CHECK(cut_weight(w, side) == doctest::Approx(weight).epsilon(1e-10));
    }
  }
  SUBCASE("n=12 seeded graphs match enumeration") {
    SplitMix64 rng(99);
    const int n = 12;
    Matrix w = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) w(i, j) = w(j, i) = static_cast<double>(rng.uniform(0, 4));
    auto [side, weight] = global_min_cut(w);
    CHECK(weight == doctest::Approx(min_cut_by_enumeration(w).first));
  }
}

TEST_CASE("separation oracle") {
  SUBCASE("two disjoint 4-cycles violate with weight 0") {
    SeparationResult res = separate(two_squares());
    CHECK(res.violated);
    CHECK(res.cut_weight == doctest::Approx(0.0));
    CHECK(res.subset.size() == 4);
    CHECK(cut_weight(two_squares(), res.subset) == doctest::Approx(0.0));
  }
  SUBCASE("the 8-cycle has no violated subtour inequality") {
    SeparationResult res = separate(cycle_adjacency(8));
    CHECK_FALSE(res.violated);
    CHECK(res.cut_weight >= 2.0 - 1e-9);
  }
  SUBCASE("matches exhaustive enumeration on a random degree-feasible point") {
    // convex combination of two tours on 7 cities: degree-2 by construction
    const int n = 7;
    Matrix a = cycle_adjacency(n);
    Matrix b = Matrix::Zero(n, n);
    std::vector<int> perm = {0, 2, 4, 6, 1, 3, 5};
    for (int i = 0; i < n; ++i) {
      int u = perm[i], v = perm[(i + 1) % n];
      b(u, v) = b(v, u) = 1.0;
    }
    Matrix x = 0.4 * a + 0.6 * b;
    SeparationResult res = separate(x);
    auto [oracle_weight, oracle_side] = min_cut_by_enumeration(x);
    if (oracle_weight < 2.0 - 1e-7) {
      CHECK(res.violated);
      CHECK(res.cut_weight == doctest::Approx(oracle_weight));
    } else {
      CHECK_FALSE(res.violated);
    }
  }
}

TEST_CASE("cut pool canonicalization") {
  CutPool pool;
  CHECK(pool.add({1, 2}, 6));
  CHECK_FALSE(pool.add({2, 1}, 6));         // duplicate
  CHECK_FALSE(pool.add({0, 3, 4, 5}, 6));   // complement of {1,2}
  CHECK(pool.add({3}, 6));
  CHECK(pool.subsets.size() == 2);
}

TEST_CASE("held-karp bound by cutting planes") {
  SUBCASE("uniform instance needs no cuts") {
    DistanceMatrix d(Matrix::Constant(6, 6, 1.0) - Matrix::Identity(6, 6));
    HeldKarpResult res = held_karp_bound(d);
    CHECK(res.converged);
    CHECK(res.bound.raw == doctest::Approx(6.0).epsilon(1e-7));
    CHECK(res.bound.rounded == doctest::Approx(6.0));
  }
  SUBCASE("agrees with full enumeration on seeded instances") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
      const int n = 7 + static_cast<int>(seed % 3);
      DistanceMatrix d = random_integral_instance(n, seed);
      HeldKarpResult cut = held_karp_bound(d);
      HeldKarpResult full = full_enumeration_lp(d);
      CHECK(cut.converged);
      CHECK(std::abs(cut.bound.raw - full.bound.raw) <=
            1e-7 * (1 + std::abs(full.bound.raw)));
    }
  }
  SUBCASE("LP values are non-decreasing across rounds") {
    DistanceMatrix d = random_integral_instance(9, 17);
    HeldKarpResult res = held_karp_bound(d);
    for (size_t i = 1; i < res.round_values.size(); ++i)
      CHECK(res.round_values[i] >= res.round_values[i - 1] - 1e-7);
  }
  SUBCASE("bounded by the tour oracle") {
    for (std::uint64_t seed : {11ull, 12ull}) {
      DistanceMatrix d = random_integral_instance(8, seed);
      HeldKarpResult res = held_karp_bound(d);
      CHECK(res.bound.rounded <= brute_force_tsp(d).length + 1e-9);
    }
  }
  SUBCASE("subtour facet instance solves to 2") {
    auto facets = subtour_facet_instances(8);
    HeldKarpResult res = full_enumeration_lp(facets[0].distances);
    CHECK(res.bound.raw == doctest::Approx(2.0).epsilon(1e-6));
  }
  SUBCASE("full enumeration on the uniform 5-instance") {
    DistanceMatrix d(Matrix::Constant(5, 5, 1.0) - Matrix::Identity(5, 5));
    CHECK(full_enumeration_lp(d).bound.raw == doctest::Approx(5.0).epsilon(1e-7));
  }
  SUBCASE("full enumeration capacity cap") {
    DistanceMatrix d(Matrix::Zero(13, 13));
    CHECK_THROWS_AS(full_enumeration_lp(d), CapacityError);
  }
}

TEST_CASE("held-karp dominates the single-matrix SDP") {
  for (std::uint64_t seed : {41ull, 42ull}) {
    DistanceMatrix d = random_integral_instance(7, seed);
    HeldKarpResult hk = held_karp_bound(d);
    BoundResult cv = solve_bound(BoundMethod::Cvetkovic, d);
    CHECK(hk.bound.raw >= cv.raw - 1e-6 * (1 + std::abs(hk.bound.raw)));
  }
}
