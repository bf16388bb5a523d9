#include "tspbound/relaxations.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "tspbound/held_karp.hpp"

using namespace tspbound;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

DistanceMatrix uniform_instance(int n) {
  return DistanceMatrix(Matrix::Constant(n, n, 1.0) - Matrix::Identity(n, n));
}
}  // namespace

TEST_CASE("canonical point is exactly feasible") {
  for (int n : {5, 6, 8, 11}) {
    MultiBlockPoint pt = canonical_point(n);
    DistanceMatrix d = uniform_instance(n);
    ConicProgram p = build_new_sdp(d);
    Vector x = embed_multiblock_point(pt, d);
    ResidualReport rep = residuals(p, x);
    CHECK(rep.max_equality_abs <= 1e-12);
    CHECK(rep.max_cone_violation <= 1e-9);
  }
  SUBCASE("even n has unit antipodal row sums") {
    MultiBlockPoint pt = canonical_point(6);
    CHECK((pt.blocks[2].rowwise().sum().array() - 1.0).abs().maxCoeff() == 0.0);
  }
  SUBCASE("objective equals the identity tour length") {
    // cut instance: crossing edges of the identity tour 0-1-...-7-0
    auto facets = subtour_facet_instances(8);
    const DistanceMatrix& d = facets[2].distances;  // cut {0,1,2,3}
    MultiBlockPoint pt = canonical_point(8);
    const double value = 0.5 * (d.entries.cwiseProduct(pt.blocks[0])).sum();
    CHECK(value == doctest::Approx(2.0));  // the identity tour crosses twice
  }
}

TEST_CASE("new SDP on the uniform instance") {
  DistanceMatrix d = uniform_instance(5);
  auto res = solve_bound(BoundMethod::NewSdp, d);
  REQUIRE(res.report.status == SolveStatus::Optimal);
  CHECK(res.raw == doctest::Approx(5.0).epsilon(1e-6));
  CHECK(res.rounded == doctest::Approx(5.0));
}

TEST_CASE("cvetkovic SDP on the uniform instance") {
  DistanceMatrix d = uniform_instance(6);
  auto res = solve_bound(BoundMethod::Cvetkovic, d);
  REQUIRE(res.report.status == SolveStatus::Optimal);
  CHECK(res.raw == doctest::Approx(6.0).epsilon(1e-6));
}

TEST_CASE("builders reject malformed distance matrices") {
  Matrix asym = Matrix::Zero(5, 5);
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(DistanceMatrix{asym}, std::invalid_argument);
  DistanceMatrix small(Matrix::Zero(3, 3));
  CHECK_THROWS_AS(build_new_sdp(small), std::invalid_argument);
  CHECK_THROWS_AS(build_cvetkovic_sdp(small), std::invalid_argument);
}

TEST_CASE("qap sdp equals the multi-block value") {
  SUBCASE("uniform n=5") {
    DistanceMatrix d = uniform_instance(5);
    auto a = solve_bound(BoundMethod::NewSdp, d);
    auto b = solve_bound(BoundMethod::QapSdp, d);
    CHECK(std::abs(a.raw - b.raw) <= 1e-4 * (1 + std::abs(a.raw)));
    CHECK(b.raw == doctest::Approx(5.0).epsilon(1e-4));
  }
  SUBCASE("seeded n=6") {
    DistanceMatrix d = random_integral_instance(6, 424242);
    auto a = solve_bound(BoundMethod::NewSdp, d);
    auto b = solve_bound(BoundMethod::QapSdp, d);
    CHECK(std::abs(a.raw - b.raw) <= 1e-4 * (1 + std::abs(a.raw)));
  }
  SUBCASE("n=5 cycle metric bounded by the tour oracle") {
    Matrix m(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        int diff = std::abs(i - j);
        m(i, j) = std::min(diff, 5 - diff);
      }
    DistanceMatrix d(m);
    auto b = solve_bound(BoundMethod::QapSdp, d);
    CHECK(b.raw <= brute_force_tsp(d).length + 1e-6);
  }
  SUBCASE("capacity cap") {
    DistanceMatrix d = uniform_instance(11);
    CHECK_THROWS_AS(build_qap_sdp(d), CapacityError);
  }
  SUBCASE("optimal lifted point satisfies its invariants") {
    const int n = 5;
    DistanceMatrix d = random_integral_instance(n, 909);
    auto res = solve_bound(BoundMethod::QapSdp, d);
    LiftedPoint pt = extract_lifted_point(n, res.report.primal);
    LiftedPointCheck check = check_lifted_point(pt);
    CHECK(check.pass(1e-5));
    CHECK(check.bordered_min_eigenvalue >= -1e-6);
    CHECK(check.max_diag_deviation <= 1e-6);
    CHECK(std::abs(check.trace_identity_error) <= 1e-6);
  }
}

TEST_CASE("aggregation weights") {
  SUBCASE("n=5 closed form") {
    AggregationWeights w = aggregation_weights(5);
    CHECK(w.x[0] == doctest::Approx(1.1055728).epsilon(1e-6));
    CHECK(w.x[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(w.x[2] == doctest::Approx(0.8944272).epsilon(1e-6));
  }
  SUBCASE("solves A x = b for n = 4..64, both parities") {
    for (int n = 4; n <= 64; ++n) {
      AggregationWeights w = aggregation_weights(n);
      const int nd = n / 2;
      Matrix a(nd + 1, nd + 1);
      for (int i = 0; i <= nd; ++i)
        for (int j = 0; j <= nd; ++j) a(i, j) = std::cos(kTwoPi * i * j / n);
      Vector b(nd + 1);
      const double c1 = std::cos(kTwoPi / n);
      b[0] = 2.0;
      if (nd >= 1) b[1] = 1.0 - 2.0 * c1;
      for (int i = 2; i <= nd; ++i) b[i] = 2.0 - 2.0 * c1;
      CHECK((a * w.x - b).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK(w.x.minCoeff() >= -1e-12);
      // independent oracle: dense linear solve of the same system
      Vector x_solve = a.fullPivLu().solve(b);
      CHECK((x_solve - w.x).cwiseAbs().maxCoeff() <= 1e-8);
    }
  }
}

TEST_CASE("projection to the single-matrix relaxation") {
  SUBCASE("canonical point of the 7-cycle") {
    auto proj = project_to_cvetkovic(canonical_point(7));
    CHECK(proj.pass);
    CHECK(proj.lmi_min_eigenvalue >= -1e-10);
    CHECK(proj.aggregation_residual <= 1e-9);
  }
  SUBCASE("optimal points of seeded instances project feasibly") {
    for (std::uint64_t seed : {3ull, 14ull}) {
      const int n = 9;
      DistanceMatrix d = random_integral_instance(n, seed);
      auto res = solve_bound(BoundMethod::NewSdp, d);
      REQUIRE(res.report.status == SolveStatus::Optimal);
      auto proj = project_to_cvetkovic(extract_multiblock_point(n, res.report.primal));
      CHECK(proj.pass);
      CHECK(proj.lmi_min_eigenvalue >= -1e-6);
    }
  }
  SUBCASE("invalid points are rejected") {
    MultiBlockPoint pt = canonical_point(6);
    pt.blocks[0](0, 1) = pt.blocks[0](1, 0) = -0.5;
    CHECK_THROWS_AS(project_to_cvetkovic(pt), std::invalid_argument);
  }
}

TEST_CASE("dominance of the multi-block relaxation") {
  for (std::uint64_t seed : {7ull, 8ull}) {
    for (int n : {5, 8}) {
      DistanceMatrix d = random_integral_instance(n, seed);
      auto strong = solve_bound(BoundMethod::NewSdp, d);
      auto weak = solve_bound(BoundMethod::Cvetkovic, d);
      CHECK(strong.raw >= weak.raw - 1e-6 * (1 + std::abs(strong.raw)));
    }
  }
}

TEST_CASE("soundness against the tour oracle") {
  for (std::uint64_t seed : {21ull, 22ull, 23ull}) {
    const int n = 7;
    DistanceMatrix d = random_integral_instance(n, seed);
    const double opt = brute_force_tsp(d).length;
    for (BoundMethod m : {BoundMethod::NewSdp, BoundMethod::Cvetkovic}) {
      auto res = solve_bound(m, d);
      CHECK(res.rounded <= opt + 1e-9);
    }
  }
}

TEST_CASE("row sums are redundant at the optimum") {
  for (std::uint64_t seed : {31ull}) {
    const int n = 6;
    DistanceMatrix d = random_integral_instance(n, seed);
    auto with = solve_bound(BoundMethod::NewSdp, d);
    NewSdpOptions opts;
    opts.include_row_sums = false;
    ConicProgram p = build_new_sdp(d, opts);
    SolveReport rep = solve(p);
    const double without = certified_lower_bound(p, rep, new_sdp_profile(d, opts));
    CHECK(std::abs(with.raw - without) <= 1e-5 * (1 + std::abs(with.raw)));
  }
}

TEST_CASE("extendability") {
  SUBCASE("cycle adjacency extends via the canonical witness") {
    const int n = 6;
    Matrix xbar = canonical_point(n).blocks[0];
    auto res = extendability_check(xbar);
    CHECK(res.feasible);
    REQUIRE(res.witness.has_value());
    DistanceMatrix d = uniform_instance(n);
    Vector x = embed_multiblock_point(*res.witness, d);
    CHECK(residuals(build_new_sdp(d), x).max_equality_abs <= 1e-6);
  }
  SUBCASE("optimal first block is self-extendable") {
    DistanceMatrix d = random_integral_instance(7, 5);
    auto res = solve_bound(BoundMethod::NewSdp, d);
    MultiBlockPoint pt = extract_multiblock_point(7, res.report.primal);
    auto ext = extendability_check(pt.blocks[0]);
    CHECK(ext.feasible);
  }
  SUBCASE("precondition violations throw") {
    CHECK_THROWS_AS(extendability_check(Matrix::Identity(6, 6)), std::invalid_argument);
  }
}

TEST_CASE("minor inequality and spanning trees") {
  SUBCASE("cycles have exactly n spanning trees") {
    for (int n = 3; n <= 20; ++n) {
      IntMatrix adj = scheme_matrices(n).matrices[1];
      CHECK(spanning_tree_minor(adj) == n);
      auto check = minor_inequality_check(adj.cast<double>());
      CHECK(check.value == doctest::Approx(static_cast<double>(n)));
      CHECK(check.pass);
    }
  }
  SUBCASE("complete graphs match Cayley's count") {
    // oracle: n^(n-2), the number of labelled trees
    for (int n = 3; n <= 6; ++n) {
      IntMatrix adj = IntMatrix::Constant(n, n, 1) - IntMatrix::Identity(n, n);
      long long expect = 1;
      for (int i = 0; i < n - 2; ++i) expect *= n;
      CHECK(spanning_tree_minor(adj) == expect);
    }
  }
  SUBCASE("two disjoint 4-cycles have no spanning tree") {
    IntMatrix adj = IntMatrix::Zero(8, 8);
    for (int c = 0; c < 2; ++c)
      for (int i = 0; i < 4; ++i) {
        int a = 4 * c + i, b = 4 * c + (i + 1) % 4;
        adj(a, b) = adj(b, a) = 1;
      }
    CHECK(spanning_tree_minor(adj) == 0);
    auto check = minor_inequality_check(adj.cast<double>());
    CHECK(check.value == doctest::Approx(0.0));
    CHECK_FALSE(check.pass);
  }
  SUBCASE("edgeless graph") {
    CHECK(spanning_tree_minor(IntMatrix::Zero(3, 3)) == 0);
  }
  SUBCASE("non 0/1 input rejected") {
    IntMatrix bad = IntMatrix::Zero(3, 3);
    bad(0, 1) = 2;
    bad(1, 0) = 2;
    CHECK_THROWS_AS(spanning_tree_minor(bad), std::invalid_argument);
  }
}
