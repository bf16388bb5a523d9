// Command-line front end: compute lower bounds for symmetric TSP instances,
// reproduce the reference tables, run the verification suites, and emit
// machine-readable reports.
//
// Exit codes: 0 success, 2 parse error, 3 solver non-convergence,
// 4 capacity error, 5 verification failure.
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"

#include "tspbound/circulant.hpp"
#include "tspbound/held_karp.hpp"
#include "tspbound/instances.hpp"
#include "tspbound/relaxations.hpp"
#include "tspbound/report.hpp"

namespace {

using namespace tspbound;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitCapacity = 4;
constexpr int kExitVerification = 5;

struct OutputOptions {
  std::string json_path;
  std::string csv_path;
};

void emit(const RunReport& report, const OutputOptions& out, bool show_raw = false) {
  std::cout << report.to_table(show_raw);
  if (!out.json_path.empty()) {
    std::ofstream f(out.json_path);
    f << report.to_json() << "\n";
  }
  if (!out.csv_path.empty()) {
    std::ofstream f(out.csv_path);
    f << report.to_csv();
  }
}

BoundResult run_method(BoundMethod method, const DistanceMatrix& d,
                       const SolverConfig& config) {
  if (method == BoundMethod::HeldKarp) {
    HeldKarpConfig hk;
    hk.lp = config;
    HeldKarpResult r = held_karp_bound(d, hk);
    if (!r.converged) r.bound.report.status = SolveStatus::SlowProgress;
    return r.bound;
  }
  return solve_bound(method, d, config);
}

std::vector<BoundMethod> parse_methods(const std::string& flag) {
  if (flag == "all")
    return {BoundMethod::Cvetkovic, BoundMethod::NewSdp, BoundMethod::HeldKarp};
  if (flag == "new-sdp") return {BoundMethod::NewSdp};
  if (flag == "cvetkovic") return {BoundMethod::Cvetkovic};
  if (flag == "qap-sdp") return {BoundMethod::QapSdp};
  if (flag == "held-karp") return {BoundMethod::HeldKarp};
  throw CLI::ValidationError("--method must be one of new-sdp, cvetkovic, qap-sdp, held-karp, all");
}

// Reference rounded bounds (cvetkovic, new-sdp, held-karp) for the bundled
// fixture instances.
struct ReferenceRow {
  const char* name;
  double cvetkovic, new_sdp, held_karp, optimum;
};
constexpr ReferenceRow kReferenceRows[] = {
    {"gr17", 1810, 2007, 2085, 2085},
    {"gr21", 2707, 2707, 2707, 2707},
    {"gr24", 1230, 1271, 1272, 1272},
    {"bays29", 1948, 2000, 2014, 2020},
};

int cmd_bound(const std::string& path, const std::string& method_flag,
              const SolverConfig& config, const OutputOptions& out, bool check_minor) {
  TsplibInstance inst;
  try {
    inst = parse_tsplib_file(path);
  } catch (const UnsupportedFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const TsplibParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  if (inst.dimension < 4) {
    std::cerr << "error: bounds need at least 4 cities, instance has "
              << inst.dimension << "\n";
    return kExitCapacity;
  }
  RunReport report;
  report.command = "bound";
  report.config_echo = "method=" + method_flag;
  InstanceRecord rec;
  rec.instance = inst.name.empty() ? path : inst.name;
  rec.n = inst.dimension;
  bool all_optimal = true;
  std::optional<MultiBlockPoint> new_sdp_point;
  Matrix cvet_x;
  bool have_cvet = false;
  try {
    for (BoundMethod m : parse_methods(method_flag)) {
      BoundResult b = run_method(m, inst.distances, config);
      all_optimal = all_optimal && b.report.status == SolveStatus::Optimal;
      if (m == BoundMethod::NewSdp)
        new_sdp_point = extract_multiblock_point(inst.dimension, b.report.primal);
      if (m == BoundMethod::Cvetkovic) {
        have_cvet = true;
        cvet_x = Matrix::Zero(inst.dimension, inst.dimension);
        int idx = 0;
        for (int b2 = 1; b2 < inst.dimension; ++b2)
          for (int a = 0; a < b2; ++a)
            cvet_x(a, b2) = cvet_x(b2, a) = b.report.primal[idx++];
      }
      rec.methods.push_back(make_method_record(b));
    }
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  }
  if (inst.dimension <= 12) {
    rec.brute_force_optimum = brute_force_tsp(inst.distances).length;
  }
  if (check_minor) {
    bool pass = true;
    if (new_sdp_point.has_value())
      pass = pass && minor_inequality_check(new_sdp_point->blocks[0]).pass;
    if (have_cvet) pass = pass && minor_inequality_check(cvet_x).pass;
    if (new_sdp_point.has_value() || have_cvet) rec.minor_inequality_pass = pass;
  }
  report.instances.push_back(std::move(rec));
  emit(report, out);
  return all_optimal ? kExitOk : kExitNoConvergence;
}

int cmd_table1(const std::string& fixtures_dir, bool skip_bays29, bool skip_held_karp,
               const SolverConfig& config, const OutputOptions& out, int jobs) {
  std::vector<std::string> names = {"gr17", "gr21", "gr24"};
  if (!skip_bays29) names.push_back("bays29");
  std::vector<TsplibInstance> instances;
  for (const auto& name : names) {
    const std::string path = fixtures_dir + "/" + name + ".tsp";
    try {
      instances.push_back(parse_tsplib_file(path));
    } catch (const std::exception& e) {
      std::cerr << "error: missing or unreadable fixture '" << name << "': " << e.what()
                << "\n";
      return kExitParse;
    }
  }
  std::vector<BoundMethod> methods = {BoundMethod::Cvetkovic, BoundMethod::NewSdp};
  if (!skip_held_karp) methods.push_back(BoundMethod::HeldKarp);

  RunReport report;
  report.command = "table1";
  report.config_echo = "jobs=" + std::to_string(jobs);
  report.instances.resize(instances.size());

  std::atomic<size_t> next{0};
  std::atomic<bool> mismatch{false};
  std::atomic<bool> non_optimal{false};
  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= instances.size()) break;
      const auto& inst = instances[i];
      InstanceRecord rec;
      rec.instance = inst.name;
      rec.n = inst.dimension;
      const ReferenceRow* ref = nullptr;
      for (const auto& row : kReferenceRows)
        if (inst.name == row.name) ref = &row;
      for (BoundMethod m : methods) {
        BoundResult b = run_method(m, inst.distances, config);
        MethodRecord mr = make_method_record(b);
        if (ref) {
          const double expect = m == BoundMethod::Cvetkovic ? ref->cvetkovic
                                : m == BoundMethod::NewSdp  ? ref->new_sdp
                                                            : ref->held_karp;
          mr.matches_reference = std::abs(b.rounded - expect) < 0.5;
          if (!*mr.matches_reference) mismatch = true;
        }
        if (b.report.status != SolveStatus::Optimal) non_optimal = true;
        rec.methods.push_back(std::move(mr));
      }
      report.instances[i] = std::move(rec);
    }
  };
  const int nthreads = std::max(1, std::min<int>(jobs, static_cast<int>(instances.size())));
  std::vector<std::thread> pool;
  for (int t = 0; t < nthreads - 1; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  emit(report, out);
  // a stalled solve whose certified bound still matches the reference is a
  // success for table purposes; non-convergence only matters when a cell is
  // off
  if (mismatch) return non_optimal ? kExitNoConvergence : kExitVerification;
  return kExitOk;
}

int cmd_facets(int n, bool json_only, const SolverConfig& config, const OutputOptions& out) {
  std::vector<FacetInstance> facets;
  try {
    facets = subtour_facet_instances(n);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  }
  RunReport report;
  report.command = "facets";
  report.config_echo = "n=" + std::to_string(n);
  // published triples (cvetkovic, new-sdp, held-karp) for the three n = 8
  // subtour classes, matched as a multiset
  std::vector<std::array<double, 3>> reference;
  if (n == 8) reference = {{2.0, 2.0, 2.0}, {1.098, 1.628, 2.0}, {1.172, 1.172, 2.0}};
  std::vector<std::array<double, 3>> got;
  bool all_optimal = true;
  for (const auto& f : facets) {
    InstanceRecord rec;
    rec.instance = f.class_label;
    rec.n = f.n;
    std::array<double, 3> triple{};
    int ti = 0;
    for (BoundMethod m :
         {BoundMethod::Cvetkovic, BoundMethod::NewSdp, BoundMethod::HeldKarp}) {
      BoundResult b = run_method(m, f.distances, config);
      all_optimal = all_optimal && b.report.status == SolveStatus::Optimal;
      triple[ti++] = b.raw;
      rec.methods.push_back(make_method_record(b));
    }
    rec.brute_force_optimum = brute_force_tsp(f.distances).length;
    got.push_back(triple);
    report.instances.push_back(std::move(rec));
  }
  bool multiset_match = true;
  if (!reference.empty()) {
    std::vector<bool> used(reference.size(), false);
    for (const auto& g : got) {
      bool found = false;
      for (size_t r = 0; r < reference.size(); ++r) {
        if (used[r]) continue;
        bool close = true;
        for (int k = 0; k < 3; ++k) close = close && std::abs(g[k] - reference[r][k]) <= 5e-3;
        if (close) {
          used[r] = true;
          found = true;
          break;
        }
      }
      multiset_match = multiset_match && found;
    }
    std::cout << "reference multiset match: " << (multiset_match ? "yes" : "NO") << "\n";
  }
  (void)json_only;
  emit(report, out, /*show_raw=*/true);
  if (!all_optimal) return kExitNoConvergence;
  return (!reference.empty() && !multiset_match) ? kExitVerification : kExitOk;
}

struct VerifySuite {
  std::string name;
  bool (*run)(std::uint64_t seed, std::string& detail);
};

bool verify_scheme(std::uint64_t, std::string& detail) {
  for (int n = 3; n <= 32; ++n) {
    auto rep = verify_scheme_axioms(scheme_matrices(n).matrices);
    if (!rep.all()) {
      detail = "scheme axioms fail at n=" + std::to_string(n);
      return false;
    }
  }
  return true;
}

bool verify_dominance(std::uint64_t seed, std::string& detail) {
  for (int i = 0; i < 6; ++i) {
    const int n = 5 + static_cast<int>(i % 6);
    DistanceMatrix d = random_integral_instance(n, seed * 1000 + i);
    BoundResult a = solve_bound(BoundMethod::NewSdp, d);
    BoundResult b = solve_bound(BoundMethod::Cvetkovic, d);
    if (a.raw < b.raw - 1e-6 * (1 + std::abs(a.raw))) {
      detail = "dominance fails on seeded n=" + std::to_string(n);
      return false;
    }
    auto proj = project_to_cvetkovic(extract_multiblock_point(n, a.report.primal));
    if (!proj.pass) {
      detail = "projection fails on seeded n=" + std::to_string(n);
      return false;
    }
  }
  return true;
}

bool verify_equivalence(std::uint64_t seed, std::string& detail) {
  for (int i = 0; i < 4; ++i) {
    const int n = 5 + (i % 2);
    DistanceMatrix d = random_integral_instance(n, seed * 77 + i);
    BoundResult a = solve_bound(BoundMethod::NewSdp, d);
    BoundResult b = solve_bound(BoundMethod::QapSdp, d);
    if (std::abs(a.raw - b.raw) > 1e-4 * (1 + std::abs(a.raw))) {
      detail = "equivalence fails on seeded n=" + std::to_string(n);
      return false;
    }
  }
  return true;
}

bool verify_heldkarp(std::uint64_t seed, std::string& detail) {
  for (int i = 0; i < 5; ++i) {
    const int n = 6 + (i % 5);
    DistanceMatrix d = random_integral_instance(n, seed * 13 + i);
    HeldKarpResult cut = held_karp_bound(d);
    HeldKarpResult full = full_enumeration_lp(d);
    if (std::abs(cut.bound.raw - full.bound.raw) > 1e-7 * (1 + std::abs(full.bound.raw))) {
      detail = "cutting-plane vs enumeration mismatch at n=" + std::to_string(n);
      return false;
    }
  }
  return true;
}

bool verify_minor(std::uint64_t, std::string& detail) {
  for (int n = 3; n <= 20; ++n) {
    if (spanning_tree_minor(scheme_matrices(n).matrices[1]) != n) {
      detail = "cycle spanning-tree count wrong at n=" + std::to_string(n);
      return false;
    }
  }
  return true;
}

int cmd_verify(const std::string& only, std::uint64_t seed) {
  const std::vector<VerifySuite> suites = {
      {"scheme", verify_scheme},         {"dominance", verify_dominance},
      {"equivalence", verify_equivalence}, {"heldkarp", verify_heldkarp},
      {"minor", verify_minor},
  };
  bool all_pass = true;
  for (const auto& suite : suites) {
    if (!only.empty() && suite.name != only) continue;
    std::string detail;
    const bool ok = suite.run(seed, detail);
    std::cout << "[" << (ok ? "pass" : "FAIL") << "] " << suite.name;
    if (!ok) std::cout << ": " << detail;
    std::cout << "\n";
    all_pass = all_pass && ok;
  }
  return all_pass ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lower bounds for the symmetric TSP via convex relaxations"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  SolverConfig config;
  OutputOptions out;
  app.add_option("--gap-tol", config.gap_tolerance, "relative duality gap tolerance");
  app.add_option("--feas-tol", config.feasibility_tolerance, "feasibility tolerance");
  app.add_option("--max-iter", config.max_iterations, "interior-point iteration cap");
  app.add_flag("--solver-verbose", config.verbose, "print per-iteration solver lines");
  app.add_option("--json", out.json_path, "write a JSON report to this path");
  app.add_option("--csv", out.csv_path, "write a CSV report to this path");

  auto* bound = app.add_subcommand("bound", "compute bounds for one instance file");
  std::string path, method_flag = "all";
  bool check_minor = false;
  bound->add_option("path", path, "TSPLIB instance file")->required();
  bound->add_option("--method", method_flag,
                    "new-sdp | cvetkovic | qap-sdp | held-karp | all");
  bound->add_flag("--minor-check", check_minor,
                  "verify the spanning-tree minor inequality on optimal points");

  auto* table1 = app.add_subcommand("table1", "reproduce the reference bound table");
  std::string fixtures_dir = "tests/fixtures";
  bool skip_bays29 = false, skip_held_karp = false;
  int jobs = 1;
  table1->add_option("--fixtures", fixtures_dir, "directory with gr17/gr21/gr24/bays29");
  table1->add_flag("--skip-bays29", skip_bays29, "exclude the largest instance");
  table1->add_flag("--skip-held-karp", skip_held_karp, "SDP columns only");
  table1->add_option("--jobs", jobs, "instances solved in parallel");

  auto* facets = app.add_subcommand("facets", "bounds on subtour facet instances");
  int facet_n = 8;
  facets->add_option("--n", facet_n, "number of cities (5..10)");

  auto* verify = app.add_subcommand("verify", "run the verification suites");
  std::string only;
  std::uint64_t seed = 0;
  verify->add_option("--only", only, "scheme | dominance | equivalence | heldkarp | minor");
  verify->add_option("--seed", seed, "seed for the SplitMix64 instance stream");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bound->parsed()) return cmd_bound(path, method_flag, config, out, check_minor);
    if (table1->parsed())
      return cmd_table1(fixtures_dir, skip_bays29, skip_held_karp, config, out, jobs);
    if (facets->parsed()) return cmd_facets(facet_n, false, config, out);
    if (verify->parsed()) return cmd_verify(only, seed);
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
