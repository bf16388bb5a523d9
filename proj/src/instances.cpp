#include "tspbound/instances.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace tspbound {

DistanceMatrix::DistanceMatrix(Matrix m) : n(static_cast<int>(m.rows())), entries(std::move(m)) {
  if (entries.rows() != entries.cols())
    throw std::invalid_argument("DistanceMatrix: matrix must be square");
  for (int i = 0; i < n; ++i) {
    if (entries(i, i) != 0.0)
      throw std::invalid_argument("DistanceMatrix: diagonal must be exactly zero");
    for (int j = 0; j < i; ++j) {
      if (entries(i, j) != entries(j, i))
        throw std::invalid_argument("DistanceMatrix: matrix must be exactly symmetric");
      if (entries(i, j) < 0.0)
        throw std::invalid_argument("DistanceMatrix: entries must be nonnegative");
    }
  }
}

bool DistanceMatrix::integral(double tol) const {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(entries(i, j) - std::round(entries(i, j))) > tol) return false;
  return true;
}

std::string to_string(WeightType t) {
  switch (t) {
    case WeightType::ExplicitFullMatrix: return "explicit-full-matrix";
    case WeightType::ExplicitLowerDiagRow: return "explicit-lower-diag-row";
    case WeightType::ExplicitUpperRow: return "explicit-upper-row";
    case WeightType::Euclidean2d: return "euclidean-2d";
  }
  return "unknown";
}

namespace {

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  size_t e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

struct TokenStream {
  std::vector<std::string> tokens;
  size_t at = 0;

  double next_number(const std::string& where) {
    if (at >= tokens.size())
      throw TsplibParseError("truncated " + where + ": expected number at token " +
                             std::to_string(at));
    const std::string& t = tokens[at];
    size_t used = 0;
    double v;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw TsplibParseError("bad token '" + t + "' in " + where + " at token " +
                             std::to_string(at));
    }
    if (used != t.size())
      throw TsplibParseError("bad token '" + t + "' in " + where + " at token " +
                             std::to_string(at));
    ++at;
    return v;
  }
};

}  // namespace

TsplibInstance parse_tsplib(const std::string& text) {
  TsplibInstance inst;
  std::string weight_type_raw, weight_format_raw;
  std::istringstream in(text);
  std::string line;
  bool have_dimension = false;

  // pass 1: header keys; TSPLIB headers precede all data sections
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty()) continue;
    const std::string ut = upper(t);
    if (ut == "EOF" || ut.find("SECTION") != std::string::npos) break;
    size_t colon = t.find(':');
    std::string key = upper(trim(colon == std::string::npos ? t : t.substr(0, colon)));
    std::string value = colon == std::string::npos ? "" : trim(t.substr(colon + 1));
    if (key == "NAME") {
      inst.name = value;
    } else if (key == "DIMENSION") {
      try {
        inst.dimension = std::stoi(value);
      } catch (const std::exception&) {
        throw TsplibParseError("bad DIMENSION value: " + value);
      }
      have_dimension = true;
    } else if (key == "EDGE_WEIGHT_TYPE") {
      weight_type_raw = upper(value);
    } else if (key == "EDGE_WEIGHT_FORMAT") {
      weight_format_raw = upper(value);
    }
    // TYPE, COMMENT, DISPLAY_DATA_TYPE and unknown keys are skipped
  }

  if (!have_dimension || inst.dimension <= 0)
    throw TsplibParseError("missing or invalid DIMENSION");
  const int n = inst.dimension;

  if (weight_type_raw == "EXPLICIT") {
    if (weight_format_raw == "FULL_MATRIX")
      inst.weight_type = WeightType::ExplicitFullMatrix;
    else if (weight_format_raw == "LOWER_DIAG_ROW")
      inst.weight_type = WeightType::ExplicitLowerDiagRow;
    else if (weight_format_raw == "UPPER_ROW")
      inst.weight_type = WeightType::ExplicitUpperRow;
    else
      throw UnsupportedFormatError("unsupported EDGE_WEIGHT_FORMAT: " +
                                   (weight_format_raw.empty() ? "<missing>" : weight_format_raw));
  } else if (weight_type_raw == "EUC_2D") {
    inst.weight_type = WeightType::Euclidean2d;
  } else {
    throw UnsupportedFormatError("unsupported EDGE_WEIGHT_TYPE: " +
                                 (weight_type_raw.empty() ? "<missing>" : weight_type_raw));
  }

  // Re-scan for the relevant data section; the first pass above collected
  // tokens from the last section seen, so gather per-section this time.
  std::istringstream in2(text);
  std::string want = (inst.weight_type == WeightType::Euclidean2d) ? "NODE_COORD_SECTION"
                                                                   : "EDGE_WEIGHT_SECTION";
  TokenStream data;
  bool collecting = false;
  while (std::getline(in2, line)) {
    std::string t = trim(line);
    if (t.empty()) continue;
    std::string ut = upper(t);
    if (ut == want) {
      collecting = true;
      continue;
    }
    if (collecting) {
      if (ut == "EOF" || ut.find("SECTION") != std::string::npos ||
          (ut.find(':') != std::string::npos && !std::isdigit(static_cast<unsigned char>(ut[0])) &&
           ut[0] != '-' && ut[0] != '+'))
        break;
      std::istringstream ls(t);
      std::string tok;
      while (ls >> tok) data.tokens.push_back(tok);
    }
  }
  if (!collecting) throw TsplibParseError("missing " + want);

  Matrix m = Matrix::Zero(n, n);
  switch (inst.weight_type) {
    case WeightType::ExplicitFullMatrix: {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = data.next_number("EDGE_WEIGHT_SECTION");
      for (int i = 0; i < n; ++i) m(i, i) = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
          if (m(i, j) != m(j, i))
            throw TsplibParseError("asymmetric FULL_MATRIX entry at (" + std::to_string(i) +
                                   "," + std::to_string(j) + ")");
      break;
    }
    case WeightType::ExplicitLowerDiagRow: {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
          double v = data.next_number("EDGE_WEIGHT_SECTION");
          m(i, j) = m(j, i) = (i == j ? 0.0 : v);
        }
      break;
    }
    case WeightType::ExplicitUpperRow: {
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          double v = data.next_number("EDGE_WEIGHT_SECTION");
          m(i, j) = m(j, i) = v;
        }
      break;
    }
    case WeightType::Euclidean2d: {
      std::vector<double> xs(n), ys(n);
      for (int i = 0; i < n; ++i) {
        double idx = data.next_number("NODE_COORD_SECTION");
        (void)idx;
        xs[i] = data.next_number("NODE_COORD_SECTION");
        ys[i] = data.next_number("NODE_COORD_SECTION");
        inst.raw_payload.push_back(xs[i]);
        inst.raw_payload.push_back(ys[i]);
      }
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const double dx = xs[i] - xs[j], dy = ys[i] - ys[j];
          m(i, j) = m(j, i) = std::floor(std::sqrt(dx * dx + dy * dy) + 0.5);
        }
      break;
    }
  }
  if (inst.weight_type != WeightType::Euclidean2d)
    for (size_t k = 0; k < data.at; ++k) inst.raw_payload.push_back(std::stod(data.tokens[k]));
  inst.distances = DistanceMatrix(std::move(m));
  return inst;
}

TsplibInstance parse_tsplib_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TsplibParseError("cannot open instance file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_tsplib(ss.str());
}

std::string to_tsplib_full_matrix(const std::string& name, const DistanceMatrix& d) {
  std::ostringstream os;
  os << "NAME: " << name << "\n";
  os << "TYPE: TSP\n";
  os << "DIMENSION: " << d.n << "\n";
  os << "EDGE_WEIGHT_TYPE: EXPLICIT\n";
  os << "EDGE_WEIGHT_FORMAT: FULL_MATRIX\n";
  os << "EDGE_WEIGHT_SECTION\n";
  for (int i = 0; i < d.n; ++i) {
    for (int j = 0; j < d.n; ++j) os << (j ? " " : "") << d.entries(i, j);
    os << "\n";
  }
  os << "EOF\n";
  return os.str();
}

std::vector<FacetInstance> subtour_facet_instances(int n) {
  if (n < 5 || n > 10)
    throw std::invalid_argument("subtour_facet_instances: n must be in 5..10");
  std::vector<FacetInstance> out;
  for (int s = 2; s <= n / 2; ++s) {
    Matrix m = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && ((i < s) != (j < s))) m(i, j) = 1.0;
    FacetInstance f;
    f.n = n;
    f.subset_size = s;
    f.distances = DistanceMatrix(std::move(m));
    f.rhs = 2;
    f.class_label = "subtour-" + std::to_string(s);
    out.push_back(std::move(f));
  }
  return out;
}

DistanceMatrix random_integral_instance(int n, std::uint64_t seed, int max_weight) {
  SplitMix64 rng(seed);
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      m(i, j) = m(j, i) = static_cast<double>(rng.uniform(1, max_weight));
  return DistanceMatrix(std::move(m));
}

TourResult brute_force_tsp(const DistanceMatrix& d) {
  const int n = d.n;
  if (n < 3) throw std::invalid_argument("brute_force_tsp: need at least 3 cities");
  if (n > 12)
    throw CapacityError("brute_force_tsp: n = " + std::to_string(n) +
                        " exceeds the enumeration cap of 12");
  std::vector<int> rest(n - 1);
  for (int i = 0; i < n - 1; ++i) rest[i] = i + 1;
  TourResult best;
  best.length = std::numeric_limits<double>::infinity();
  std::vector<int> tour(n);
  tour[0] = 0;
  do {
    // orientation normalization: second city below the last
    if (rest.front() > rest.back()) continue;
    double len = d.entries(0, rest.front());
    for (int i = 0; i + 1 < n - 1; ++i) len += d.entries(rest[i], rest[i + 1]);
    len += d.entries(rest.back(), 0);
    if (len < best.length - 1e-12) {
      best.length = len;
      std::copy(rest.begin(), rest.end(), tour.begin() + 1);
      best.tour = tour;
    }
  } while (std::next_permutation(rest.begin(), rest.end()));
  return best;
}

}  // namespace tspbound
