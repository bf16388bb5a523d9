// Machine-readable run reports for the CLI: plain tables, JSON (schema
// shipped in docs/report_schema.json), and CSV with a fixed column order.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tspbound/relaxations.hpp"

namespace tspbound {

inline constexpr const char* kReportSchemaVersion = "1";
inline constexpr const char* kToolVersion = "0.1.0";

struct MethodRecord {
  std::string method;
  double raw = 0.0;
  double rounded = 0.0;
  std::string status;
  int iterations = 0;
  double wall_seconds = 0.0;
  std::optional<bool> matches_reference;  // set when a reference value exists
};

struct InstanceRecord {
  std::string instance;
  int n = 0;
  std::vector<MethodRecord> methods;
  std::optional<double> brute_force_optimum;
  std::optional<bool> minor_inequality_pass;
};

struct RunReport {
  std::string command;
  std::string schema_version = kReportSchemaVersion;
  std::string tool_version = kToolVersion;
  std::string config_echo;
  std::vector<InstanceRecord> instances;

  std::string to_json() const;
  std::string to_csv() const;   // fixed column order, documented in README
  /// show_raw prints raw optima to three decimals (facet-instance style)
  /// instead of the rounded bounds.
  std::string to_table(bool show_raw = false) const;
};

MethodRecord make_method_record(const BoundResult& bound);

}  // namespace tspbound
