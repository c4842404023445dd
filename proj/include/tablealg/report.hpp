#pragma once

#include <complex>
#include <string>
#include <vector>

namespace tablealg {

/// One verification check inside a Report.
struct Finding {
  std::string check;
  bool pass = false;
  std::string witness;  // nonempty whenever pass is false
};

/// Named complex matrix attached to a Report (character tables, ...).
struct NamedTable {
  std::string name;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<std::complex<double>>> values;
};

/// Deterministic, serializable result of one CLI command.
struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<Finding> findings;
  std::vector<NamedTable> tables;
  std::vector<std::pair<std::string, std::string>> outputs;  // extra fields

  bool all_pass() const {
    for (const auto& f : findings)
      if (!f.pass) return false;
    return true;
  }

  /// Stable structured rendering (key order and float rendering fixed).
  std::string to_json() const;
  /// Human-readable rendering; near-integer values print as integers.
  std::string to_text() const;
};

}  // namespace tablealg
