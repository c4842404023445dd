#include "tablealg/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace tablealg {

namespace {

nlohmann::ordered_json complex_json(const std::complex<double>& z) {
  return nlohmann::ordered_json::array({z.real(), z.imag()});
}

// 10 significant digits; values within 1e-7 of an integer print as one
std::string human_value(double v) {
  double r = std::round(v);
  if (std::abs(v - r) < 1e-7) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(r));
    return buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string human_complex(const std::complex<double>& z) {
  if (std::abs(z.imag()) < 1e-7) return human_value(z.real());
  std::string s = human_value(z.real());
  s += (z.imag() < 0 ? "-" : "+");
  s += human_value(std::abs(z.imag())) + "i";
  return s;
}

}  // namespace

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["inputs"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : inputs) j["inputs"][k] = v;
  j["findings"] = nlohmann::ordered_json::array();
  for (const auto& f : findings) {
    nlohmann::ordered_json fj;
    fj["check"] = f.check;
    fj["pass"] = f.pass;
    if (!f.witness.empty()) fj["witness"] = f.witness;
    j["findings"].push_back(fj);
  }
  j["tables"] = nlohmann::ordered_json::object();
  for (const auto& t : tables) {
    nlohmann::ordered_json tj;
    tj["rows"] = t.row_labels;
    tj["cols"] = t.col_labels;
    auto vals = nlohmann::ordered_json::array();
    for (const auto& row : t.values) {
      auto rj = nlohmann::ordered_json::array();
      for (const auto& z : row) rj.push_back(complex_json(z));
      vals.push_back(rj);
    }
    tj["values"] = vals;
    j["tables"][t.name] = tj;
  }
  if (!outputs.empty()) {
    j["outputs"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : outputs) j["outputs"][k] = v;
  }
  return j.dump(2) + "\n";
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << "== " << command << " ==\n";
  for (const auto& [k, v] : inputs) out << k << ": " << v << "\n";
  for (const auto& f : findings) {
    out << (f.pass ? "[pass] " : "[FAIL] ") << f.check;
    if (!f.witness.empty()) out << "  (" << f.witness << ")";
    out << "\n";
  }
  for (const auto& t : tables) {
    out << "-- " << t.name << " --\n";
    if (!t.col_labels.empty()) {
      out << "        ";
      for (const auto& c : t.col_labels) out << c << "\t";
      out << "\n";
    }
    for (size_t r = 0; r < t.values.size(); ++r) {
      if (r < t.row_labels.size()) out << t.row_labels[r] << ":\t";
      for (const auto& z : t.values[r]) out << human_complex(z) << "\t";
      out << "\n";
    }
  }
  for (const auto& [k, v] : outputs) {
    out << "-- " << k << " --\n" << v;
    if (!v.empty() && v.back() != '\n') out << "\n";
  }
  return out.str();
}

}  // namespace tablealg
