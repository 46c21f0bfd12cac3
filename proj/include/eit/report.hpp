// Verification reports: one named check = (samples, tolerance, max residual,
// pass flag, recorded failures); suites aggregate checks.  Serialization to
// text, CSV and JSON with locale-free number formatting; identical runs
// (same seed) produce identical output apart from the wall-time fields.

#pragma once

#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace eit::verify {

inline std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

struct CaseFailure {
  std::vector<double> inputs;
  double residual = 0.0;
};

struct CheckReport {
  std::string name;
  long samples = 0;
  double tolerance = 0.0;
  double max_residual = 0.0;
  bool pass = true;
  std::vector<CaseFailure> failures;  // capped; non-empty iff !pass
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
  bool pass = true;
  std::vector<CheckReport> checks;

  double max_residual() const {
    double m = 0.0;
    for (const CheckReport& c : checks) m = std::max(m, c.max_residual);
    return m;
  }
};

struct RunReport {
  int schema = 1;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
  bool pass = true;
  std::vector<SuiteReport> suites;
};

inline void write_text(std::ostream& os, const SuiteReport& s) {
  os << "suite " << s.suite << "  seed " << s.seed << "  "
     << (s.pass ? "PASS" : "FAIL") << "  (" << format_double(s.wall_ms)
     << " ms)\n";
  for (const CheckReport& c : s.checks) {
    os << "  " << (c.pass ? "pass" : "FAIL") << "  " << c.name << "  samples "
       << c.samples << "  max residual " << format_double(c.max_residual)
       << "  tol " << format_double(c.tolerance) << "\n";
    for (const CaseFailure& f : c.failures) {
      os << "      failure residual " << format_double(f.residual)
         << " at (";
      for (std::size_t i = 0; i < f.inputs.size(); ++i) {
        os << (i ? ", " : "") << format_double(f.inputs[i]);
      }
      os << ")\n";
    }
  }
}

inline void write_text(std::ostream& os, const RunReport& r) {
  for (const SuiteReport& s : r.suites) write_text(os, s);
  os << (r.pass ? "PASS" : "FAIL") << "  (" << format_double(r.wall_ms)
     << " ms total)\n";
}

inline void write_csv_header(std::ostream& os) {
  os << "suite,check,samples,tolerance,max_residual,pass\n";
}

inline void write_csv(std::ostream& os, const SuiteReport& s,
                      bool header = true) {
  if (header) write_csv_header(os);
  for (const CheckReport& c : s.checks) {
    os << s.suite << "," << c.name << "," << c.samples << ","
       << format_double(c.tolerance) << "," << format_double(c.max_residual)
       << "," << (c.pass ? 1 : 0) << "\n";
  }
}

inline void write_csv(std::ostream& os, const RunReport& r) {
  write_csv_header(os);
  for (const SuiteReport& s : r.suites) write_csv(os, s, false);
}

namespace detail {

inline void json_check(std::ostream& os, const CheckReport& c) {
  os << "{\"name\":\"" << c.name << "\",\"samples\":" << c.samples
     << ",\"tolerance\":" << format_double(c.tolerance)
     << ",\"max_residual\":" << format_double(c.max_residual)
     << ",\"pass\":" << (c.pass ? "true" : "false") << ",\"failures\":[";
  for (std::size_t i = 0; i < c.failures.size(); ++i) {
    const CaseFailure& f = c.failures[i];
    os << (i ? "," : "") << "{\"inputs\":[";
    for (std::size_t j = 0; j < f.inputs.size(); ++j) {
      os << (j ? "," : "") << format_double(f.inputs[j]);
    }
    os << "],\"residual\":" << format_double(f.residual) << "}";
  }
  os << "]}";
}

inline void json_suite(std::ostream& os, const SuiteReport& s,
                       bool with_schema) {
  os << "{";
  if (with_schema) os << "\"schema\":1,";
  os << "\"suite\":\"" << s.suite << "\",\"seed\":" << s.seed
     << ",\"pass\":" << (s.pass ? "true" : "false")
     << ",\"wall_ms\":" << format_double(s.wall_ms) << ",\"checks\":[";
  for (std::size_t i = 0; i < s.checks.size(); ++i) {
    if (i) os << ",";
    json_check(os, s.checks[i]);
  }
  os << "]}";
}

}  // namespace detail

inline void write_json(std::ostream& os, const SuiteReport& s) {
  detail::json_suite(os, s, true);
  os << "\n";
}

inline void write_json(std::ostream& os, const RunReport& r) {
  os << "{\"schema\":" << r.schema << ",\"seed\":" << r.seed
     << ",\"pass\":" << (r.pass ? "true" : "false")
     << ",\"wall_ms\":" << format_double(r.wall_ms) << ",\"suites\":[";
  for (std::size_t i = 0; i < r.suites.size(); ++i) {
    if (i) os << ",";
    detail::json_suite(os, r.suites[i], false);
  }
  os << "]}\n";
}

}  // namespace eit::verify
