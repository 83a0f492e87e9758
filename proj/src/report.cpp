#include "bergvar/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace bergvar {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string format_complex(cplx z) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

ReportRow row_compare(const std::string& suite, const std::string& scenario, cplx formula,
                      cplx oracle, double abs_tolerance) {
  ReportRow row;
  row.suite = suite;
  row.scenario = scenario;
  row.formula_value = formula;
  row.oracle_value = oracle;
  row.abs_residual = std::abs(formula - oracle);
  const double denom = std::max(std::abs(oracle), std::abs(formula));
  row.rel_residual = denom > 1e-300 ? row.abs_residual / denom : 0.0;
  row.tolerance = abs_tolerance;
  row.pass = row.abs_residual <= abs_tolerance;
  return row;
}

ReportRow row_lower_bound(const std::string& suite, const std::string& scenario,
                          double value, double bound) {
  ReportRow row;
  row.suite = suite;
  row.scenario = scenario;
  row.formula_value = value;
  row.oracle_value = bound;
  row.abs_residual = std::max(0.0, bound - value);
  row.rel_residual = row.abs_residual / std::max(std::abs(bound), 1e-300);
  row.tolerance = 0.0;
  row.pass = value >= bound;
  return row;
}

bool RunReport::all_pass() const {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

std::string RunReport::to_json() const {
  nlohmann::json j;
  j["version"] = version;
  j["config"] = nlohmann::json::parse(config_echo.empty() ? "{}" : config_echo);
  nlohmann::json jrows = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row;
    row["suite"] = r.suite;
    row["scenario"] = r.scenario;
    row["formula_value"] = format_complex(r.formula_value);
    row["oracle_value"] = format_complex(r.oracle_value);
    row["abs_residual"] = format_double(r.abs_residual);
    row["rel_residual"] = format_double(r.rel_residual);
    row["tolerance"] = format_double(r.tolerance);
    row["pass"] = r.pass;
    jrows.push_back(row);
  }
  j["rows"] = jrows;
  size_t passed = 0;
  for (const auto& r : rows)
    if (r.pass) ++passed;
  j["summary"] = {{"rows", rows.size()}, {"passed", passed}, {"all_pass", all_pass()}};
  return j.dump(2) + "\n";
}

std::string RunReport::to_csv() const {
  std::ostringstream os;
  os << "suite,scenario,formula_value,oracle_value,abs_residual,rel_residual,tolerance,"
        "pass\n";
  for (const auto& r : rows) {
    os << r.suite << ',' << r.scenario << ',' << format_complex(r.formula_value) << ','
       << format_complex(r.oracle_value) << ',' << format_double(r.abs_residual) << ','
       << format_double(r.rel_residual) << ',' << format_double(r.tolerance) << ','
       << (r.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string RunReport::summary_text() const {
  std::ostringstream os;
  for (const auto& r : rows) {
    os << (r.pass ? "[PASS] " : "[FAIL] ") << r.suite << " :: " << r.scenario
       << "  formula=" << format_complex(r.formula_value)
       << "  oracle=" << format_complex(r.oracle_value)
       << "  abs_residual=" << format_double(r.abs_residual) << '\n';
  }
  return os.str();
}

}  // namespace bergvar
