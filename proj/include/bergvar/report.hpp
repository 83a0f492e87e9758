#pragma once

#include <string>
#include <vector>

#include "bergvar/types.hpp"

namespace bergvar {

/// One formula-vs-oracle comparison. pass <=> abs_residual <= tolerance,
/// with tolerance already resolved to an absolute bound.
struct ReportRow {
  std::string suite;
  std::string scenario;
  cplx formula_value{};
  cplx oracle_value{};
  double abs_residual{0.0};
  double rel_residual{0.0};
  double tolerance{0.0};
  bool pass{false};
};

/// Fixed-format serialization so identical runs produce identical bytes.
std::string format_double(double x);
std::string format_complex(cplx z);

/// |formula - oracle| against an absolute tolerance.
ReportRow row_compare(const std::string& suite, const std::string& scenario, cplx formula,
                      cplx oracle, double abs_tolerance);

/// One-sided check value >= bound (bound goes to the oracle column).
ReportRow row_lower_bound(const std::string& suite, const std::string& scenario,
                          double value, double bound);

struct RunReport {
  std::string version;
  std::string config_echo;  // normalized config JSON
  std::vector<ReportRow> rows;

  bool all_pass() const;
  std::string to_json() const;
  std::string to_csv() const;
  /// One line per row, for stdout.
  std::string summary_text() const;
};

}  // namespace bergvar
