#pragma once

#include <string>
#include <vector>

#include "mtk/curve.hpp"
#include "mtk/report.hpp"

namespace mtk {

// Defaults applied to every check unless the check sets its own value.
struct SuiteDefaults {
  int k = 8;         // p-adic digits
  int digits = 30;   // decimal digits
  int deg = 120;     // series degree
};

// Expands one check description into its (check, parameter) instances and runs them.
// Module errors are embedded as a report with the error kind; ConfigInvalid is thrown.
std::vector<CheckReport> run_check(const CurveData& E, const Json& check, const SuiteDefaults& d = {});

struct SuiteResult {
  Json report;  // {"curve", "reports": [...], "summary": {...}}
  int exit_code = 0;
  int passed = 0, failed = 0, undecided = 0, hypothesis_violated = 0;
};

// config: {"curve": <path or inline curve>, "defaults": {...}, "checks": [...], "timing": bool}.
// Relative curve paths resolve against base_dir. Exit code 0 iff no check failed.
SuiteResult run_suite(const Json& config, const std::string& base_dir = ".");

// warm: a_n up to bound into the cache. verify: recomputes a 1% sample (CacheCorrupt on mismatch).
// purge: removes the curve's cache files.
Json cache_maintenance(const std::string& action, const CurveData& E, std::size_t bound = 2000);

// a_n for a single n by factoring n; independent of the cached list.
i64 single_an(const CurveData& E, i64 n);

}  // namespace mtk
