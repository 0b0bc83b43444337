#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "mtk/cache.hpp"
#include "mtk/errors.hpp"
#include "mtk/suite.hpp"
#include "test_data.hpp"

using namespace mtk;
namespace fs = std::filesystem;

namespace {

template <class... C>
Json suite(const C&... checks) {
  Json list = Json::array();
  (list.push_back(checks), ...);
  return {{"curve", "curves/11a1.json"}, {"timing", false}, {"checks", list}};
}

// Points the cache at a scratch directory for the lifetime of the object.
struct ScratchCache {
  std::string old;
  fs::path dir;
  ScratchCache() {
    if (const char* e = std::getenv("MTK_CACHE_DIR")) old = e;
    dir = fs::temp_directory_path() / "mtk_suite_test_cache";
    fs::remove_all(dir);
    setenv("MTK_CACHE_DIR", dir.c_str(), 1);
  }
  ~ScratchCache() {
    if (old.empty()) unsetenv("MTK_CACHE_DIR");
    else setenv("MTK_CACHE_DIR", old.c_str(), 1);
    fs::remove_all(dir);
  }
};

}  // namespace

TEST_CASE("suite runs and summarises") {
  auto res = run_suite(suite(Json{{"check", "norm"}, {"max_product", 30}}), data_dir());
  CHECK(res.exit_code == 0);
  CHECK(res.failed == 0);
  CHECK(res.passed == static_cast<int>(res.report["reports"].size()));
  CHECK(res.passed == 43);  // pairs (m, l) with m l <= 30

  auto empty = run_suite(suite(), data_dir());
  CHECK(empty.exit_code == 0);
  CHECK(empty.report["reports"].empty());
}

TEST_CASE("wrong a_l override fails with both sides in the witness") {
  auto res = run_suite(suite(Json{{"check", "norm"}, {"m", 5}, {"ell", 7}, {"a_ell_override", {{"7", 1}}}}), data_dir());
  CHECK(res.exit_code == 1);
  CHECK(res.failed == 1);
  const auto& w = res.report["reports"][0]["witnesses"];
  CHECK(w.contains("lhs"));
  CHECK(w.contains("rhs"));
  CHECK(w["lhs"] != w["rhs"]);
}

TEST_CASE("reports are deterministic") {
  auto cfg = suite(Json{{"check", "funceq"}, {"m_max", 12}},
                   Json{{"check", "order"}, {"field", "m=11;H="}, {"p", 7}},
                   Json{{"check", "classify"}, {"field", "m=5;H="}, {"p", 7}},
                   Json{{"check", "otsuki"}, {"what", "relation"}, {"ell", 5}, {"M", 12}});
  auto a = run_suite(cfg, data_dir()).report.dump();
  auto b = run_suite(cfg, data_dir()).report.dump();
  CHECK(a == b);
}

TEST_CASE("errors become verdicts, config mistakes throw") {
  auto res = run_suite(suite(Json{{"check", "leading-term"}, {"L", "m=5;H="}, {"K", "m=11;H="}, {"p", 7}}), data_dir());
  CHECK(res.undecided == 1);
  CHECK(res.report["reports"][0]["witnesses"]["error"] == "NotASubfield");
  CHECK(res.exit_code == 0);
  CHECK_THROWS_AS(run_suite(suite(Json{{"check", "nonsense"}}), data_dir()), ConfigInvalid);
  CHECK_THROWS_AS(run_suite(suite(Json{{"check", "norm"}, {"m", 5}}), data_dir()), ConfigInvalid);
  CHECK_THROWS_AS(run_suite(Json::array(), data_dir()), ConfigInvalid);
}

TEST_CASE("cache maintenance") {
  ScratchCache scratch;
  auto E = test_curve("11a1");
  CHECK(cache_maintenance("verify", E)["status"] == "empty");
  CHECK(cache_maintenance("warm", E, 1500)["status"] == "warm");
  auto v = cache_maintenance("verify", E);
  CHECK(v["status"] == "clean");
  CHECK(v["entries"] == 1500);
  CHECK(v["sampled"].size() == 15);
  for (i64 n : {1, 2, 11, 121, 125, 1000}) CHECK(single_an(E, n) == an_list(E, 1000)[n]);

  // Corrupt every entry: any sample must catch it.
  auto file = scratch.dir / "an_11a1.txt";
  {
    std::ofstream out(file);
    for (int i = 1; i <= 300; ++i) out << i << " 99999\n";
  }
  CHECK_THROWS_AS(cache_maintenance("verify", E), CacheCorrupt);

  CHECK(cache_maintenance("purge", E)["removed"] == true);
  CHECK(!fs::exists(file));
  // A miss after purge is recomputed transparently.
  CHECK(an_list_cached(E, 50) == an_list(E, 50));
  CHECK(fs::exists(file));
  CHECK_THROWS_AS(cache_maintenance("shred", E), ConfigInvalid);
}
