#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mtk/errors.hpp"
#include "mtk/groupring.hpp"
#include "mtk/mazurtate.hpp"
#include "mtk/suite.hpp"

using namespace mtk;

namespace {

// A path to a curve file, or a label looked up in $MTK_DATA_DIR/curves (default data/curves).
CurveData resolve_curve(const std::string& arg) {
  if (std::filesystem::exists(arg)) return load_curve(arg);
  const char* env = std::getenv("MTK_DATA_DIR");
  std::filesystem::path p = std::filesystem::path(env ? env : "data") / "curves" / (arg + ".json");
  if (!std::filesystem::exists(p)) throw ConfigInvalid("no curve file or label \"" + arg + "\"");
  return load_curve(p.string());
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw ConfigInvalid("cannot write " + out);
  f << text << "\n";
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigInvalid(path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mazur-Tate elements, Euler-factor calculus and vanishing-order checks"};
  app.require_subcommand(1);

  std::string curve, field, out, L, K = "m=1;H=", config;
  i64 p = 0, ell = 0, m = 0;
  int k = 8, digits = 30, deg = 120, rank = 0, chi = -1, n = 1, target = -1, perturb = 1;
  std::size_t bound = 2000;
  bool opposite = false, no_timing = false, literal_c2 = false;
  std::vector<int> s_values;

  auto* theta_cmd = app.add_subcommand("theta", "Print theta_K as a text file");
  theta_cmd->add_option("--curve", curve, "curve file or label")->required();
  theta_cmd->add_option("--field", field, "\"m=..;H=..\"")->required();
  theta_cmd->add_option("--out", out);

  auto* check = app.add_subcommand("check", "Run one check and print its JSON report");
  std::string kind;
  check->add_option("kind", kind, "norm|funceq|interp|integrality|otsuki|honda|order|leading-term")
      ->required()
      ->check(CLI::IsMember({"norm", "funceq", "interp", "integrality", "otsuki", "honda", "order", "leading-term"}));
  check->add_option("--curve", curve)->required();
  check->add_option("--field", field, "\"m=..;H=..\" (order, otsuki nu)");
  check->add_option("--m", m, "level m (norm, funceq, interp, integrality, otsuki)");
  check->add_option("--ell", ell);
  check->add_option("--p", p);
  check->add_option("--k", k, "p-adic digits")->capture_default_str();
  check->add_option("--digits", digits, "decimal digits")->capture_default_str();
  check->add_option("--deg", deg, "series degree")->capture_default_str();
  check->add_option("--rank", rank, "r_p for the order check")->capture_default_str();
  check->add_option("--chi", chi, "character index (interp); all primitive ones by default");
  check->add_option("--n", n, "n for otsuki x/trace")->capture_default_str();
  check->add_option("--target", target, "order target; the predicted order by default");
  check->add_option("--s", s_values, "Teichmuller powers for the g/h check (honda)");
  check->add_option("--L", L, "top field (leading-term)");
  check->add_option("--K", K, "bottom field (leading-term)")->capture_default_str();
  check->add_option("--perturb", perturb, "multiply the Tate period unit (negative control)");
  check->add_flag("--opposite", opposite, "use the opposite local reciprocity normalisation");
  std::string what = "x";
  check->add_option("--what", what, "otsuki variant: x|trace|nu|relation")->capture_default_str();
  check->add_option("--out", out);
  check->add_flag("--no-timing", no_timing);

  auto* classify = app.add_subcommand("classify", "Classify the primes of m N p for (E, K, p)");
  classify->add_option("--curve", curve)->required();
  classify->add_option("--field", field)->required();
  classify->add_option("--p", p)->required();
  classify->add_flag("--literal-c2", literal_c2, "C_2 with a_l = 1");
  classify->add_option("--out", out);

  auto* cache = app.add_subcommand("cache", "Maintain the a_n cache");
  std::string action;
  cache->add_option("action", action)->required()->check(CLI::IsMember({"warm", "verify", "purge"}));
  cache->add_option("--curve", curve)->required();
  cache->add_option("--bound", bound)->capture_default_str();

  auto* run = app.add_subcommand("run", "Run a suite config file");
  run->add_option("--config", config)->required();
  run->add_option("--out", out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*theta_cmd) {
      auto E = resolve_curve(curve);
      emit(theta_file(theta(E, parse_spec(field))), out);
      return 0;
    }
    if (*cache) {
      std::cout << cache_maintenance(action, resolve_curve(curve), bound).dump(2) << "\n";
      return 0;
    }
    Json cfg;
    if (*run) {
      cfg = read_json_file(config);
      auto base = std::filesystem::path(config).parent_path().string();
      auto res = run_suite(cfg, base.empty() ? "." : base);
      emit(res.report.dump(2), out);
      return res.exit_code;
    }
    Json c;
    if (*classify) {
      c = {{"check", "classify"}, {"field", field}, {"p", p}, {"literal_c2", literal_c2}};
    } else {
      c = {{"check", kind}, {"k", k}, {"digits", digits}, {"deg", deg}};
      if (!field.empty()) c["field"] = field;
      if (m) c["m"] = m;
      if (ell) c["ell"] = ell;
      if (p) c["p"] = p;
      if (kind == "order") {
        c["r_p"] = rank;
        if (target >= 0) c["target"] = target;
      }
      if (kind == "interp" && chi >= 0) c["chi"] = chi;
      if (kind == "otsuki") {
        c["what"] = what;
        c["n"] = n;
        if (what == "relation") c["M"] = m;
      }
      if (kind == "honda" && !s_values.empty()) c["s"] = s_values;
      if (kind == "leading-term") {
        c["L"] = L;
        c["K"] = K;
        c["perturb"] = perturb;
        c["opposite_normalisation"] = opposite;
      }
    }
    cfg = {{"curve", curve}, {"timing", !no_timing}, {"checks", Json::array({c})}};
    if (!std::filesystem::exists(curve)) cfg["curve"] = Json::parse(curve_json(resolve_curve(curve)));
    auto res = run_suite(cfg);
    emit(res.report.dump(2), out);
    return res.exit_code;
  } catch (const Error& e) {
    std::cerr << e.kind() << ": " << e.what() << "\n";
    return 2;
  }
}
