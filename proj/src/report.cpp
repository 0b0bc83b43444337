#include "mtk/report.hpp"

namespace mtk {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Undecided: return "undecided";
    case Verdict::HypothesisViolated: return "hypothesis_violated";
  }
  return "?";
}

void CheckReport::merge(Verdict v) {
  if (verdict == Verdict::Fail || v == Verdict::Pass) return;
  if (v == Verdict::Fail) {
    verdict = Verdict::Fail;
  } else if (verdict == Verdict::Pass) {
    verdict = v;
  }
}

Json CheckReport::to_json(bool with_timing) const {
  Json j;
  j["check_id"] = check_id;
  j["parameters"] = parameters;
  j["verdict"] = verdict_name(verdict);
  j["witnesses"] = witnesses;
  j["assumptions"] = assumptions;
  if (!note.empty()) j["note"] = note;
  if (with_timing) j["seconds"] = seconds;
  return j;
}

Json rat_vector_json(const std::vector<Rat>& v) {
  Json a = Json::array();
  for (const auto& r : v) a.push_back(to_string(r));
  return a;
}

}  // namespace mtk
