#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "mtk/rational.hpp"

namespace mtk {

using Json = nlohmann::ordered_json;

enum class Verdict { Pass, Fail, Undecided, HypothesisViolated };

const char* verdict_name(Verdict v);

// Machine-readable verdict record shared by every check.
struct CheckReport {
  std::string check_id;
  Json parameters = Json::object();
  Verdict verdict = Verdict::Pass;
  Json witnesses = Json::object();
  std::vector<std::string> assumptions;
  std::string note;
  double seconds = 0;

  bool passed() const { return verdict == Verdict::Pass; }
  // Folds a sub-result in: any failure fails the whole, undecided dominates pass.
  void merge(Verdict v);
  Json to_json(bool with_timing = true) const;
};

inline Json rat_json(const Rat& r) { return to_string(r); }
Json rat_vector_json(const std::vector<Rat>& v);

}  // namespace mtk
