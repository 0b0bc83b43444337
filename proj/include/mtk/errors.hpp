#pragma once

#include <stdexcept>
#include <string>

namespace mtk {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define MTK_ERROR(Name)                                                \
  struct Name : Error {                                                \
    using Error::Error;                                                \
    const char* kind() const noexcept override { return #Name; }       \
  }

MTK_ERROR(PrecisionUnsupported);
MTK_ERROR(NotMinimal);
MTK_ERROR(ConvergenceFailure);
MTK_ERROR(NormalizationAmbiguous);
MTK_ERROR(NotASubfield);
MTK_ERROR(SingularOperator);
MTK_ERROR(HypothesisViolated);
MTK_ERROR(ConfigInvalid);
MTK_ERROR(CacheCorrupt);
MTK_ERROR(InvalidCurve);

#undef MTK_ERROR

}  // namespace mtk
