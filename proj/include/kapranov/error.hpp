#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kapranov {

enum class Errc {
  AmbientMismatch,
  LabelOutOfRange,
  SizeOutOfRange,
  SameChart,
  ChartInSpan,
  Precondition,
  NonIntegerGenus,
  NegativeGenus,
  ChartInconsistency,
  NonIntegerDegree,
  NonPositiveDegree,
  DegenerateSeed,
  DegenerateConfig,
  DegeneratePoint,
  IndeterminatePoint,
  Parse,
};

std::string_view errc_name(Errc code) noexcept;

/// Every recoverable failure in the library is reported with this type.
/// The code names the violated contract; what() carries the details.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace kapranov
