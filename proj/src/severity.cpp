#include "sevpredict/severity.hpp"

#include <cmath>

#include "sevpredict/error.hpp"

namespace sevpredict {

namespace {
constexpr std::array<std::string_view, kNumClasses> kNames = {
    "high_severity", "critical", "major", "non_trivial", "clean"};
constexpr std::array<std::string_view, kNumClasses> kDisplayNames = {
    "High Severity", "Critical", "Major", "Non-Trivial", "Clean"};
}  // namespace

std::string_view to_string(Severity s) noexcept { return kNames[index_of(s)]; }

std::string_view display_name(Severity s) noexcept {
  return kDisplayNames[index_of(s)];
}

std::optional<Severity> parse_severity(std::string_view name) noexcept {
  for (Severity s : kAllSeverities) {
    if (kNames[index_of(s)] == name) return s;
  }
  return std::nullopt;
}

OrdinalWeights::OrdinalWeights(const std::array<double, kNumClasses>& values)
    : values_(values) {
  for (std::size_t i = 0; i < kNumClasses; ++i) {
    if (!std::isfinite(values_[i]) || values_[i] <= 0.0) {
      throw DomainError("ordinal weights must be positive finite reals");
    }
    if (i > 0 && values_[i] <= values_[i - 1]) {
      throw DomainError(
          "ordinal weights must be strictly increasing from high_severity to clean");
    }
  }
}

}  // namespace sevpredict
