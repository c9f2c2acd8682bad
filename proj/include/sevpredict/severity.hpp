#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace sevpredict {

// Ordered from most to least severe. The underlying value is the row/column
// index used by every per-class table in the library.
enum class Severity : std::uint8_t {
  HighSeverity = 0,
  Critical = 1,
  Major = 2,
  NonTrivial = 3,
  Clean = 4,
};

inline constexpr std::size_t kNumClasses = 5;
inline constexpr std::size_t kNumDefectiveClasses = 4;

inline constexpr std::array<Severity, kNumClasses> kAllSeverities = {
    Severity::HighSeverity, Severity::Critical, Severity::Major,
    Severity::NonTrivial, Severity::Clean};

inline constexpr std::array<Severity, kNumDefectiveClasses> kDefectiveSeverities = {
    Severity::HighSeverity, Severity::Critical, Severity::Major,
    Severity::NonTrivial};

constexpr std::size_t index_of(Severity s) noexcept {
  return static_cast<std::size_t>(s);
}

constexpr bool is_defective(Severity s) noexcept { return s != Severity::Clean; }

// True if `a` ranks strictly above `b` in severity.
constexpr bool more_severe(Severity a, Severity b) noexcept {
  return index_of(a) < index_of(b);
}

// File vocabulary: high_severity, critical, major, non_trivial, clean.
std::string_view to_string(Severity s) noexcept;
std::optional<Severity> parse_severity(std::string_view name) noexcept;

// Human readable column title ("High Severity", "Non-Trivial", ...).
std::string_view display_name(Severity s) noexcept;

// Ordinal value attached to each class for the risk-factor weighting.
// Must stay strictly increasing and positive from HighSeverity to Clean.
class OrdinalWeights {
 public:
  OrdinalWeights() = default;
  // Throws DomainError unless strictly increasing positive finite values.
  explicit OrdinalWeights(const std::array<double, kNumClasses>& values);

  double operator[](Severity s) const noexcept { return values_[index_of(s)]; }
  const std::array<double, kNumClasses>& values() const noexcept { return values_; }

  friend bool operator==(const OrdinalWeights&, const OrdinalWeights&) = default;

 private:
  std::array<double, kNumClasses> values_ = {0.1, 0.2, 0.3, 0.4, 0.5};
};

// Per-class integer tally indexed by Severity.
using ClassCounts = std::array<std::int64_t, kNumClasses>;

}  // namespace sevpredict
