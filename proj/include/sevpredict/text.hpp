#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Small CSV helpers shared by the readers and writers. Fields are plain
// comma-separated values; quoting is not supported.
namespace sevpredict::text {

std::vector<std::string_view> split_fields(std::string_view line);
std::string_view trim(std::string_view s) noexcept;

std::optional<std::int64_t> parse_int(std::string_view s) noexcept;
// Accepts anything std::from_chars accepts, including nan/inf; callers
// decide whether non-finite values are allowed.
std::optional<double> parse_double(std::string_view s) noexcept;

// Shortest representation that round-trips.
std::string format_double(double value);

}  // namespace sevpredict::text
