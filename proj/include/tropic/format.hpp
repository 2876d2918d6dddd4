#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tropic {

/// 12 significant digits; `inf`/`-inf` for infinities; negative zero prints as 0.
std::string format_double(double x);

/// Full-token parse; accepts `inf`, `-inf`, `+inf`. Throws ParseError.
double parse_double(std::string_view token);
long long parse_integer(std::string_view token);

/// Comma-separated list of numbers, e.g. "0.25,0.125".
std::vector<double> parse_double_list(std::string_view text);

/// Splits on whitespace and commas.
std::vector<std::string_view> split_fields(std::string_view line);

std::string_view trim(std::string_view s) noexcept;

} // namespace tropic
