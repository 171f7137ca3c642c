#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dyncorr::detail {

// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

// Whole-token parse; surrounding whitespace is ignored. Accepts nan/inf
// spellings so callers can report non-finite cells distinctly from garbage.
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_int(std::string_view text);

std::string_view trim(std::string_view text);
std::vector<std::string_view> split(std::string_view text, char separator);

}  // namespace dyncorr::detail
