#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace itd {

/// Round-trip text with 17 significant digits (%.17g).
std::string format_double(double value);

/// Shortest text that reads back to exactly `value`.
std::string format_shortest(double value);

/// Fixed-point text with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

std::optional<double> parse_double(std::string_view text);

std::string_view trim(std::string_view text);
std::string to_lower(std::string_view text);

/// Splits one CSV record. Double-quoted fields may contain commas and `""`.
std::vector<std::string> split_csv_line(std::string_view line);

/// Strips a trailing '\r' and a leading UTF-8 byte-order mark.
std::string_view strip_line(std::string_view line, bool first_line);

}  // namespace itd
