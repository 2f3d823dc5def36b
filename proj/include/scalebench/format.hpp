#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace scalebench {

// Formatting helpers shared by every emitter. All output paths go through
// these so that identical values always produce identical bytes.

// 17 significant digits, enough to round-trip any IEEE-754 double.
std::string fmt_double(double v);

// JSON number token; non-finite values become "null".
std::string json_number(double v);

std::string json_escape(std::string_view s);

// Quoted JSON string including the surrounding quotes.
std::string json_string(std::string_view s);

// CSV field, quoted only when it contains a delimiter, quote or newline.
std::string csv_field(std::string_view s);

// Fixed decimal places, e.g. fmt_fixed(0.9443, 3) == "0.944".
std::string fmt_fixed(double v, int decimals);

// "6529" -> "6,529" for rendered table counts.
std::string thousands(std::size_t n);

}  // namespace scalebench
