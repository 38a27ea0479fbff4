#pragma once

#include <string>
#include <string_view>

namespace mollow {

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

// Parses a full-string double; throws ErrorKind::Configuration naming `what` on failure.
double parse_double(std::string_view text, std::string_view what);
int parse_int(std::string_view text, std::string_view what);

std::string_view trim(std::string_view s);

}  // namespace mollow
