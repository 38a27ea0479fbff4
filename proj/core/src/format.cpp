#include "mollow/format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <string>

#include "mollow/error.hpp"

namespace mollow {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) throw Error(ErrorKind::Io, "format_double: conversion failed");
    return std::string(buf.data(), end);
}

double parse_double(std::string_view text, std::string_view what) {
    const std::string_view t = trim(text);
    if (t == "inf" || t == "+inf") return HUGE_VAL;
    if (t == "-inf") return -HUGE_VAL;
    double value = 0.0;
    const char* first = t.data();
    if (!t.empty() && t.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), value);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
        throw Error(ErrorKind::Configuration,
                    "cannot parse '" + std::string(t) + "' as a number for " + std::string(what));
    }
    return value;
}

int parse_int(std::string_view text, std::string_view what) {
    const std::string_view t = trim(text);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
        throw Error(ErrorKind::Configuration,
                    "cannot parse '" + std::string(t) + "' as an integer for " + std::string(what));
    }
    return value;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace mollow
