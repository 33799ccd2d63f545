#pragma once

// Small string helpers shared by the parsers and writers.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <string>
#include <string_view>

#include <fmt/format.h>

namespace asbench::detail {

[[nodiscard]] inline std::string_view trim(std::string_view sv) noexcept {
    const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!sv.empty() && is_space(static_cast<unsigned char>(sv.front()))) {
        sv.remove_prefix(1);
    }
    while (!sv.empty() && is_space(static_cast<unsigned char>(sv.back()))) {
        sv.remove_suffix(1);
    }
    return sv;
}

[[nodiscard]] inline std::string to_lower(std::string_view sv) {
    std::string out(sv);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

[[nodiscard]] inline bool iequals(std::string_view a, std::string_view b) noexcept {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
               return std::tolower(x) == std::tolower(y);
           });
}

[[nodiscard]] inline bool istarts_with(std::string_view s, std::string_view prefix) noexcept {
    return s.size() >= prefix.size() && iequals(s.substr(0, prefix.size()), prefix);
}

/// Parses the whole of `sv` as a double; accepts inf/infinity/nan in any case.
[[nodiscard]] inline std::optional<double> parse_double(std::string_view sv) noexcept {
    sv = trim(sv);
    if (sv.empty()) {
        return std::nullopt;
    }
    if (sv.front() == '+') {
        sv.remove_prefix(1);
    }
    double value{};
    const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), value);
    if (ec != std::errc{} || ptr != sv.data() + sv.size()) {
        return std::nullopt;
    }
    return value;
}

/// Shortest representation that parses back to the same double.
[[nodiscard]] inline std::string format_double(double value) { return fmt::format("{}", value); }

}  // namespace asbench::detail
