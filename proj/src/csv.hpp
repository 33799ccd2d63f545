#pragma once

// Minimal RFC-4180 style line handling for the comma-separated outputs.

#include "text.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace asbench::detail {

/// Splits one CSV record. Returns false on an unterminated quote.
inline bool split_csv_line(std::string_view line, std::vector<std::string> &fields) {
    fields.clear();
    std::string current;
    bool in_quotes = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"' && !was_quoted && current.find_first_not_of(" \t") == std::string::npos) {
            current.clear();
            in_quotes = true;
            was_quoted = true;
        } else if (c == ',') {
            fields.push_back(was_quoted ? current : std::string(trim(current)));
            current.clear();
            was_quoted = false;
        } else if (c != '\r') {
            current.push_back(c);
        }
    }
    if (in_quotes) {
        return false;
    }
    fields.push_back(was_quoted ? current : std::string(trim(current)));
    return true;
}

[[nodiscard]] inline std::string csv_field(std::string_view value) {
    if (value.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(value);
    }
    std::string out = "\"";
    for (const char c : value) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace asbench::detail
