#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace asbench {

enum class AttributeKind { numeric, string, nominal };

struct ArffAttribute {
    std::string name;
    AttributeKind kind{ AttributeKind::numeric };
    std::vector<std::string> nominal_values;  // only for AttributeKind::nominal

    friend bool operator==(const ArffAttribute &, const ArffAttribute &) = default;
};

/// Missing cells (`?`) are std::monostate, distinct from 0 and from "".
using ArffCell = std::variant<std::monostate, double, std::string>;

[[nodiscard]] inline bool is_missing(const ArffCell &cell) noexcept { return std::holds_alternative<std::monostate>(cell); }

/**
 * An in-memory ARFF relation. Attribute order and row order are those of the
 * source file. Only the dense subset of the format is supported: NUMERIC
 * (and its REAL/INTEGER aliases), STRING and nominal attributes.
 */
struct ArffTable {
    std::string relation_name;
    std::vector<ArffAttribute> attributes;
    std::vector<std::vector<ArffCell>> rows;

    /// Index of the attribute called `name` (case-insensitive), if any.
    [[nodiscard]] std::optional<std::size_t> find_attribute(std::string_view name) const;

    friend bool operator==(const ArffTable &, const ArffTable &) = default;
};

/// Parses ARFF text. Throws ParseError carrying `source_name` and the offending line.
[[nodiscard]] ArffTable parse_arff(std::istream &in, const std::string &source_name = "<arff>");
[[nodiscard]] ArffTable parse_arff(std::string_view text, const std::string &source_name = "<arff>");
[[nodiscard]] ArffTable read_arff_file(const std::filesystem::path &path);

void write_arff(std::ostream &out, const ArffTable &table);
[[nodiscard]] std::string to_arff_string(const ArffTable &table);
void write_arff_file(const std::filesystem::path &path, const ArffTable &table);

}  // namespace asbench
