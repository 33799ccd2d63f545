#include "asbench/arff.hpp"

#include "asbench/error.hpp"
#include "text.hpp"

#include <fstream>
#include <sstream>

namespace asbench {

ParseError::ParseError(std::string source, std::size_t line, const std::string &message) :
    Error{ line > 0 ? fmt::format("{}:{}: {}", source, line, message) : fmt::format("{}: {}", source, message) },
    source_{ std::move(source) },
    line_{ line } {}

std::optional<std::size_t> ArffTable::find_attribute(std::string_view name) const {
    for (std::size_t i = 0; i < attributes.size(); ++i) {
        if (detail::iequals(attributes[i].name, name)) {
            return i;
        }
    }
    return std::nullopt;
}

namespace {

struct Token {
    std::string text;
    bool quoted{ false };
};

class LineCursor {
  public:
    LineCursor(std::string_view line, const std::string &source, std::size_t line_no) :
        line_{ line }, source_{ source }, line_no_{ line_no } {}

    void skip_space() {
        while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) {
            ++pos_;
        }
    }

    [[nodiscard]] bool at_end() {
        skip_space();
        return pos_ >= line_.size();
    }

    [[nodiscard]] char peek() const { return pos_ < line_.size() ? line_[pos_] : '\0'; }

    void expect(char c) {
        skip_space();
        if (peek() != c) {
            fail(fmt::format("expected '{}'", c));
        }
        ++pos_;
    }

    /// Reads a quoted string or a run of characters up to whitespace or one of `stops`.
    Token word(std::string_view stops) {
        skip_space();
        if (pos_ >= line_.size()) {
            fail("unexpected end of line");
        }
        const char c = line_[pos_];
        if (c == '\'' || c == '"') {
            return Token{ quoted_string(c), true };
        }
        const std::size_t start = pos_;
        while (pos_ < line_.size() && !std::isspace(static_cast<unsigned char>(line_[pos_])) &&
               stops.find(line_[pos_]) == std::string_view::npos) {
            ++pos_;
        }
        return Token{ std::string(line_.substr(start, pos_ - start)), false };
    }

    /// Reads a field delimited by `delim` (used for data cells, which may contain spaces).
    Token field(char delim) {
        skip_space();
        const char c = peek();
        if (c == '\'' || c == '"') {
            Token t{ quoted_string(c), true };
            skip_space();
            return t;
        }
        const std::size_t start = pos_;
        while (pos_ < line_.size() && line_[pos_] != delim && line_[pos_] != '}') {
            ++pos_;
        }
        return Token{ std::string(detail::trim(line_.substr(start, pos_ - start))), false };
    }

    [[nodiscard]] std::string_view rest() {
        skip_space();
        return detail::trim(line_.substr(pos_));
    }

    [[noreturn]] void fail(const std::string &message) const { throw ParseError{ source_, line_no_, message }; }

  private:
    std::string quoted_string(char quote) {
        ++pos_;
        std::string out;
        while (pos_ < line_.size()) {
            const char c = line_[pos_++];
            if (c == '\\' && pos_ < line_.size()) {
                out.push_back(line_[pos_++]);
            } else if (c == quote) {
                return out;
            } else {
                out.push_back(c);
            }
        }
        fail("unterminated quoted string");
    }

    std::string_view line_;
    const std::string &source_;
    std::size_t line_no_;
    std::size_t pos_{ 0 };
};

ArffAttribute parse_attribute(LineCursor &cur) {
    ArffAttribute attr;
    attr.name = cur.word("{").text;
    if (attr.name.empty()) {
        cur.fail("@ATTRIBUTE without a name");
    }
    cur.skip_space();
    if (cur.peek() == '{') {
        cur.expect('{');
        attr.kind = AttributeKind::nominal;
        if (cur.at_end()) {
            cur.fail("unterminated nominal value list");
        }
        if (cur.peek() == '}') {
            cur.fail("nominal attribute without values");
        }
        while (true) {
            Token v = cur.field(',');
            if (v.text.empty() && !v.quoted) {
                cur.fail("empty nominal value");
            }
            attr.nominal_values.push_back(std::move(v.text));
            cur.skip_space();
            if (cur.peek() == ',') {
                cur.expect(',');
                continue;
            }
            cur.expect('}');
            break;
        }
        if (!cur.at_end()) {
            cur.fail("trailing characters after nominal value list");
        }
        return attr;
    }
    const std::string type = detail::to_lower(cur.word("").text);
    if (type == "numeric" || type == "real" || type == "integer") {
        attr.kind = AttributeKind::numeric;
    } else if (type == "string") {
        attr.kind = AttributeKind::string;
    } else if (type == "date" || type == "relational") {
        cur.fail(fmt::format("unsupported attribute type '{}'", type));
    } else {
        cur.fail(fmt::format("unknown attribute type '{}'", type));
    }
    if (!cur.at_end()) {
        cur.fail("trailing characters after attribute type");
    }
    return attr;
}

std::vector<ArffCell> parse_row(std::string_view line, const std::vector<ArffAttribute> &attributes, const std::string &source,
                                std::size_t line_no) {
    LineCursor cur{ line, source, line_no };
    cur.skip_space();
    if (cur.peek() == '{') {
        cur.fail("sparse ARFF rows are not supported");
    }
    std::vector<ArffCell> row;
    row.reserve(attributes.size());
    while (true) {
        Token tok = cur.field(',');
        const std::size_t col = row.size();
        if (col >= attributes.size()) {
            cur.fail(fmt::format("row has more than {} values", attributes.size()));
        }
        const ArffAttribute &attr = attributes[col];
        if (!tok.quoted && tok.text == "?") {
            row.emplace_back(std::monostate{});
        } else {
            switch (attr.kind) {
                case AttributeKind::numeric: {
                    const auto value = detail::parse_double(tok.text);
                    if (!value) {
                        cur.fail(fmt::format("invalid numeric value '{}' for attribute '{}'", tok.text, attr.name));
                    }
                    row.emplace_back(*value);
                    break;
                }
                case AttributeKind::string:
                    row.emplace_back(std::move(tok.text));
                    break;
                case AttributeKind::nominal:
                    if (std::find(attr.nominal_values.begin(), attr.nominal_values.end(), tok.text) == attr.nominal_values.end()) {
                        cur.fail(fmt::format("undeclared nominal value '{}' for attribute '{}'", tok.text, attr.name));
                    }
                    row.emplace_back(std::move(tok.text));
                    break;
            }
        }
        if (cur.at_end()) {
            break;
        }
        cur.expect(',');
    }
    if (row.size() != attributes.size()) {
        cur.fail(fmt::format("row has {} values, expected {}", row.size(), attributes.size()));
    }
    return row;
}

bool needs_quotes(std::string_view s) {
    if (s.empty() || s == "?") {
        return true;
    }
    return s.find_first_of(" \t,'\"%{}\\") != std::string_view::npos;
}

std::string quote_if_needed(std::string_view s) {
    if (!needs_quotes(s)) {
        return std::string(s);
    }
    std::string out = "'";
    for (const char c : s) {
        if (c == '\'' || c == '\\') {
            out.push_back('\\');
        }
        out.push_back(c);
    }
    out.push_back('\'');
    return out;
}

}  // namespace

ArffTable parse_arff(std::istream &in, const std::string &source_name) {
    ArffTable table;
    bool seen_relation = false;
    bool in_data = false;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = detail::trim(raw);
        if (line.empty() || line.front() == '%') {
            continue;
        }
        if (in_data) {
            table.rows.push_back(parse_row(line, table.attributes, source_name, line_no));
            continue;
        }
        LineCursor cur{ line, source_name, line_no };
        if (line.front() != '@') {
            cur.fail("expected @RELATION, @ATTRIBUTE or @DATA");
        }
        const Token keyword = cur.word("");
        if (detail::iequals(keyword.text, "@relation")) {
            if (seen_relation || !table.attributes.empty()) {
                cur.fail("@RELATION must appear once, before any @ATTRIBUTE");
            }
            seen_relation = true;
            cur.skip_space();
            const char q = cur.peek();
            table.relation_name = (q == '\'' || q == '"') ? cur.word("").text : std::string(cur.rest());
        } else if (detail::iequals(keyword.text, "@attribute")) {
            table.attributes.push_back(parse_attribute(cur));
        } else if (detail::iequals(keyword.text, "@data")) {
            in_data = true;
        } else {
            cur.fail(fmt::format("unknown declaration '{}'", keyword.text));
        }
    }
    if (!in_data) {
        throw ParseError{ source_name, line_no, "missing @DATA section" };
    }
    return table;
}

ArffTable parse_arff(std::string_view text, const std::string &source_name) {
    std::istringstream in{ std::string(text) };
    return parse_arff(in, source_name);
}

ArffTable read_arff_file(const std::filesystem::path &path) {
    std::ifstream in{ path };
    if (!in) {
        throw DataError{ fmt::format("cannot open '{}'", path.string()) };
    }
    return parse_arff(in, path.filename().string());
}

void write_arff(std::ostream &out, const ArffTable &table) {
    out << "@RELATION " << quote_if_needed(table.relation_name.empty() ? "relation" : table.relation_name) << "\n\n";
    for (const ArffAttribute &attr : table.attributes) {
        out << "@ATTRIBUTE " << quote_if_needed(attr.name) << ' ';
        switch (attr.kind) {
            case AttributeKind::numeric:
                out << "NUMERIC";
                break;
            case AttributeKind::string:
                out << "STRING";
                break;
            case AttributeKind::nominal: {
                out << '{';
                for (std::size_t i = 0; i < attr.nominal_values.size(); ++i) {
                    out << (i > 0 ? "," : "") << quote_if_needed(attr.nominal_values[i]);
                }
                out << '}';
                break;
            }
        }
        out << '\n';
    }
    out << "\n@DATA\n";
    for (const auto &row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) {
                out << ',';
            }
            std::visit(
                [&out](const auto &v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, std::monostate>) {
                        out << '?';
                    } else if constexpr (std::is_same_v<T, double>) {
                        out << detail::format_double(v);
                    } else {
                        out << quote_if_needed(v);
                    }
                },
                row[i]);
        }
        out << '\n';
    }
}

std::string to_arff_string(const ArffTable &table) {
    std::ostringstream out;
    write_arff(out, table);
    return out.str();
}

void write_arff_file(const std::filesystem::path &path, const ArffTable &table) {
    std::ofstream out{ path, std::ios::binary };
    if (!out) {
        throw DataError{ fmt::format("cannot write '{}'", path.string()) };
    }
    write_arff(out, table);
}

}  // namespace asbench
