#include "asbench/schedule.hpp"

#include "asbench/error.hpp"
#include "csv.hpp"
#include "text.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

namespace asbench {

namespace {

std::optional<double> parse_time_limit(std::string_view text) {
    const std::string lower = detail::to_lower(detail::trim(text));
    if (lower == "inf" || lower == "+inf" || lower == "infinity") {
        return std::numeric_limits<double>::infinity();
    }
    return detail::parse_double(lower);
}

std::optional<long long> parse_run_id(std::string_view text) {
    const auto value = detail::parse_double(text);
    if (!value || !std::isfinite(*value) || *value != std::floor(*value) || *value < 1.0 || *value > 1e15) {
        return std::nullopt;
    }
    return static_cast<long long>(*value);
}

}  // namespace

Schedule parse_schedule(std::istream &in, const std::string &source_name) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> fields;
    std::array<std::size_t, 4> col{};  // instanceID, runID, solver, timeLimit
    bool have_header = false;
    Schedule out;
    std::set<std::pair<std::string, long long>> seen;

    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) {
            continue;
        }
        if (!detail::split_csv_line(line, fields)) {
            throw ParseError{ source_name, line_no, "unterminated quoted field" };
        }
        if (!have_header) {
            constexpr std::array<std::string_view, 4> names{ "instanceID", "runID", "solver", "timeLimit" };
            for (std::size_t c = 0; c < names.size(); ++c) {
                const auto it = std::find(fields.begin(), fields.end(), names[c]);
                if (it == fields.end()) {
                    throw ParseError{ source_name, line_no,
                                      fmt::format("header must contain the columns {}; missing '{}'", schedule_header, names[c]) };
                }
                col[c] = static_cast<std::size_t>(it - fields.begin());
            }
            have_header = true;
            continue;
        }
        const std::size_t needed = *std::max_element(col.begin(), col.end()) + 1;
        if (fields.size() < needed) {
            throw ParseError{ source_name, line_no, fmt::format("expected at least {} fields, found {}", needed, fields.size()) };
        }
        ScheduleEntry e;
        e.instance_id = fields[col[0]];
        e.solver = fields[col[2]];
        if (e.instance_id.empty() || e.solver.empty()) {
            throw ParseError{ source_name, line_no, "empty instanceID or solver" };
        }
        const auto run_id = parse_run_id(fields[col[1]]);
        if (!run_id) {
            throw ParseError{ source_name, line_no, fmt::format("invalid runID '{}'", fields[col[1]]) };
        }
        e.run_id = *run_id;
        const auto limit = parse_time_limit(fields[col[3]]);
        if (!limit || !(*limit > 0.0)) {
            throw ParseError{ source_name, line_no, fmt::format("invalid timeLimit '{}'", fields[col[3]]) };
        }
        e.time_limit = *limit;
        if (!seen.emplace(e.instance_id, e.run_id).second) {
            throw ParseError{ source_name, line_no, fmt::format("duplicate runID {} for instance '{}'", e.run_id, e.instance_id) };
        }
        out.push_back(std::move(e));
    }
    if (!have_header) {
        throw ParseError{ source_name, line_no, fmt::format("missing header line '{}'", schedule_header) };
    }
    return out;
}

Schedule parse_schedule(std::string_view text, const std::string &source_name) {
    std::istringstream in{ std::string(text) };
    return parse_schedule(in, source_name);
}

Schedule read_schedule_file(const std::filesystem::path &path) {
    std::ifstream in{ path };
    if (!in) {
        throw DataError{ fmt::format("cannot open schedule '{}'", path.string()) };
    }
    return parse_schedule(in, path.string());
}

void write_schedule(std::ostream &out, const Schedule &schedule) {
    out << schedule_header << '\n';
    for (const auto &e : schedule) {
        out << detail::csv_field(e.instance_id) << ',' << e.run_id << ',' << detail::csv_field(e.solver) << ','
            << (std::isinf(e.time_limit) ? std::string("Inf") : detail::format_double(e.time_limit)) << '\n';
    }
}

std::string to_schedule_string(const Schedule &schedule) {
    std::ostringstream out;
    write_schedule(out, schedule);
    return out.str();
}

void write_schedule_file(const std::filesystem::path &path, const Schedule &schedule) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out{ path, std::ios::binary };
    if (!out) {
        throw DataError{ fmt::format("cannot write schedule '{}'", path.string()) };
    }
    write_schedule(out, schedule);
}

std::map<std::string, std::vector<ScheduleEntry>, std::less<>> group_by_instance(const Schedule &schedule) {
    std::map<std::string, std::vector<ScheduleEntry>, std::less<>> groups;
    for (const auto &e : schedule) {
        groups[e.instance_id].push_back(e);
    }
    for (auto &[id, entries] : groups) {
        std::stable_sort(entries.begin(), entries.end(), [](const ScheduleEntry &a, const ScheduleEntry &b) { return a.run_id < b.run_id; });
    }
    return groups;
}

}  // namespace asbench
