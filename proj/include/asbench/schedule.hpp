#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace asbench {

struct ScheduleEntry {
    std::string instance_id;
    long long run_id{ 1 };
    std::string solver;
    double time_limit{ 0.0 };  // may be +inf

    friend bool operator==(const ScheduleEntry &, const ScheduleEntry &) = default;
};

/// A submission: rows in file order.
using Schedule = std::vector<ScheduleEntry>;

inline constexpr std::string_view schedule_header = "instanceID,runID,solver,timeLimit";

/**
 * Parses the submission CSV. The header must name the columns instanceID,
 * runID, solver and timeLimit (any order); fields may be double-quoted.
 * timeLimit accepts "Inf". Throws ParseError with the line of the first
 * malformed row, and on a duplicate (instanceID, runID).
 */
[[nodiscard]] Schedule parse_schedule(std::istream &in, const std::string &source_name = "<schedule>");
[[nodiscard]] Schedule parse_schedule(std::string_view text, const std::string &source_name = "<schedule>");
[[nodiscard]] Schedule read_schedule_file(const std::filesystem::path &path);

/// Writes the header `instanceID,runID,solver,timeLimit` and one unquoted row per entry
/// (fields containing commas or quotes are quoted).
void write_schedule(std::ostream &out, const Schedule &schedule);
[[nodiscard]] std::string to_schedule_string(const Schedule &schedule);
void write_schedule_file(const std::filesystem::path &path, const Schedule &schedule);

/// Entries grouped per instance, each group sorted by run_id.
[[nodiscard]] std::map<std::string, std::vector<ScheduleEntry>, std::less<>> group_by_instance(const Schedule &schedule);

}  // namespace asbench
