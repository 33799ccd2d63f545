#include "asbench/manifest.hpp"

#include "asbench/error.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <fstream>
#include <sstream>

namespace asbench {

std::string_view to_string(ScheduleSource source) noexcept {
    switch (source) {
        case ScheduleSource::files: return "files";
        case ScheduleSource::selector_regr: return "regr";
        case ScheduleSource::selector_pairs: return "regr_pairs";
        case ScheduleSource::reference_sb: return "sb";
        case ScheduleSource::reference_vbs: return "vbs";
    }
    return "files";
}

void check_manifest_binding(const SystemManifest &m, const Scenario &s) {
    if (m.presolver) {
        if (!s.algorithm_index(m.presolver->algorithm)) {
            throw DataError{ fmt::format("system '{}': presolver '{}' is not an algorithm of scenario '{}'", m.system_name,
                                         m.presolver->algorithm, s.scenario_id) };
        }
        if (!(m.presolver->seconds > 0.0)) {
            throw DataError{ fmt::format("system '{}': presolver time budget must be > 0", m.system_name) };
        }
    }
    if (m.feature_subset) {
        if (m.feature_subset->empty()) {
            throw DataError{ fmt::format("system '{}': feature subset must not be empty", m.system_name) };
        }
        for (const auto &f : *m.feature_subset) {
            if (!s.feature_index(f)) {
                throw DataError{ fmt::format("system '{}': feature '{}' is not a feature of scenario '{}'", m.system_name, f,
                                             s.scenario_id) };
            }
        }
    }
}

std::vector<std::size_t> retained_steps(const SystemManifest &m, const Scenario &s) {
    std::vector<bool> keep(s.feature_steps.size(), !m.feature_subset.has_value());
    if (!m.compute_features) {
        return {};
    }
    if (m.feature_subset) {
        for (std::size_t k = 0; k < s.feature_steps.size(); ++k) {
            for (const auto &f : s.feature_steps[k].provides) {
                if (m.feature_subset->count(f)) {
                    keep[k] = true;
                    break;
                }
            }
        }
        // computing a step needs its prerequisites
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t k = 0; k < s.feature_steps.size(); ++k) {
                if (!keep[k]) {
                    continue;
                }
                for (const auto &r : s.feature_steps[k].requires_steps) {
                    const auto idx = s.step_index(r);
                    if (idx && !keep[*idx]) {
                        keep[*idx] = true;
                        changed = true;
                    }
                }
            }
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < keep.size(); ++k) {
        if (keep[k]) {
            out.push_back(k);
        }
    }
    return out;
}

SystemManifest SystemSpec::manifest_for(std::string_view scenario_id) const {
    const auto it = per_scenario.find(scenario_id);
    return it == per_scenario.end() ? defaults : it->second;
}

namespace {

using nlohmann::json;

void apply_manifest_fields(const json &j, SystemManifest &m, const std::string &source) {
    if (const auto it = j.find("presolver"); it != j.end() && !it->is_null()) {
        if (!it->is_object() || !it->contains("algorithm") || !it->contains("seconds")) {
            throw ParseError{ source, 0, "presolver must be an object with 'algorithm' and 'seconds'" };
        }
        m.presolver = Presolver{ it->at("algorithm").get<std::string>(), it->at("seconds").get<double>() };
        if (!(m.presolver->seconds > 0.0)) {
            throw ParseError{ source, 0, "presolver.seconds must be > 0" };
        }
    }
    if (const auto it = j.find("features"); it != j.end() && !it->is_null()) {
        if (it->is_string() && it->get<std::string>() == "none") {
            m.compute_features = false;
            m.feature_subset.reset();
        } else {
            auto subset = it->get<std::set<std::string>>();
            if (subset.empty()) {
                throw ParseError{ source, 0, "features must be a nonempty list (or \"none\")" };
            }
            m.feature_subset = std::move(subset);
        }
    }
}

ScheduleSource parse_selector(const std::string &name, const std::string &source) {
    if (name == "regr") return ScheduleSource::selector_regr;
    if (name == "regr_pairs" || name == "regrPairs") return ScheduleSource::selector_pairs;
    if (name == "sb") return ScheduleSource::reference_sb;
    if (name == "vbs") return ScheduleSource::reference_vbs;
    throw ParseError{ source, 0, fmt::format("unknown selector '{}'", name) };
}

}  // namespace

SystemSpec parse_system_spec(std::string_view json_text, const std::filesystem::path &base_dir, const std::string &source_name) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ParseError{ source_name, 0, e.what() };
    }
    if (!j.is_object()) {
        throw ParseError{ source_name, 0, "expected a JSON object" };
    }
    SystemSpec spec;
    try {
        if (!j.contains("system_name")) {
            throw ParseError{ source_name, 0, "missing 'system_name'" };
        }
        spec.defaults.system_name = j.at("system_name").get<std::string>();
        if (spec.defaults.system_name.empty()) {
            throw ParseError{ source_name, 0, "empty 'system_name'" };
        }
        apply_manifest_fields(j, spec.defaults, source_name);

        const bool has_sched = j.contains("schedules");
        const bool has_sel = j.contains("selector");
        if (has_sched && has_sel) {
            throw ParseError{ source_name, 0, "'schedules' and 'selector' are mutually exclusive" };
        }
        if (!has_sel) {
            spec.source = ScheduleSource::files;
            std::filesystem::path dir = has_sched ? j.at("schedules").get<std::string>() : std::string{};
            spec.schedules_dir = dir.is_relative() ? base_dir / dir : dir;
        } else {
            spec.source = parse_selector(j.at("selector").get<std::string>(), source_name);
        }
        if (spec.source == ScheduleSource::reference_sb || spec.source == ScheduleSource::reference_vbs) {
            spec.defaults.compute_features = false;
            spec.defaults.feature_subset.reset();
            spec.defaults.presolver.reset();
        }
        if (const auto it = j.find("knn_k"); it != j.end()) {
            const auto k = it->get<long long>();
            if (k < 1) {
                throw ParseError{ source_name, 0, "knn_k must be >= 1" };
            }
            spec.knn_k = static_cast<std::size_t>(k);
        }
        if (const auto it = j.find("scenarios"); it != j.end()) {
            for (const auto &[scenario, body] : it->items()) {
                SystemManifest m = spec.defaults;
                apply_manifest_fields(body, m, source_name);
                spec.per_scenario.emplace(scenario, std::move(m));
            }
        }
    } catch (const json::exception &e) {
        throw ParseError{ source_name, 0, e.what() };
    }
    return spec;
}

SystemSpec read_system_spec(const std::filesystem::path &path) {
    std::ifstream in{ path };
    if (!in) {
        throw DataError{ fmt::format("cannot open system manifest '{}'", path.string()) };
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_system_spec(buf.str(), path.parent_path(), path.filename().string());
}

std::optional<SystemSpec> builtin_system(std::string_view name) {
    constexpr std::string_view prefix = "builtin:";
    if (name.substr(0, prefix.size()) != prefix) {
        return std::nullopt;
    }
    const std::string selector{ name.substr(prefix.size()) };
    if (selector != "regr" && selector != "regr_pairs" && selector != "regrPairs" && selector != "sb" && selector != "vbs") {
        throw UsageError{ fmt::format("unknown built-in system '{}' (expected builtin:regr, builtin:regr_pairs, builtin:sb, builtin:vbs)", name) };
    }
    SystemSpec spec;
    spec.source = parse_selector(selector, std::string(name));
    spec.defaults.system_name = selector == "regr"         ? "llama-regr"
                                : selector == "sb"         ? "single-best"
                                : selector == "vbs"        ? "virtual-best"
                                                           : "llama-regrPairs";
    if (spec.source == ScheduleSource::reference_sb || spec.source == ScheduleSource::reference_vbs) {
        spec.defaults.compute_features = false;
    }
    return spec;
}

std::string manifest_to_json(const SystemManifest &m) {
    nlohmann::ordered_json j;
    j["system_name"] = m.system_name;
    if (m.presolver) {
        j["presolver"] = { { "algorithm", m.presolver->algorithm }, { "seconds", m.presolver->seconds } };
    }
    if (!m.compute_features) {
        j["features"] = "none";
    } else if (m.feature_subset) {
        j["features"] = *m.feature_subset;
    }
    return j.dump(2) + "\n";
}

}  // namespace asbench
