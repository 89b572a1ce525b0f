#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "axelrod/engine.hpp"
#include "axelrod/model.hpp"

namespace axelrod {

enum class ExperimentKind { simulate, bounds, table1, urn_rounds, duality_check, lemma5_estimate };

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(const std::string& s);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::simulate;
    Model model = Model::axelrod;
    std::optional<int> features;  // default 2
    std::optional<int> states;    // default 2
    TopologyKind topology = TopologyKind::path;
    std::size_t n = 100;
    std::optional<double> t_max;
    std::optional<std::uint64_t> max_events;
    bool stop_on_absorption = true;
    std::size_t replicates = 1;
    std::uint64_t seed = 1;
    std::vector<double> snapshots;
    bool attach_urn = false;
    bool event_logs = false;
    std::optional<std::filesystem::path> out;
    unsigned threads = 1;

    // duality-check, lemma5-estimate
    double t = 5.0;
    Vertex x = 10, y = 20, z = 30;
    std::optional<std::filesystem::path> log;

    // urn-rounds
    std::optional<std::vector<std::size_t>> initial_boxes;

    // bounds, table1
    std::optional<double> theta;
    std::string format = "csv";

    int F() const noexcept { return features.value_or(2); }
    int q() const noexcept { return states.value_or(2); }
    Topology make_topology() const;
    StopRule stop_rule() const;

    /// Resolved settings, excluding `out` and `threads` (which must not
    /// change the outputs).
    nlohmann::ordered_json to_json() const;
};

/// Applies one `key = value` setting. Keys match the CLI flag names without
/// the leading dashes; '_' and '-' are interchangeable. InvalidInput on an
/// unknown key or unparsable value.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Flat key-value file: one `key = value` per line, '#' starts a comment.
std::vector<std::pair<std::string, std::string>> parse_config_file(const std::filesystem::path& path);

/// Every precondition of the downstream modules, checked before any run.
void validate(const ExperimentConfig& config);

struct Check {
    std::string name;
    bool passed;
    std::string detail;
};

struct ExperimentSummary {
    nlohmann::ordered_json report;  // echoes config; written as summary.json
    std::vector<Check> checks;
    std::vector<std::filesystem::path> files;
    std::string text;  // human-facing output (tables, single-cell queries)

    bool passed() const noexcept;
};

/// Runs the experiment; deterministic in config (thread count included).
/// With `out` set, files are written atomically into that directory.
ExperimentSummary execute(const ExperimentConfig& config);

}  // namespace axelrod
