#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "axelrod/error.hpp"
#include "axelrod/experiment.hpp"

namespace {

struct Flag {
    const char* name;
    const char* help;
};

// Value-taking flags shared by every subcommand; names match config keys.
const std::vector<Flag> kValueFlags = {
    {"model", "axelrod | cvm | voter"},
    {"F", "number of features"},
    {"q", "number of states per feature"},
    {"topology", "path | cycle"},
    {"N", "path edges or cycle vertices"},
    {"t-max", "time horizon"},
    {"max-events", "event cap"},
    {"stop-on-absorption", "stop at the first absorbing state (true/false)"},
    {"replicates", "number of replicates"},
    {"seed", "master seed"},
    {"snapshots", "comma-separated snapshot times"},
    {"out", "output directory"},
    {"threads", "worker threads"},
    {"t", "observation time"},
    {"x", "left vertex"},
    {"y", "middle vertex"},
    {"z", "right vertex"},
    {"log", "event log to check"},
    {"initial-boxes", "comma-separated initial ball counts B_0,...,B_F"},
    {"theta", "mean-field argument in [0, 1]"},
    {"format", "csv | text"},
};

const std::vector<Flag> kSwitches = {
    {"attach-urn", "drive the coupled urn along each trajectory"},
    {"event-logs", "write one event-log file per replicate"},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Axelrod, constrained-voter and voter model simulator with analytic bounds"};
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"simulate", "replicated seeded simulation runs"},
        {"bounds", "analytic lower bounds (table, single cell or mean-field psi)"},
        {"table1", "the bound table over F = 2..9 and q = 4..36"},
        {"urn-rounds", "rounds urn simulation against its exact and closed-form expectations"},
        {"duality-check", "pathwise duality and lineage checks on event logs"},
        {"lemma5-estimate", "conditional 0-edge probability estimate"},
    };

    std::string config_path;
    bool print_json = false;
    std::map<std::string, std::string> values;
    std::map<std::string, bool> switches;
    std::vector<CLI::App*> subs;
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "key = value configuration file");
        sub->add_flag("--json", print_json, "print the summary JSON instead of text output");
        for (const Flag& f : kValueFlags) sub->add_option("--" + std::string(f.name), values[f.name], f.help);
        for (const Flag& f : kSwitches) sub->add_flag("--" + std::string(f.name), switches[f.name], f.help);
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        axelrod::ExperimentConfig config;
        CLI::App* chosen = app.get_subcommands().front();
        config.kind = axelrod::parse_experiment_kind(chosen->get_name());
        if (!config_path.empty())
            for (const auto& [k, v] : axelrod::parse_config_file(config_path)) axelrod::apply_setting(config, k, v);
        config.kind = axelrod::parse_experiment_kind(chosen->get_name());
        for (const Flag& f : kValueFlags)
            if (chosen->count("--" + std::string(f.name)) > 0) axelrod::apply_setting(config, f.name, values[f.name]);
        for (const Flag& f : kSwitches)
            if (switches[f.name]) axelrod::apply_setting(config, f.name, "true");

        const axelrod::ExperimentSummary summary = axelrod::execute(config);
        if (print_json || summary.text.empty())
            std::cout << summary.report.dump(2) << '\n';
        else
            std::cout << summary.text;
        for (const axelrod::Check& c : summary.checks)
            std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
        return summary.passed() ? 0 : 2;
    } catch (const axelrod::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
