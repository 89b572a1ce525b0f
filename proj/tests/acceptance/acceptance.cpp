// Acceptance suite: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "axelrod/bounds.hpp"
#include "axelrod/engine.hpp"
#include "axelrod/experiment.hpp"
#include "axelrod/stats.hpp"

using namespace axelrod;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

const Check* find_check(const ExperimentSummary& s, const std::string& name) {
    for (const Check& c : s.checks)
        if (c.name == name) return &c;
    return nullptr;
}

bool check_passed(const ExperimentSummary& s, const std::string& name) {
    const Check* c = find_check(s, name);
    return c != nullptr && c->passed;
}

std::string check_detail(const ExperimentSummary& s, const std::string& name) {
    const Check* c = find_check(s, name);
    return c ? c->detail : name + " missing";
}

// Published table, rows F = 2..9, columns q = 4, 8, ..., 36.
const char* const kPublished[8][9] = {
    {"2.6667", "1.3714", "1.2121", "1.1487", "1.1146", "1.0932", "1.0785", "1.0679", "1.0597"},
    {"neg.", "1.8286", "1.3861", "1.2535", "1.1890", "1.1508", "1.1255", "1.1074", "1.0940"},
    {"---", "3.3629", "1.6645", "1.3938", "1.2810", "1.2188", "1.1792", "1.1519", "1.1318"},
    {"---", "neg.", "2.1989", "1.5943", "1.3985", "1.3007", "1.2417", "1.2022", "1.1738"},
    {"---", "neg.", "3.7048", "1.9091", "1.5552", "1.4017", "1.3154", "1.2599", "1.2211"},
    {"---", "neg.", "45.641", "2.4851", "1.7767", "1.5304", "1.4040", "1.3268", "1.2746"},
    {"---", "---", "neg.", "3.9072", "2.1170", "1.7007", "1.5132", "1.4058", "1.3360"},
    {"---", "---", "neg.", "13.637", "2.7127", "1.9385", "1.6514", "1.5005", "1.4071"},
};

Outcome table_reproduction() {
    ExperimentConfig c;
    c.kind = ExperimentKind::table1;
    const ExperimentSummary s = execute(c);
    const Table1 t = table1_generate();
    int matched = 0;
    std::string misses;
    for (int r = 0; r < 8; ++r) {
        for (int k = 0; k < 9; ++k) {
            const std::string published = kPublished[r][k];
            const Table1Cell& cell = t.cells[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)];
            bool ok;
            if (published == "---") {
                ok = cell.features >= cell.states && cell.rendered == "---";
            } else if (published == "neg.") {
                ok = cell.bound <= 0.0 && cell.rendered == "neg.";
            } else {
                ok = cell.kind == CellKind::value && std::abs(1.0 / cell.bound - std::stod(published)) <= 5e-4;
            }
            if (ok) {
                ++matched;
            } else {
                misses += " (F=" + std::to_string(cell.features) + ",q=" + std::to_string(cell.states) +
                          ": computed " + (cell.kind == CellKind::value ? fmt("%.6f", 1.0 / cell.bound) : cell.rendered) +
                          ", published " + published + ")";
            }
        }
    }
    const bool rendered_ok = s.text.find("2.6667") != std::string::npos && s.text.find("1.3714") != std::string::npos;
    return {matched == 72 && rendered_ok, std::to_string(matched) + "/72 cells match" + misses};
}

ExperimentConfig theorem2_config(int f, int q, std::uint64_t seed) {
    ExperimentConfig c;
    c.features = f;
    c.states = q;
    c.n = 200;
    c.replicates = 200;
    c.seed = seed;
    c.attach_urn = true;
    return c;
}

struct BoundRuns {
    ExperimentSummary a, b;
};

const BoundRuns& theorem2_runs() {
    static const BoundRuns runs{execute(theorem2_config(2, 4, 2024)), execute(theorem2_config(3, 12, 2025))};
    return runs;
}

Outcome theorem2_consistency() {
    const auto& r = theorem2_runs();
    const bool ok = check_passed(r.a, "theorem2_bound") && check_passed(r.b, "theorem2_bound") &&
                    r.a.report["aggregate"]["non_absorbed"] == 0 && r.b.report["aggregate"]["non_absorbed"] == 0;
    return {ok, "F=2,q=4: " + check_detail(r.a, "theorem2_bound") + "; F=3,q=12: " + check_detail(r.b, "theorem2_bound")};
}

Outcome domains_identity() {
    const auto& r = theorem2_runs();
    const bool ok = check_passed(r.a, "domains_identity") && check_passed(r.b, "domains_identity");
    return {ok, check_detail(r.a, "domains_identity") + "; " + check_detail(r.b, "domains_identity")};
}

Outcome urn_coupling() {
    const auto& r = theorem2_runs();
    const bool ok = check_passed(r.a, "urn_dominance") && check_passed(r.b, "urn_dominance") &&
                    check_passed(r.a, "chain_monotonicity") && check_passed(r.b, "chain_monotonicity");
    return {ok, check_detail(r.a, "urn_dominance") + "; " + check_detail(r.b, "urn_dominance")};
}

Outcome initial_law() {
    const std::size_t n = 10'000;
    const int seeds = 50;
    bool ok = true;
    double worst = 0.0;
    for (auto [f, q] : {std::pair{2, 2}, std::pair{3, 5}}) {
        std::vector<double> mean(static_cast<std::size_t>(f) + 1, 0.0);
        for (int s = 0; s < seeds; ++s) {
            const EdgeCensus c =
                edge_census(random_config(ModelParams(f, q), Topology::path(n), 7000 + static_cast<std::uint64_t>(s)));
            for (int j = 0; j <= f; ++j)
                mean[static_cast<std::size_t>(j)] += static_cast<double>(c.counts[static_cast<std::size_t>(j)]) / n / seeds;
        }
        for (int j = 0; j <= f; ++j) {
            const double p = binom_pj(f, q, j);
            const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(n) / seeds);
            const double z = std::abs(mean[static_cast<std::size_t>(j)] - p) / sigma;
            worst = std::max(worst, z);
            ok = ok && z <= 3.0;
        }
    }
    return {ok, fmt("largest deviation %.3f sigma over all (F,q,j)", worst)};
}

Outcome agreement_jumps() {
    bool ok = true;
    std::string detail;
    for (auto [f, q] : {std::pair{2, 5}, std::pair{3, 8}}) {
        std::array<std::uint64_t, 3> counts{};
        std::uint64_t events = 0, outside = 0;
        for (std::uint64_t seed = 0; events < 100'000; ++seed) {
            const Trajectory traj = run_axelrod(random_config(ModelParams(f, q), Topology::path(500), 9000 + seed),
                                                {std::nullopt, 50'000'000, true}, 9000 + seed);
            for (const UpdateEvent& ev : traj.events) {
                ++events;
                if (ev.delta_w < 0 || ev.delta_w > 2)
                    ++outside;
                else
                    ++counts[static_cast<std::size_t>(ev.delta_w)];
            }
        }
        const double freq = static_cast<double>(counts[2]) / static_cast<double>(events);
        const double se = std::sqrt(freq * (1.0 - freq) / static_cast<double>(events));
        const double limit = 1.0 / (q - 1) + 3.0 * se;
        ok = ok && outside == 0 && freq <= limit;
        detail += "F=" + std::to_string(f) + ",q=" + std::to_string(q) + ": " + std::to_string(events) + " events, " +
                  fmt("P(dW=2)=%.5f <= %.5f", freq, limit) + ", outside {0,1,2}: " + std::to_string(outside) + "; ";
    }
    return {ok, detail};
}

Outcome voter_duality() {
    ExperimentConfig c;
    c.kind = ExperimentKind::duality_check;
    c.model = Model::voter;
    c.topology = TopologyKind::cycle;
    c.n = 16;
    c.t = 5.0;
    c.replicates = 100;
    c.seed = 31;
    const ExperimentSummary s = execute(c);
    return {check_passed(s, "voter_duality") && s.report["counts"]["all_true"] == 100, check_detail(s, "voter_duality")};
}

Outcome zero_edge_probability() {
    ExperimentConfig c;
    c.kind = ExperimentKind::lemma5_estimate;
    c.features = 2;
    c.states = 5;
    c.n = 40;
    c.x = 10;
    c.y = 20;
    c.z = 30;
    c.t = 3.0;
    c.replicates = 50'000;
    c.seed = 41;
    const ExperimentSummary s = execute(c);
    c.states = 2;
    c.replicates = 5'000;
    const ExperimentSummary control = execute(c);
    const bool exact = !control.report["estimate"].is_null() && control.report["estimate"].get<double>() == 1.0;
    return {check_passed(s, "lemma5_probability") && exact,
            check_detail(s, "lemma5_probability") + "; q=2 control " + control.report["estimate"].dump()};
}

Outcome lineage_ordering() {
    ExperimentConfig c;
    c.kind = ExperimentKind::duality_check;
    c.model = Model::axelrod;
    c.features = 3;
    c.states = 3;
    c.n = 64;
    c.t = 20.0;
    c.replicates = 100;
    c.seed = 51;
    const ExperimentSummary s = execute(c);
    return {check_passed(s, "lineage_ordering") && check_passed(s, "pathwise_duality") &&
                s.report["counts"]["logs"] == 100,
            check_detail(s, "lineage_ordering") + "; identity " + check_detail(s, "pathwise_duality")};
}

Outcome clustering() {
    ExperimentConfig c;
    c.features = 2;
    c.states = 2;
    c.topology = TopologyKind::cycle;
    c.n = 1024;
    c.replicates = 50;
    c.t_max = 1000.0;
    c.snapshots = {10.0, 100.0, 1000.0};
    c.seed = 61;
    const ExperimentSummary s = execute(c);
    const auto& snaps = s.report["snapshots"];
    std::vector<double> mixed, ones;
    for (const auto& row : snaps) {
        const double w0 = row["w_0"]["mean"].get<double>(), w1 = row["w_1"]["mean"].get<double>();
        mixed.push_back((w0 + w1) / 1024.0);
        ones.push_back(w1 / 1024.0);
    }
    const bool ok = mixed.size() == 3 && mixed[0] > mixed[1] && mixed[1] > mixed[2] && ones[2] < 0.05;
    return {ok, fmt("(w_0+w_1)/N = %.4f, %.4f, ", mixed.at(0), mixed.at(1)) +
                    fmt("%.4f at t = 10, 100, 1000; w_1/N at 1000 = %.4f", mixed.at(2), ones.at(2))};
}

Outcome rounds_oracle() {
    bool ok = true;
    std::string detail;
    for (const char* boxes : {"1,1,0", "2,2,2", "3,2,1", "0,4,2"}) {
        ExperimentConfig c;
        c.kind = ExperimentKind::urn_rounds;
        c.features = 2;
        c.states = 3;
        apply_setting(c, "initial-boxes", boxes);
        c.replicates = 10'000;
        c.seed = 71;
        const ExperimentSummary s = execute(c);
        ok = ok && check_passed(s, "rounds_exact_oracle");
        detail += std::string("(") + boxes + ") " + check_detail(s, "rounds_exact_oracle") + "; ";
    }
    ExperimentConfig c;
    c.kind = ExperimentKind::urn_rounds;
    c.features = 2;
    c.states = 4;
    c.n = 500;
    c.replicates = 2'000;
    c.seed = 72;
    const ExperimentSummary s = execute(c);
    ok = ok && check_passed(s, "rounds_closed_form") && check_passed(s, "closed_form_equals_theorem2");
    detail += check_detail(s, "rounds_closed_form") + "; identity " + check_detail(s, "closed_form_equals_theorem2");
    return {ok, detail};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

Outcome determinism() {
    const auto root = std::filesystem::temp_directory_path() / "axelrod_acceptance_determinism";
    std::filesystem::remove_all(root);
    std::vector<ExperimentConfig> configs;
    {
        ExperimentConfig c;
        c.features = 3;
        c.states = 5;
        c.n = 120;
        c.replicates = 12;
        c.attach_urn = true;
        c.event_logs = true;
        c.snapshots = {1.0, 10.0};
        configs.push_back(c);
        c.model = Model::constrained_voter;
        c.attach_urn = false;
        c.t_max = 50.0;
        configs.push_back(c);
    }
    {
        ExperimentConfig c;
        c.kind = ExperimentKind::urn_rounds;
        c.features = 2;
        c.states = 4;
        c.n = 100;
        c.replicates = 50;
        configs.push_back(c);
        c = ExperimentConfig{};
        c.kind = ExperimentKind::duality_check;
        c.model = Model::voter;
        c.topology = TopologyKind::cycle;
        c.n = 16;
        c.replicates = 20;
        c.event_logs = true;
        configs.push_back(c);
        c = ExperimentConfig{};
        c.kind = ExperimentKind::lemma5_estimate;
        c.states = 5;
        c.n = 40;
        c.replicates = 2'000;
        configs.push_back(c);
        c = ExperimentConfig{};
        c.kind = ExperimentKind::table1;
        configs.push_back(c);
    }
    std::size_t files = 0, differing = 0;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        std::vector<std::vector<std::string>> contents;
        for (unsigned threads : {1u, 1u, 4u}) {
            ExperimentConfig c = configs[i];
            c.threads = threads;
            c.out = root / (std::to_string(i) + "_" + std::to_string(contents.size()));
            const ExperimentSummary s = execute(c);
            std::vector<std::string> run;
            for (const auto& f : s.files) run.push_back(f.filename().string() + "\n" + slurp(f));
            contents.push_back(std::move(run));
        }
        files += contents[0].size();
        for (std::size_t k = 1; k < contents.size(); ++k) differing += contents[k] != contents[0];
    }
    std::filesystem::remove_all(root);
    return {differing == 0 && files > 0, std::to_string(configs.size()) + " experiments, " + std::to_string(files) +
                                             " files each compared across 2 reruns (1 and 4 threads); " +
                                             std::to_string(differing) + " differing runs"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"table reproduction", table_reproduction},
        {"bound Monte Carlo consistency", theorem2_consistency},
        {"domains identity", domains_identity},
        {"urn coupling", urn_coupling},
        {"initial census law", initial_law},
        {"agreement jumps", agreement_jumps},
        {"voter duality", voter_duality},
        {"0-edge probability", zero_edge_probability},
        {"lineage ordering", lineage_ordering},
        {"clustering diagnostic", clustering},
        {"rounds urn oracle", rounds_oracle},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += !o.passed;
        std::printf("%s %2zu %s [%.2fs]: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
