#include "axelrod/duality.hpp"

#include <cmath>
#include <numeric>

#include "axelrod/error.hpp"
#include "axelrod/parallel.hpp"
#include "axelrod/rng.hpp"

namespace axelrod {

namespace {

void check_time(const ArrowLog& log, double t) {
    if (!(t >= 0.0)) throw InvalidInput("trace time must be >= 0");
    if (t > log.horizon) throw InvalidInput("trace time beyond the log horizon");
}

DualWalkResult trace(const ArrowLog& log, std::optional<int> feature, Vertex start, double t) {
    if (start >= log.topology.vertex_count()) throw InvalidInput("trace start vertex out of range");
    check_time(log, t);
    DualWalkResult r{start, t, {}, start};
    Vertex cur = start;
    double upper = t;
    // Walk back from the last arrow strictly before t.
    for (auto it = log.arrows.rbegin(); it != log.arrows.rend(); ++it) {
        if (it->time >= t) continue;
        if (it->to != cur) continue;
        if (feature && it->label != feature) continue;
        r.path.push_back({cur, it->time, upper});
        cur = it->from;
        upper = it->time;
    }
    r.path.push_back({cur, 0.0, upper});
    r.end_vertex = cur;
    return r;
}

}  // namespace

DualWalkResult trace_dual_walk(const ArrowLog& log, Vertex x, double t) {
    if (log.labeled) throw InvalidInput("trace_dual_walk needs a voter-model log");
    return trace(log, std::nullopt, x, t);
}

DualWalkResult trace_lineage(const ArrowLog& log, int feature, Vertex u, double t) {
    if (!log.labeled) throw InvalidInput("trace_lineage needs a labelled Axelrod log");
    if (feature < 0) throw InvalidInput("feature index out of range");
    return trace(log, feature, u, t);
}

std::vector<Vertex> lineage_endpoints(const ArrowLog& log, std::optional<int> feature, double t) {
    check_time(log, t);
    if (feature && !log.labeled) throw InvalidInput("feature-filtered lineages need a labelled log");
    // Forward composition: origin[v] is the vertex whose initial value v holds.
    std::vector<Vertex> origin(log.topology.vertex_count());
    std::iota(origin.begin(), origin.end(), Vertex{0});
    for (const Arrow& a : log.arrows) {
        if (a.time >= t) break;
        if (feature && a.label != feature) continue;
        origin[a.to] = origin[a.from];
    }
    return origin;
}

OpinionConfig forward_replay(const ArrowLog& log, const OpinionConfig& initial, double t) {
    if (!(log.topology == initial.topology)) throw InvalidInput("log and initial configuration differ in topology");
    check_time(log, t);
    OpinionConfig eta = initial;
    for (const Arrow& a : log.arrows) {
        if (a.time >= t) break;
        eta.opinions[a.to] = eta.opinions[a.from];
    }
    return eta;
}

DualityReport check_voter_duality(const ArrowLog& log, const OpinionConfig& initial, double t) {
    if (log.labeled) throw InvalidInput("check_voter_duality needs a voter-model log");
    const OpinionConfig forward = forward_replay(log, initial, t);
    DualityReport report{t, {}, {}};
    report.matches.resize(initial.opinions.size());
    for (Vertex x = 0; x < initial.opinions.size(); ++x) {
        const Vertex ancestor = trace_dual_walk(log, x, t).end_vertex;
        report.matches[x] = forward.opinions[x] == initial.opinions[ancestor];
        if (!report.matches[x]) report.mismatches.push_back(x);
    }
    return report;
}

LineageReport check_lineage_identity(const Trajectory& traj, double t) {
    const ArrowLog log = arrow_log(traj);
    check_time(log, t);
    std::size_t before_t = 0;
    while (before_t < traj.events.size() && traj.events[before_t].time < t) ++before_t;
    const Configuration at_t = replay(traj.initial, std::span(traj.events).first(before_t));
    LineageReport report;
    for (Vertex u = 0; u < at_t.vertex_count(); ++u) {
        for (int i = 0; i < at_t.params().features(); ++i) {
            const Vertex origin = trace_lineage(log, i, u, t).end_vertex;
            ++report.checked;
            if (at_t.state(u, i) != traj.initial.state(origin, i)) report.mismatches.emplace_back(u, i);
        }
    }
    return report;
}

ProbabilityEstimate estimate_lemma_0edge_probability(const ModelParams& params, std::size_t n, Vertex x, Vertex y,
                                                     Vertex z, double t, std::uint64_t replicates,
                                                     std::uint64_t seed, unsigned threads) {
    if (!(x < y && y < z && z <= n)) throw InvalidInput("need 0 <= x < y < z <= N");
    if (replicates < 1) throw InvalidInput("need at least one replicate");
    if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidInput("t must be finite and >= 0");
    const Topology topo = Topology::path(n);
    const StopRule stop{t, std::nullopt, false};

    struct Outcome {
        bool hit;
        bool success;
    };
    const auto outcomes = parallel_map(replicates, threads, [&](std::size_t r) {
        const std::uint64_t rs = derive_seed(seed, Lane::replicate, r);
        const Trajectory traj = run_axelrod(random_config(params, topo, rs), stop, rs);
        const Configuration& c = traj.final_state;
        const State sx = c.state(x, 0), sy = c.state(y, 0), sz = c.state(z, 0);
        const bool hit = sy != sx && sy != sz;
        return Outcome{hit, hit && sx == sz};
    });

    ProbabilityEstimate est;
    est.replicates = replicates;
    for (const Outcome& o : outcomes) {
        est.hits += o.hit;
        est.successes += o.success;
    }
    if (est.hits > 0) {
        const double p = static_cast<double>(est.successes) / static_cast<double>(est.hits);
        est.estimate = p;
        est.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(est.hits));
    }
    return est;
}

}  // namespace axelrod
