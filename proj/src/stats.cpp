#include "axelrod/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "axelrod/engine.hpp"
#include "axelrod/error.hpp"

namespace axelrod {

std::size_t EdgeCensus::edge_count() const noexcept { return std::accumulate(counts.begin(), counts.end(), std::size_t{0}); }

EdgeCensus edge_census(const Configuration& cfg) {
    EdgeCensus c;
    c.counts.assign(static_cast<std::size_t>(cfg.params().features()) + 1, 0);
    for (std::size_t e = 0; e < cfg.topology().edge_count(); ++e) {
        const int w = edge_weight(cfg, e);
        ++c.counts[static_cast<std::size_t>(w)];
        c.total_agreement += static_cast<std::size_t>(w);
    }
    return c;
}

namespace {

template <class Same>
DomainStats count_runs(const Topology& topo, Same same) {
    const std::size_t v = topo.vertex_count();
    std::size_t breaks = 0;
    for (Vertex x = 0; x + 1 < v; ++x) breaks += !same(x, x + 1);
    if (topo.kind() == TopologyKind::path) return {breaks + 1, v};
    breaks += !same(v - 1, 0);
    return {std::max<std::size_t>(breaks, 1), v};
}

}  // namespace

DomainStats count_domains(const Configuration& cfg) {
    return count_runs(cfg.topology(), [&](Vertex x, Vertex y) {
        const auto a = cfg.culture(x);
        const auto b = cfg.culture(y);
        return std::equal(a.begin(), a.end(), b.begin());
    });
}

DomainStats count_domains(const OpinionConfig& eta) {
    return count_runs(eta.topology, [&](Vertex x, Vertex y) { return eta.opinions[x] == eta.opinions[y]; });
}

DomainStats domains_from_census(const EdgeCensus& census, const Topology& topo) {
    const std::size_t broken = census.edge_count() - census.counts.back();
    if (topo.kind() == TopologyKind::path) return {broken + 1, topo.vertex_count()};
    return {std::max<std::size_t>(broken, 1), topo.vertex_count()};
}

bool domains_equals_w0_plus_1(const Configuration& cfg) {
    if (cfg.topology().kind() != TopologyKind::path)
        throw UnsupportedTopology("N_t = w_0 + 1 holds on trees only; got a cycle");
    if (!is_absorbed(cfg)) throw InvalidInput("domains_equals_w0_plus_1: configuration is not absorbed");
    return count_domains(cfg).domain_count == edge_census(cfg).counts[0] + 1;
}

InterfaceSeries interface_series(const Trajectory& traj) {
    InterfaceSeries series;
    const auto n = static_cast<double>(traj.initial.topology().edge_count());
    for (const Snapshot& s : traj.snapshots) {
        InterfaceRow row{s.time, {}};
        row.fractions.reserve(s.census.counts.size());
        for (std::size_t c : s.census.counts) row.fractions.push_back(static_cast<double>(c) / n);
        series.rows.push_back(std::move(row));
    }
    return series;
}

namespace {

std::size_t window_of(double t, const std::vector<double>& b) {
    // Index k with b[k] <= t < b[k+1], or b.size() if outside.
    auto it = std::upper_bound(b.begin(), b.end(), t);
    if (it == b.begin() || it == b.end()) return b.size();
    return static_cast<std::size_t>(it - b.begin()) - 1;
}

void check_windows(const std::vector<double>& b) {
    if (!std::is_sorted(b.begin(), b.end())) throw InvalidInput("window boundaries must be sorted");
}

}  // namespace

std::vector<std::size_t> flip_count(const OpinionTrajectory& traj, Vertex x, const std::vector<double>& windows) {
    check_windows(windows);
    std::vector<std::size_t> counts(windows.size() > 1 ? windows.size() - 1 : 0, 0);
    for (const OpinionEvent& ev : traj.events) {
        if (ev.target != x || ev.from == ev.to) continue;
        const std::size_t k = window_of(ev.time, windows);
        if (k < counts.size()) ++counts[k];
    }
    return counts;
}

std::vector<std::size_t> flip_count(const Trajectory& traj, Vertex x, const std::vector<double>& windows) {
    check_windows(windows);
    const Configuration& init = traj.initial;
    if (init.params().features() != 2 || init.params().states() != 2)
        throw UnsupportedProjection("flip_count on an Axelrod trajectory needs F = q = 2");
    std::vector<std::size_t> counts(windows.size() > 1 ? windows.size() - 1 : 0, 0);
    Configuration cfg = init;
    auto y = [&] { return cfg.state(x, 0) != cfg.state(x, 1); };
    for (const UpdateEvent& ev : traj.events) {
        const bool before = y();
        cfg.set_state(ev.target, ev.feature, cfg.state(ev.source, ev.feature));
        if (ev.target != x || y() == before) continue;
        const std::size_t k = window_of(ev.time, windows);
        if (k < counts.size()) ++counts[k];
    }
    return counts;
}

MeanSe mean_se(const std::vector<double>& xs) {
    MeanSe r;
    r.n = xs.size();
    if (xs.empty()) return r;
    double sum = 0.0;
    for (double x : xs) sum += x;
    r.mean = sum / static_cast<double>(r.n);
    if (r.n < 2) return r;
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    r.se = std::sqrt(ss / static_cast<double>(r.n - 1) / static_cast<double>(r.n));
    return r;
}

}  // namespace axelrod
