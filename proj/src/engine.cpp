#include "axelrod/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "active_set.hpp"
#include "axelrod/error.hpp"
#include "axelrod/rng.hpp"

namespace axelrod {

std::string to_string(Model model) {
    switch (model) {
        case Model::axelrod: return "axelrod";
        case Model::constrained_voter: return "cvm";
        case Model::voter: return "voter";
    }
    return "?";
}

Model parse_model(const std::string& s) {
    if (s == "axelrod") return Model::axelrod;
    if (s == "cvm" || s == "constrained-voter" || s == "constrained_voter") return Model::constrained_voter;
    if (s == "voter") return Model::voter;
    throw InvalidInput("unknown model '" + s + "' (expected axelrod, cvm or voter)");
}

void StopRule::validate() const {
    if (!t_max && !max_events) throw InvalidInput("stop rule needs t_max or max_events");
    if (t_max && !(*t_max >= 0.0 && std::isfinite(*t_max))) throw InvalidInput("t_max must be finite and >= 0");
}

namespace {

/// Feature copied by an arrival, or -1 if the arrival is rejected.
/// Disagreement set J = {i_1 < ... < i_k}; copies i_j, j = min{l : k W < l}.
int thinning_choice(std::span<const State> source, std::span<const State> target, int feature_draw,
                    double tie_draw) {
    const auto draw = static_cast<std::size_t>(feature_draw);
    if (source[draw] != target[draw]) return -1;
    int k = 0;
    for (std::size_t i = 0; i < source.size(); ++i) k += source[i] != target[i];
    if (k == 0) return -1;
    auto j = static_cast<int>(std::floor(k * tie_draw));
    if (j >= k) j = k - 1;
    for (std::size_t i = 0; i < source.size(); ++i) {
        if (source[i] != target[i] && j-- == 0) return static_cast<int>(i);
    }
    return -1;
}

int incident_agreement(const Configuration& cfg, Vertex x) {
    const Topology& topo = cfg.topology();
    int total = 0;
    for (std::size_t e : topo.incident_edges(x))
        if (e < topo.edge_count()) total += edge_weight(cfg, e);
    return total;
}

std::vector<double> sorted_times(std::span<const double> times) {
    std::vector<double> out(times.begin(), times.end());
    for (double t : out)
        if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidInput("snapshot times must be finite and >= 0");
    std::sort(out.begin(), out.end());
    return out;
}

/// Incremental edge weights, census and active-edge set for one Axelrod run.
class AxelrodState {
  public:
    explicit AxelrodState(Configuration cfg)
        : cfg_(std::move(cfg)),
          features_(cfg_.params().features()),
          weights_(cfg_.topology().edge_count()),
          counts_(static_cast<std::size_t>(features_) + 1, 0),
          active_(cfg_.topology().edge_count()) {
        for (std::size_t e = 0; e < weights_.size(); ++e) {
            weights_[e] = edge_weight(cfg_, e);
            ++counts_[static_cast<std::size_t>(weights_[e])];
            total_ += static_cast<std::size_t>(weights_[e]);
            active_.assign(e, weights_[e] > 0 && weights_[e] < features_);
        }
    }

    const Configuration& cfg() const noexcept { return cfg_; }
    const detail::IndexedSet& active() const noexcept { return active_; }

    EdgeCensus census() const { return {counts_, total_}; }

    std::optional<UpdateEvent> apply(const GraphicalDraw& draw) {
        const int feature = thinning_choice(cfg_.culture(draw.source), cfg_.culture(draw.target), draw.feature_draw,
                                            draw.tie_draw);
        if (feature < 0) return std::nullopt;
        cfg_.set_state(draw.target, feature, cfg_.state(draw.source, feature));
        int delta = 0;
        for (std::size_t e : cfg_.topology().incident_edges(draw.target)) {
            if (e >= weights_.size()) continue;
            const int w = edge_weight(cfg_, e);
            delta += w - weights_[e];
            --counts_[static_cast<std::size_t>(weights_[e])];
            ++counts_[static_cast<std::size_t>(w)];
            weights_[e] = w;
            active_.assign(e, w > 0 && w < features_);
        }
        total_ = static_cast<std::size_t>(static_cast<long long>(total_) + delta);
#ifndef NDEBUG
        if (++applied_ % 1024 == 0 && !(census() == edge_census(cfg_)))
            throw ConsistencyError("incremental census drifted from a full recount");
#endif
        return UpdateEvent{draw.time, draw.target, draw.source, feature, delta};
    }

  private:
    Configuration cfg_;
    int features_;
    std::vector<int> weights_;
    std::vector<std::size_t> counts_;
    std::size_t total_ = 0;
    detail::IndexedSet active_;
#ifndef NDEBUG
    std::uint64_t applied_ = 0;
#endif
};

}  // namespace

std::optional<UpdateEvent> propose_and_apply(Configuration& cfg, const GraphicalDraw& draw) {
    const Topology& topo = cfg.topology();
    if (!topo.adjacent(draw.source, draw.target)) throw InvalidInput("draw does not reference an edge");
    if (draw.feature_draw < 0 || draw.feature_draw >= cfg.params().features())
        throw InvalidInput("feature draw out of range");
    if (!(draw.tie_draw > 0.0 && draw.tie_draw < 1.0)) throw InvalidInput("tie draw must lie in (0, 1)");
    const int feature = thinning_choice(cfg.culture(draw.source), cfg.culture(draw.target), draw.feature_draw,
                                        draw.tie_draw);
    if (feature < 0) return std::nullopt;
    const int before = incident_agreement(cfg, draw.target);
    cfg.set_state(draw.target, feature, cfg.state(draw.source, feature));
    const int after = incident_agreement(cfg, draw.target);
    return UpdateEvent{draw.time, draw.target, draw.source, feature, after - before};
}

int classify_delta_w(const Configuration& before, const UpdateEvent& event, const Configuration& after) {
    const Topology& topo = before.topology();
    if (!(topo == after.topology()) || !(before.params() == after.params()))
        throw ConsistencyError("classify_delta_w: configurations differ in shape");
    if (!topo.adjacent(event.source, event.target) || event.feature < 0 ||
        event.feature >= before.params().features())
        throw ConsistencyError("classify_delta_w: malformed event");
    if (before.state(event.target, event.feature) == before.state(event.source, event.feature))
        throw ConsistencyError("classify_delta_w: copied feature already agreed");
    if (!(apply_feature_copy(before, event.target, event.source, event.feature) == after))
        throw ConsistencyError("classify_delta_w: event does not transform before into after");
    const int delta = incident_agreement(after, event.target) - incident_agreement(before, event.target);
    if (delta < 0 || delta > 2 || delta != event.delta_w)
        throw ConsistencyError("classify_delta_w: delta_w " + std::to_string(delta) + " inconsistent with event");
    return delta;
}

Trajectory run_axelrod(const Configuration& initial, const StopRule& stop, std::uint64_t seed,
                       std::span<const double> snapshot_times) {
    stop.validate();
    const std::vector<double> snaps = sorted_times(snapshot_times);
    Rng rng(derive_seed(seed, Lane::dynamics));
    AxelrodState state(initial);
    const Topology& topo = initial.topology();
    const auto features = static_cast<std::uint64_t>(initial.params().features());

    Trajectory traj{initial, {}, {}, initial, false, 0.0, seed};
    std::size_t next_snap = 0;
    auto record_until = [&](double limit) {
        while (next_snap < snaps.size() && snaps[next_snap] <= limit) {
            const EdgeCensus census = state.census();
            traj.snapshots.push_back({snaps[next_snap], census, domains_from_census(census, topo)});
            ++next_snap;
        }
    };

    double t = 0.0;
    bool hit_t_max = false;
    for (;;) {
        if (state.active().empty()) break;
        if (stop.max_events && traj.events.size() >= *stop.max_events) break;
        // Each active edge carries two oriented clocks of rate 1/2.
        const double tau = t + rng.exponential(static_cast<double>(state.active().size()));
        if (stop.t_max && tau > *stop.t_max) {
            hit_t_max = true;
            break;
        }
        record_until(tau);
        t = tau;
        const std::size_t e = state.active().at(rng.below(state.active().size()));
        auto [u, v] = topo.endpoints(e);
        if (rng.below(2) == 1) std::swap(u, v);
        GraphicalDraw draw{t, u, v, static_cast<int>(rng.below(features)), rng.uniform_open()};
        if (auto ev = state.apply(draw)) traj.events.push_back(*ev);
    }

    traj.absorbed = state.active().empty();
    if (hit_t_max) {
        t = *stop.t_max;
        record_until(t);
    } else if (traj.absorbed) {
        if (!stop.stop_on_absorption && stop.t_max) t = *stop.t_max;
        record_until(std::numeric_limits<double>::infinity());
    }
    traj.end_time = t;
    traj.final_state = state.cfg();
    return traj;
}

namespace {

class OpinionState {
  public:
    OpinionState(Model model, OpinionConfig eta)
        : model_(model), eta_(std::move(eta)), differing_(0), active_(eta_.topology.edge_count()) {
        for (std::size_t e = 0; e < eta_.topology.edge_count(); ++e) refresh(e, true);
    }

    const OpinionConfig& eta() const noexcept { return eta_; }
    const detail::IndexedSet& active() const noexcept { return active_; }
    std::size_t differing() const noexcept { return differing_; }

    /// x may copy y.
    bool admissible(Vertex x, Vertex y) const noexcept {
        const int a = eta_.opinions[x];
        const int b = eta_.opinions[y];
        if (a == b) return false;
        return model_ == Model::voter || a != -b;
    }

    void set(Vertex x, int value) {
        for (std::size_t e : eta_.topology.incident_edges(x))
            if (e < eta_.topology.edge_count()) refresh(e, false);
        eta_.opinions[x] = value;
        for (std::size_t e : eta_.topology.incident_edges(x))
            if (e < eta_.topology.edge_count()) refresh(e, true);
    }

  private:
    // Removes (add = false) or re-adds (add = true) edge e's contribution.
    void refresh(std::size_t e, bool add) {
        const auto [u, v] = eta_.topology.endpoints(e);
        const bool differs = eta_.opinions[u] != eta_.opinions[v];
        if (add) {
            differing_ += differs;
            active_.assign(e, admissible(u, v));
        } else {
            differing_ -= differs;
        }
    }

    Model model_;
    OpinionConfig eta_;
    std::size_t differing_;
    detail::IndexedSet active_;
};

DomainStats opinion_domains(std::size_t differing, const Topology& topo) {
    std::size_t n = differing;
    if (topo.kind() == TopologyKind::path)
        n += 1;
    else if (n == 0)
        n = 1;
    return {n, topo.vertex_count()};
}

}  // namespace

OpinionTrajectory run_opinion_model(Model model, const OpinionConfig& initial, const StopRule& stop,
                                    std::uint64_t seed, std::span<const double> snapshot_times,
                                    OpinionRunOptions options) {
    if (model == Model::axelrod) throw InvalidInput("run_opinion_model: axelrod takes a Configuration");
    const OpinionAlphabet expected = model == Model::voter ? OpinionAlphabet::binary : OpinionAlphabet::ternary;
    if (initial.alphabet != expected) throw InvalidInput("initial opinions use the wrong alphabet for " + to_string(model));
    stop.validate();
    const std::vector<double> snaps = sorted_times(snapshot_times);
    Rng rng(derive_seed(seed, Lane::dynamics));
    const Topology& topo = initial.topology;
    const bool full = model == Model::voter && options.full_log;
    // Per-oriented-edge rate bound; voter targets of degree 1 copy at rate 1.
    const double bound = (model == Model::voter && topo.kind() == TopologyKind::path) ? 1.0 : 0.5;
    auto rate = [&](Vertex target) { return model == Model::voter ? 1.0 / topo.degree(target) : 0.5; };

    OpinionState state(model, initial);
    OpinionTrajectory traj{model, initial, {}, std::nullopt, {}, initial, false, 0.0, seed};
    if (full) traj.arrows = ArrowLog{topo, {}, false, 0.0};

    std::size_t next_snap = 0;
    auto record_until = [&](double limit) {
        while (next_snap < snaps.size() && snaps[next_snap] <= limit) {
            traj.snapshots.push_back(
                {snaps[next_snap], state.differing(), opinion_domains(state.differing(), topo)});
            ++next_snap;
        }
    };

    double t = 0.0;
    bool hit_t_max = false;
    for (;;) {
        const bool absorbed = state.active().empty();
        if (absorbed && (!full || stop.stop_on_absorption || !stop.t_max)) break;
        if (stop.max_events && traj.events.size() >= *stop.max_events) break;
        const std::size_t scheduled = full ? topo.edge_count() : state.active().size();
        const double tau = t + rng.exponential(2.0 * bound * static_cast<double>(scheduled));
        if (stop.t_max && tau > *stop.t_max) {
            hit_t_max = true;
            break;
        }
        record_until(tau);
        t = tau;
        const std::size_t e = full ? rng.below(scheduled) : state.active().at(rng.below(scheduled));
        auto [source, target] = topo.endpoints(e);
        if (rng.below(2) == 1) std::swap(source, target);
        const double ratio = rate(target) / bound;
        if (ratio < 1.0 && !rng.bernoulli(ratio)) continue;
        if (full) traj.arrows->arrows.push_back({t, source, target, std::nullopt});
        if (state.admissible(target, source)) {
            const int from = state.eta().opinions[target];
            const int to = state.eta().opinions[source];
            state.set(target, to);
            traj.events.push_back({t, target, source, from, to});
        }
    }

    traj.absorbed = state.active().empty();
    if (hit_t_max) {
        t = *stop.t_max;
        record_until(t);
    } else if (traj.absorbed) {
        if (!stop.stop_on_absorption && stop.t_max) t = *stop.t_max;
        record_until(std::numeric_limits<double>::infinity());
    }
    traj.end_time = t;
    traj.final_state = state.eta();
    if (traj.arrows) traj.arrows->horizon = t;
    return traj;
}

AnyTrajectory run_model(Model model, const InitialState& initial, const StopRule& stop, std::uint64_t seed,
                        std::span<const double> snapshot_times) {
    if (model == Model::axelrod) {
        const auto* cfg = std::get_if<Configuration>(&initial);
        if (!cfg) throw InvalidInput("axelrod model takes a Configuration");
        return run_axelrod(*cfg, stop, seed, snapshot_times);
    }
    const auto* eta = std::get_if<OpinionConfig>(&initial);
    if (!eta) throw InvalidInput(to_string(model) + " model takes an OpinionConfig");
    return run_opinion_model(model, *eta, stop, seed, snapshot_times);
}

Configuration replay(const Configuration& initial, std::span<const UpdateEvent> events) {
    Configuration cfg = initial;
    const Topology& topo = cfg.topology();
    double last = 0.0;
    for (std::size_t k = 0; k < events.size(); ++k) {
        const UpdateEvent& ev = events[k];
        const std::string where = "event " + std::to_string(k);
        if (k > 0 && !(ev.time > last)) throw ConsistencyError(where + ": times not strictly increasing");
        last = ev.time;
        if (!topo.adjacent(ev.source, ev.target)) throw ConsistencyError(where + ": source and target not adjacent");
        if (ev.feature < 0 || ev.feature >= cfg.params().features())
            throw ConsistencyError(where + ": feature out of range");
        const int w = edge_weight(cfg, *topo.edge_between(ev.source, ev.target));
        if (w == 0) throw ConsistencyError(where + ": arrow across a 0-edge");
        if (cfg.state(ev.target, ev.feature) == cfg.state(ev.source, ev.feature))
            throw ConsistencyError(where + ": copied feature already agreed");
        const int before = incident_agreement(cfg, ev.target);
        cfg.set_state(ev.target, ev.feature, cfg.state(ev.source, ev.feature));
        if (incident_agreement(cfg, ev.target) - before != ev.delta_w)
            throw ConsistencyError(where + ": delta_w does not match the configuration");
    }
    return cfg;
}

OpinionConfig replay(const OpinionConfig& initial, std::span<const OpinionEvent> events) {
    OpinionConfig eta = initial;
    for (std::size_t k = 0; k < events.size(); ++k) {
        const OpinionEvent& ev = events[k];
        if (!eta.topology.adjacent(ev.source, ev.target))
            throw ConsistencyError("event " + std::to_string(k) + ": source and target not adjacent");
        if (eta.opinions[ev.target] != ev.from || eta.opinions[ev.source] != ev.to)
            throw ConsistencyError("event " + std::to_string(k) + ": opinions do not match the log");
        eta.opinions[ev.target] = ev.to;
    }
    return eta;
}

ArrowLog arrow_log(const Trajectory& traj) {
    ArrowLog log{traj.initial.topology(), {}, true, traj.end_time};
    log.arrows.reserve(traj.events.size());
    for (const UpdateEvent& ev : traj.events) log.arrows.push_back({ev.time, ev.source, ev.target, ev.feature});
    return log;
}

}  // namespace axelrod
