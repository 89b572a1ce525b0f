#include "axelrod/urn.hpp"

#include <map>
#include <numeric>

#include "axelrod/error.hpp"
#include "axelrod/rng.hpp"

namespace axelrod {

std::size_t UrnState::total() const noexcept { return std::accumulate(boxes.begin(), boxes.end(), std::size_t{0}); }

UrnState urn_init(const EdgeCensus& census) { return UrnState{census.counts}; }

UrnState urn_coupled_step(const UrnState& urn, int delta_w, Rng& rng) {
    if (delta_w < 0 || delta_w > 2) throw InvalidInput("delta_w must be 0, 1 or 2");
    if (delta_w <= 1) return urn;
    const auto f = static_cast<std::size_t>(urn.features());
    std::vector<std::size_t> inner;
    for (std::size_t j = 1; j < f; ++j)
        if (urn.boxes[j] > 0) inner.push_back(j);
    if (inner.empty()) return urn;
    UrnState next = urn;
    const std::size_t j = inner[rng.below(inner.size())];
    --next.boxes[j];
    ++next.boxes[j + 1];
    if (next.boxes[0] > 0) {
        --next.boxes[0];
        ++next.boxes[1];
    }
    return next;
}

UrnPotentials urn_potentials(const UrnState& urn, const EdgeCensus& census) {
    if (urn.boxes.size() != census.counts.size()) throw InvalidInput("urn and census have different F");
    const auto f = static_cast<long long>(urn.features());
    UrnPotentials p{0, 0};
    for (std::size_t j = 1; j < urn.boxes.size(); ++j) {
        const long long weight = f - static_cast<long long>(j);
        p.beta += weight * static_cast<long long>(urn.boxes[j]);
        p.epsilon += weight * static_cast<long long>(census.counts[j]);
    }
    return p;
}

CoupledUrnRun couple_urn(const Trajectory& traj, std::uint64_t seed, bool keep_rows) {
    Rng rng(derive_seed(seed, Lane::urn));
    Configuration cfg = traj.initial;
    EdgeCensus census = edge_census(cfg);
    const Topology& topo = cfg.topology();
    CoupledUrnRun run;
    UrnState urn = urn_init(census);

    auto check = [&](std::size_t index) {
        const UrnPotentials p = urn_potentials(urn, census);
        ++run.checked_states;
        if (urn.boxes[0] > census.counts[0]) ++run.b0_violations;
        if (urn.boxes[0] > 0 && p.beta < p.epsilon) ++run.beta_violations;
        if (keep_rows) run.rows.push_back({index, urn, census.counts[0], p.beta, p.epsilon});
    };

    check(0);
    for (std::size_t k = 0; k < traj.events.size(); ++k) {
        const UpdateEvent& ev = traj.events[k];
        // Incremental census: only edges incident to the target change.
        for (std::size_t e : topo.incident_edges(ev.target)) {
            if (e >= topo.edge_count()) continue;
            const int w = edge_weight(cfg, e);
            --census.counts[static_cast<std::size_t>(w)];
            census.total_agreement -= static_cast<std::size_t>(w);
        }
        cfg.set_state(ev.target, ev.feature, cfg.state(ev.source, ev.feature));
        for (std::size_t e : topo.incident_edges(ev.target)) {
            if (e >= topo.edge_count()) continue;
            const int w = edge_weight(cfg, e);
            ++census.counts[static_cast<std::size_t>(w)];
            census.total_agreement += static_cast<std::size_t>(w);
        }
        urn = urn_coupled_step(urn, ev.delta_w, rng);
        check(k + 1);
    }
    run.final_state = urn;
    return run;
}

namespace {

/// Rounds-urn state: black balls live in boxes 0 and 1, white balls in 1..F.
struct RoundsState {
    std::size_t black0 = 0;
    std::size_t black1 = 0;
    std::vector<std::size_t> white;  // index 0 unused

    UrnState boxes() const {
        UrnState u{white};
        u.boxes[0] = black0;
        u.boxes[1] += black1;
        return u;
    }

    std::vector<std::size_t> movable() const {
        std::vector<std::size_t> js;
        for (std::size_t j = 1; j + 1 < white.size(); ++j)
            if (white[j] > 0) js.push_back(j);
        return js;
    }
};

RoundsState rounds_start(const UrnState& initial, const ModelParams& params) {
    if (initial.features() != params.features()) throw InvalidInput("urn has a different number of boxes than F + 1");
    RoundsState s;
    s.black0 = initial.boxes[0];
    s.white = initial.boxes;
    s.white[0] = 0;
    return s;
}

}  // namespace

RoundsRecord urn_rounds_run(const UrnState& initial, const ModelParams& params, Rng& rng, bool keep_steps) {
    RoundsState s = rounds_start(initial, params);
    const double coin = 1.0 / (params.states() - 1);
    RoundsRecord rec;
    std::uint64_t step = 0;
    std::size_t round = 1;
    if (keep_steps) rec.steps.push_back({0, round, s.boxes()});
    for (;;) {
        for (auto js = s.movable(); !js.empty(); js = s.movable()) {
            const std::size_t j = js[rng.below(js.size())];
            --s.white[j];
            ++s.white[j + 1];
            if (s.black0 > 0 && rng.bernoulli(coin)) {
                --s.black0;
                ++s.black1;
            }
            ++step;
            if (keep_steps) rec.steps.push_back({step, round, s.boxes()});
        }
        rec.round_end_steps.push_back(step);
        rec.box1_at_round_end.push_back(s.black1);
        if (s.black1 == 0) break;
        s.white[1] += s.black1;
        s.black1 = 0;
        ++round;
    }
    rec.final_state = s.boxes();
    return rec;
}

RoundsRecord urn_rounds_run(const UrnState& initial, const ModelParams& params, std::uint64_t seed, bool keep_steps) {
    Rng rng(derive_seed(seed, Lane::rounds));
    return urn_rounds_run(initial, params, rng, keep_steps);
}

namespace {

class ExactRounds {
  public:
    ExactRounds(double coin, std::size_t max_states) : coin_(coin), max_states_(max_states) {}

    double value(const RoundsState& s) {
        const auto js = s.movable();
        if (js.empty()) {
            if (s.black1 == 0) return static_cast<double>(s.black0);
            RoundsState next = s;
            next.white[1] += next.black1;
            next.black1 = 0;
            return value(next);
        }
        std::vector<std::size_t> key = s.white;
        key[0] = s.black0;
        key.push_back(s.black1);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        if (memo_.size() >= max_states_)
            throw CapacityError("rounds urn state space exceeds " + std::to_string(max_states_) + " states");

        double total = 0.0;
        for (std::size_t j : js) {
            RoundsState moved = s;
            --moved.white[j];
            ++moved.white[j + 1];
            if (moved.black0 == 0) {
                total += value(moved);
                continue;
            }
            RoundsState with_black = moved;
            --with_black.black0;
            ++with_black.black1;
            total += coin_ * value(with_black) + (1.0 - coin_) * value(moved);
        }
        const double v = total / static_cast<double>(js.size());
        memo_.emplace(std::move(key), v);
        return v;
    }

  private:
    double coin_;
    std::size_t max_states_;
    std::map<std::vector<std::size_t>, double> memo_;
};

}  // namespace

double urn_exact_expectation(const UrnState& initial, const ModelParams& params, std::size_t max_states) {
    RoundsState s = rounds_start(initial, params);
    ExactRounds solver(1.0 / (params.states() - 1), max_states);
    return solver.value(s);
}

}  // namespace axelrod
