#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "axelrod/engine.hpp"
#include "axelrod/model.hpp"
#include "axelrod/stats.hpp"

namespace axelrod {

class Rng;

/// Ball counts B_0, ..., B_F.
struct UrnState {
    std::vector<std::size_t> boxes;

    int features() const noexcept { return static_cast<int>(boxes.size()) - 1; }
    std::size_t total() const noexcept;

    friend bool operator==(const UrnState&, const UrnState&) = default;
};

UrnState urn_init(const EdgeCensus& census);

/// Coupled-urn update for one Axelrod event with W(t) - W(t-) = delta_w.
/// delta_w <= 1: nothing. delta_w = 2: a ball moves j -> j+1 from a uniformly
/// chosen non-empty box among 1..F-1; if one moved, a ball also moves
/// 0 -> 1 when box 0 is non-empty.
UrnState urn_coupled_step(const UrnState& urn, int delta_w, Rng& rng);

struct UrnPotentials {
    long long beta;     // sum_{j>=1} (F - j) B_j
    long long epsilon;  // sum_{j>=1} (F - j) w_j
};

UrnPotentials urn_potentials(const UrnState& urn, const EdgeCensus& census);

struct CoupledUrnRow {
    std::size_t event_index;  // 0 = before the first event
    UrnState urn;
    std::size_t w0;
    long long beta;
    long long epsilon;
};

struct CoupledUrnRun {
    UrnState final_state;
    std::vector<CoupledUrnRow> rows;  // filled only when requested
    std::size_t checked_states = 0;
    std::size_t b0_violations = 0;    // states with B_0 > w_0
    std::size_t beta_violations = 0;  // states with B_0 > 0 and beta < epsilon
    bool dominated() const noexcept { return b0_violations == 0 && beta_violations == 0; }
};

/// Drives the coupled urn along a recorded trajectory, checking B_0 <= w_0
/// and (while B_0 > 0) beta >= epsilon after every event. Urn randomness
/// comes from its own lane of `seed`.
CoupledUrnRun couple_urn(const Trajectory& traj, std::uint64_t seed, bool keep_rows = false);

struct RoundsStep {
    std::uint64_t step;
    std::size_t round;
    UrnState boxes;
};

struct RoundsRecord {
    std::vector<std::uint64_t> round_end_steps;  // T_1 < T_2 < ...
    std::vector<std::size_t> box1_at_round_end;  // B_1(T_k), all black
    UrnState final_state;
    std::vector<RoundsStep> steps;               // filled only when requested
};

/// Discrete-time rounds urn. Round 1 paints box 0 black and every other ball
/// white; each later round repaints the black balls of box 1 white. Each step
/// moves a white ball up from a uniform white-holding box below F, then with
/// probability 1/(q-1) a black ball 0 -> 1. Halts once every ball sits in
/// box 0 or box F.
RoundsRecord urn_rounds_run(const UrnState& initial, const ModelParams& params, std::uint64_t seed,
                            bool keep_steps = false);
RoundsRecord urn_rounds_run(const UrnState& initial, const ModelParams& params, Rng& rng, bool keep_steps = false);

/// Exact E(final B_0) of the rounds urn by memoised expansion of its Markov
/// chain. CapacityError once more than `max_states` states are visited.
double urn_exact_expectation(const UrnState& initial, const ModelParams& params, std::size_t max_states = 2'000'000);

}  // namespace axelrod
