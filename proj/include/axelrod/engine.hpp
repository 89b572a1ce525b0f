#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "axelrod/model.hpp"
#include "axelrod/stats.hpp"

namespace axelrod {

enum class Model { axelrod, constrained_voter, voter };

std::string to_string(Model model);
Model parse_model(const std::string& s);

/// One arrival of the graphical construction on oriented edge
/// (source -> target): T_n(e), U_n(e), W_n(e).
struct GraphicalDraw {
    double time;
    Vertex source;
    Vertex target;
    int feature_draw;  // uniform on {0, ..., F-1}
    double tie_draw;   // uniform on (0, 1)
};

/// An accepted arrow: target copies `feature` from source.
struct UpdateEvent {
    double time;
    Vertex target;
    Vertex source;
    int feature;
    int delta_w;  // W(t) - W(t-), in {0, 1, 2}

    friend bool operator==(const UpdateEvent&, const UpdateEvent&) = default;
};

struct StopRule {
    std::optional<double> t_max;
    std::optional<std::uint64_t> max_events;
    bool stop_on_absorption = true;

    void validate() const;
};

struct Snapshot {
    double time;
    EdgeCensus census;
    DomainStats domains;

    friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

struct Trajectory {
    Configuration initial;
    std::vector<UpdateEvent> events;
    std::vector<Snapshot> snapshots;
    Configuration final_state;
    bool absorbed = false;
    double end_time = 0.0;
    std::uint64_t seed = 0;

    friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// Arrow of a graphical log. Voter arrows carry an implicit delta at `to`;
/// Axelrod arrows carry the copied feature.
struct Arrow {
    double time;
    Vertex from;
    Vertex to;
    std::optional<int> label;

    friend bool operator==(const Arrow&, const Arrow&) = default;
};

struct ArrowLog {
    Topology topology;
    std::vector<Arrow> arrows;  // non-decreasing in time
    bool labeled = false;
    double horizon = 0.0;
};

/// Accepted opinion change.
struct OpinionEvent {
    double time;
    Vertex target;
    Vertex source;
    int from;
    int to;

    friend bool operator==(const OpinionEvent&, const OpinionEvent&) = default;
};

struct OpinionSnapshot {
    double time;
    std::size_t interfaces;  // discordant edges
    DomainStats domains;

    friend bool operator==(const OpinionSnapshot&, const OpinionSnapshot&) = default;
};

struct OpinionTrajectory {
    Model model;
    OpinionConfig initial;
    std::vector<OpinionEvent> events;
    std::optional<ArrowLog> arrows;  // voter model, full graphical log
    std::vector<OpinionSnapshot> snapshots;
    OpinionConfig final_state;
    bool absorbed = false;
    double end_time = 0.0;
    std::uint64_t seed = 0;
};

/// Applies one graphical arrival to cfg in place. Returns the event if the
/// arrival is accepted (feature_draw in the agreement set and the
/// disagreement set non-empty), nothing otherwise.
std::optional<UpdateEvent> propose_and_apply(Configuration& cfg, const GraphicalDraw& draw);

/// W(after) - W(before) from the edges incident to the event target.
int classify_delta_w(const Configuration& before, const UpdateEvent& event, const Configuration& after);

Trajectory run_axelrod(const Configuration& initial, const StopRule& stop, std::uint64_t seed,
                       std::span<const double> snapshot_times = {});

struct OpinionRunOptions {
    /// Voter model only: keep every arrival (including those between agreeing
    /// vertices) so the log supports duality. Off: only discordant edges are
    /// scheduled.
    bool full_log = true;
};

/// Voter model (alphabet binary): each vertex copies a uniform neighbour at
/// rate 1. Constrained voter model (alphabet ternary): x copies y at rate 1/2
/// per neighbour unless {eta(x), eta(y)} = {-1, +1}.
OpinionTrajectory run_opinion_model(Model model, const OpinionConfig& initial, const StopRule& stop,
                                    std::uint64_t seed, std::span<const double> snapshot_times = {},
                                    OpinionRunOptions options = {});

using InitialState = std::variant<Configuration, OpinionConfig>;
using AnyTrajectory = std::variant<Trajectory, OpinionTrajectory>;

/// Dispatch on model; InvalidInput if the initial state does not fit the model.
AnyTrajectory run_model(Model model, const InitialState& initial, const StopRule& stop, std::uint64_t seed,
                        std::span<const double> snapshot_times = {});

/// Replays events onto initial; ConsistencyError if an event is not legal
/// (non-adjacent pair, copied feature already agreeing, wrong delta_w).
Configuration replay(const Configuration& initial, std::span<const UpdateEvent> events);
OpinionConfig replay(const OpinionConfig& initial, std::span<const OpinionEvent> events);

ArrowLog arrow_log(const Trajectory& traj);

}  // namespace axelrod
