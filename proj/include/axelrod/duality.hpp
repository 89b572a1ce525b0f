#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "axelrod/engine.hpp"
#include "axelrod/model.hpp"

namespace axelrod {

struct DualSegment {
    Vertex vertex;
    double from_time;  // earlier end
    double to_time;    // later end
};

/// Backward trace from (start_vertex, start_time) to time 0. Segments run
/// from the start time backwards; consecutive segments are joined by an
/// arrow traversal.
struct DualWalkResult {
    Vertex start_vertex;
    double start_time;
    std::vector<DualSegment> path;
    Vertex end_vertex;
};

/// Dual walker of the voter model: follows every arrow whose tip (carrying
/// a delta) lies on the walker. Arrows at time >= t are ignored, matching
/// the left-limit convention for the state at t.
DualWalkResult trace_dual_walk(const ArrowLog& log, Vertex x, double t);

/// i-lineage of an Axelrod log: as above, but only arrows labelled i count.
DualWalkResult trace_lineage(const ArrowLog& log, int feature, Vertex u, double t);

/// Lineage endpoints of every vertex at time t in one backward sweep.
std::vector<Vertex> lineage_endpoints(const ArrowLog& log, std::optional<int> feature, double t);

/// Opinions at time t (left limit) by replaying the log forwards.
OpinionConfig forward_replay(const ArrowLog& log, const OpinionConfig& initial, double t);

struct DualityReport {
    double time;
    std::vector<bool> matches;  // per vertex
    std::vector<Vertex> mismatches;
    bool all_true() const noexcept { return mismatches.empty(); }
};

/// Y_t(x) == Y_0(W_t(x, t)) for every x.
DualityReport check_voter_duality(const ArrowLog& log, const OpinionConfig& initial, double t);

struct LineageReport {
    std::size_t checked = 0;
    std::vector<std::pair<Vertex, int>> mismatches;  // (vertex, feature)
    bool all_true() const noexcept { return mismatches.empty(); }
};

/// X_t^i(u) == X_0^i(u_i) for every vertex and feature, forward state taken
/// from replaying the trajectory's events up to t.
LineageReport check_lineage_identity(const Trajectory& traj, double t);

struct ProbabilityEstimate {
    std::optional<double> estimate;  // empty when no replicate met the condition
    double std_error = 0.0;
    std::uint64_t hits = 0;          // replicates meeting the condition
    std::uint64_t successes = 0;
    std::uint64_t replicates = 0;
};

/// Monte Carlo estimate of P(X_t^0(x) = X_t^0(z) | X_t^0(y) differs from
/// both) on the path {0, ..., n} from uniform random initial cultures.
ProbabilityEstimate estimate_lemma_0edge_probability(const ModelParams& params, std::size_t n, Vertex x, Vertex y,
                                                     Vertex z, double t, std::uint64_t replicates,
                                                     std::uint64_t seed, unsigned threads = 1);

}  // namespace axelrod
