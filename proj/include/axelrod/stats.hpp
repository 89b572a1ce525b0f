#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "axelrod/model.hpp"

namespace axelrod {

/// w_0, ..., w_F and W = sum_j j w_j.
struct EdgeCensus {
    std::vector<std::size_t> counts;
    std::size_t total_agreement = 0;

    int features() const noexcept { return static_cast<int>(counts.size()) - 1; }
    std::size_t edge_count() const noexcept;

    friend bool operator==(const EdgeCensus&, const EdgeCensus&) = default;
};

/// N_t and S_t = vertex_count / N_t.
struct DomainStats {
    std::size_t domain_count = 1;
    std::size_t vertex_count = 1;

    double mean_size() const noexcept { return static_cast<double>(vertex_count) / static_cast<double>(domain_count); }

    friend bool operator==(const DomainStats&, const DomainStats&) = default;
};

EdgeCensus edge_census(const Configuration& cfg);

/// Single pass over the lattice: runs of weight-F edges form one domain.
DomainStats count_domains(const Configuration& cfg);
DomainStats count_domains(const OpinionConfig& eta);

/// Domains from the census alone: on a path N_t = #{edges with weight < F} + 1;
/// on a cycle that count, or 1 if it is zero.
DomainStats domains_from_census(const EdgeCensus& census, const Topology& topology);

/// N_t == w_0 + 1 at absorption on a path. Throws UnsupportedTopology on a
/// cycle and InvalidInput if cfg is not absorbed.
bool domains_equals_w0_plus_1(const Configuration& cfg);

struct Trajectory;
struct OpinionTrajectory;

struct InterfaceRow {
    double time;
    std::vector<double> fractions;  // w_j / N, j = 0..F
};

struct InterfaceSeries {
    std::vector<InterfaceRow> rows;
    bool empty() const noexcept { return rows.empty(); }
};

InterfaceSeries interface_series(const Trajectory& traj);

/// Opinion changes of x inside each window [b_k, b_{k+1}).
std::vector<std::size_t> flip_count(const OpinionTrajectory& traj, Vertex x, const std::vector<double>& window_boundaries);

/// Same, for the voter projection Y of an F = q = 2 Axelrod trajectory.
std::vector<std::size_t> flip_count(const Trajectory& traj, Vertex x, const std::vector<double>& window_boundaries);

/// Mean and standard error of the mean; se is 0 for fewer than two samples.
struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
    std::size_t n = 0;
};

MeanSe mean_se(const std::vector<double>& xs);

}  // namespace axelrod
