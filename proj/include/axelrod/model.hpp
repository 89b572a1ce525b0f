#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace axelrod {

using State = std::uint16_t;
using Vertex = std::size_t;

/// Number of cultural features F and states per feature q.
class ModelParams {
  public:
    ModelParams(int features, int states);

    int features() const noexcept { return features_; }
    int states() const noexcept { return states_; }

    friend bool operator==(const ModelParams&, const ModelParams&) = default;

  private:
    int features_;
    int states_;
};

/// Per-vertex culture, 0-based states. File formats render states 1-based.
using Culture = std::vector<State>;

enum class TopologyKind { path, cycle };

/// One-dimensional lattice. `path(n)` is {0, ..., n} with n edges;
/// `cycle(n)` has n vertices and n edges. Edge e joins e and e + 1 (mod n on
/// the cycle).
class Topology {
  public:
    static Topology path(std::size_t edges);
    static Topology cycle(std::size_t vertices);

    TopologyKind kind() const noexcept { return kind_; }
    std::size_t n() const noexcept { return n_; }
    std::size_t vertex_count() const noexcept { return kind_ == TopologyKind::path ? n_ + 1 : n_; }
    std::size_t edge_count() const noexcept { return n_; }

    std::array<Vertex, 2> endpoints(std::size_t edge) const;
    bool adjacent(Vertex x, Vertex y) const noexcept;
    std::optional<std::size_t> edge_between(Vertex x, Vertex y) const noexcept;

    /// Edges incident to x; at most two. Unused slots hold edge_count().
    std::array<std::size_t, 2> incident_edges(Vertex x) const noexcept;
    int degree(Vertex x) const noexcept;

    friend bool operator==(const Topology&, const Topology&) = default;

  private:
    Topology(TopologyKind kind, std::size_t n) : kind_(kind), n_(n) {}

    TopologyKind kind_;
    std::size_t n_;
};

std::string to_string(TopologyKind kind);
TopologyKind parse_topology_kind(const std::string& s);

/// Cultures on every vertex, stored flat (vertex-major).
class Configuration {
  public:
    Configuration(Topology topology, ModelParams params, const std::vector<Culture>& cultures);
    /// All vertices set to `culture`.
    static Configuration uniform(Topology topology, ModelParams params, const Culture& culture);

    const Topology& topology() const noexcept { return topology_; }
    const ModelParams& params() const noexcept { return params_; }
    std::size_t vertex_count() const noexcept { return topology_.vertex_count(); }

    std::span<const State> culture(Vertex x) const;
    State state(Vertex x, int feature) const {
        return states_[x * static_cast<std::size_t>(params_.features()) + static_cast<std::size_t>(feature)];
    }
    void set_state(Vertex x, int feature, State value) {
        states_[x * static_cast<std::size_t>(params_.features()) + static_cast<std::size_t>(feature)] = value;
    }

    std::vector<Culture> cultures() const;
    std::span<const State> raw() const noexcept { return states_; }

    friend bool operator==(const Configuration&, const Configuration&) = default;

  private:
    Configuration(Topology topology, ModelParams params, std::vector<State> flat);

    Topology topology_;
    ModelParams params_;
    std::vector<State> states_;
};

enum class OpinionAlphabet {
    binary,   // {0, 1}: voter model
    ternary,  // {-1, 0, +1}: constrained voter model
};

struct OpinionConfig {
    OpinionConfig(Topology topology, OpinionAlphabet alphabet, std::vector<int> opinions);

    Topology topology;
    OpinionAlphabet alphabet;
    std::vector<int> opinions;

    friend bool operator==(const OpinionConfig&, const OpinionConfig&) = default;
};

bool in_alphabet(OpinionAlphabet alphabet, int opinion) noexcept;

struct Overlap {
    int shared_count;
    int features;

    double shared_fraction() const noexcept { return static_cast<double>(shared_count) / features; }
};

Overlap overlap(std::span<const State> a, std::span<const State> b, const ModelParams& params);

/// Agreement count of edge e.
int edge_weight(const Configuration& cfg, std::size_t edge);

/// Copy feature i of y onto x; x and y adjacent.
Configuration apply_feature_copy(const Configuration& cfg, Vertex x, Vertex y, int feature);

/// Y(x) = |X^1(x) - X^2(x)|; requires F = q = 2.
OpinionConfig voter_projection(const Configuration& cfg);

/// (0,0),(1,1) -> 0; (0,1) -> +1; (1,0) -> -1. Requires F = q = 2.
OpinionConfig cvm_projection(const Configuration& cfg);
int cvm_opinion(State first, State second) noexcept;

/// Sets the opinion of x to eps. Admissibility is the caller's business.
OpinionConfig cvm_update(const OpinionConfig& eta, Vertex x, int eps);

class Rng;
Configuration random_config(const ModelParams& params, const Topology& topology, std::uint64_t seed);
Configuration random_config(const ModelParams& params, const Topology& topology, Rng& rng);

/// Independent fair opinions over the alphabet.
OpinionConfig random_opinions(const Topology& topology, OpinionAlphabet alphabet, std::uint64_t seed);

/// Every edge has weight 0 or F.
bool is_absorbed(const Configuration& cfg);

}  // namespace axelrod
