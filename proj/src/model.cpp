#include "axelrod/model.hpp"

#include <limits>

#include "axelrod/error.hpp"
#include "axelrod/rng.hpp"

namespace axelrod {

ModelParams::ModelParams(int features, int states) : features_(features), states_(states) {
    if (features < 1) throw InvalidInput("F must be at least 1, got " + std::to_string(features));
    if (states < 2) throw InvalidInput("q must be at least 2, got " + std::to_string(states));
    if (states > std::numeric_limits<State>::max()) throw InvalidInput("q too large");
}

Topology Topology::path(std::size_t edges) {
    if (edges < 1) throw InvalidInput("path needs at least 2 vertices");
    return Topology(TopologyKind::path, edges);
}

Topology Topology::cycle(std::size_t vertices) {
    if (vertices < 3) throw InvalidInput("cycle needs at least 3 vertices");
    return Topology(TopologyKind::cycle, vertices);
}

std::array<Vertex, 2> Topology::endpoints(std::size_t edge) const {
    if (edge >= n_) throw InvalidInput("edge index out of range");
    return {edge, kind_ == TopologyKind::cycle ? (edge + 1) % n_ : edge + 1};
}

std::optional<std::size_t> Topology::edge_between(Vertex x, Vertex y) const noexcept {
    const std::size_t v = vertex_count();
    if (x >= v || y >= v || x == y) return std::nullopt;
    if (y == x + 1) return x;
    if (x == y + 1) return y;
    if (kind_ == TopologyKind::cycle) {
        if (x == 0 && y == n_ - 1) return n_ - 1;
        if (y == 0 && x == n_ - 1) return n_ - 1;
    }
    return std::nullopt;
}

bool Topology::adjacent(Vertex x, Vertex y) const noexcept { return edge_between(x, y).has_value(); }

std::array<std::size_t, 2> Topology::incident_edges(Vertex x) const noexcept {
    if (kind_ == TopologyKind::cycle) return {x == 0 ? n_ - 1 : x - 1, x};
    if (x == 0) return {0, n_};
    if (x == n_) return {n_ - 1, n_};
    return {x - 1, x};
}

int Topology::degree(Vertex x) const noexcept {
    if (kind_ == TopologyKind::cycle) return 2;
    return (x == 0 || x == n_) ? 1 : 2;
}

std::string to_string(TopologyKind kind) { return kind == TopologyKind::path ? "path" : "cycle"; }

TopologyKind parse_topology_kind(const std::string& s) {
    if (s == "path") return TopologyKind::path;
    if (s == "cycle") return TopologyKind::cycle;
    throw InvalidInput("unknown topology '" + s + "' (expected path or cycle)");
}

namespace {

void check_culture(std::span<const State> c, const ModelParams& params) {
    if (c.size() != static_cast<std::size_t>(params.features()))
        throw InvalidInput("culture has " + std::to_string(c.size()) + " features, expected " +
                           std::to_string(params.features()));
    for (State s : c)
        if (s >= params.states()) throw InvalidInput("feature state " + std::to_string(s) + " out of range");
}

}  // namespace

Configuration::Configuration(Topology topology, ModelParams params, std::vector<State> flat)
    : topology_(topology), params_(params), states_(std::move(flat)) {}

Configuration::Configuration(Topology topology, ModelParams params, const std::vector<Culture>& cultures)
    : topology_(topology), params_(params) {
    if (cultures.size() != topology.vertex_count())
        throw InvalidInput("configuration has " + std::to_string(cultures.size()) + " cultures for " +
                           std::to_string(topology.vertex_count()) + " vertices");
    states_.reserve(cultures.size() * static_cast<std::size_t>(params.features()));
    for (const Culture& c : cultures) {
        check_culture(c, params);
        states_.insert(states_.end(), c.begin(), c.end());
    }
}

Configuration Configuration::uniform(Topology topology, ModelParams params, const Culture& culture) {
    check_culture(culture, params);
    std::vector<State> flat;
    flat.reserve(topology.vertex_count() * culture.size());
    for (std::size_t x = 0; x < topology.vertex_count(); ++x) flat.insert(flat.end(), culture.begin(), culture.end());
    return Configuration(topology, params, std::move(flat));
}

std::span<const State> Configuration::culture(Vertex x) const {
    if (x >= vertex_count()) throw InvalidInput("vertex out of range");
    const auto f = static_cast<std::size_t>(params_.features());
    return std::span<const State>(states_).subspan(x * f, f);
}

std::vector<Culture> Configuration::cultures() const {
    std::vector<Culture> out;
    out.reserve(vertex_count());
    for (Vertex x = 0; x < vertex_count(); ++x) {
        auto c = culture(x);
        out.emplace_back(c.begin(), c.end());
    }
    return out;
}

bool in_alphabet(OpinionAlphabet alphabet, int opinion) noexcept {
    if (alphabet == OpinionAlphabet::binary) return opinion == 0 || opinion == 1;
    return opinion >= -1 && opinion <= 1;
}

OpinionConfig::OpinionConfig(Topology topology_, OpinionAlphabet alphabet_, std::vector<int> opinions_)
    : topology(topology_), alphabet(alphabet_), opinions(std::move(opinions_)) {
    if (opinions.size() != topology.vertex_count()) throw InvalidInput("opinion count does not match vertex count");
    for (int o : opinions)
        if (!in_alphabet(alphabet, o)) throw InvalidInput("opinion " + std::to_string(o) + " outside alphabet");
}

Overlap overlap(std::span<const State> a, std::span<const State> b, const ModelParams& params) {
    const auto f = static_cast<std::size_t>(params.features());
    if (a.size() != f || b.size() != f) throw InvalidInput("overlap: culture length does not match F");
    int shared = 0;
    for (std::size_t i = 0; i < f; ++i) shared += a[i] == b[i];
    return {shared, params.features()};
}

int edge_weight(const Configuration& cfg, std::size_t edge) {
    const auto [u, v] = cfg.topology().endpoints(edge);
    const int f = cfg.params().features();
    int shared = 0;
    for (int i = 0; i < f; ++i) shared += cfg.state(u, i) == cfg.state(v, i);
    return shared;
}

Configuration apply_feature_copy(const Configuration& cfg, Vertex x, Vertex y, int feature) {
    if (!cfg.topology().adjacent(x, y)) throw InvalidInput("apply_feature_copy: vertices are not adjacent");
    if (feature < 0 || feature >= cfg.params().features()) throw InvalidInput("feature index out of range");
    Configuration out = cfg;
    out.set_state(x, feature, cfg.state(y, feature));
    return out;
}

namespace {

void require_two_by_two(const Configuration& cfg) {
    if (cfg.params().features() != 2 || cfg.params().states() != 2)
        throw UnsupportedProjection("projection needs F = 2 and q = 2");
}

}  // namespace

OpinionConfig voter_projection(const Configuration& cfg) {
    require_two_by_two(cfg);
    std::vector<int> y(cfg.vertex_count());
    for (Vertex x = 0; x < y.size(); ++x) y[x] = cfg.state(x, 0) != cfg.state(x, 1) ? 1 : 0;
    return OpinionConfig(cfg.topology(), OpinionAlphabet::binary, std::move(y));
}

int cvm_opinion(State first, State second) noexcept {
    if (first == second) return 0;
    return first == 0 ? +1 : -1;
}

OpinionConfig cvm_projection(const Configuration& cfg) {
    require_two_by_two(cfg);
    std::vector<int> eta(cfg.vertex_count());
    for (Vertex x = 0; x < eta.size(); ++x) eta[x] = cvm_opinion(cfg.state(x, 0), cfg.state(x, 1));
    return OpinionConfig(cfg.topology(), OpinionAlphabet::ternary, std::move(eta));
}

OpinionConfig cvm_update(const OpinionConfig& eta, Vertex x, int eps) {
    if (x >= eta.opinions.size()) throw InvalidInput("vertex out of range");
    if (!in_alphabet(eta.alphabet, eps)) throw InvalidInput("opinion outside alphabet");
    OpinionConfig out = eta;
    out.opinions[x] = eps;
    return out;
}

Configuration random_config(const ModelParams& params, const Topology& topology, Rng& rng) {
    const auto q = static_cast<std::uint64_t>(params.states());
    std::vector<Culture> cultures(topology.vertex_count(), Culture(static_cast<std::size_t>(params.features())));
    for (Culture& c : cultures)
        for (State& s : c) s = static_cast<State>(rng.below(q));
    return Configuration(topology, params, cultures);
}

Configuration random_config(const ModelParams& params, const Topology& topology, std::uint64_t seed) {
    Rng rng(derive_seed(seed, Lane::initial));
    return random_config(params, topology, rng);
}

OpinionConfig random_opinions(const Topology& topology, OpinionAlphabet alphabet, std::uint64_t seed) {
    Rng rng(derive_seed(seed, Lane::initial));
    std::vector<int> ops(topology.vertex_count());
    for (int& o : ops)
        o = alphabet == OpinionAlphabet::binary ? static_cast<int>(rng.below(2)) : static_cast<int>(rng.below(3)) - 1;
    return OpinionConfig(topology, alphabet, std::move(ops));
}

bool is_absorbed(const Configuration& cfg) {
    const int f = cfg.params().features();
    for (std::size_t e = 0; e < cfg.topology().edge_count(); ++e) {
        const int w = edge_weight(cfg, e);
        if (w != 0 && w != f) return false;
    }
    return true;
}

}  // namespace axelrod
