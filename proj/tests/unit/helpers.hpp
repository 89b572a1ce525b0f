#pragma once

#include <cmath>
#include <vector>

#include "axelrod/model.hpp"

namespace testing_support {

inline axelrod::Configuration path_config(int f, int q, const std::vector<axelrod::Culture>& cultures) {
    return axelrod::Configuration(axelrod::Topology::path(cultures.size() - 1), axelrod::ModelParams(f, q), cultures);
}

inline axelrod::Configuration cycle_config(int f, int q, const std::vector<axelrod::Culture>& cultures) {
    return axelrod::Configuration(axelrod::Topology::cycle(cultures.size()), axelrod::ModelParams(f, q), cultures);
}

// |observed - expected| <= 3 sigma for a binomial proportion.
inline bool within_3_sigma(double successes, double trials, double p) {
    const double sigma = std::sqrt(p * (1.0 - p) / trials);
    return std::abs(successes / trials - p) <= 3.0 * sigma + 1e-12;
}

}  // namespace testing_support
