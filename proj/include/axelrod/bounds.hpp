#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace axelrod {

/// Lower bound on lim E(N_t) / N for the path {0, ..., N} and the implied
/// upper bound on the expected domain length.
struct BoundResult {
    double lower_bound_density;
    std::optional<double> domain_length_upper;  // 1 / bound when bound > 0
    bool within_hypothesis;                     // F < q
};

/// (1 - 1/q)^F + F/(q - F) ((1 - 1/q)^F - (1 - 1/q)).
/// PoleError at F == q; F > q is evaluated but flagged.
BoundResult theorem2_bound(int features, int states);

/// P(Z = j) for Z ~ Bin(F, 1/q).
double binom_pj(int features, int states, int j);

struct RoundsExpectations {
    double expected_t1;                 // E(T_1) = N F (1 - (1 - 1/q)^F - 1/q)
    std::vector<double> expected_box1;  // E(B_1(T_k)), k = 1, 2, ...
    double closed_form_limit;           // (1 - 1/q)^F - N^-1 sum_k E(B_1(T_k))
};

/// Expectation chain of the rounds urn started from the random initial law.
/// OutOfHypothesis unless F < q.
RoundsExpectations rounds_expectations(std::size_t n, int features, int states, std::size_t terms = 16);

/// -1/8 + (2/pi^2) arccos((1 - 2 theta)/sqrt 2)^2 on [0, 1].
double psi_mean_field(double theta);

enum class CellKind { value, negative, excluded };

struct Table1Cell {
    int features;
    int states;
    CellKind kind;
    double bound;  // NaN for excluded cells
    std::string rendered;
};

struct Table1 {
    std::vector<int> feature_values;  // rows
    std::vector<int> state_values;    // columns
    std::vector<std::vector<Table1Cell>> cells;

    const Table1Cell& at(int features, int states) const;
};

/// F = 2..9 against q = 4, 8, ..., 36.
Table1 table1_generate();

std::string render_table1_csv(const Table1& table);
std::string render_table1_text(const Table1& table);

}  // namespace axelrod
