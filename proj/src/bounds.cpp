#include "axelrod/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "axelrod/error.hpp"

namespace axelrod {

namespace {

void check_fq(int features, int states) {
    if (features < 1) throw InvalidInput("F must be at least 1");
    if (states < 2) throw InvalidInput("q must be at least 2");
}

double disagree_all(int features, int states) { return std::pow(1.0 - 1.0 / states, features); }

}  // namespace

BoundResult theorem2_bound(int features, int states) {
    check_fq(features, states);
    if (features == states) throw PoleError("the domain bound has a pole at F = q");
    const double p0 = disagree_all(features, states);
    const double bound =
        p0 + static_cast<double>(features) / (states - features) * (p0 - (1.0 - 1.0 / states));
    BoundResult r{bound, std::nullopt, features < states};
    if (bound > 0.0) r.domain_length_upper = 1.0 / bound;
    return r;
}

double binom_pj(int features, int states, int j) {
    check_fq(features, states);
    if (j < 0 || j > features) throw InvalidInput("binom_pj: j outside 0..F");
    const double p = 1.0 / states;
    double choose = 1.0;
    for (int i = 1; i <= j; ++i) choose = choose * (features - j + i) / i;
    return choose * std::pow(p, j) * std::pow(1.0 - p, features - j);
}

RoundsExpectations rounds_expectations(std::size_t n, int features, int states, std::size_t terms) {
    check_fq(features, states);
    if (features >= states) throw OutOfHypothesis("rounds expectations need F < q");
    const double big_n = static_cast<double>(n);
    const double f = features;
    const double p0 = disagree_all(features, states);
    const double slack = 1.0 - p0 - 1.0 / states;
    const double ratio = (f - 1.0) / (states - 1.0);

    RoundsExpectations r;
    r.expected_t1 = big_n * f * slack;
    double term = r.expected_t1 / (states - 1.0);
    for (std::size_t k = 0; k < terms; ++k) {
        r.expected_box1.push_back(term);
        term *= ratio;
    }
    // Geometric series of E(B_1(T_k)) / N summed in closed form.
    r.closed_form_limit = p0 - (f / (states - 1.0)) * slack / (1.0 - ratio);
    return r;
}

double psi_mean_field(double theta) {
    if (!(theta >= 0.0 && theta <= 1.0)) throw InvalidInput("theta must lie in [0, 1]");
    const double a = std::acos((1.0 - 2.0 * theta) / std::numbers::sqrt2);
    return -0.125 + 2.0 / (std::numbers::pi * std::numbers::pi) * a * a;
}

const Table1Cell& Table1::at(int features, int states) const {
    for (std::size_t r = 0; r < feature_values.size(); ++r) {
        if (feature_values[r] != features) continue;
        for (std::size_t c = 0; c < state_values.size(); ++c)
            if (state_values[c] == states) return cells[r][c];
    }
    throw InvalidInput("no Table 1 cell for F = " + std::to_string(features) + ", q = " + std::to_string(states));
}

Table1 table1_generate() {
    Table1 t;
    for (int f = 2; f <= 9; ++f) t.feature_values.push_back(f);
    for (int q = 4; q <= 36; q += 4) t.state_values.push_back(q);
    for (int f : t.feature_values) {
        std::vector<Table1Cell> row;
        for (int q : t.state_values) {
            Table1Cell cell{f, q, CellKind::excluded, std::numeric_limits<double>::quiet_NaN(), "---"};
            if (f < q) {
                const BoundResult b = theorem2_bound(f, q);
                cell.bound = b.lower_bound_density;
                if (b.domain_length_upper) {
                    char buf[32];
                    std::snprintf(buf, sizeof buf, "%.4f", *b.domain_length_upper);
                    cell.kind = CellKind::value;
                    cell.rendered = buf;
                } else {
                    cell.kind = CellKind::negative;
                    cell.rendered = "neg.";
                }
            }
            row.push_back(cell);
        }
        t.cells.push_back(std::move(row));
    }
    return t;
}

std::string render_table1_csv(const Table1& table) {
    std::ostringstream os;
    os << "F";
    for (int q : table.state_values) os << ",q=" << q;
    os << '\n';
    for (std::size_t r = 0; r < table.cells.size(); ++r) {
        os << table.feature_values[r];
        for (const Table1Cell& c : table.cells[r]) os << ',' << c.rendered;
        os << '\n';
    }
    return os.str();
}

std::string render_table1_text(const Table1& table) {
    std::ostringstream os;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%-6s", "");
    os << buf;
    for (int q : table.state_values) {
        std::snprintf(buf, sizeof buf, " %9s", ("q = " + std::to_string(q)).c_str());
        os << buf;
    }
    os << '\n';
    for (std::size_t r = 0; r < table.cells.size(); ++r) {
        std::snprintf(buf, sizeof buf, "F = %-2d", table.feature_values[r]);
        os << buf;
        for (const Table1Cell& c : table.cells[r]) {
            std::snprintf(buf, sizeof buf, " %9s", c.rendered.c_str());
            os << buf;
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace axelrod
