#include <doctest.h>

#include <cmath>
#include <numbers>

#include "axelrod/bounds.hpp"
#include "axelrod/error.hpp"
#include "axelrod/model.hpp"
#include "axelrod/rng.hpp"
#include "axelrod/stats.hpp"
#include "axelrod/urn.hpp"

using namespace axelrod;

namespace {

// Fraction of the q^F cultures agreeing with a fixed one in exactly j places.
double enumerate_pj(int f, int q, int j) {
    long long total = 1;
    for (int i = 0; i < f; ++i) total *= q;
    long long hits = 0;
    for (long long code = 0; code < total; ++code) {
        int agree = 0;
        long long c = code;
        for (int i = 0; i < f; ++i, c /= q) agree += c % q == 0;
        hits += agree == j;
    }
    return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace

TEST_CASE("bound values") {
    auto b = theorem2_bound(2, 4);
    CHECK(b.lower_bound_density == doctest::Approx(0.375).epsilon(1e-15));
    REQUIRE(b.domain_length_upper);
    CHECK(*b.domain_length_upper == doctest::Approx(2.6667).epsilon(2e-5));
    CHECK(b.within_hypothesis);

    b = theorem2_bound(3, 4);
    CHECK(b.lower_bound_density < 0.0);
    CHECK_FALSE(b.domain_length_upper);

    b = theorem2_bound(7, 12);
    REQUIRE(b.domain_length_upper);
    CHECK(std::abs(*b.domain_length_upper - 45.641) < 2e-3);

    CHECK_THROWS_AS(theorem2_bound(4, 4), PoleError);
    CHECK_FALSE(theorem2_bound(5, 4).within_hypothesis);
}

TEST_CASE("binomial agreement law") {
    CHECK(binom_pj(2, 2, 1) == 0.5);
    CHECK(binom_pj(2, 4, 0) == 0.5625);
    for (int f = 1; f <= 6; ++f) {
        for (int q = 2; q <= 7; ++q) {
            double sum = 0.0;
            for (int j = 0; j <= f; ++j) {
                const double p = binom_pj(f, q, j);
                sum += p;
                CHECK(p == doctest::Approx(enumerate_pj(f, q, j)).epsilon(1e-12));
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(binom_pj(2, 4, 3), InvalidInput);
}

TEST_CASE("rounds expectations") {
    CHECK_THROWS_AS(rounds_expectations(4, 2, 2), OutOfHypothesis);
    const auto r = rounds_expectations(4, 2, 4);
    CHECK(r.expected_t1 == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(r.closed_form_limit == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(r.expected_box1.front() == doctest::Approx(0.5));
    for (int f = 1; f <= 9; ++f)
        for (int q = f + 1; q <= 40; ++q)
            CHECK(std::abs(rounds_expectations(100, f, q).closed_form_limit - theorem2_bound(f, q).lower_bound_density) <=
                  1e-14);

    // E(T_1) = E(sum_j (F - j) B_j) over the initial law, checked by simulation.
    const ModelParams params(3, 5);
    std::vector<double> t1;
    for (std::uint64_t s = 0; s < 400; ++s) {
        const auto init = urn_init(edge_census(random_config(params, Topology::path(200), s)));
        t1.push_back(static_cast<double>(urn_rounds_run(init, params, s).round_end_steps.front()));
    }
    const MeanSe m = mean_se(t1);
    CHECK(std::abs(m.mean - rounds_expectations(200, 3, 5).expected_t1) <= 3.0 * m.se);
}

TEST_CASE("mean-field psi") {
    CHECK(psi_mean_field(0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(psi_mean_field(0.5) == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(psi_mean_field(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    double last = psi_mean_field(0.0);
    for (int k = 1; k <= 1000; ++k) {
        const double v = psi_mean_field(k / 1000.0);
        CHECK(v > last);
        last = v;
    }
    CHECK_THROWS_AS(psi_mean_field(-0.1), InvalidInput);
    CHECK_THROWS_AS(psi_mean_field(1.5), InvalidInput);
}

TEST_CASE("bound table") {
    const Table1 t = table1_generate();
    CHECK(t.cells.size() == 8);
    CHECK(t.cells.front().size() == 9);
    CHECK(t.at(2, 8).rendered == "1.3714");
    CHECK(t.at(5, 8).rendered == "neg.");
    CHECK(t.at(5, 8).bound <= 0.0);
    CHECK(t.at(4, 4).rendered == "---");
    CHECK(t.at(4, 4).kind == CellKind::excluded);
    CHECK_THROWS_AS(t.at(10, 4), InvalidInput);
    const std::string csv = render_table1_csv(t);
    CHECK(csv == render_table1_csv(table1_generate()));
    CHECK(csv.substr(0, csv.find('\n')) == "F,q=4,q=8,q=12,q=16,q=20,q=24,q=28,q=32,q=36");
    CHECK(render_table1_text(t).find("2.6667") != std::string::npos);
}
