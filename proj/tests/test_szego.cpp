#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"
#include "symtoep/errors.hpp"
#include "symtoep/szego.hpp"

using namespace symtoep;

namespace {

constexpr double pi = std::numbers::pi;

// phi(theta) = 2 + cos(theta) times I_2: d_j^{(n)} = 2 + cos(j pi / (n + 1)).
TrigMatrixPolynomial two_plus_cos() { return build_scalar({2.0, 0.5}); }

} // namespace

TEST_CASE("test functions") {
    CHECK(constant_function(3.0)(7.0) == 3.0);
    CHECK(monomial(2)(3.0) == 9.0);
    CHECK(polynomial({1.0, 2.0, 3.0})(2.0) == 17.0);
    const auto hat = hat_function(1.0, 2.0, 4.0);
    CHECK(hat(1.0) == 0.0);
    CHECK(hat(1.5) == 0.5);
    CHECK(hat(2.0) == 1.0);
    CHECK(hat(3.0) == 0.5);
    CHECK(hat(4.5) == 0.0);
    const auto ind = smoothed_indicator(2.0, 3.0, 0.1);
    CHECK(ind(2.5) == 1.0);
    CHECK(ind(1.9) == doctest::Approx(std::exp(-1.0)));
    CHECK(ind(3.2) == doctest::Approx(std::exp(-2.0)));
    CHECK_THROWS_AS(hat_function(1.0, 1.0, 2.0), DomainError);
    CHECK_THROWS_AS(smoothed_indicator(1.0, 2.0, 0.0), DomainError);
}

TEST_CASE("truncated spectra against the tridiagonal closed form") {
    const std::vector<int> ns{1, 2, 5, 8, 16, 33};
    const auto traj = truncated_spectra(two_plus_cos(), ns, {2});
    CHECK(traj.monotone);
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const auto expected = testing::tridiagonal_closed_form(ns[i], 2.0, 0.5);
        REQUIRE(traj.spectra[i].size() == expected.size());
        for (std::size_t j = 0; j < expected.size(); ++j) {
            CHECK(traj.spectra[i][j] == doctest::Approx(expected[j]).epsilon(1e-13));
        }
    }
    CHECK_THROWS_AS(truncated_spectra(two_plus_cos(), {4, 2}), DimensionError);
    CHECK_THROWS_AS(truncated_spectra(build_scalar({0.3, 0.2}), {4}), PositivityError);
}

TEST_CASE("constant symbols have n-fold repeated spectra") {
    Vector diag(4);
    diag << 0.7, 0.7, 1.9, 1.9;
    const auto s = build_constant(Matrix(diag.asDiagonal()));
    const auto traj = truncated_spectra(s, {1, 4, 9});
    for (std::size_t i = 0; i < 3; ++i) {
        const int n = traj.n_list[i];
        REQUIRE(traj.spectra[i].size() == static_cast<std::size_t>(2 * n));
        for (int j = 0; j < n; ++j) {
            CHECK(traj.spectra[i][static_cast<std::size_t>(j)] == doctest::Approx(0.7));
            CHECK(traj.spectra[i][static_cast<std::size_t>(n + j)] == doctest::Approx(1.9));
        }
        CHECK(szego_average(traj.spectra[i], n, monomial(1)) == doctest::Approx(2.6));
    }
}

TEST_CASE("szego_average normalizes by n and checks the domain") {
    SymplecticSpectrum d{{1.0, 2.0, 3.0, 4.0}};
    CHECK(szego_average(d, 2, monomial(1)) == 5.0);
    auto f = monomial(1);
    f.lo = 1.5;
    CHECK_THROWS_AS(szego_average(d, 2, f), DomainError);
    CHECK_THROWS_AS(szego_average(d, 0, monomial(1)), DimensionError);
}

TEST_CASE("symbol_integral is spectrally accurate for smooth symbols") {
    const Symbol s = two_plus_cos();
    CHECK(symbol_integral(s, monomial(1), GridSpec{64}) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(symbol_integral(s, monomial(2), GridSpec{64}) == doctest::Approx(4.5).epsilon(1e-15));
    CHECK(symbol_integral(s, monomial(2), GridSpec{4096}, 3) == doctest::Approx(4.5).epsilon(1e-14));
}

TEST_CASE("convergence_report on 2 + cos") {
    const GridSpec grid{4096};
    const auto lin = convergence_report(two_plus_cos(), monomial(1), {8, 16, 32, 64}, grid, 1e-10);
    for (double g : lin.gaps) {
        CHECK(g <= 1e-12);
    }
    CHECK(lin.passed());

    // (1/n) sum (2 + cos)^2 = 4 + (n - 1) / (2n), integral 9/2: gap 1/(2n).
    const auto sq = convergence_report(two_plus_cos(), monomial(2), {8, 16, 32, 64}, grid, 0.01);
    for (std::size_t i = 0; i < sq.n_list.size(); ++i) {
        CHECK(sq.gaps[i] == doctest::Approx(0.5 / sq.n_list[i]).epsilon(1e-10));
    }
    CHECK(sq.gaps.back() <= sq.gaps.front() / 4.0);
    CHECK(sq.quadrature_drift <= 1e-12);
    CHECK(sq.passed());
    CHECK_FALSE(convergence_report(two_plus_cos(), monomial(2), {8}, grid, 0.01).passed());
}

TEST_CASE("min_trajectory") {
    const auto t = min_trajectory(two_plus_cos(), 1, {4, 8, 16, 64}, GridSpec{4096});
    CHECK(t.monotone);
    CHECK(t.m_tilde == doctest::Approx(1.0));
    for (std::size_t i = 0; i < t.n_list.size(); ++i) {
        CHECK(t.values[i] == doctest::Approx(2.0 - std::cos(pi / (t.n_list[i] + 1))).epsilon(1e-13));
    }
    CHECK(t.limit_gap == doctest::Approx(1.0 - std::cos(pi / 65.0)).epsilon(1e-9));

    const auto t2 = min_trajectory(two_plus_cos(), 2, {4, 64}, GridSpec{4096});
    CHECK(t2.values.back() == doctest::Approx(2.0 - std::cos(2.0 * pi / 65.0)).epsilon(1e-13));
    CHECK_THROWS_AS(min_trajectory(two_plus_cos(), 5, {4, 8}, GridSpec{64}), IndexError);
    CHECK_THROWS_AS(min_trajectory(two_plus_cos(), 0, {4, 8}, GridSpec{64}), IndexError);
}

TEST_CASE("counting") {
    const GridSpec grid{4096};
    const auto r = counting_report(two_plus_cos(), 2.0, 3.0, {8, 16, 64}, grid);
    // cos(j pi / (n + 1)) >= 0 exactly for j <= (n + 1) / 2.
    CHECK(r.counts == std::vector<int>{4, 8, 32});
    CHECK(r.ratios.back() == 0.5);
    CHECK(std::abs(r.limit_measure - 0.5) <= 1.5 / 4096);
    REQUIRE(r.smoothed_averages.size() == 3);
    for (std::size_t e = 0; e < r.eps.size(); ++e) {
        CHECK(r.smoothed_integrals[e] >= r.limit_measure - 1e-12);
        CHECK(std::abs(r.smoothed_averages[e].back() - r.smoothed_integrals[e]) <= 0.05);
    }

    // Inclusive endpoints: the constant symbol 1 puts every eigenvalue at a = 1.
    const auto edge = counting_ratio(truncated_spectra(build_scalar({1.0}), {3}), 1.0, 1.0);
    CHECK(edge.counts[0] == 3);
    CHECK_THROWS_AS(counting_ratio(truncated_spectra(build_scalar({1.0}), {3}), 2.0, 1.0), DomainError);
}

TEST_CASE("limit_measure on an explicit curve") {
    const GridSpec grid{8};
    SymplecticCurves c{grid, Matrix(1, 8)};
    c.values << 1, 2, 3, 4, 5, 4, 3, 2;
    CHECK(limit_measure(c, 2.0, 3.0) == 0.5);
    CHECK(limit_measure(c, 10.0, 11.0) == 0.0);
}

TEST_CASE("density_check") {
    const auto r = density_check(two_plus_cos(), 64, 0.05, GridSpec{1024}, {2});
    CHECK(r.n_list.size() == 64);
    CHECK(r.m_tilde == doctest::Approx(1.0));
    CHECK(r.sup_norm == doctest::Approx(3.0));
    // The union of spectra up to n = 64 is within pi/130-ish of every curve value.
    CHECK(r.coverage <= 0.03);
    for (int c : r.escape_counts) {
        CHECK(c == 0);
    }

    // A constant symbol: range {1}, every eigenvalue equals 1, so nothing escapes.
    const auto cst = density_check(build_scalar({1.0}), 8, 0.01, GridSpec{64});
    CHECK(cst.coverage == doctest::Approx(0.0).epsilon(1e-14));
}
