#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "freemul/half_series.hpp"

using namespace freemul;

namespace {

bool near(double a, double b, double tol = 1e-9) { return std::abs(a - b) < tol; }

}  // namespace

TEST_CASE("construction enforces the leading-grade invariant") {
    HalfSeries s = make_series(2, {0.0, 0.0, 3.0, 1.0}, 8);
    CHECK(s.min_grade == 4);
    // the stored window always spans min_grade..trunc_grade
    CHECK(s.coeffs.size() == 5);
    CHECK(s.at(8) == 0.0);
    CHECK(s.trunc_grade == 8);
    CHECK(s.at(4) == 3.0);
    CHECK(s.at(2) == 0.0);
    CHECK(s.at(100) == 0.0);

    HalfSeries snapped = make_series(1, {1e-14, 2.0}, 6);
    CHECK(snapped.min_grade == 2);

    HalfSeries z = zero_series(5);
    CHECK(z.is_zero());
    CHECK(z.trunc_grade == 5);
}

TEST_CASE("add") {
    HalfSeries z = monomial(2, 1.0);
    CHECK(near(max_coeff_distance(add(z, zero_series()), z), 0.0));

    HalfSeries rz = monomial(1, 1.0);
    CHECK(add(rz, monomial(1, -1.0)).is_zero());

    HalfSeries mixed = add(monomial(-1, 1.0), rz);
    CHECK(mixed.min_grade == -1);
    CHECK(mixed.at(-1) == 1.0);
    CHECK(mixed.at(0) == 0.0);
    CHECK(mixed.at(1) == 1.0);

    HalfSeries a = make_series(2, {1.0, 1.0}, 10);
    HalfSeries b = make_series(2, {1.0}, 4);
    CHECK(add(a, b).trunc_grade == 4);
}

TEST_CASE("mul") {
    HalfSeries inv_rz = monomial(-1, 1.0);
    HalfSeries sq = mul(inv_rz, inv_rz);
    CHECK(sq.min_grade == -2);
    CHECK(sq.at(-2) == 1.0);
    CHECK(is_integer_power(sq));

    HalfSeries rz = monomial(1, 1.0);
    CHECK(near(max_coeff_distance(mul(rz, monomial(0, 1.0)), rz), 0.0));

    // 1/sqrt(z) times the geometric series for 1/(1+z)
    HalfSeries geo = make_series(0, {1.0, 0.0, -1.0, 0.0, 1.0, 0.0, -1.0}, 6);
    HalfSeries s = mul(inv_rz, geo);
    CHECK(s.min_grade == -1);
    CHECK(near(s.at(-1), 1.0));
    CHECK(near(s.at(1), -1.0));
    CHECK(near(s.at(3), 1.0));
    CHECK(near(s.at(5), -1.0));
    CHECK(s.trunc_grade == 5);

    HalfSeries p = add(monomial(2, 1.0), monomial(4, 2.0));
    HalfSeries q = mul(p, p);
    CHECK(near(q.at(4), 1.0));
    CHECK(near(q.at(6), 4.0));
    CHECK(near(q.at(8), 4.0));

    // commutative and associative on truncated inputs
    HalfSeries a = make_series(1, {1.0, -2.0, 0.5}, 7);
    HalfSeries b = make_series(0, {2.0, 1.0}, 5);
    HalfSeries c = make_series(2, {1.0, 3.0}, 6);
    CHECK(near(max_coeff_distance(mul(a, b), mul(b, a)), 0.0));
    CHECK(near(max_coeff_distance(mul(mul(a, b), c), mul(a, mul(b, c))), 0.0));
}

TEST_CASE("reciprocal") {
    HalfSeries one_plus_z = make_series(0, {1.0, 0.0, 1.0}, 12);
    HalfSeries r = reciprocal(one_plus_z);
    for (int k = 0; 2 * k <= r.trunc_grade; ++k) {
        CHECK(near(r.at(2 * k), k % 2 == 0 ? 1.0 : -1.0));
    }

    CHECK(near(max_coeff_distance(reciprocal(monomial(1, 1.0)), monomial(-1, 1.0)), 0.0));
    CHECK(near(max_coeff_distance(reciprocal(monomial(4, 2.0)), monomial(-4, 0.5)), 0.0));

    HalfSeries a = make_series(-1, {2.0, 1.0, -0.5, 0.25}, 8);
    CHECK(near(max_coeff_distance(reciprocal(reciprocal(a)), a), 0.0, 1e-12));
    HalfSeries prod = mul(a, reciprocal(a));
    CHECK(near(prod.at(0), 1.0));
    for (int g = 1; g <= prod.trunc_grade; ++g) CHECK(near(prod.at(g), 0.0));

    CHECK_THROWS_WITH_AS(reciprocal(zero_series()), "non-invertible", std::runtime_error);
}

TEST_CASE("compose") {
    CHECK(near(max_coeff_distance(compose(monomial(4, 1.0), monomial(1, 1.0)), monomial(2, 1.0)),
               0.0));
    // even outer power kills the sign of the inner branch
    CHECK(near(max_coeff_distance(compose(monomial(4, 1.0), monomial(1, -1.0)), monomial(2, 1.0)),
               0.0));

    HalfSeries f = make_series(2, {1.0, 0.0, 1.0}, 8);
    CHECK(near(max_coeff_distance(compose(f, monomial(2, 1.0)), f), 0.0));

    CHECK_THROWS_WITH_AS(compose(f, monomial(0, 1.0)), "divergent composition",
                         std::invalid_argument);
}

TEST_CASE("invert_unique") {
    // z/(1-z) and z/(1+z) are inverse under composition
    std::vector<double> c(13, 0.0);
    for (int n = 1; n <= 6; ++n) c[static_cast<size_t>(2 * n)] = 1.0;
    HalfSeries f = make_series(2, std::vector<double>(c.begin() + 2, c.end()), 12);
    HalfSeries g = invert_unique(f);
    for (int n = 1; 2 * n <= g.trunc_grade; ++n) {
        CHECK(near(g.at(2 * n), n % 2 == 1 ? 1.0 : -1.0));
    }
    CHECK(near(max_coeff_distance(compose(f, g), monomial(2, 1.0, compose(f, g).trunc_grade)), 0.0,
               1e-12));

    CHECK(near(max_coeff_distance(invert_unique(monomial(2, 1.0, 10)), monomial(2, 1.0, 10)), 0.0));

    CHECK_THROWS_WITH_AS(invert_unique(make_series(4, {1.0}, 8)),
                         "no unique inverse; use invert_two_branch", std::runtime_error);
}

TEST_CASE("invert_unique round trips on random series") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> c(11, 0.0);
        c[0] = (rep % 2 == 0 ? 1.0 : -1.0) * (0.5 + std::abs(u(rng)));
        for (size_t i = 2; i < c.size(); i += 2) c[i] = u(rng);
        HalfSeries f = make_series(2, c, 12);
        HalfSeries g = invert_unique(f);
        HalfSeries fg = compose(f, g);
        HalfSeries gf = compose(g, f);
        CHECK(near(max_coeff_distance(fg, monomial(2, 1.0, fg.trunc_grade)), 0.0, 1e-8));
        CHECK(near(max_coeff_distance(gf, monomial(2, 1.0, gf.trunc_grade)), 0.0, 1e-8));
    }
}

TEST_CASE("invert_two_branch") {
    auto [p1, p2] = invert_two_branch(monomial(4, 1.0, 12));
    CHECK(near(max_coeff_distance(p1, monomial(1, 1.0, p1.trunc_grade)), 0.0));
    CHECK(near(max_coeff_distance(p2, monomial(1, -1.0, p2.trunc_grade)), 0.0));

    auto [q1, q2] = invert_two_branch(monomial(4, 4.0, 12));
    CHECK(near(q1.at(1), 0.5));
    CHECK(near(q2.at(1), -0.5));

    // psi of semicircle(1) has Catalan coefficients at z^2, z^4, ...; its
    // two-branch inverse is sqrt(z)/(1+z)
    std::vector<double> psi_c(21, 0.0);
    std::vector<double> cat = {1, 2, 5, 14, 42, 132};
    for (int n = 0; n < 6; ++n) psi_c[static_cast<size_t>(4 * n)] = cat[static_cast<size_t>(n)];
    HalfSeries psi = make_series(4, psi_c, 24);
    auto [chi, chit] = invert_two_branch(psi);
    // sqrt(z)/(1+z) = sqrt(z) (1 - z + z^2 - ...)
    for (int k = 0; 2 * k + 1 <= chi.trunc_grade; ++k) {
        CHECK(near(chi.at(2 * k + 1), k % 2 == 0 ? 1.0 : -1.0));
    }
    HalfSeries back = compose(psi, chi);
    CHECK(near(max_coeff_distance(back, monomial(2, 1.0, back.trunc_grade)), 0.0, 1e-9));
    HalfSeries back2 = compose(psi, chit);
    CHECK(near(max_coeff_distance(back2, monomial(2, 1.0, back2.trunc_grade)), 0.0, 1e-9));

    CHECK_THROWS_WITH_AS(invert_two_branch(make_series(6, {1.0}, 10)),
                         "degenerate: second moment vanishes", std::runtime_error);
    CHECK_THROWS_WITH_AS(invert_two_branch(make_series(4, {-1.0}, 10)),
                         "not a positive-definite moment sequence", std::runtime_error);
}

TEST_CASE("two-branch structure on random inputs") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> c(13, 0.0);
        c[0] = 0.5 + std::abs(u(rng));  // alpha_2 > 0
        for (size_t i = 2; i < c.size(); i += 2) c[i] = u(rng);
        HalfSeries f = make_series(4, c, 16);
        auto [b1, b2] = invert_two_branch(f);
        CHECK(b1.min_grade == 1);
        CHECK(b1.at(1) > 0.0);
        for (int g = 1; g <= std::min(b1.trunc_grade, b2.trunc_grade); ++g) {
            double sign = g % 2 == 0 ? 1.0 : -1.0;
            CHECK(near(b2.at(g), sign * b1.at(g), 1e-9));
        }
        HalfSeries fb = compose(f, b1);
        CHECK(near(max_coeff_distance(fb, monomial(2, 1.0, fb.trunc_grade)), 0.0, 1e-8));
    }
}

TEST_CASE("solve_outer_composition") {
    HalfSeries outer = solve_outer_composition(monomial(1, 1.0, 12), 12);
    CHECK(near(max_coeff_distance(outer, monomial(4, 1.0, outer.trunc_grade)), 0.0));
    HalfSeries outer2 = solve_outer_composition(monomial(1, -1.0, 12), 12);
    CHECK(near(max_coeff_distance(outer2, monomial(4, 1.0, outer2.trunc_grade)), 0.0));

    // inner = sqrt(z)/(1+z)^2 gives the moments of semicircle x freePoisson
    std::vector<double> inner_c;
    for (int k = 0; k <= 12; ++k) {
        // coefficient of z^k in (1+z)^{-2} is (-1)^k (k+1)
        inner_c.push_back((k % 2 == 0 ? 1.0 : -1.0) * (k + 1));
        if (k < 12) inner_c.push_back(0.0);
    }
    HalfSeries inner = make_series(1, inner_c, 25);
    HalfSeries psi = solve_outer_composition(inner, 14);
    CHECK(near(psi.at(4), 1.0));
    CHECK(near(psi.at(6), 0.0));
    CHECK(near(psi.at(8), 4.0));
    CHECK(near(psi.at(10), 0.0));
    CHECK(near(psi.at(12), 22.0));

    // both branches of a two-branch pair give the same outer series
    std::vector<double> c(13, 0.0);
    c[0] = 1.5;
    c[2] = -0.25;
    c[4] = 0.75;
    c[6] = 0.1;
    HalfSeries f = make_series(4, c, 16);
    auto [b1, b2] = invert_two_branch(f);
    HalfSeries o1 = solve_outer_composition(b1, 12);
    HalfSeries o2 = solve_outer_composition(b2, 12);
    CHECK(near(max_coeff_distance(o1, o2), 0.0, 1e-9));

    CHECK_THROWS_WITH_AS(solve_outer_composition(monomial(2, 1.0, 10), 8),
                         "unsupported leading grade", std::runtime_error);
}

TEST_CASE("integer-power and moment-series predicates") {
    CHECK(is_integer_power(make_series(2, {1.0, 0.0, 2.0}, 6)));
    CHECK(!is_integer_power(monomial(1, 1.0)));
    CHECK(!is_integer_power(monomial(-1, 1.0)));

    // 1/sqrt(z) squared is 1/z: not a valid moment-generating series
    HalfSeries inv_z = mul(monomial(-1, 1.0), monomial(-1, 1.0));
    CHECK(!is_moment_series(inv_z));
    CHECK(is_moment_series(make_series(2, {1.0, 0.0, 4.0}, 6)));
    CHECK(is_moment_series(zero_series()));
}

TEST_CASE("comparison helpers respect the trusted window") {
    HalfSeries a = make_series(0, {1.0, 2.0, 3.0}, 2);
    HalfSeries b = make_series(0, {1.0, 2.0, 999.0}, 2);
    b.coeffs[2] = 3.0 + 5e-10;
    CHECK(approx_equal(a, b));
    CHECK(!approx_equal(a, add(b, monomial(1, 1e-3))));
    CHECK(max_coeff_distance(a, b) < 1e-9);

    // grades beyond the shorter window are ignored
    HalfSeries c = make_series(0, {1.0, 2.0}, 1);
    CHECK(approx_equal(a, c));
}
