#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "freemul/laws.hpp"
#include "freemul/transforms.hpp"

using namespace freemul;

namespace {

// Relative sup distance over the shared trusted window, capped so that
// closed forms with long exact tails are only compared where the pipeline
// result is meaningful.
double scaled_dist(const HalfSeries& a, const HalfSeries& b, int hi_cap) {
    int hi = std::min({a.trunc_grade, b.trunc_grade, hi_cap});
    int lo = std::min(a.min_grade, b.min_grade);
    double d = 0, mag = 1;
    for (int g = lo; g <= hi; ++g) {
        d = std::max(d, std::abs(a.at(g) - b.at(g)));
        mag = std::max({mag, std::abs(a.at(g)), std::abs(b.at(g))});
    }
    return d / mag;
}

void check_closed_form_agrees(const LawSpec& law, int order) {
    STransformPair closed = s_closed_form(law, order);
    STransformPair pipe = s_transform(moments_of(law, order + 3));
    REQUIRE(closed.mean_class == pipe.mean_class);
    REQUIRE(closed.secondary.has_value() == pipe.secondary.has_value());
    CHECK(scaled_dist(closed.primary, pipe.primary, 2 * order) < 1e-9);
    if (closed.secondary)
        CHECK(scaled_dist(*closed.secondary, *pipe.secondary, 2 * order) < 1e-9);
}

}  // namespace

TEST_CASE("law moments match known sequences") {
    MomentSequence sc = moments_of(semicircle_law(1.0), 6);
    std::vector<double> sc_want{0, 1, 0, 2, 0, 5};
    for (int i = 1; i <= 6; ++i)
        CHECK(sc.at(i) == doctest::Approx(sc_want[static_cast<size_t>(i - 1)]));

    MomentSequence fp = moments_of(free_poisson_law(1.0), 8);
    std::vector<double> fp_want{1, 2, 5, 14, 42, 132, 429, 1430};
    for (int i = 1; i <= 8; ++i)
        CHECK(fp.at(i) == doctest::Approx(fp_want[static_cast<size_t>(i - 1)]));

    MomentSequence pm = moments_of(point_mass_law(2.0), 5);
    CHECK(pm.at(5) == doctest::Approx(32.0));
    CHECK(pm.at(1) == doctest::Approx(2.0));

    // Variance scaling: semicircle(s2) has m2 = s2, m4 = 2 s2^2.
    MomentSequence scs = moments_of(semicircle_law(2.5), 4);
    CHECK(scs.at(2) == doctest::Approx(2.5));
    CHECK(scs.at(4) == doctest::Approx(2.0 * 2.5 * 2.5));

    // Subtracting the shift moves only the mean at first order.
    MomentSequence sfp = moments_of(shifted_free_poisson_law(2.0, 0.5), 2);
    CHECK(sfp.at(1) == doctest::Approx(1.5));
}

TEST_CASE("law cumulants") {
    CumulantSequence sck = cumulants_of(semicircle_law(3.0), 6);
    CHECK(sck.at(1) == doctest::Approx(0.0));
    CHECK(sck.at(2) == doctest::Approx(3.0));
    for (int n = 3; n <= 6; ++n) CHECK(sck.at(n) == doctest::Approx(0.0));

    CumulantSequence fpk = cumulants_of(free_poisson_law(0.7), 6);
    for (int n = 1; n <= 6; ++n) CHECK(fpk.at(n) == doctest::Approx(0.7));

    // The shift adjusts only the first cumulant.
    CumulantSequence sfpk = cumulants_of(shifted_free_poisson_law(0.7, 0.7), 6);
    CHECK(sfpk.at(1) == doctest::Approx(0.0));
    for (int n = 2; n <= 6; ++n) CHECK(sfpk.at(n) == doctest::Approx(0.7));

    CumulantSequence pmk = cumulants_of(point_mass_law(4.0), 4);
    CHECK(pmk.at(1) == doctest::Approx(4.0));
}

TEST_CASE("closed-form S agrees with the series pipeline") {
    check_closed_form_agrees(semicircle_law(1.0), 10);
    check_closed_form_agrees(semicircle_law(2.5), 10);
    check_closed_form_agrees(free_poisson_law(1.0), 10);
    check_closed_form_agrees(free_poisson_law(0.7), 10);
    check_closed_form_agrees(shifted_free_poisson_law(1.0, 1.0), 10);
    check_closed_form_agrees(shifted_free_poisson_law(2.0, 2.0), 10);
    check_closed_form_agrees(shifted_free_poisson_law(2.0, 0.5), 10);
    check_closed_form_agrees(shifted_free_poisson_law(1.0, 3.0), 10);
    check_closed_form_agrees(shifted_free_poisson_law(1.0, -1.5), 10);
}

TEST_CASE("zero shift routes to the plain free Poisson form") {
    STransformPair a = s_closed_form(shifted_free_poisson_law(1.3, 0.0), 8);
    STransformPair b = s_closed_form(free_poisson_law(1.3), 8);
    CHECK(max_coeff_distance(a.primary, b.primary) == doctest::Approx(0.0));
    CHECK(a.mean_class == MeanClass::nonzero_mean);
}

TEST_CASE("critically shifted free Poisson closed S coefficients") {
    // Rate 1, shift 1: the mean vanishes and S picks up half-integer
    // powers with binomial(1/2,k)/4^k weights.
    STransformPair s11 = s_closed_form(shifted_free_poisson_law(1.0, 1.0), 10);
    CHECK(s11.mean_class == MeanClass::zero_mean);
    REQUIRE(s11.secondary.has_value());
    CHECK(s11.primary.at(-1) == doctest::Approx(1.0));
    CHECK(s11.primary.at(0) == doctest::Approx(-0.5));
    CHECK(s11.primary.at(1) == doctest::Approx(0.125));
    CHECK(s11.primary.at(2) == doctest::Approx(0.0));
    CHECK(s11.primary.at(3) == doctest::Approx(-0.0078125));
    CHECK(s11.primary.at(5) == doctest::Approx(0.0009765625));
    CHECK(s11.primary.at(7) == doctest::Approx(-1.52587890625e-4));
    CHECK(s11.primary.at(9) == doctest::Approx(2.6702880859375e-05));
    // Second branch flips the sign of every odd half-grade.
    for (int g = -1; g <= s11.primary.trunc_grade && g <= 2 * 10; ++g) {
        double want = ((g % 2 + 2) % 2 == 0 ? 1.0 : -1.0) * s11.primary.at(g);
        CHECK(s11.secondary->at(g) == doctest::Approx(want));
    }
}

TEST_CASE("parameter validation and unregistered closed forms") {
    CHECK_THROWS_WITH_AS(semicircle_law(0.0), "semicircle law: variance must be positive",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(semicircle_law(-1.0), "semicircle law: variance must be positive",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(free_poisson_law(0.0), "free Poisson law: rate must be positive",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(shifted_free_poisson_law(-2.0, 1.0),
                         "shifted free Poisson law: rate must be positive",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(moments_of(semicircle_law(1.0), 0), "law order must be positive",
                         std::invalid_argument);
    CHECK_THROWS_AS(s_closed_form(point_mass_law(1.0), 6), std::runtime_error);
    try {
        s_closed_form(point_mass_law(1.0), 6);
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("no closed form registered") != std::string::npos);
    }
}

TEST_CASE("law kind names") {
    CHECK(std::string(to_string(LawKind::semicircle)) == "Semicircle");
    CHECK(std::string(to_string(LawKind::free_poisson)) == "FreePoisson");
    CHECK(std::string(to_string(LawKind::shifted_free_poisson)) == "ShiftedFreePoisson");
    CHECK(std::string(to_string(LawKind::point_mass)) == "PointMass");
}
