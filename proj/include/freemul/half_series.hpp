#pragma once

#include <utility>
#include <vector>

namespace freemul {

// Grades count powers of z^(1/2): grade 2n is z^n, grade -1 is 1/sqrt(z).
// trunc_grade marks the largest grade whose coefficient is trusted; operations
// propagate it so that comparisons never read past what the inputs support.
inline constexpr int kExactTrunc = 1 << 20;

// Coefficients with magnitude below this are snapped to exact zero after
// every operation, before the leading-grade invariant is enforced.
inline constexpr double kSnapEpsilon = 1e-12;

// Global comparison tolerance used by approx_equal and branch-agreement
// checks. Thread-unsafe to mutate concurrently with reads; set it once.
double series_tolerance();
void set_series_tolerance(double tol);

struct HalfSeries {
    int min_grade = kExactTrunc + 1;
    std::vector<double> coeffs;
    int trunc_grade = kExactTrunc;

    bool is_zero() const { return coeffs.empty(); }

    // Coefficient at a grade; zero outside the stored window. Reads beyond
    // trunc_grade return zero but carry no meaning.
    double at(int grade) const {
        if (grade < min_grade) return 0.0;
        auto idx = static_cast<size_t>(grade - min_grade);
        return idx < coeffs.size() ? coeffs[idx] : 0.0;
    }
};

// Normalizing constructor: snaps small coefficients, strips leading zeros,
// and sizes the window to [min_grade, trunc_grade].
HalfSeries make_series(long long min_grade, std::vector<double> coeffs,
                       long long trunc_grade = kExactTrunc);

HalfSeries zero_series(int trunc_grade = kExactTrunc);
HalfSeries monomial(int grade, double coeff, int trunc_grade = kExactTrunc);

HalfSeries add(const HalfSeries& a, const HalfSeries& b);
HalfSeries sub(const HalfSeries& a, const HalfSeries& b);
HalfSeries scale(const HalfSeries& a, double factor);
HalfSeries mul(const HalfSeries& a, const HalfSeries& b);

// Series b with mul(a, b) = 1 up to truncation. Errors on the zero series.
HalfSeries reciprocal(const HalfSeries& a);

// Substitute inner into outer. outer must be an integer-power series with
// min_grade >= 0; inner must have min_grade >= 1.
HalfSeries compose(const HalfSeries& outer, const HalfSeries& inner);

// Compositional inverse of an integer-power series with nonzero linear term.
HalfSeries invert_unique(const HalfSeries& f);

// Both compositional inverses in sqrt(z) of f = a2 z^2 + a3 z^3 + ...,
// a2 > 0. First element has positive leading coefficient.
std::pair<HalfSeries, HalfSeries> invert_two_branch(const HalfSeries& f);

// The unique integer-power series psi with compose(psi, inner) = z, for
// inner with leading grade 1. target_trunc caps the result grade.
HalfSeries solve_outer_composition(const HalfSeries& inner, int target_trunc);

// True when every odd-grade coefficient vanishes.
bool is_integer_power(const HalfSeries& a);

// True for series of the form sum_{n>=1} m_n z^n (or zero): integer powers
// only, no constant term, no negative grades.
bool is_moment_series(const HalfSeries& a);

// Coefficientwise comparison over the overlap of the trusted windows.
bool approx_equal(const HalfSeries& a, const HalfSeries& b);
bool approx_equal(const HalfSeries& a, const HalfSeries& b, double tol);

// Largest absolute coefficient difference over the overlap of the trusted
// windows (the comparison that approx_equal thresholds).
double max_coeff_distance(const HalfSeries& a, const HalfSeries& b);

}  // namespace freemul
