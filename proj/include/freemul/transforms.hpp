#pragma once

#include <optional>
#include <vector>

#include "freemul/half_series.hpp"

namespace freemul {

// Moments m_1..m_N of a distribution; m_0 = 1 is implicit. Stored dense:
// a missing higher moment is absent data, never zero.
struct MomentSequence {
    std::vector<double> moments;
    int order() const { return static_cast<int>(moments.size()); }
    double at(int n) const { return n == 0 ? 1.0 : moments.at(static_cast<size_t>(n - 1)); }
};

// Free cumulants kappa_1..kappa_N.
struct CumulantSequence {
    std::vector<double> cumulants;
    int order() const { return static_cast<int>(cumulants.size()); }
    double at(int n) const { return cumulants.at(static_cast<size_t>(n - 1)); }
};

enum class MeanClass { nonzero_mean, zero_mean, degenerate_zero };

const char* to_string(MeanClass c);

// The S-transform branch(es) of a variable. A nonzero mean gives a single
// integer-power branch; a vanishing mean (with positive second moment) gives
// two branches in sqrt(z) whose coefficients differ by alternating signs.
struct STransformPair {
    MeanClass mean_class = MeanClass::degenerate_zero;
    HalfSeries primary;
    std::optional<HalfSeries> secondary;
};

// psi(z) = sum m_n z^n as a half-series (coefficient m_n at grade 2n).
HalfSeries psi_from_moments(const MomentSequence& m);

// Reads z-power coefficients 1..order off an integer-power series.
MomentSequence moments_from_psi(const HalfSeries& psi, int order);

// Triangular conversions through M(z) = 1 + C[z M(z)], both directions.
CumulantSequence cumulants_from_moments(const MomentSequence& m);
MomentSequence moments_from_cumulants(const CumulantSequence& k);

// chi -> S = chi * (1+z)/z, realized as gamma_g = beta_{g+2} + beta_g.
HalfSeries mobius_from_chi(const HalfSeries& chi);
// S -> chi = S * z/(1+z), the inverse shift recursion.
HalfSeries chi_from_mobius(const HalfSeries& s);

STransformPair s_transform(const MomentSequence& m);

// Recovers moments of the variable whose S-transform this is. With two
// branches present, both recovery routes run and must agree.
MomentSequence moments_from_s(const STransformPair& s, int order);

// Hankel positivity of [1, m_1, m_2, ...] to the given depth, decided by the
// positivity of the recurrence weights in the moments -> Jacobi reduction.
bool hankel_positive(const MomentSequence& m, int depth);

// Three-term recurrence coefficients (a_k, b_k) from moments via the
// classical sigma-table reduction; b_0 = 1. Throws on a non-positive pivot.
struct JacobiCoefficients {
    std::vector<double> a;
    std::vector<double> b;
};
JacobiCoefficients jacobi_from_moments(const MomentSequence& m);

}  // namespace freemul
