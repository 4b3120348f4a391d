#pragma once

#include "freemul/half_series.hpp"
#include "freemul/transforms.hpp"

namespace freemul {

// Built-in spectral laws, described by their free cumulants. Each law also
// registers a closed-form S-transform where one exists, so the series
// pipeline can be checked against independent algebra.

enum class LawKind { semicircle, free_poisson, shifted_free_poisson, point_mass };

const char* to_string(LawKind k);

struct LawSpec {
    LawKind kind = LawKind::semicircle;
    double variance = 1.0;  // semicircle
    double rate = 1.0;      // free Poisson family
    double shift = 0.0;     // shifted free Poisson
    double c = 0.0;         // point mass
};

LawSpec semicircle_law(double variance);
LawSpec free_poisson_law(double rate);
// The law of (free Poisson with the given rate) minus shift.
LawSpec shifted_free_poisson_law(double rate, double shift);
LawSpec point_mass_law(double c);

CumulantSequence cumulants_of(const LawSpec& law, int order);
MomentSequence moments_of(const LawSpec& law, int order);

// Closed-form S-transform, trusted to at least z-power `order` on every
// branch. Point masses have no registered form and throw.
STransformPair s_closed_form(const LawSpec& law, int order);

}  // namespace freemul
