#pragma once

#include <optional>

#include "freemul/half_series.hpp"
#include "freemul/transforms.hpp"

namespace freemul {

// Free multiplicative convolution of two moment sequences, with the case
// analysis over mean classes and the proof-identity verification surface.

enum class ConvolutionCase { both_nonzero, one_zero_mean, both_zero_mean };

const char* to_string(ConvolutionCase c);

struct ConvolutionResult {
    MomentSequence moments;  // moments of the product variable
    ConvolutionCase case_tag = ConvolutionCase::both_nonzero;
    std::optional<STransformPair> s_product;
};

// M1(z) = sum phi(y(xy)^n) z^n and M2(z) = sum phi(x(yx)^n) z^n, as
// integer-power series computed from the combinatorial oracle.
struct AuxiliarySeries {
    HalfSeries m1;
    HalfSeries m2;
};

// Max coefficientwise residuals of the series identities tying the product
// moment series M_xy to the auxiliary series, all built from oracle data:
//   symmetry        M_xy = M_yx
//   moment_relation M_xy = C_y[z M2] + 1
//   first_aux       M1 * (z M2) = C_y[z M2] * M_xy
//   second_aux      M2 * (z M1) = C_x[z M1] * M_xy
// The two quotient identities are checked in multiplied-through form so the
// verification stays in plain series arithmetic.
struct ProofIdentityReport {
    double symmetry = 0;
    double moment_relation = 0;
    double first_aux = 0;
    double second_aux = 0;
    double max_residual() const;
};

// Multiply the S-transforms (both branches when exactly one mean vanishes,
// asserting the two recoveries agree) and recover the product's moments.
// Both means zero returns all-zero moments without touching the S-route.
// A factor that is exactly the point mass at 0 gives all-zero output.
ConvolutionResult free_mult_convolve(const MomentSequence& mx, const MomentSequence& my,
                                     int order);

// phi(x^2) phi(y)^2 + phi(x)^2 phi(y^2) - phi(x)^2 phi(y)^2, the closed form
// for the product's second moment.
double second_moment_identity(const MomentSequence& mx, const MomentSequence& my);

AuxiliarySeries auxiliary_series(const MomentSequence& mx, const MomentSequence& my, int order);

ProofIdentityReport verify_proof_identities(const MomentSequence& mx, const MomentSequence& my,
                                            int order);

}  // namespace freemul
