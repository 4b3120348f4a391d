#include "freemul/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "freemul/nc_oracle.hpp"

namespace freemul {

namespace {

bool all_zero(const MomentSequence& m) {
    for (double v : m.moments) {
        if (std::abs(v) >= kSnapEpsilon) return false;
    }
    return true;
}

bool mean_zero(const MomentSequence& m) {
    if (m.order() < 1) {
        throw std::invalid_argument("free_mult_convolve: factor needs at least one moment");
    }
    return std::abs(m.at(1)) < kSnapEpsilon;
}

MomentSequence zero_moments(int order) {
    return MomentSequence{std::vector<double>(static_cast<std::size_t>(order), 0.0)};
}

// Integer-power series from per-z-power coefficients c[0..], trusted to
// z-power `order`.
HalfSeries integer_series(const std::vector<double>& c, int order) {
    std::vector<double> grades(static_cast<std::size_t>(2 * order + 1), 0.0);
    for (std::size_t i = 0; i < c.size() && 2 * i < grades.size(); ++i) grades[2 * i] = c[i];
    return make_series(0, grades, 2 * order);
}

}  // namespace

const char* to_string(ConvolutionCase c) {
    switch (c) {
        case ConvolutionCase::both_nonzero: return "both_nonzero";
        case ConvolutionCase::one_zero_mean: return "one_zero_mean";
        case ConvolutionCase::both_zero_mean: return "both_zero_mean";
    }
    return "?";
}

double ProofIdentityReport::max_residual() const {
    return std::max({symmetry, moment_relation, first_aux, second_aux});
}

ConvolutionResult free_mult_convolve(const MomentSequence& mx, const MomentSequence& my,
                                     int order) {
    if (order < 1) throw std::invalid_argument("free_mult_convolve: order must be positive");
    const bool zx = mean_zero(mx);
    const bool zy = mean_zero(my);

    if (zx && zy) {
        return ConvolutionResult{zero_moments(order), ConvolutionCase::both_zero_mean,
                                 std::nullopt};
    }
    if (zy) {
        // Moments of xy and yx agree, so convolve with the zero-mean factor first.
        return free_mult_convolve(my, mx, order);
    }
    if (zx) {
        if (all_zero(mx)) {
            // Point mass at 0: the product is identically 0.
            return ConvolutionResult{zero_moments(order), ConvolutionCase::one_zero_mean,
                                     std::nullopt};
        }
        if (mx.order() < 2 || !(mx.at(2) > kSnapEpsilon)) {
            throw std::runtime_error("invalid moment sequence");
        }
        STransformPair sx = s_transform(mx);
        STransformPair sy = s_transform(my);
        STransformPair prod{MeanClass::zero_mean, mul(sx.primary, sy.primary),
                            mul(*sx.secondary, sy.primary)};
        MomentSequence m = moments_from_s(prod, order);
        return ConvolutionResult{std::move(m), ConvolutionCase::one_zero_mean, std::move(prod)};
    }

    STransformPair sx = s_transform(mx);
    STransformPair sy = s_transform(my);
    STransformPair prod{MeanClass::nonzero_mean, mul(sx.primary, sy.primary), std::nullopt};
    MomentSequence m = moments_from_s(prod, order);
    return ConvolutionResult{std::move(m), ConvolutionCase::both_nonzero, std::move(prod)};
}

double second_moment_identity(const MomentSequence& mx, const MomentSequence& my) {
    if (mx.order() < 2 || my.order() < 2) {
        throw std::invalid_argument("second_moment_identity: both sequences need order >= 2");
    }
    const double x1 = mx.at(1), x2 = mx.at(2), y1 = my.at(1), y2 = my.at(2);
    return x2 * y1 * y1 + x1 * x1 * y2 - x1 * x1 * y1 * y1;
}

AuxiliarySeries auxiliary_series(const MomentSequence& mx, const MomentSequence& my, int order) {
    if (order < 0) throw std::invalid_argument("auxiliary_series: negative order");
    CumulantSequence kx = cumulants_from_moments(mx);
    CumulantSequence ky = cumulants_from_moments(my);
    std::vector<double> c1, c2;
    c1.reserve(static_cast<std::size_t>(order) + 1);
    c2.reserve(static_cast<std::size_t>(order) + 1);
    for (int n = 0; n <= order; ++n) {
        c1.push_back(mixed_moment_xy(kx, ky, WordPattern::y_xy_n, n));
        c2.push_back(mixed_moment_xy(kx, ky, WordPattern::x_yx_n, n));
    }
    return AuxiliarySeries{integer_series(c1, order), integer_series(c2, order)};
}

ProofIdentityReport verify_proof_identities(const MomentSequence& mx, const MomentSequence& my,
                                            int order) {
    if (order < 1) throw std::invalid_argument("verify_proof_identities: order must be positive");
    CumulantSequence kx = cumulants_from_moments(mx);
    CumulantSequence ky = cumulants_from_moments(my);

    std::vector<double> cxy, cyx;
    for (int n = 0; n <= order; ++n) {
        cxy.push_back(mixed_moment_xy(kx, ky, WordPattern::xy_n, n));
        cyx.push_back(mixed_moment_xy(ky, kx, WordPattern::xy_n, n));
    }
    HalfSeries m_xy = integer_series(cxy, order);
    HalfSeries m_yx = integer_series(cyx, order);

    AuxiliarySeries aux = auxiliary_series(mx, my, order - 1);
    HalfSeries z_m2 = mul(monomial(2, 1.0), aux.m2);
    HalfSeries z_m1 = mul(monomial(2, 1.0), aux.m1);

    auto cumulant_series = [order](const CumulantSequence& k) {
        std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
        for (int n = 1; n <= order && n <= k.order(); ++n) c[static_cast<std::size_t>(n)] = k.at(n);
        HalfSeries s = integer_series(c, order);
        return s;
    };
    HalfSeries cy_of_zm2 = compose(cumulant_series(ky), z_m2);
    HalfSeries cx_of_zm1 = compose(cumulant_series(kx), z_m1);

    ProofIdentityReport r;
    r.symmetry = max_coeff_distance(m_xy, m_yx);
    r.moment_relation = max_coeff_distance(m_xy, add(cy_of_zm2, monomial(0, 1.0)));
    // Quotient identities in multiplied-through form.
    r.first_aux = max_coeff_distance(mul(aux.m1, z_m2), mul(cy_of_zm2, m_xy));
    r.second_aux = max_coeff_distance(mul(aux.m2, z_m1), mul(cx_of_zm1, m_xy));
    return r;
}

}  // namespace freemul
