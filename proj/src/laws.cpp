#include "freemul/laws.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace freemul {

namespace {

void require_order(int order) {
    if (order < 1) throw std::invalid_argument("law order must be positive");
}

// Binomial series for sqrt(1+u), coefficients C(1/2, k), as integer powers
// trusted to z-power `terms - 1`.
HalfSeries sqrt1p_series(int terms) {
    std::vector<double> c(static_cast<std::size_t>(terms));
    double b = 1.0;
    for (int k = 0; k < terms; ++k) {
        c[static_cast<std::size_t>(k)] = b;
        b *= (0.5 - k) / (k + 1);
    }
    std::vector<double> grades(static_cast<std::size_t>(2 * terms - 1), 0.0);
    for (int k = 0; k < terms; ++k) grades[static_cast<std::size_t>(2 * k)] = c[static_cast<std::size_t>(k)];
    return make_series(0, grades, 2 * (terms - 1));
}

STransformPair shifted_free_poisson_s(double rate, double shift, int order) {
    if (shift == 0.0) {
        return s_closed_form(free_poisson_law(rate), order);
    }
    const int terms = order + 6;
    HalfSeries root = sqrt1p_series(terms);
    const double diff = rate - shift;  // the mean

    if (diff == 0.0) {
        // Vanishing mean: the discriminant (z^2 + 4*rate*z) forces sqrt(z)
        // grades and a branch pair.
        HalfSeries u = monomial(2, 1.0 / (4.0 * rate));
        HalfSeries w = compose(root, u);
        HalfSeries root_part = mul(monomial(1, 2.0 * std::sqrt(rate)), w);
        HalfSeries neg_z = monomial(2, -1.0);
        HalfSeries inv_den = monomial(-2, 1.0 / (2.0 * rate));
        HalfSeries primary = mul(add(neg_z, root_part), inv_den);
        HalfSeries secondary = mul(add(neg_z, scale(root_part, -1.0)), inv_den);
        if (primary.at(-1) < 0) std::swap(primary, secondary);
        return STransformPair{MeanClass::zero_mean, primary, secondary};
    }

    // Nonzero mean: S = (-(diff + z) + diff*sqrt(1+u)) / (2*shift*z) with
    // u = (2(rate+shift) z + z^2)/diff^2; the sign on the root makes
    // S(0) = 1/diff.
    const double d2 = diff * diff;
    HalfSeries u = make_series(2, {2.0 * (rate + shift) / d2, 0.0, 1.0 / d2});
    HalfSeries w = compose(root, u);
    HalfSeries num = sub(scale(sub(w, monomial(0, 1.0)), diff), monomial(2, 1.0));
    HalfSeries s = mul(num, monomial(-2, 1.0 / (2.0 * shift)));
    return STransformPair{MeanClass::nonzero_mean, s, std::nullopt};
}

}  // namespace

const char* to_string(LawKind k) {
    switch (k) {
        case LawKind::semicircle: return "Semicircle";
        case LawKind::free_poisson: return "FreePoisson";
        case LawKind::shifted_free_poisson: return "ShiftedFreePoisson";
        case LawKind::point_mass: return "PointMass";
    }
    return "?";
}

LawSpec semicircle_law(double variance) {
    if (!(variance > 0)) throw std::invalid_argument("semicircle law: variance must be positive");
    LawSpec s;
    s.kind = LawKind::semicircle;
    s.variance = variance;
    return s;
}

LawSpec free_poisson_law(double rate) {
    if (!(rate > 0)) throw std::invalid_argument("free Poisson law: rate must be positive");
    LawSpec s;
    s.kind = LawKind::free_poisson;
    s.rate = rate;
    return s;
}

LawSpec shifted_free_poisson_law(double rate, double shift) {
    if (!(rate > 0)) {
        throw std::invalid_argument("shifted free Poisson law: rate must be positive");
    }
    LawSpec s;
    s.kind = LawKind::shifted_free_poisson;
    s.rate = rate;
    s.shift = shift;
    return s;
}

LawSpec point_mass_law(double c) {
    LawSpec s;
    s.kind = LawKind::point_mass;
    s.c = c;
    return s;
}

CumulantSequence cumulants_of(const LawSpec& law, int order) {
    require_order(order);
    std::vector<double> k(static_cast<std::size_t>(order), 0.0);
    switch (law.kind) {
        case LawKind::semicircle:
            if (order >= 2) k[1] = law.variance;
            break;
        case LawKind::free_poisson:
            for (double& v : k) v = law.rate;
            break;
        case LawKind::shifted_free_poisson:
            for (double& v : k) v = law.rate;
            k[0] = law.rate - law.shift;
            break;
        case LawKind::point_mass:
            k[0] = law.c;
            break;
    }
    return CumulantSequence{std::move(k)};
}

MomentSequence moments_of(const LawSpec& law, int order) {
    return moments_from_cumulants(cumulants_of(law, order));
}

STransformPair s_closed_form(const LawSpec& law, int order) {
    require_order(order);
    switch (law.kind) {
        case LawKind::semicircle: {
            // S(z) = 1 / (sigma sqrt(z)), both branches exact monomials.
            const double inv_sigma = 1.0 / std::sqrt(law.variance);
            return STransformPair{MeanClass::zero_mean, monomial(-1, inv_sigma),
                                  monomial(-1, -inv_sigma)};
        }
        case LawKind::free_poisson: {
            // S(z) = 1 / (rate + z), written out as the geometric series.
            std::vector<double> grades(static_cast<std::size_t>(2 * order + 5), 0.0);
            double term = 1.0 / law.rate;
            for (int p = 0; 2 * p < static_cast<int>(grades.size()); ++p) {
                grades[static_cast<std::size_t>(2 * p)] = term;
                term *= -1.0 / law.rate;
            }
            return STransformPair{MeanClass::nonzero_mean,
                                  make_series(0, grades, 2 * order + 4), std::nullopt};
        }
        case LawKind::shifted_free_poisson:
            return shifted_free_poisson_s(law.rate, law.shift, order);
        case LawKind::point_mass:
            throw std::runtime_error("no closed form registered");
    }
    throw std::logic_error("unreachable law kind");
}

}  // namespace freemul
