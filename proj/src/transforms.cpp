#include "freemul/transforms.hpp"

#include <cmath>
#include <stdexcept>

namespace freemul {

const char* to_string(MeanClass c) {
    switch (c) {
        case MeanClass::nonzero_mean: return "nonzero_mean";
        case MeanClass::zero_mean: return "zero_mean";
        case MeanClass::degenerate_zero: return "degenerate_zero";
    }
    return "unknown";
}

HalfSeries psi_from_moments(const MomentSequence& m) {
    int N = m.order();
    std::vector<double> c(static_cast<size_t>(2 * N) + 1, 0.0);
    for (int n = 1; n <= N; ++n) c[static_cast<size_t>(2 * n)] = m.at(n);
    return make_series(0, std::move(c), 2 * N);
}

MomentSequence moments_from_psi(const HalfSeries& psi, int order) {
    if (!is_integer_power(psi))
        throw std::invalid_argument("series has half-integer grades");
    if (psi.trunc_grade < 2 * order)
        throw std::invalid_argument("order exceeds the trusted truncation window");
    MomentSequence m;
    m.moments.resize(static_cast<size_t>(order));
    for (int n = 1; n <= order; ++n)
        m.moments[static_cast<size_t>(n - 1)] = psi.at(2 * n);
    return m;
}

CumulantSequence cumulants_from_moments(const MomentSequence& m) {
    // M(z) = 1 + C[z M(z)]: equating z^n gives
    // m_n = sum_{s=1}^{n} kappa_s [z^{n-s}] M(z)^s, solved for kappa_n.
    int N = m.order();
    CumulantSequence k;
    k.cumulants.resize(static_cast<size_t>(N), 0.0);
    std::vector<double> M(static_cast<size_t>(N), 0.0);  // M[j] = m_j, M[0] = 1
    M[0] = 1.0;
    for (int j = 1; j < N; ++j) M[static_cast<size_t>(j)] = m.at(j);
    for (int n = 1; n <= N; ++n) {
        std::vector<double> power(static_cast<size_t>(n), 0.0);
        power[0] = 1.0;
        double s = 0.0;
        for (int p = 1; p < n; ++p) {
            std::vector<double> next(static_cast<size_t>(n), 0.0);
            for (int i = 0; i < n; ++i) {
                double pi = power[static_cast<size_t>(i)];
                if (pi == 0.0) continue;
                for (int j = 0; i + j < n; ++j)
                    next[static_cast<size_t>(i + j)] += pi * M[static_cast<size_t>(j)];
            }
            power = std::move(next);
            s += k.at(p) * power[static_cast<size_t>(n - p)];
        }
        k.cumulants[static_cast<size_t>(n - 1)] = m.at(n) - s;
    }
    return k;
}

MomentSequence moments_from_cumulants(const CumulantSequence& k) {
    int N = k.order();
    MomentSequence m;
    m.moments.resize(static_cast<size_t>(N), 0.0);
    std::vector<double> M(static_cast<size_t>(N), 0.0);
    M[0] = 1.0;
    for (int n = 1; n <= N; ++n) {
        std::vector<double> power(static_cast<size_t>(n), 0.0);
        power[0] = 1.0;
        double total = 0.0;
        for (int p = 1; p <= n; ++p) {
            std::vector<double> next(static_cast<size_t>(n), 0.0);
            for (int i = 0; i < n; ++i) {
                double pi = power[static_cast<size_t>(i)];
                if (pi == 0.0) continue;
                for (int j = 0; i + j < n; ++j)
                    next[static_cast<size_t>(i + j)] += pi * M[static_cast<size_t>(j)];
            }
            power = std::move(next);
            total += k.at(p) * power[static_cast<size_t>(n - p)];
        }
        m.moments[static_cast<size_t>(n - 1)] = total;
        if (n < N) M[static_cast<size_t>(n)] = total;
    }
    return m;
}

HalfSeries mobius_from_chi(const HalfSeries& chi) {
    // chi * (1+z)/z: gamma_g = beta_{g+2} + beta_g, trusted window drops by 2.
    if (chi.is_zero()) return zero_series(chi.trunc_grade == kExactTrunc
                                              ? kExactTrunc
                                              : chi.trunc_grade - 2);
    long long lo = chi.min_grade - 2;
    long long hi = chi.trunc_grade == kExactTrunc
                       ? chi.min_grade + static_cast<long long>(chi.coeffs.size()) - 1
                       : chi.trunc_grade - 2;
    std::vector<double> c(static_cast<size_t>(hi - lo + 1), 0.0);
    for (long long g = lo; g <= hi; ++g)
        c[static_cast<size_t>(g - lo)] =
            chi.at(static_cast<int>(g + 2)) + chi.at(static_cast<int>(g));
    return make_series(lo, std::move(c),
                       chi.trunc_grade == kExactTrunc ? kExactTrunc : chi.trunc_grade - 2);
}

HalfSeries chi_from_mobius(const HalfSeries& s) {
    // beta_{g+2} = gamma_g - beta_g, seeded by beta_g = 0 below s.min_grade.
    if (s.is_zero()) return zero_series(s.trunc_grade == kExactTrunc
                                            ? kExactTrunc
                                            : s.trunc_grade + 2);
    bool exact = s.trunc_grade == kExactTrunc;
    long long coeff_hi = s.min_grade + static_cast<long long>(s.coeffs.size()) - 1;
    long long s_hi = exact ? coeff_hi : s.trunc_grade;
    long long lo = s.min_grade + 2;
    long long hi = s_hi + 2;
    std::vector<double> beta(static_cast<size_t>(hi - lo + 1), 0.0);
    auto beta_at = [&](long long g) {
        return (g < lo || g > hi) ? 0.0 : beta[static_cast<size_t>(g - lo)];
    };
    for (long long g = s.min_grade; g <= s_hi; ++g)
        beta[static_cast<size_t>(g + 2 - lo)] =
            s.at(static_cast<int>(g)) - beta_at(g);
    // Past the last gamma the recursion runs on as beta_{g+2} = -beta_g, so
    // an exact input stays exact only when that tail is identically zero;
    // otherwise extend it over a stored horizon like reciprocal does.
    long long trunc = s.trunc_grade + 2;
    if (exact) {
        if (beta_at(hi - 1) == 0.0 && beta_at(hi) == 0.0) {
            trunc = kExactTrunc;
        } else {
            constexpr long long kTailWindow = 64;
            beta.resize(beta.size() + kTailWindow, 0.0);
            long long old_hi = hi;
            hi += kTailWindow;
            for (long long g = old_hi - 1; g + 2 <= hi; ++g)
                beta[static_cast<size_t>(g + 2 - lo)] = -beta_at(g);
            trunc = hi;
        }
    }
    return make_series(lo, std::move(beta), trunc);
}

STransformPair s_transform(const MomentSequence& m) {
    if (m.order() < 1) throw std::invalid_argument("empty moment sequence");
    double m1 = m.at(1);
    STransformPair out;
    if (std::abs(m1) >= kSnapEpsilon) {
        out.mean_class = MeanClass::nonzero_mean;
        out.primary = mobius_from_chi(invert_unique(psi_from_moments(m)));
        return out;
    }
    if (m.order() < 2)
        throw std::invalid_argument("order >= 2 required when the mean vanishes");
    double m2 = m.at(2);
    if (m2 < -kSnapEpsilon) throw std::runtime_error("not a moment sequence");
    if (std::abs(m2) < kSnapEpsilon) {
        out.mean_class = MeanClass::degenerate_zero;
        return out;
    }
    out.mean_class = MeanClass::zero_mean;
    auto [chi, chi_t] = invert_two_branch(psi_from_moments(m));
    out.primary = mobius_from_chi(chi);
    out.secondary = mobius_from_chi(chi_t);
    return out;
}

MomentSequence moments_from_s(const STransformPair& s, int order) {
    if (s.mean_class == MeanClass::degenerate_zero)
        throw std::invalid_argument("degenerate S-transform carries no series");
    auto recover = [order](const HalfSeries& branch) {
        HalfSeries chi = chi_from_mobius(branch);
        HalfSeries psi = (chi.min_grade == 1)
                             ? solve_outer_composition(chi, 2 * order)
                             : invert_unique(chi);
        return moments_from_psi(psi, order);
    };
    MomentSequence out = recover(s.primary);
    if (s.secondary) {
        MomentSequence alt = recover(*s.secondary);
        for (int n = 1; n <= order; ++n)
            if (std::abs(out.at(n) - alt.at(n)) > series_tolerance())
                throw std::runtime_error("branch inconsistency");
    }
    return out;
}

JacobiCoefficients jacobi_from_moments(const MomentSequence& m) {
    // Classical sigma-table reduction of the moment functional to a
    // three-term recurrence. A non-positive b_k is a Hankel breakdown.
    int L = m.order();
    int K = (L + 1) / 2;
    JacobiCoefficients jc;
    jc.a.assign(static_cast<size_t>(K), 0.0);
    jc.b.assign(static_cast<size_t>(K), 0.0);
    jc.a[0] = m.at(1);
    jc.b[0] = 1.0;
    std::vector<double> sig(static_cast<size_t>(L) + 1, 0.0);
    std::vector<double> sig_prev;
    for (int l = 0; l <= L; ++l) sig[static_cast<size_t>(l)] = m.at(l);
    for (int k = 1; k < K; ++k) {
        std::vector<double> next(static_cast<size_t>(L) + 1, 0.0);
        for (int l = k; l <= L - k; ++l) {
            double v = sig[static_cast<size_t>(l + 1)] -
                       jc.a[static_cast<size_t>(k - 1)] * sig[static_cast<size_t>(l)];
            if (k >= 2)
                v -= jc.b[static_cast<size_t>(k - 1)] * sig_prev[static_cast<size_t>(l)];
            next[static_cast<size_t>(l)] = v;
        }
        sig_prev = std::move(sig);
        sig = std::move(next);
        double pivot = sig_prev[static_cast<size_t>(k - 1)];
        jc.b[static_cast<size_t>(k)] = sig[static_cast<size_t>(k)] / pivot;
        if (!(jc.b[static_cast<size_t>(k)] > 0.0))
            throw std::runtime_error("moment sequence not positive to required depth");
        jc.a[static_cast<size_t>(k)] =
            sig[static_cast<size_t>(k + 1)] / sig[static_cast<size_t>(k)] -
            sig_prev[static_cast<size_t>(k)] / pivot;
    }
    return jc;
}

bool hankel_positive(const MomentSequence& m, int depth) {
    if (depth < 1) return true;
    int need = std::min(2 * depth - 1, m.order());
    MomentSequence head{std::vector<double>(m.moments.begin(),
                                            m.moments.begin() + need)};
    try {
        jacobi_from_moments(head);
    } catch (const std::runtime_error&) {
        return false;
    }
    return true;
}

}  // namespace freemul
