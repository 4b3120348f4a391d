#include "freemul/half_series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace freemul {

namespace {

double g_tolerance = 1e-9;

// Stored horizon for reciprocals of exactly-known multi-term series, whose
// true inverse has infinitely many terms.
constexpr long long kExactReciprocalWindow = 64;

long long clamp_grade(long long g) {
    return std::min<long long>(g, kExactTrunc);
}

long long gadd(long long a, long long b) {
    return clamp_grade(a + b);
}

}  // namespace

double series_tolerance() { return g_tolerance; }

void set_series_tolerance(double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    g_tolerance = tol;
}

HalfSeries make_series(long long min_grade, std::vector<double> coeffs,
                       long long trunc_grade) {
    trunc_grade = clamp_grade(trunc_grade);
    for (double& c : coeffs)
        if (std::abs(c) < kSnapEpsilon) c = 0.0;

    size_t lead = 0;
    while (lead < coeffs.size() && coeffs[lead] == 0.0) ++lead;
    coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(lead));
    min_grade += static_cast<long long>(lead);

    if (!coeffs.empty() && min_grade + static_cast<long long>(coeffs.size()) - 1 > trunc_grade) {
        long long keep = trunc_grade - min_grade + 1;
        coeffs.resize(keep > 0 ? static_cast<size_t>(keep) : 0);
    }
    while (!coeffs.empty() && coeffs.back() == 0.0 && trunc_grade == kExactTrunc)
        coeffs.pop_back();

    HalfSeries out;
    out.trunc_grade = static_cast<int>(trunc_grade);
    if (coeffs.empty()) {
        out.min_grade = static_cast<int>(clamp_grade(trunc_grade + 1));
        return out;
    }
    if (trunc_grade < kExactTrunc)
        coeffs.resize(static_cast<size_t>(trunc_grade - min_grade + 1), 0.0);
    out.min_grade = static_cast<int>(min_grade);
    out.coeffs = std::move(coeffs);
    return out;
}

HalfSeries zero_series(int trunc_grade) {
    return make_series(0, {}, trunc_grade);
}

HalfSeries monomial(int grade, double coeff, int trunc_grade) {
    return make_series(grade, {coeff}, trunc_grade);
}

HalfSeries add(const HalfSeries& a, const HalfSeries& b) {
    long long trunc = std::min<long long>(a.trunc_grade, b.trunc_grade);
    if (a.is_zero() && b.is_zero()) return zero_series(static_cast<int>(trunc));
    long long a_top = a.min_grade + static_cast<long long>(a.coeffs.size()) - 1;
    long long b_top = b.min_grade + static_cast<long long>(b.coeffs.size()) - 1;
    long long lo = std::min<long long>(a.is_zero() ? b.min_grade : a.min_grade,
                                       b.is_zero() ? a.min_grade : b.min_grade);
    long long hi = std::min(trunc, std::max(a_top, b_top));
    if (hi < lo) return zero_series(static_cast<int>(trunc));
    std::vector<double> c(static_cast<size_t>(hi - lo + 1), 0.0);
    for (long long g = lo; g <= hi; ++g)
        c[static_cast<size_t>(g - lo)] = a.at(static_cast<int>(g)) + b.at(static_cast<int>(g));
    return make_series(lo, std::move(c), trunc);
}

HalfSeries sub(const HalfSeries& a, const HalfSeries& b) {
    return add(a, scale(b, -1.0));
}

HalfSeries scale(const HalfSeries& a, double factor) {
    std::vector<double> c = a.coeffs;
    for (double& v : c) v *= factor;
    return make_series(a.min_grade, std::move(c), a.trunc_grade);
}

HalfSeries mul(const HalfSeries& a, const HalfSeries& b) {
    long long trunc = std::min(gadd(a.trunc_grade, b.min_grade),
                               gadd(b.trunc_grade, a.min_grade));
    if (a.is_zero() || b.is_zero()) return zero_series(static_cast<int>(trunc));
    long long lo = static_cast<long long>(a.min_grade) + b.min_grade;
    long long hi = std::min<long long>(
        trunc, lo + static_cast<long long>(a.coeffs.size() + b.coeffs.size()) - 2);
    if (hi < lo) return zero_series(static_cast<int>(trunc));
    std::vector<double> c(static_cast<size_t>(hi - lo + 1), 0.0);
    for (size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0.0) continue;
        long long ga = a.min_grade + static_cast<long long>(i);
        for (size_t j = 0; j < b.coeffs.size(); ++j) {
            long long g = ga + b.min_grade + static_cast<long long>(j);
            if (g > hi) break;
            c[static_cast<size_t>(g - lo)] += a.coeffs[i] * b.coeffs[j];
        }
    }
    return make_series(lo, std::move(c), trunc);
}

HalfSeries reciprocal(const HalfSeries& a) {
    if (a.is_zero()) throw std::runtime_error("non-invertible");
    long long m = a.min_grade;
    long long trunc_out;
    long long width;
    if (a.trunc_grade == kExactTrunc) {
        if (a.coeffs.size() == 1) return monomial(static_cast<int>(-m), 1.0 / a.coeffs[0]);
        width = static_cast<long long>(a.coeffs.size()) + kExactReciprocalWindow;
        trunc_out = -m + width - 1;
    } else {
        // Dividing by the leading term shifts the trusted window down by 2m.
        trunc_out = a.trunc_grade - 2 * m;
        width = trunc_out + m + 1;
        if (width < 1) return zero_series(static_cast<int>(trunc_out));
    }
    // r[k] is the coefficient of the result at grade -m + k.
    double c0 = a.coeffs[0];
    std::vector<double> r(static_cast<size_t>(width), 0.0);
    r[0] = 1.0 / c0;
    for (long long k = 1; k < width; ++k) {
        double s = 0.0;
        for (long long j = 1; j <= k; ++j) {
            double av = a.at(static_cast<int>(m + j));
            if (av != 0.0) s += av * r[static_cast<size_t>(k - j)];
        }
        r[static_cast<size_t>(k)] = -s / c0;
    }
    return make_series(-m, std::move(r), trunc_out);
}

HalfSeries compose(const HalfSeries& outer, const HalfSeries& inner) {
    if (!is_integer_power(outer))
        throw std::invalid_argument(
            "half-integer outer grades require a perfect-square inner");
    if (!outer.is_zero() && outer.min_grade < 0)
        throw std::invalid_argument("divergent composition");
    if (inner.is_zero()) {
        long long t = outer.trunc_grade == kExactTrunc
                          ? inner.trunc_grade
                          : std::min(outer.trunc_grade, inner.trunc_grade);
        return monomial(0, outer.at(0), static_cast<int>(t));
    }
    if (inner.min_grade < 1) throw std::invalid_argument("divergent composition");

    // First untrusted z-power of outer is q; it would contribute from grade
    // q * inner.min_grade. Inner's truncation enters through the lowest
    // substituted power n_min.
    long long trunc = kExactTrunc;
    if (outer.trunc_grade != kExactTrunc) {
        long long q = outer.trunc_grade / 2 + 1;
        trunc = std::min(trunc, q * inner.min_grade - 1);
    }
    if (outer.is_zero()) return zero_series(static_cast<int>(clamp_grade(trunc)));
    long long n_min = 0;
    long long top = outer.min_grade + static_cast<long long>(outer.coeffs.size()) - 1;
    for (long long g = std::max<long long>(outer.min_grade + (outer.min_grade % 2 ? 1 : 0), 2);
         g <= top; g += 2) {
        if (outer.at(static_cast<int>(g)) != 0.0) { n_min = g / 2; break; }
    }
    if (inner.trunc_grade != kExactTrunc && n_min > 0)
        trunc = std::min(trunc, inner.trunc_grade + (n_min - 1) * inner.min_grade);
    trunc = clamp_grade(trunc);

    // Horner over decreasing z-powers of outer, capped at the trusted grade.
    long long n_top = top / 2;
    HalfSeries acc = zero_series(kExactTrunc);
    for (long long n = n_top; n >= 1; --n) {
        acc = mul(acc, inner);
        if (!acc.is_zero() && acc.trunc_grade > trunc)
            acc = make_series(acc.min_grade, acc.coeffs, trunc);
        double cn = outer.at(static_cast<int>(2 * n));
        if (cn != 0.0) acc = add(acc, monomial(0, cn));
    }
    acc = mul(acc, inner);
    double c0 = outer.at(0);
    if (c0 != 0.0) acc = add(acc, monomial(0, c0));
    return make_series(acc.min_grade, acc.coeffs, trunc);
}

HalfSeries invert_unique(const HalfSeries& f) {
    if (!is_integer_power(f) || f.is_zero() || f.min_grade != 2 || f.at(2) == 0.0)
        throw std::runtime_error("no unique inverse; use invert_two_branch");
    long long P = (f.trunc_grade == kExactTrunc)
                      ? (f.min_grade + static_cast<long long>(f.coeffs.size()) - 1) / 2
                      : f.trunc_grade / 2;
    double a1 = f.at(2);
    // b[r] are z-power coefficients of the inverse g; the grade-m equation
    // a1 b[m] + sum_{n>=2} a_n [z^m](g with b[m]=0)^n = 0 is triangular.
    std::vector<double> b(static_cast<size_t>(P) + 1, 0.0);
    b[1] = 1.0 / a1;
    for (long long m = 2; m <= P; ++m) {
        std::vector<double> power(static_cast<size_t>(m) + 1, 0.0);
        power[0] = 1.0;
        double s = 0.0;
        for (long long n = 1; n <= m; ++n) {
            std::vector<double> next(static_cast<size_t>(m) + 1, 0.0);
            for (long long i = 0; i < m; ++i) {
                double pi = power[static_cast<size_t>(i)];
                if (pi == 0.0) continue;
                for (long long j = 1; i + j <= m; ++j)
                    next[static_cast<size_t>(i + j)] += pi * b[static_cast<size_t>(j)];
            }
            power = std::move(next);
            if (n == 1) continue;
            double an = f.at(static_cast<int>(2 * n));
            if (an != 0.0) s += an * power[static_cast<size_t>(m)];
        }
        b[static_cast<size_t>(m)] = -s / a1;
    }
    std::vector<double> half(static_cast<size_t>(2 * P) + 1, 0.0);
    for (long long k = 1; k <= P; ++k)
        half[static_cast<size_t>(2 * k)] = b[static_cast<size_t>(k)];
    return make_series(0, std::move(half), 2 * P);
}

std::pair<HalfSeries, HalfSeries> invert_two_branch(const HalfSeries& f) {
    if (!is_integer_power(f))
        throw std::invalid_argument("two-branch inversion needs an integer-power series");
    if (f.is_zero() || f.min_grade > 4)
        throw std::runtime_error("degenerate: second moment vanishes");
    if (f.min_grade < 4)
        throw std::invalid_argument("nonzero linear term; use invert_unique");
    double a2 = f.at(4);
    if (a2 < 0.0) throw std::runtime_error("not a positive-definite moment sequence");

    long long P = (f.trunc_grade == kExactTrunc)
                      ? (f.min_grade + static_cast<long long>(f.coeffs.size()) - 1) / 2
                      : f.trunc_grade / 2;

    // Each branch solves the same triangular recursion seeded by its own
    // beta_1, so the parity relation between them is a checkable output, not
    // an input.
    auto one_branch = [&](double b1) {
        std::vector<double> beta(static_cast<size_t>(P), 0.0);
        beta[1] = b1;
        for (long long r = 3; r <= P; ++r) {
            // Grade-r coefficient of sum_n a_n chi^n with beta[r-1] = 0; the
            // unknown enters only through the chi^2 term as 2 a2 b1 beta[r-1].
            std::vector<double> power(static_cast<size_t>(r) + 1, 0.0);
            power[0] = 1.0;
            double s = 0.0;
            for (long long n = 1; n <= r; ++n) {
                std::vector<double> next(static_cast<size_t>(r) + 1, 0.0);
                for (long long i = 0; i < r; ++i) {
                    double pi = power[static_cast<size_t>(i)];
                    if (pi == 0.0) continue;
                    for (long long j = 1; i + j <= r && j <= r - 2; ++j)
                        next[static_cast<size_t>(i + j)] +=
                            pi * beta[static_cast<size_t>(j)];
                }
                power = std::move(next);
                if (n == 1) continue;
                double an = f.at(static_cast<int>(2 * n));
                if (an != 0.0) s += an * power[static_cast<size_t>(r)];
            }
            beta[static_cast<size_t>(r - 1)] = -s / (2.0 * a2 * b1);
        }
        std::vector<double> c(beta.begin() + 1, beta.end());
        return make_series(1, std::move(c), P - 1);
    };

    double b1 = 1.0 / std::sqrt(a2);
    return {one_branch(b1), one_branch(-b1)};
}

HalfSeries solve_outer_composition(const HalfSeries& inner, int target_trunc) {
    if (inner.is_zero() || inner.min_grade != 1)
        throw std::runtime_error("unsupported leading grade");
    long long K = inner.trunc_grade;  // exact inner: coefficients known at all grades
    long long R = std::min<long long>(target_trunc / 2, K);
    if (R < 1) return zero_series(target_trunc);

    // alpha[r] are z-power coefficients of the outer series; the grade-r
    // equation reads sum_{n<=r} alpha_n [grade r](inner^n) = [r == 2].
    std::vector<double> alpha(static_cast<size_t>(R) + 1, 0.0);
    std::vector<std::vector<double>> powers(
        static_cast<size_t>(R) + 1,
        std::vector<double>(static_cast<size_t>(R) + 1, 0.0));
    for (long long g = 1; g <= R; ++g)
        powers[1][static_cast<size_t>(g)] = inner.at(static_cast<int>(g));
    for (long long n = 2; n <= R; ++n)
        for (long long g = n; g <= R; ++g) {
            double s = 0.0;
            for (long long j = 1; j <= g - n + 1; ++j)
                s += inner.at(static_cast<int>(j)) *
                     powers[static_cast<size_t>(n - 1)][static_cast<size_t>(g - j)];
            powers[static_cast<size_t>(n)][static_cast<size_t>(g)] = s;
        }
    for (long long r = 1; r <= R; ++r) {
        double s = 0.0;
        for (long long n = 1; n < r; ++n)
            s += alpha[static_cast<size_t>(n)] *
                 powers[static_cast<size_t>(n)][static_cast<size_t>(r)];
        double target = (r == 2) ? 1.0 : 0.0;
        double lead = powers[static_cast<size_t>(r)][static_cast<size_t>(r)];
        alpha[static_cast<size_t>(r)] = (target - s) / lead;
    }
    std::vector<double> half(static_cast<size_t>(2 * R) + 1, 0.0);
    for (long long r = 1; r <= R; ++r)
        half[static_cast<size_t>(2 * r)] = alpha[static_cast<size_t>(r)];
    return make_series(0, std::move(half), std::min<long long>(target_trunc, 2 * R));
}

bool is_integer_power(const HalfSeries& a) {
    for (size_t i = 0; i < a.coeffs.size(); ++i) {
        long long g = a.min_grade + static_cast<long long>(i);
        if ((g % 2 != 0) && std::abs(a.coeffs[i]) >= kSnapEpsilon) return false;
    }
    return true;
}

bool is_moment_series(const HalfSeries& a) {
    if (a.is_zero()) return true;
    return is_integer_power(a) && a.min_grade >= 2;
}

double max_coeff_distance(const HalfSeries& a, const HalfSeries& b) {
    long long hi = std::min<long long>(a.trunc_grade, b.trunc_grade);
    long long lo = std::min<long long>(a.is_zero() ? hi + 1 : a.min_grade,
                                       b.is_zero() ? hi + 1 : b.min_grade);
    double d = 0.0;
    for (long long g = lo; g <= hi; ++g)
        d = std::max(d, std::abs(a.at(static_cast<int>(g)) - b.at(static_cast<int>(g))));
    return d;
}

bool approx_equal(const HalfSeries& a, const HalfSeries& b) {
    return approx_equal(a, b, g_tolerance);
}

bool approx_equal(const HalfSeries& a, const HalfSeries& b, double tol) {
    return max_coeff_distance(a, b) <= tol;
}

}  // namespace freemul
