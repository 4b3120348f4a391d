#include "freemul/density.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace freemul {

namespace {

using cd = std::complex<double>;

constexpr double kPi = 3.141592653589793238462643383279502884;
// Physical-branch filter: Im g <= 0 up to numerical noise.
constexpr double kImagSlack = 1e-9;
// Continuation guard: reject jumps beyond this multiple of the local scale.
constexpr double kGuardFactor = 4.0;

void validate_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("grid must be nonempty");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw std::invalid_argument("grid must be strictly increasing");
        }
    }
}

int degree_in_g(const AlgebraicCurve& curve) {
    for (int i = static_cast<int>(curve.coeffs.size()) - 1; i >= 0; --i) {
        for (double c : curve.coeffs[static_cast<std::size_t>(i)]) {
            if (c != 0.0) return i;
        }
    }
    return -1;
}

// Coefficients of P(., z) as a polynomial in g, index = power of g.
std::vector<cd> g_polynomial(const AlgebraicCurve& curve, cd z, int deg) {
    std::vector<cd> a(static_cast<std::size_t>(deg) + 1, cd(0, 0));
    for (int i = 0; i <= deg; ++i) {
        const auto& row = curve.coeffs[static_cast<std::size_t>(i)];
        cd acc(0, 0);
        for (std::size_t j = row.size(); j-- > 0;) acc = acc * z + row[j];
        a[static_cast<std::size_t>(i)] = acc;
    }
    return a;
}

cd horner(const std::vector<cd>& a, cd g) {
    cd acc(0, 0);
    for (std::size_t i = a.size(); i-- > 0;) acc = acc * g + a[i];
    return acc;
}

cd horner_derivative(const std::vector<cd>& a, cd g) {
    cd acc(0, 0);
    for (std::size_t i = a.size(); i-- > 1;) acc = acc * g + a[i] * static_cast<double>(i);
    return acc;
}

// All complex roots of sum a[i] g^i via the companion matrix, polished by
// Newton to ~1e-10 relative accuracy.
std::vector<cd> polynomial_roots(std::vector<cd> a) {
    while (!a.empty() && a.back() == cd(0, 0)) a.pop_back();
    if (a.size() < 2) return {};
    const std::size_t d = a.size() - 1;
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d),
                                                        static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i + 1 < d; ++i) {
        companion(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = cd(1, 0);
    }
    for (std::size_t i = 0; i < d; ++i) {
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) =
            -a[i] / a[d];
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("polynomial root solve failed");
    }
    std::vector<cd> roots;
    roots.reserve(d);
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(d); ++i) {
        cd g = solver.eigenvalues()(i);
        for (int it = 0; it < 30; ++it) {
            cd p = horner(a, g);
            cd dp = horner_derivative(a, g);
            if (dp == cd(0, 0)) break;
            cd step = p / dp;
            g -= step;
            if (std::abs(step) <= 1e-12 * (1.0 + std::abs(g))) break;
        }
        roots.push_back(g);
    }
    return roots;
}

// Real roots of the leading-in-g coefficient polynomial strictly inside
// (lo, hi): the abscissae where the root count drops and branches reshuffle.
std::vector<double> leading_coefficient_roots(const AlgebraicCurve& curve, int deg, double lo,
                                              double hi) {
    const auto& row = curve.coeffs[static_cast<std::size_t>(deg)];
    std::vector<cd> a(row.begin(), row.end());
    std::vector<double> out;
    for (cd r : polynomial_roots(std::move(a))) {
        if (std::abs(r.imag()) < 1e-9 && r.real() > lo && r.real() < hi) {
            out.push_back(r.real());
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](double x, double y) { return std::abs(x - y) < 1e-9; }),
              out.end());
    return out;
}

[[noreturn]] void tracking_failure(double x) {
    throw std::runtime_error("error identifying the abscissa x = " + std::to_string(x));
}

// March one contiguous index range, anchoring the first point at the 1/z
// asymptote and every later point at the previous root.
void march(const AlgebraicCurve& curve, int deg, const std::vector<double>& grid, double epsilon,
           int from, int to, std::vector<double>& values) {
    const int step = to >= from ? 1 : -1;
    cd prev;
    bool first = true;
    for (int i = from;; i += step) {
        const double x = grid[static_cast<std::size_t>(i)];
        const cd z(x, epsilon);
        std::vector<cd> roots = polynomial_roots(g_polynomial(curve, z, deg));
        cd best;
        double best_dist = 0;
        bool found = false;
        const cd target = first ? cd(1, 0) / z : prev;
        for (cd g : roots) {
            if (g.imag() > kImagSlack) continue;
            const double dist = std::abs(g - target);
            if (!found || dist < best_dist) {
                best = g;
                best_dist = dist;
                found = true;
            }
        }
        if (!found) tracking_failure(x);
        if (!first && best_dist > kGuardFactor * std::max(1.0, std::abs(prev))) {
            tracking_failure(x);
        }
        values[static_cast<std::size_t>(i)] = std::max(0.0, -best.imag() / kPi);
        prev = best;
        first = false;
        if (i == to) break;
    }
}

}  // namespace

AlgebraicCurve builtin_curve(const std::string& name) {
    if (name == "semicircle_x_freepoisson") {
        return AlgebraicCurve{{{1, 0, 0}, {0, -1, 0}, {0, 0, 0}, {0, 0, 0}, {0, 0, 1}}};
    }
    if (name == "freepoisson_x_shiftedfreepoisson") {
        return AlgebraicCurve{{{1, 0, 0}, {0, -1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, 1}}};
    }
    throw std::invalid_argument("unknown builtin curve: " + name);
}

std::vector<double> make_grid(double xmin, double xmax, double step) {
    if (!(step > 0)) throw std::invalid_argument("grid step must be positive");
    if (!(xmax >= xmin)) throw std::invalid_argument("grid bounds out of order");
    const int n = static_cast<int>(std::floor((xmax - xmin) / step + 1e-9)) + 1;
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = xmin + i * step;
    return g;
}

std::complex<double> evaluate_curve(const AlgebraicCurve& curve, std::complex<double> g,
                                    std::complex<double> z) {
    cd acc(0, 0);
    for (std::size_t i = curve.coeffs.size(); i-- > 0;) {
        const auto& row = curve.coeffs[i];
        cd rowval(0, 0);
        for (std::size_t j = row.size(); j-- > 0;) rowval = rowval * z + row[j];
        acc = acc * g + rowval;
    }
    return acc;
}

std::complex<double> cauchy_from_moments(const MomentSequence& m, std::complex<double> z) {
    const cd inv = cd(1, 0) / z;
    cd acc(0, 0);
    for (int n = m.order(); n >= 0; --n) acc = (acc + m.at(n)) * inv;
    return acc;
}

DensityCurve solve_density(const AlgebraicCurve& curve, const std::vector<double>& grid,
                           double epsilon) {
    validate_grid(grid);
    if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
    const int deg = degree_in_g(curve);
    if (deg < 1) throw std::invalid_argument("curve must have positive degree in g");

    // Split the grid at the real zeros of the leading-in-g coefficient: the
    // branch structure reshuffles there, so each side is continued from its
    // own asymptotic anchor.
    std::vector<double> splits =
        leading_coefficient_roots(curve, deg, grid.front(), grid.back());
    std::vector<std::pair<int, int>> segments;
    int start = 0;
    for (double r : splits) {
        int end = start;
        while (end < static_cast<int>(grid.size()) && grid[static_cast<std::size_t>(end)] < r) {
            ++end;
        }
        if (end > start) segments.emplace_back(start, end - 1);
        start = end;
    }
    if (start < static_cast<int>(grid.size())) {
        segments.emplace_back(start, static_cast<int>(grid.size()) - 1);
    }

    std::vector<double> values(grid.size(), 0.0);
    for (std::size_t s = 0; s < segments.size(); ++s) {
        auto [b, e] = segments[s];
        if (s == 0 && segments.size() > 1) {
            // Leftmost of several segments: its far end is the reliable
            // asymptote, so march rightward from it.
            march(curve, deg, grid, epsilon, b, e, values);
        } else {
            march(curve, deg, grid, epsilon, e, b, values);
        }
    }
    return DensityCurve{grid, std::move(values), epsilon};
}

DensityCurve approx_density_from_moments(const MomentSequence& m, const std::vector<double>& grid,
                                         double epsilon) {
    validate_grid(grid);
    if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
    if (m.order() < 4) {
        throw std::invalid_argument("approx_density_from_moments: at least four moments required");
    }
    JacobiCoefficients jc = jacobi_from_moments(m);
    const std::size_t K = jc.a.size();
    std::vector<double> values(grid.size(), 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const cd z(grid[i], epsilon);
        cd tail(0, 0);
        for (std::size_t k = K; k-- > 1;) tail = jc.b[k] / (z - jc.a[k] - tail);
        const cd g = cd(1, 0) / (z - jc.a[0] - tail);
        values[i] = std::max(0.0, -g.imag() / kPi);
    }
    return DensityCurve{grid, std::move(values), epsilon};
}

double trapezoid_mass(const DensityCurve& c) { return trapezoid_moment(c, 0); }

double trapezoid_moment(const DensityCurve& c, int n) {
    if (n < 0) throw std::invalid_argument("moment order must be nonnegative");
    double acc = 0;
    for (std::size_t i = 1; i < c.grid.size(); ++i) {
        const double f0 = c.values[i - 1] * std::pow(c.grid[i - 1], n);
        const double f1 = c.values[i] * std::pow(c.grid[i], n);
        acc += 0.5 * (f0 + f1) * (c.grid[i] - c.grid[i - 1]);
    }
    return acc;
}

bool is_density_curve(const DensityCurve& c, double mass_tol) {
    if (c.grid.size() != c.values.size() || c.grid.empty()) return false;
    for (std::size_t i = 1; i < c.grid.size(); ++i) {
        if (!(c.grid[i] > c.grid[i - 1])) return false;
    }
    for (double v : c.values) {
        if (!(v >= 0) || !std::isfinite(v)) return false;
    }
    return std::abs(trapezoid_mass(c) - 1.0) <= mass_tol;
}

}  // namespace freemul
