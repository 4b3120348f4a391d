#pragma once

#include <complex>
#include <string>
#include <vector>

#include "freemul/transforms.hpp"

namespace freemul {

// Spectral densities via Stieltjes inversion: either by solving an algebraic
// equation P(g, z) = 0 for the Cauchy transform g along z = x + i*eps, or
// from raw moments through a truncated continued fraction.

// Real bivariate polynomial P(g, z) = sum coeffs[i][j] g^i z^j.
struct AlgebraicCurve {
    std::vector<std::vector<double>> coeffs;
};

// Curves with known product-law densities. Names:
//   semicircle_x_freepoisson          g^4 z^2 - z g + 1 = 0
//   freepoisson_x_shiftedfreepoisson  g^4 z^2 + z^2 g^3 - z g^2 - g z + 1 = 0
AlgebraicCurve builtin_curve(const std::string& name);

struct DensityCurve {
    std::vector<double> grid;    // strictly increasing abscissae
    std::vector<double> values;  // nonnegative densities
    double epsilon = 0.0;        // Stieltjes regularization height used
};

std::vector<double> make_grid(double xmin, double xmax, double step);

std::complex<double> evaluate_curve(const AlgebraicCurve& curve, std::complex<double> g,
                                    std::complex<double> z);

// Truncated moment expansion of the Cauchy transform,
// g(z) = sum_{n>=0} m_n z^{-n-1} with m_0 = 1.
std::complex<double> cauchy_from_moments(const MomentSequence& m, std::complex<double> z);

// Solve P(g, x + i eps) = 0 at every grid point, pick the physical root by
// continuation from the 1/z asymptote, and return -Im(g)/pi clamped at 0.
DensityCurve solve_density(const AlgebraicCurve& curve, const std::vector<double>& grid,
                           double epsilon);

// Jacobi-coefficient continued fraction evaluated at x + i eps. Approximate
// by construction: `order` moments give order/2 quadrature atoms, so the
// result is a smoothed atomic measure.
DensityCurve approx_density_from_moments(const MomentSequence& m, const std::vector<double>& grid,
                                         double epsilon);

double trapezoid_mass(const DensityCurve& c);
double trapezoid_moment(const DensityCurve& c, int n);
bool is_density_curve(const DensityCurve& c, double mass_tol);

}  // namespace freemul
