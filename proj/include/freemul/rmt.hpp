#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "freemul/density.hpp"

namespace freemul {

// Monte Carlo validation: sample Wigner/Wishart ensembles, compute product
// spectra, and compare eigenvalue histograms against predicted densities.

enum class EnsemblePair { wigner_x_wishart, wishart_x_shifted_wishart };

const char* to_string(EnsemblePair p);
EnsemblePair ensemble_from_string(const std::string& s);

struct SimConfig {
    int n = 50;
    int trials = 4000;
    std::uint64_t seed = 12345;
    EnsemblePair ensemble_pair = EnsemblePair::wigner_x_wishart;
    int bins = 60;
};

// n >= 2, trials >= 1, bins >= 10.
void validate(const SimConfig& config);

struct SpectrumSample {
    std::vector<double> eigenvalues;  // n * trials values, ordered by trial
    SimConfig config;
};

// Standard-normal stream with a fully pinned construction (Box-Muller over
// mt19937_64), so identical seeds reproduce identical samples.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}
    double next();

private:
    std::mt19937_64 rng_;
    double spare_ = 0;
    bool has_spare_ = false;
};

// Independent stream seed for one trial of a run.
std::uint64_t trial_seed(std::uint64_t seed, int trial);

// Symmetric Gaussian matrix, every entry variance 1/n: spectrum converges to
// semicircle(1).
Eigen::MatrixXd sample_wigner(int n, GaussianStream& rng);

// (1/n) A A^T - shift*I for square Gaussian A: spectrum converges to the
// free Poisson(1) law shifted down by `shift`.
Eigen::MatrixXd sample_wishart(int n, GaussianStream& rng, double shift);

// Eigenvalues of B^{1/2} A B^{1/2} per trial, with B the positive factor:
// wigner_x_wishart pairs a Wigner A with an unshifted Wishart B;
// wishart_x_shifted_wishart pairs a shift-1 Wishart A with an unshifted
// Wishart B. Deterministic per (seed, trial); trials may run on `threads`
// threads (0 = hardware default) with trial-ordered aggregation.
SpectrumSample product_spectrum(const SimConfig& config, int threads = 0);

struct BinnedHistogram {
    std::vector<double> edges;   // bins + 1 ascending edges
    std::vector<double> counts;  // per-bin counts; strays land in edge bins
};

// config.bins uniform bins over [lo, hi].
BinnedHistogram bin_sample(const SpectrumSample& sample, double lo, double hi);

struct HistogramReport {
    double l1_distance = 0;
    double ks_distance = 0;
    double out_of_range_frac = 0;
    int bins = 0;
};

// Histogram the sample on config.bins uniform bins over the density's grid
// span; L1 against the per-bin-averaged density, KS on the CDFs. Mass
// outside the grid is counted into the edge bins and reported.
HistogramReport compare_histogram(const SpectrumSample& sample, const DensityCurve& density);

double empirical_moment(const SpectrumSample& sample, int n);

}  // namespace freemul
