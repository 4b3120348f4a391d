#include "freemul/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace freemul {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

}  // namespace

const char* to_string(EnsemblePair p) {
    switch (p) {
        case EnsemblePair::wigner_x_wishart:
            return "wigner_x_wishart";
        case EnsemblePair::wishart_x_shifted_wishart:
            return "wishart_x_shifted_wishart";
    }
    return "unknown";
}

EnsemblePair ensemble_from_string(const std::string& s) {
    if (s == "wigner_x_wishart") return EnsemblePair::wigner_x_wishart;
    if (s == "wishart_x_shifted_wishart") return EnsemblePair::wishart_x_shifted_wishart;
    throw std::invalid_argument("unknown ensemble pair: " + s);
}

void validate(const SimConfig& config) {
    if (config.n < 2) throw std::invalid_argument("matrix size must be at least 2");
    if (config.trials < 1) throw std::invalid_argument("trial count must be at least 1");
    if (config.bins < 10) throw std::invalid_argument("bin count must be at least 10");
}

double GaussianStream::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = (static_cast<double>(rng_() >> 11) + 0.5) * 0x1p-53;  // (0,1)
    double u2 = static_cast<double>(rng_() >> 11) * 0x1p-53;          // [0,1)
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * kPi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
    return mix64(seed + static_cast<std::uint64_t>(trial) * kGolden);
}

Eigen::MatrixXd sample_wigner(int n, GaussianStream& rng) {
    double scale = 1.0 / std::sqrt(static_cast<double>(n));
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double g = rng.next() * scale;
            a(i, j) = g;
            a(j, i) = g;
        }
    }
    return a;
}

Eigen::MatrixXd sample_wishart(int n, GaussianStream& rng, double shift) {
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            a(i, j) = rng.next();
        }
    }
    Eigen::MatrixXd w = (a * a.transpose()) / static_cast<double>(n);
    if (shift != 0) {
        w -= shift * Eigen::MatrixXd::Identity(n, n);
    }
    return w;
}

namespace {

Eigen::MatrixXd symmetric_sqrt(const Eigen::MatrixXd& b, int trial) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eigensolver failed at trial " + std::to_string(trial));
    }
    Eigen::VectorXd d = es.eigenvalues();
    for (int i = 0; i < d.size(); ++i) {
        d(i) = std::sqrt(std::max(0.0, d(i)));  // clamp roundoff negatives
    }
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

void run_trial(const SimConfig& config, int trial, double* out) {
    GaussianStream rng(trial_seed(config.seed, trial));
    int n = config.n;
    Eigen::MatrixXd a, b;
    if (config.ensemble_pair == EnsemblePair::wigner_x_wishart) {
        a = sample_wigner(n, rng);
        b = sample_wishart(n, rng, 0.0);
    } else {
        a = sample_wishart(n, rng, 1.0);
        b = sample_wishart(n, rng, 0.0);
    }
    Eigen::MatrixXd rb = symmetric_sqrt(b, trial);
    Eigen::MatrixXd m = rb * a * rb;
    m = 0.5 * (m + m.transpose().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eigensolver failed at trial " + std::to_string(trial));
    }
    Eigen::VectorXd ev = es.eigenvalues();
    for (int i = 0; i < n; ++i) out[i] = ev(i);
}

}  // namespace

SpectrumSample product_spectrum(const SimConfig& config, int threads) {
    validate(config);
    SpectrumSample sample;
    sample.config = config;
    sample.eigenvalues.assign(static_cast<std::size_t>(config.n) * config.trials, 0.0);

    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    int workers = threads > 0 ? threads : hw;
    workers = std::min(workers, config.trials);

    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int t = w; t < config.trials; t += workers) {
                    run_trial(config, t, sample.eigenvalues.data() + static_cast<std::size_t>(t) * config.n);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return sample;
}

BinnedHistogram bin_sample(const SpectrumSample& sample, double lo, double hi) {
    if (sample.eigenvalues.empty()) throw std::invalid_argument("sample is empty");
    if (!(hi > lo)) throw std::invalid_argument("histogram range must be nonempty");
    int bins = sample.config.bins;
    if (bins < 1) throw std::invalid_argument("bin count must be positive");
    double width = (hi - lo) / bins;
    BinnedHistogram h;
    h.edges.resize(bins + 1);
    for (int k = 0; k <= bins; ++k) h.edges[k] = lo + k * width;
    h.counts.assign(bins, 0.0);
    for (double x : sample.eigenvalues) {
        int k = static_cast<int>(std::floor((x - lo) / width));
        k = std::clamp(k, 0, bins - 1);  // strays fall into the edge bins
        h.counts[k] += 1.0;
    }
    return h;
}

HistogramReport compare_histogram(const SpectrumSample& sample, const DensityCurve& density) {
    if (density.grid.size() < 2) throw std::invalid_argument("density grid must hold at least two points");
    if (sample.eigenvalues.empty()) throw std::invalid_argument("sample is empty");
    int bins = sample.config.bins;
    if (bins < 1) throw std::invalid_argument("bin count must be positive");

    double lo = density.grid.front();
    double hi = density.grid.back();
    double width = (hi - lo) / bins;

    // cumulative trapezoid mass of the predicted density along its grid
    std::vector<double> cdf(density.grid.size(), 0.0);
    for (std::size_t i = 1; i < density.grid.size(); ++i) {
        double dx = density.grid[i] - density.grid[i - 1];
        cdf[i] = cdf[i - 1] + 0.5 * (density.values[i] + density.values[i - 1]) * dx;
    }
    auto cdf_at = [&](double x) {
        if (x <= lo) return 0.0;
        if (x >= hi) return cdf.back();
        auto it = std::upper_bound(density.grid.begin(), density.grid.end(), x);
        std::size_t j = static_cast<std::size_t>(it - density.grid.begin());
        double x0 = density.grid[j - 1], x1 = density.grid[j];
        double f = (x - x0) / (x1 - x0);
        return cdf[j - 1] + f * (cdf[j] - cdf[j - 1]);
    };

    BinnedHistogram h = bin_sample(sample, lo, hi);
    std::size_t total = sample.eigenvalues.size();
    std::size_t out_of_range = 0;
    for (double x : sample.eigenvalues) {
        if (x < lo || x > hi) ++out_of_range;
    }

    HistogramReport report;
    report.bins = bins;
    report.out_of_range_frac = static_cast<double>(out_of_range) / static_cast<double>(total);
    for (int k = 0; k < bins; ++k) {
        double mass_pred = cdf_at(h.edges[k + 1]) - cdf_at(h.edges[k]);
        report.l1_distance += std::abs(h.counts[k] / static_cast<double>(total) - mass_pred);
    }

    std::vector<double> sorted(sample.eigenvalues);
    std::sort(sorted.begin(), sorted.end());
    for (int k = 0; k <= bins; ++k) {
        double edge = lo + k * width;
        auto it = std::upper_bound(sorted.begin(), sorted.end(), edge);
        double ecdf = static_cast<double>(it - sorted.begin()) / static_cast<double>(total);
        report.ks_distance = std::max(report.ks_distance, std::abs(ecdf - cdf_at(edge)));
    }
    return report;
}

double empirical_moment(const SpectrumSample& sample, int n) {
    if (sample.eigenvalues.empty()) throw std::invalid_argument("sample is empty");
    if (n < 0) throw std::invalid_argument("moment order must be nonnegative");
    double acc = 0;
    for (double x : sample.eigenvalues) acc += std::pow(x, n);
    return acc / static_cast<double>(sample.eigenvalues.size());
}

}  // namespace freemul
