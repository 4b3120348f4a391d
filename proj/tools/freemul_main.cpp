#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "freemul/convolution.hpp"
#include "freemul/density.hpp"
#include "freemul/json_io.hpp"
#include "freemul/laws.hpp"
#include "freemul/rmt.hpp"
#include "freemul/transforms.hpp"

namespace {

using freemul::json;

freemul::LawSpec law_from_arg(const std::string& arg) {
    return freemul::parse_inline_or_file(arg).get<freemul::LawSpec>();
}

freemul::MomentSequence moments_from_arg(const std::string& arg) {
    return freemul::parse_inline_or_file(arg).get<freemul::MomentSequence>();
}

freemul::AlgebraicCurve curve_from_arg(const std::string& arg) {
    bool looks_inline = !arg.empty() && (arg.front() == '{' || arg.front() == '[');
    if (looks_inline || std::ifstream(arg).good()) {
        return freemul::parse_inline_or_file(arg).get<freemul::AlgebraicCurve>();
    }
    return freemul::builtin_curve(arg);
}

std::string join_values(const std::vector<double>& v) {
    std::string out;
    char buf[40];
    for (size_t i = 0; i < v.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", v[i]);
        if (i) out += ",";
        out += buf;
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << text;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
    } else {
        write_text(path, text);
    }
}

// when the factor moments come from a law, generate a little past the
// requested order so the zero-mean window loss does not bite
freemul::MomentSequence factor_moments(const std::string& law_arg, const std::string& moments_arg,
                                       int order) {
    if (!law_arg.empty()) return freemul::moments_of(law_from_arg(law_arg), order + 2);
    return moments_from_arg(moments_arg);
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"free multiplicative convolution via S-transforms"};
    app.require_subcommand(1);

    // moments
    std::string mo_law;
    int mo_order = 12;
    std::string mo_format = "csv";
    auto* mo = app.add_subcommand("moments", "moments of a built-in law");
    mo->add_option("--law", mo_law, "law spec, inline JSON or a file path")->required();
    mo->add_option("--order", mo_order, "number of moments");
    mo->add_option("--format", mo_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    // stransform
    std::string st_law, st_moments;
    int st_order = 12;
    auto* st = app.add_subcommand("stransform", "S-transform of a law or a moment sequence");
    st->add_option("--law", st_law, "law spec, inline JSON or a file path");
    st->add_option("--moments", st_moments, "moment sequence, inline JSON or a file path");
    st->add_option("--order", st_order, "moment order used when a law is given");

    // convolve
    std::string cv_law_a, cv_law_b, cv_moments_a, cv_moments_b;
    int cv_order = 12;
    auto* cv = app.add_subcommand("convolve", "free multiplicative convolution of two factors");
    cv->add_option("--law-a", cv_law_a, "first factor law");
    cv->add_option("--law-b", cv_law_b, "second factor law");
    cv->add_option("--moments-a", cv_moments_a, "first factor moments");
    cv->add_option("--moments-b", cv_moments_b, "second factor moments");
    cv->add_option("--order", cv_order, "output moment order");

    // density
    std::string de_curve, de_moments, de_output;
    double de_xmin = -4.0005, de_xmax = 8.0005, de_step = 1e-3, de_eps = 1e-4;
    auto* de = app.add_subcommand("density", "spectral density along a real grid");
    de->add_option("--curve", de_curve, "builtin curve name, or curve JSON inline or from file");
    de->add_option("--moments", de_moments, "moment sequence for the continued-fraction route");
    de->add_option("--xmin", de_xmin, "grid start");
    de->add_option("--xmax", de_xmax, "grid end");
    de->add_option("--step", de_step, "grid spacing");
    de->add_option("--eps", de_eps, "imaginary offset of the evaluation line");
    de->add_option("--output", de_output, "CSV path (stdout when omitted)");

    // simulate
    freemul::SimConfig sim;
    std::string si_ensemble = "wigner_x_wishart";
    std::string si_curve, si_eig_csv, si_hist_json;
    double si_xmin = 0, si_xmax = 0, si_step = 1e-3, si_eps = 1e-4;
    int si_threads = 0;
    auto* si = app.add_subcommand("simulate", "sample product spectra and compare to a density");
    si->add_option("--n", sim.n, "matrix size");
    si->add_option("--trials", sim.trials, "number of trials");
    si->add_option("--seed", sim.seed, "RNG seed (FREEMUL_SEED overrides)");
    si->add_option("--ensemble", si_ensemble, "wigner_x_wishart or wishart_x_shifted_wishart");
    si->add_option("--bins", sim.bins, "histogram bins");
    si->add_option("--threads", si_threads, "trial-level threads, 0 = hardware");
    si->add_option("--curve", si_curve, "density curve override, defaults to the ensemble's law");
    auto* si_xmin_opt = si->add_option("--xmin", si_xmin, "density grid start");
    auto* si_xmax_opt = si->add_option("--xmax", si_xmax, "density grid end");
    si->add_option("--step", si_step, "density grid spacing");
    si->add_option("--eps", si_eps, "density imaginary offset");
    si->add_option("--eigenvalues-csv", si_eig_csv, "write sampled eigenvalues here");
    si->add_option("--histogram-json", si_hist_json, "write binned histogram here");

    // verify
    std::string ve_law_a, ve_law_b;
    int ve_order = 8;
    double ve_tol = 1e-9;
    auto* ve = app.add_subcommand("verify", "proof identities and branch invariance for two laws");
    ve->add_option("--law-a", ve_law_a, "first factor law")->required();
    ve->add_option("--law-b", ve_law_b, "second factor law")->required();
    ve->add_option("--order", ve_order, "identity order (combinatorial oracle caps this at 8)");
    ve->add_option("--tol", ve_tol, "residual tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (mo->parsed()) {
        auto m = freemul::moments_of(law_from_arg(mo_law), mo_order);
        if (mo_format == "json") {
            std::cout << json(m).dump(2) << "\n";
        } else {
            std::cout << join_values(m.moments) << "\n";
        }
        return 0;
    }

    if (st->parsed()) {
        if (st_law.empty() == st_moments.empty()) {
            throw std::invalid_argument("pass exactly one of --law and --moments");
        }
        auto m = st_law.empty() ? moments_from_arg(st_moments)
                                : freemul::moments_of(law_from_arg(st_law), st_order);
        auto s = freemul::s_transform(m);
        std::cout << json(s).dump(2) << "\n";
        return 0;
    }

    if (cv->parsed()) {
        if (cv_law_a.empty() == cv_moments_a.empty() || cv_law_b.empty() == cv_moments_b.empty()) {
            throw std::invalid_argument(
                "pass exactly one of --law-a and --moments-a, and one of --law-b and --moments-b");
        }
        auto mx = factor_moments(cv_law_a, cv_moments_a, cv_order);
        auto my = factor_moments(cv_law_b, cv_moments_b, cv_order);
        auto r = freemul::free_mult_convolve(mx, my, cv_order);
        std::cout << json(r).dump(2) << "\n";
        return 0;
    }

    if (de->parsed()) {
        if (de_curve.empty() == de_moments.empty()) {
            throw std::invalid_argument("pass exactly one of --curve and --moments");
        }
        auto grid = freemul::make_grid(de_xmin, de_xmax, de_step);
        freemul::DensityCurve d;
        if (de_curve.empty()) {
            d = freemul::approx_density_from_moments(moments_from_arg(de_moments), grid, de_eps);
        } else {
            d = freemul::solve_density(curve_from_arg(de_curve), grid, de_eps);
        }
        emit(de_output, freemul::density_csv(d));
        return 0;
    }

    if (si->parsed()) {
        sim.ensemble_pair = freemul::ensemble_from_string(si_ensemble);
        if (const char* env = std::getenv("FREEMUL_SEED")) {
            try {
                sim.seed = std::stoull(env);
            } catch (const std::exception&) {
                throw std::invalid_argument("FREEMUL_SEED must be an unsigned integer");
            }
        }
        bool wigner_pair = sim.ensemble_pair == freemul::EnsemblePair::wigner_x_wishart;
        if (si_curve.empty()) {
            si_curve = wigner_pair ? "semicircle_x_freepoisson" : "freepoisson_x_shiftedfreepoisson";
        }
        if (!*si_xmin_opt) si_xmin = -4.0005;
        if (!*si_xmax_opt) si_xmax = wigner_pair ? 4.0005 : 8.0005;

        auto sample = freemul::product_spectrum(sim, si_threads);
        auto dens = freemul::solve_density(curve_from_arg(si_curve),
                                           freemul::make_grid(si_xmin, si_xmax, si_step), si_eps);
        auto report = freemul::compare_histogram(sample, dens);
        if (!si_eig_csv.empty()) write_text(si_eig_csv, freemul::eigenvalue_csv(sample));
        if (!si_hist_json.empty()) {
            auto h = freemul::bin_sample(sample, dens.grid.front(), dens.grid.back());
            json jh;
            jh["edges"] = h.edges;
            jh["counts"] = h.counts;
            jh["config"] = sim;
            write_text(si_hist_json, jh.dump(2) + "\n");
        }
        std::cout << json(report).dump(2) << "\n";
        return 0;
    }

    if (ve->parsed()) {
        auto a = law_from_arg(ve_law_a);
        auto b = law_from_arg(ve_law_b);
        auto ma = freemul::moments_of(a, ve_order + 2);
        auto mb = freemul::moments_of(b, ve_order + 2);
        auto identities = freemul::verify_proof_identities(ma, mb, ve_order);

        json jb = nullptr;
        double branch_dev = 0;
        auto r = freemul::free_mult_convolve(ma, mb, ve_order);
        if (r.s_product && r.s_product->secondary) {
            freemul::STransformPair swapped;
            swapped.mean_class = r.s_product->mean_class;
            swapped.primary = *r.s_product->secondary;
            swapped.secondary = r.s_product->primary;
            auto m1 = freemul::moments_from_s(*r.s_product, ve_order);
            auto m2 = freemul::moments_from_s(swapped, ve_order);
            for (int n = 1; n <= ve_order; ++n) {
                branch_dev = std::max(branch_dev, std::abs(m1.at(n) - m2.at(n)));
            }
            jb = branch_dev;
        }

        bool pass = identities.max_residual() < ve_tol && branch_dev < ve_tol;
        json out;
        out["identities"] = identities;
        out["branch_invariance"] = jb;
        out["tolerance"] = ve_tol;
        out["pass"] = pass;
        std::cout << out.dump(2) << "\n";
        return pass ? 0 : 1;
    }

    return 2;
}

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
