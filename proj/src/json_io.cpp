#include "freemul/json_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace freemul {

namespace {

MeanClass mean_class_from_string(const std::string& s) {
    if (s == "nonzero_mean") return MeanClass::nonzero_mean;
    if (s == "zero_mean") return MeanClass::zero_mean;
    if (s == "degenerate_zero") return MeanClass::degenerate_zero;
    throw std::invalid_argument("unknown mean class: " + s);
}

ConvolutionCase case_from_string(const std::string& s) {
    if (s == "both_nonzero") return ConvolutionCase::both_nonzero;
    if (s == "one_zero_mean") return ConvolutionCase::one_zero_mean;
    if (s == "both_zero_mean") return ConvolutionCase::both_zero_mean;
    throw std::invalid_argument("unknown convolution case: " + s);
}

}  // namespace

void to_json(json& j, const HalfSeries& s) {
    j = json::object();
    j["min_grade"] = s.is_zero() ? 0 : s.min_grade;
    j["coeffs"] = s.coeffs;
    j["trunc_grade"] = std::min(s.trunc_grade, kExactTrunc);
}

void from_json(const json& j, HalfSeries& s) {
    s = make_series(j.at("min_grade").get<int>(), j.at("coeffs").get<std::vector<double>>(),
                    j.at("trunc_grade").get<int>());
}

void to_json(json& j, const MomentSequence& m) {
    j = json::object();
    j["moments"] = m.moments;
}

void from_json(const json& j, MomentSequence& m) {
    m.moments = j.at("moments").get<std::vector<double>>();
}

void to_json(json& j, const CumulantSequence& k) {
    j = json::object();
    j["cumulants"] = k.cumulants;
}

void from_json(const json& j, CumulantSequence& k) {
    k.cumulants = j.at("cumulants").get<std::vector<double>>();
}

void to_json(json& j, const STransformPair& p) {
    j = json::object();
    j["mean_class"] = to_string(p.mean_class);
    j["primary"] = p.primary;
    if (p.secondary) {
        j["secondary"] = *p.secondary;
    } else {
        j["secondary"] = nullptr;
    }
}

void from_json(const json& j, STransformPair& p) {
    p.mean_class = mean_class_from_string(j.at("mean_class").get<std::string>());
    p.primary = j.at("primary").get<HalfSeries>();
    p.secondary.reset();
    if (j.contains("secondary") && !j.at("secondary").is_null()) {
        p.secondary = j.at("secondary").get<HalfSeries>();
    }
}

void to_json(json& j, const LawSpec& law) {
    j = json::object();
    j["kind"] = to_string(law.kind);
    switch (law.kind) {
        case LawKind::semicircle:
            j["variance"] = law.variance;
            break;
        case LawKind::free_poisson:
            j["rate"] = law.rate;
            break;
        case LawKind::shifted_free_poisson:
            j["rate"] = law.rate;
            j["shift"] = law.shift;
            break;
        case LawKind::point_mass:
            j["c"] = law.c;
            break;
    }
}

void from_json(const json& j, LawSpec& law) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "Semicircle") {
        law = semicircle_law(j.value("variance", 1.0));
    } else if (kind == "FreePoisson") {
        law = free_poisson_law(j.value("rate", 1.0));
    } else if (kind == "ShiftedFreePoisson") {
        law = shifted_free_poisson_law(j.value("rate", 1.0), j.value("shift", 0.0));
    } else if (kind == "PointMass") {
        law = point_mass_law(j.value("c", 0.0));
    } else {
        throw std::invalid_argument("unknown law kind: " + kind);
    }
}

void to_json(json& j, const ConvolutionResult& r) {
    j = json::object();
    j["moments"] = r.moments.moments;
    j["case_tag"] = to_string(r.case_tag);
    if (r.s_product) {
        j["s_product"] = *r.s_product;
    } else {
        j["s_product"] = nullptr;
    }
}

void from_json(const json& j, ConvolutionResult& r) {
    r.moments.moments = j.at("moments").get<std::vector<double>>();
    r.case_tag = case_from_string(j.at("case_tag").get<std::string>());
    r.s_product.reset();
    if (j.contains("s_product") && !j.at("s_product").is_null()) {
        r.s_product = j.at("s_product").get<STransformPair>();
    }
}

void to_json(json& j, const AlgebraicCurve& c) {
    j = json::object();
    j["coeffs"] = c.coeffs;
}

void from_json(const json& j, AlgebraicCurve& c) {
    c.coeffs = j.at("coeffs").get<std::vector<std::vector<double>>>();
}

void to_json(json& j, const DensityCurve& c) {
    j = json::object();
    j["grid"] = c.grid;
    j["values"] = c.values;
    j["epsilon"] = c.epsilon;
}

void from_json(const json& j, DensityCurve& c) {
    c.grid = j.at("grid").get<std::vector<double>>();
    c.values = j.at("values").get<std::vector<double>>();
    c.epsilon = j.at("epsilon").get<double>();
}

void to_json(json& j, const SimConfig& c) {
    j = json::object();
    j["n"] = c.n;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["ensemble_pair"] = to_string(c.ensemble_pair);
    j["bins"] = c.bins;
}

void from_json(const json& j, SimConfig& c) {
    SimConfig defaults;
    c.n = j.value("n", defaults.n);
    c.trials = j.value("trials", defaults.trials);
    c.seed = j.value("seed", defaults.seed);
    c.bins = j.value("bins", defaults.bins);
    c.ensemble_pair = j.contains("ensemble_pair")
                          ? ensemble_from_string(j.at("ensemble_pair").get<std::string>())
                          : defaults.ensemble_pair;
    validate(c);
}

void to_json(json& j, const HistogramReport& r) {
    j = json::object();
    j["l1_distance"] = r.l1_distance;
    j["ks_distance"] = r.ks_distance;
    j["out_of_range_frac"] = r.out_of_range_frac;
    j["bins"] = r.bins;
}

void from_json(const json& j, HistogramReport& r) {
    r.l1_distance = j.at("l1_distance").get<double>();
    r.ks_distance = j.at("ks_distance").get<double>();
    r.out_of_range_frac = j.at("out_of_range_frac").get<double>();
    r.bins = j.value("bins", 0);
}

void to_json(json& j, const ProofIdentityReport& r) {
    j = json::object();
    j["symmetry"] = r.symmetry;
    j["moment_relation"] = r.moment_relation;
    j["first_aux"] = r.first_aux;
    j["second_aux"] = r.second_aux;
    j["max_residual"] = r.max_residual();
}

json parse_inline_or_file(const std::string& text) {
    size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i < text.size() && (text[i] == '{' || text[i] == '[')) {
        return json::parse(text);
    }
    std::ifstream in(text);
    if (!in) throw std::invalid_argument("cannot read file: " + text);
    json j;
    in >> j;
    return j;
}

std::string density_csv(const DensityCurve& c) {
    std::string out = "x,density\n";
    char buf[80];
    for (size_t i = 0; i < c.grid.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", c.grid[i], c.values[i]);
        out += buf;
    }
    return out;
}

std::string eigenvalue_csv(const SpectrumSample& s) {
    std::string out;
    char buf[40];
    for (double x : s.eigenvalues) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", x);
        out += buf;
    }
    return out;
}

}  // namespace freemul
