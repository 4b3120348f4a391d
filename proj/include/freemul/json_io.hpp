#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "freemul/convolution.hpp"
#include "freemul/density.hpp"
#include "freemul/half_series.hpp"
#include "freemul/laws.hpp"
#include "freemul/rmt.hpp"
#include "freemul/transforms.hpp"

namespace freemul {

using nlohmann::json;

// nlohmann ADL serializers; every to_json has a matching from_json and the
// pair round-trips. Enum fields travel as their to_string names; an exact
// series carries the truncation sentinel grade as a plain integer.

void to_json(json& j, const HalfSeries& s);
void from_json(const json& j, HalfSeries& s);

void to_json(json& j, const MomentSequence& m);
void from_json(const json& j, MomentSequence& m);

void to_json(json& j, const CumulantSequence& k);
void from_json(const json& j, CumulantSequence& k);

void to_json(json& j, const STransformPair& p);
void from_json(const json& j, STransformPair& p);

void to_json(json& j, const LawSpec& law);
void from_json(const json& j, LawSpec& law);

void to_json(json& j, const ConvolutionResult& r);
void from_json(const json& j, ConvolutionResult& r);

void to_json(json& j, const AlgebraicCurve& c);
void from_json(const json& j, AlgebraicCurve& c);

void to_json(json& j, const DensityCurve& c);
void from_json(const json& j, DensityCurve& c);

void to_json(json& j, const SimConfig& c);
void from_json(const json& j, SimConfig& c);

void to_json(json& j, const HistogramReport& r);
void from_json(const json& j, HistogramReport& r);

void to_json(json& j, const ProofIdentityReport& r);

// `text` is parsed as inline JSON when it starts with '{' or '[', otherwise
// treated as a path and the file contents are parsed.
json parse_inline_or_file(const std::string& text);

// "x,density" header then one comma-separated pair per grid point.
std::string density_csv(const DensityCurve& c);

// One eigenvalue per line.
std::string eigenvalue_csv(const SpectrumSample& s);

}  // namespace freemul
