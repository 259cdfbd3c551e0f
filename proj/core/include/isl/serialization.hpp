#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "isl/born.hpp"
#include "isl/forward.hpp"
#include "isl/gelfand_levitan.hpp"
#include "isl/kernel.hpp"
#include "isl/marchenko.hpp"
#include "isl/phase_ambiguity.hpp"
#include "isl/phase_shifts.hpp"
#include "isl/resonance.hpp"

namespace isl {

using json = nlohmann::ordered_json;

/// "%.17g".
std::string format_double(double v);

/// Deterministic JSON text: keys in insertion order, doubles in "%.17g",
/// two-space indent. Non-finite doubles become null.
std::string dump_json(const json& j);

/// CSV with the given header; every value in "%.17g".
std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

/// Writes text to a file, creating parent directories. Throws Error on I/O
/// failure.
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

json to_json(const HalfLineScatteringData& d);
/// Inverse of to_json; f0_values stay empty. Throws FormatError.
HalfLineScatteringData scattering_from_json(const json& j);

json to_json(const CharacterizationReport& r);
json to_json(const SpectralMeasure& m);
json to_json(const PiecewiseConstant& p);
json to_json(const AmbiguityPair& p);
json to_json(const BornExperimentReport& r);
json to_json(const PhaseShiftSet& p);
json to_json(const ResonanceSet& r);

std::string kernel_csv(const TriangularKernel& k);             // "x,y,A"
std::string function_csv(const SampledFunction& f, const std::string& x, const std::string& y);  // real part
std::string potential_csv(const RadialPotential& q);           // "x,q"
std::string resonance_csv(const ResonanceSet& r);              // "re_k,im_k,residual"
std::string sweep_csv(const BornExperimentReport& r);          // "delta,cutoff,error"

}  // namespace isl
