#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "dnls/lattice.hpp"
#include "dnls/multipulse.hpp"
#include "dnls/solver.hpp"
#include "dnls/spectrum.hpp"
#include "dnls/theory.hpp"

namespace dnls {

using Json = nlohmann::ordered_json;

// {"omega", "d", "half_width", "values"}
Json to_json(const LatticeField& q);
LatticeField field_from_json(const Json& j);

// {"m", "distances", "phases_pi", "anchor"}
Json to_json(const PulseSpec& spec);
PulseSpec spec_from_json(const Json& j);

// {"eigenvalues": [[re, im]...], "classes": [...], "meta": {...}}
Json to_json(const Spectrum& s);
Spectrum spectrum_from_json(const Json& j);

// {"samples": [field...], "step_policy": {...}}
Json to_json(const ContinuationPath& path);

Json to_json(const TheoryPrediction& t);

// Fixed 17-significant-digit formatting used by every CSV writer.
std::string format_double(double x);

// Whole-file IO; failures throw Error(Io) naming the path.
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace dnls
