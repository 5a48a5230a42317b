#include "dnls/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dnls/error.hpp"

namespace dnls {

Json to_json(const LatticeField& q) {
  const Problem& p = q.problem();
  Json j;
  j["omega"] = p.omega;
  j["d"] = p.d;
  j["half_width"] = p.half_width;
  j["values"] = std::vector<double>(q.values().begin(), q.values().end());
  return j;
}

LatticeField field_from_json(const Json& j) {
  const Problem p(j.at("omega").get<double>(), j.at("d").get<double>(), j.at("half_width").get<int>());
  return {p, j.at("values").get<std::vector<double>>()};
}

Json to_json(const PulseSpec& spec) {
  Json j;
  j["m"] = spec.m();
  j["distances"] = spec.distances();
  std::vector<int> pi;
  for (Phase ph : spec.phases()) pi.push_back(ph == Phase::Pi ? 1 : 0);
  j["phases_pi"] = pi;
  j["anchor"] = spec.anchor();
  return j;
}

PulseSpec spec_from_json(const Json& j) {
  auto distances = j.at("distances").get<std::vector<int>>();
  std::vector<Phase> phases;
  for (int x : j.at("phases_pi").get<std::vector<int>>()) {
    if (x != 0 && x != 1) throw std::invalid_argument("phases_pi entries must be 0 or 1");
    phases.push_back(x ? Phase::Pi : Phase::Zero);
  }
  if (j.contains("m") && j.at("m").get<int>() != static_cast<int>(distances.size()) + 1)
    throw std::invalid_argument("PulseSpec JSON: m disagrees with the distance list");
  std::optional<int> anchor;
  if (j.contains("anchor")) anchor = j.at("anchor").get<int>();
  return {std::move(distances), std::move(phases), anchor};
}

Json to_json(const Spectrum& s) {
  Json j;
  Json eig = Json::array();
  for (const auto& z : s.eigenvalues) eig.push_back({z.real(), z.imag()});
  j["eigenvalues"] = eig;
  Json cls = Json::array();
  for (auto c : s.classes) cls.push_back(to_string(c));
  j["classes"] = cls;
  j["meta"] = {{"m", s.m},
               {"omega", s.omega},
               {"d", s.d},
               {"zero_tol", s.tolerances.zero_tol},
               {"band_tol", s.tolerances.band_tol},
               {"band_margin", s.tolerances.band_margin_factor * s.omega},
               {"axis_ratio", s.tolerances.axis_ratio}};
  return j;
}

Spectrum spectrum_from_json(const Json& j) {
  Spectrum s;
  for (const auto& e : j.at("eigenvalues")) s.eigenvalues.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  for (const auto& c : j.at("classes")) {
    const auto name = c.get<std::string>();
    if (name == "zero") s.classes.push_back(EigenClass::ZeroMode);
    else if (name == "interaction") s.classes.push_back(EigenClass::Interaction);
    else if (name == "band") s.classes.push_back(EigenClass::Band);
    else s.classes.push_back(EigenClass::Other);
  }
  const auto& meta = j.at("meta");
  s.m = meta.at("m").get<int>();
  s.omega = meta.at("omega").get<double>();
  s.d = meta.at("d").get<double>();
  s.tolerances.zero_tol = meta.at("zero_tol").get<double>();
  s.tolerances.band_tol = meta.at("band_tol").get<double>();
  s.tolerances.band_margin_factor = meta.at("band_margin").get<double>() / s.omega;
  s.tolerances.axis_ratio = meta.at("axis_ratio").get<double>();
  return s;
}

Json to_json(const ContinuationPath& path) {
  Json j;
  Json samples = Json::array();
  for (const auto& s : path.samples) samples.push_back(to_json(s.field));
  j["samples"] = samples;
  j["step_policy"] = {{"initial_step", path.policy.initial_step},
                      {"min_step", path.policy.min_step},
                      {"max_step", path.policy.max_step}};
  return j;
}

Json to_json(const TheoryPrediction& t) {
  Json j;
  j["omega"] = t.omega;
  j["d"] = t.d;
  j["r"] = t.r;
  j["b"] = t.b;
  j["M"] = t.M;
  j["M2"] = melnikov_M2(t.M, t.d);
  j["A"] = {{"diag", t.A.diag}, {"off", t.A.off}};
  j["mu"] = t.mu;
  Json lam = Json::array();
  for (const auto& l : t.lambda) lam.push_back({{"magnitude", l.magnitude}, {"axis", to_string(l.axis)}});
  j["lambda"] = lam;
  return j;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

Json read_json(const std::filesystem::path& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::Io, path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

}  // namespace dnls
