#include "dnls/multipulse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dnls/error.hpp"

namespace dnls {

PulseSpec::PulseSpec(std::vector<int> distances, std::vector<Phase> phases, std::optional<int> anchor)
    : distances_(std::move(distances)), phases_(std::move(phases)) {
  if (distances_.size() != phases_.size())
    throw std::invalid_argument("PulseSpec: need one phase per distance");
  for (int n : distances_)
    if (n < 2) throw std::invalid_argument("PulseSpec: distances must be >= 2, got " + std::to_string(n));
  anchor_ = anchor.value_or(-extent() / 2);
}

PulseSpec PulseSpec::parse(std::string_view pattern) {
  const auto colon = pattern.find(':');
  const std::string_view signs = pattern.substr(0, colon);
  if (signs.empty() || signs.front() != '+')
    throw std::invalid_argument("pattern must start with '+': " + std::string(pattern));
  for (char c : signs)
    if (c != '+' && c != '-') throw std::invalid_argument("bad sign character in " + std::string(pattern));

  std::vector<int> distances;
  if (colon != std::string_view::npos) {
    std::string rest(pattern.substr(colon + 1));
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto comma = rest.find(',', pos);
      const std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != tok.size())
        throw std::invalid_argument("bad distance '" + tok + "' in " + std::string(pattern));
      distances.push_back(v);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  if (distances.size() + 1 != signs.size())
    throw std::invalid_argument("pattern " + std::string(pattern) + " needs " +
                                std::to_string(signs.size() - 1) + " distances");

  std::vector<Phase> phases;
  for (std::size_t i = 0; i + 1 < signs.size(); ++i)
    phases.push_back(signs[i] == signs[i + 1] ? Phase::Zero : Phase::Pi);
  return {std::move(distances), std::move(phases)};
}

std::string PulseSpec::pattern() const {
  std::string out;
  for (int s : signs()) out += s > 0 ? '+' : '-';
  if (!distances_.empty()) {
    out += ':';
    for (std::size_t i = 0; i < distances_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(distances_[i]);
    }
  }
  return out;
}

int PulseSpec::extent() const { return std::accumulate(distances_.begin(), distances_.end(), 0); }

std::vector<int> PulseSpec::centers() const {
  std::vector<int> c{anchor_};
  for (int n : distances_) c.push_back(c.back() + n);
  return c;
}

std::vector<int> PulseSpec::signs() const {
  std::vector<int> s{1};
  for (Phase ph : phases_) s.push_back(s.back() * cos_of(ph));
  return s;
}

int PulseSpec::k_zero() const {
  return static_cast<int>(std::count(phases_.begin(), phases_.end(), Phase::Zero));
}
int PulseSpec::k_pi() const { return static_cast<int>(phases_.size()) - k_zero(); }

double PulseSpec::half_min_distance() const {
  if (distances_.empty()) return 0.0;
  return 0.5 * *std::min_element(distances_.begin(), distances_.end());
}

int default_half_width(const PulseSpec& spec) { return 2 * spec.extent() + 30; }

LatticeField seed_anticontinuum(const PulseSpec& spec, double omega, const Problem& p) {
  constexpr int kMargin = 10;
  LatticeField seed(p.with_d(0.0).with_omega(omega));
  const auto centers = spec.centers();
  const auto signs = spec.signs();
  for (std::size_t k = 0; k < centers.size(); ++k) {
    if (std::abs(centers[k]) > p.half_width - kMargin)
      throw Error(ErrorKind::DoesNotFit, "pulse center " + std::to_string(centers[k]) +
                                             " needs half_width >= " +
                                             std::to_string(std::abs(centers[k]) + kMargin));
    seed[centers[k]] = signs[k] * std::sqrt(omega);
  }
  return seed;
}

LatticeField build_multipulse(const PulseSpec& spec, double omega, double d_target,
                              const NewtonSettings& s, int half_width) {
  if (half_width <= 0) half_width = default_half_width(spec);
  const Problem p(omega, 0.0, half_width);
  const LatticeField seed = seed_anticontinuum(spec, omega, p);
  LatticeField q = continue_in_d(seed, omega, d_target, s).final_field();

  PulseSpec found;
  try {
    found = measure_spec(q);
  } catch (const Error& e) {
    throw Error(ErrorKind::StructureMismatch, std::string("converged field unreadable: ") + e.what());
  }
  if (found.m() != spec.m() || found.distances() != spec.distances() || found.phases() != spec.phases() ||
      std::abs(found.anchor() - spec.anchor()) > 1)
    throw Error(ErrorKind::StructureMismatch,
                "expected " + spec.pattern() + ", converged field shows " + found.pattern());
  const auto signs = spec.signs();
  const auto centers = found.centers();
  for (std::size_t k = 0; k < centers.size(); ++k)
    if ((q[centers[k]] > 0) != (signs[k] > 0))
      throw Error(ErrorKind::StructureMismatch, "sign of pulse " + std::to_string(k) + " flipped");
  return q;
}

PulseSpec measure_spec(const LatticeField& q) {
  constexpr int kMinSpacing = 4;
  const double floor = 1e-6 * q.sup_norm();
  const int L = q.half_width();
  std::vector<int> extrema;
  for (int n = -L; n <= L; ++n) {
    const double a = std::abs(q[n]);
    if (a <= floor || !(a > 0.0)) continue;
    const double left = std::abs(q.at(n - 1)), right = std::abs(q.at(n + 1));
    if (a > left && a >= right) extrema.push_back(n);
  }
  if (extrema.empty()) throw Error(ErrorKind::AmbiguousStructure, "no extrema above the noise floor");

  std::vector<int> distances;
  std::vector<Phase> phases;
  for (std::size_t k = 0; k + 1 < extrema.size(); ++k) {
    const int gap = extrema[k + 1] - extrema[k];
    if (gap < kMinSpacing)
      throw Error(ErrorKind::AmbiguousStructure,
                  "extrema at " + std::to_string(extrema[k]) + " and " + std::to_string(extrema[k + 1]) +
                      " are closer than " + std::to_string(kMinSpacing));
    distances.push_back(gap);
    const bool same = (q[extrema[k]] > 0) == (q[extrema[k + 1]] > 0);
    phases.push_back(same ? Phase::Zero : Phase::Pi);
  }
  return {std::move(distances), std::move(phases), extrema.front()};
}

}  // namespace dnls
