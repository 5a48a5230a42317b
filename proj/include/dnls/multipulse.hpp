#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dnls/lattice.hpp"
#include "dnls/solver.hpp"

namespace dnls {

// Phase difference between consecutive pulses. Only 0 and pi are admissible,
// so the type carries nothing else.
enum class Phase { Zero, Pi };

inline int cos_of(Phase ph) { return ph == Phase::Zero ? 1 : -1; }

class PulseSpec {
 public:
  // Single pulse at the origin.
  PulseSpec() = default;
  // anchor = first pulse center; nullopt centres the configuration.
  PulseSpec(std::vector<int> distances, std::vector<Phase> phases, std::optional<int> anchor = std::nullopt);

  // Compact form "+-+:8,8": signs of the m pulses, then the m-1 distances.
  // A bare sign string with a single pulse ("+") has no distance list.
  static PulseSpec parse(std::string_view pattern);
  std::string pattern() const;

  int m() const { return static_cast<int>(distances_.size()) + 1; }
  const std::vector<int>& distances() const { return distances_; }
  const std::vector<Phase>& phases() const { return phases_; }
  int anchor() const { return anchor_; }
  int extent() const;

  // Pulse centers and signs sigma_k = prod_{j<k} cos(dtheta_j).
  std::vector<int> centers() const;
  std::vector<int> signs() const;

  // Number of zero / pi phase differences.
  int k_zero() const;
  int k_pi() const;

  // Half the minimum separation, and the split N_i = N_i^+ + N_i^-.
  double half_min_distance() const;
  static int split_plus(int distance) { return distance / 2; }
  static int split_minus(int distance) { return distance - distance / 2; }

  PulseSpec with_anchor(int anchor) const { return {distances_, phases_, anchor}; }

  bool operator==(const PulseSpec&) const = default;

 private:
  std::vector<int> distances_;
  std::vector<Phase> phases_;
  int anchor_ = 0;
};

// Lattice half-width with room for the configuration: 2 * extent + 30.
int default_half_width(const PulseSpec& spec);

// Anti-continuum seed: sigma_k sqrt(omega) at each center, zero elsewhere.
// Throws Error(DoesNotFit) unless every center keeps >= 10 sites of margin.
LatticeField seed_anticontinuum(const PulseSpec& spec, double omega, const Problem& p);

// Continue the seed to d_target and check the converged pulse pattern.
// Throws Error(StructureMismatch) if the branch was lost.
LatticeField build_multipulse(const PulseSpec& spec, double omega, double d_target,
                              const NewtonSettings& s = {}, int half_width = 0);

// Recover centers, distances and phases from a converged field. Extrema are
// local maxima of |q| above 1e-6 max|q|. Throws Error(AmbiguousStructure).
PulseSpec measure_spec(const LatticeField& q);

}  // namespace dnls
