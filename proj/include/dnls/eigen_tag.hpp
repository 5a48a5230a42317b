#pragma once

namespace dnls {

enum class Axis { Real, Imaginary };

inline const char* to_string(Axis a) { return a == Axis::Real ? "real" : "imaginary"; }

// One member of a +-lambda pair: its magnitude and the axis it lies on.
struct TaggedEigenvalue {
  double magnitude = 0.0;
  Axis axis = Axis::Real;

  bool operator==(const TaggedEigenvalue&) const = default;
};

// Canonical order for pair lists: real pairs first, then imaginary, each by
// ascending magnitude. Keeps mixed-axis pairs of equal size from swapping.
inline bool pair_order(const TaggedEigenvalue& a, const TaggedEigenvalue& b) {
  if (a.axis != b.axis) return a.axis == Axis::Real;
  return a.magnitude < b.magnitude;
}

}  // namespace dnls
