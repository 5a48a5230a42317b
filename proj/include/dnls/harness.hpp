#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dnls/eigen_tag.hpp"
#include "dnls/multipulse.hpp"
#include "dnls/serialize.hpp"
#include "dnls/solver.hpp"
#include "dnls/spectrum.hpp"
#include "dnls/theory.hpp"

namespace dnls {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_norm = 0.0;  // 2-norm of y - (slope x + intercept)
};

// Ordinary least squares y ~ slope x + intercept via the normal equations.
// Throws Error(DegenerateAbscissa) when all xs coincide.
LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys);

// Lattice half-width used by the studies: extent/2 + max(30, 4 N_max).
int study_half_width(const PulseSpec& spec);

// Interaction pairs of a freshly built multi-pulse at (omega, d).
struct ComputedPairs {
  LatticeField field;
  Spectrum spectrum;
  std::vector<TaggedEigenvalue> pairs;
};
ComputedPairs compute_interaction_pairs(const PulseSpec& spec, double omega, double d, const NewtonSettings& s = {},
                                        int half_width = 0);

// log|lambda| against N = N_i / 2 for an equal-distance family.
struct DecayRow {
  int distance = 0;
  double half_distance = 0.0;
  std::vector<TaggedEigenvalue> pairs;
  std::string error;  // empty when the row succeeded
};

struct PairFit {
  int pair = 0;
  Axis axis = Axis::Real;
  LinearFit fit;
  double relative_slope_error = 0.0;
};

struct DecayStudy {
  double omega = 0.0;
  double d = 0.0;
  std::string signs;
  std::vector<int> distances;
  double target_slope = 0.0;  // -log r(omega, d)
  std::vector<DecayRow> rows;
  std::vector<PairFit> fits;
  std::string failure;  // set when fewer than 4 rows succeeded
  std::optional<LatticeField> profile;
  std::optional<Spectrum> spectrum;

  bool ok() const { return failure.empty(); }
};

// distances: the equal inter-pulse distance N_i for each row (even, >= 6).
DecayStudy run_decay_study(double omega, double d, std::string_view signs, std::span<const int> distances,
                           const NewtonSettings& s = {});

struct SweepPair {
  TaggedEigenvalue predicted;
  TaggedEigenvalue computed;
  double relative_error = 0.0;
  std::optional<TaggedEigenvalue> closed_form;
  std::optional<double> closed_form_relative_error;
};

struct SweepRow {
  double d = 0.0;
  std::vector<double> b;
  double M = 0.0;
  std::vector<double> mu;
  std::vector<SweepPair> pairs;
  std::string error;
};

struct ErrorSweep {
  double omega = 0.0;
  PulseSpec spec;
  int half_width = 0;
  std::string closed_form;  // which corollary supplied closed_form values, or "none"
  std::vector<SweepRow> rows;
};

// d from d_min to d_max (inclusive, within rounding) in steps of d_step.
std::vector<double> make_grid(double d_min, double d_max, double d_step);

ErrorSweep run_error_sweep(double omega, const PulseSpec& spec, std::span<const double> d_grid,
                           const NewtonSettings& s = {});

std::string decay_csv(const DecayStudy& study);
std::string sweep_csv(const ErrorSweep& sweep);
std::string spectrum_csv(const Spectrum& s);

Json decay_json(const DecayStudy& study);
Json sweep_json(const ErrorSweep& sweep);

std::string profile_svg(const LatticeField& q, const std::string& title);
std::string spectrum_svg(const Spectrum& s, const std::string& title);

// Write CSV, JSON and SVG views; returns the files written.
std::vector<std::filesystem::path> emit_outputs(const DecayStudy& study, const std::filesystem::path& out_dir);
std::vector<std::filesystem::path> emit_outputs(const ErrorSweep& sweep, const std::filesystem::path& out_dir);

}  // namespace dnls
