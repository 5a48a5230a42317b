#pragma once

#include <optional>
#include <vector>

#include "dnls/error.hpp"
#include "dnls/lattice.hpp"

namespace dnls {

struct NewtonSettings {
  double tol = 1e-12;             // sup-norm residual target
  int max_iter = 50;
  double min_step_damping = 1.0 / 64.0;

  void validate() const;
};

struct NewtonResult {
  LatticeField solution;
  int iterations = 0;
  // Sup-norm residual before each iteration and after the last one.
  std::vector<double> residual_history;
};

// Damped Newton on residual(q) = 0 with tridiagonal linear solves.
// Throws Error(NoConvergence) or Error(SingularJacobian).
NewtonResult newton_solve(const LatticeField& seed, const Problem& p, const NewtonSettings& s = {});

struct StepPolicy {
  double initial_step = 0.01;
  double min_step = 1e-6;
  double max_step = 0.1;
  double growth = 1.5;
  int easy_iterations = 4;  // a solve this short counts as "easy"
};

struct ContinuationSample {
  double d = 0.0;
  LatticeField field;
};

struct ContinuationPath {
  std::vector<ContinuationSample> samples;
  StepPolicy policy;

  const LatticeField& final_field() const { return samples.back().field; }
};

// Thrown when continuation cannot pass some d; carries the last converged sample.
class StepFloorReached : public Error {
 public:
  StepFloorReached(const std::string& what, ContinuationSample last)
      : Error(ErrorKind::StepFloorReached, what), last_(std::move(last)) {}
  const ContinuationSample& last_good() const { return last_; }

 private:
  ContinuationSample last_;
};

// Natural-parameter continuation in d from the anti-continuum limit. The seed
// must be an exact d = 0 solution on its lattice (entries in {0, +-sqrt(omega)}).
ContinuationPath continue_in_d(const LatticeField& seed_at_zero, double omega, double d_target,
                               const NewtonSettings& s = {}, const StepPolicy& policy = {});

// Sites of |q| local maxima above 1e-6 max|q|, with signs; these define the
// anti-continuum configuration a converged on-site field was continued from.
LatticeField anticontinuum_pattern(const LatticeField& q, double omega);

// Centered difference (q(omega+eps) - q(omega-eps)) / (2 eps), both sides by
// fresh continuation from the anti-continuum limit to the same d.
// eps <= 0 selects the default 1e-4 omega.
LatticeField omega_derivative(const LatticeField& q, const Problem& p, double eps = 0.0,
                              const NewtonSettings& s = {});

}  // namespace dnls
