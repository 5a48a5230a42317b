#include "dnls/solver.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <string>

namespace dnls {

void NewtonSettings::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("NewtonSettings.tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("NewtonSettings.max_iter must be >= 1");
  if (!(min_step_damping > 0.0 && min_step_damping <= 1.0))
    throw std::invalid_argument("NewtonSettings.min_step_damping must lie in (0, 1]");
}

NewtonResult newton_solve(const LatticeField& seed, const Problem& p, const NewtonSettings& s) {
  s.validate();
  if (seed.half_width() != p.half_width)
    throw std::invalid_argument("newton_solve: seed lattice does not match problem");

  NewtonResult out{seed.with_problem(p), 0, {}};
  LatticeField& q = out.solution;
  LatticeField r = residual(q, p);
  double rnorm = r.sup_norm();
  out.residual_history.push_back(rnorm);

  while (rnorm > s.tol) {
    if (out.iterations >= s.max_iter)
      throw Error(ErrorKind::NoConvergence, "max_iter reached with residual " + std::to_string(rnorm));

    std::vector<double> step = solve(jacobian(q, p), r.values());
    double alpha = 1.0;
    for (;;) {
      LatticeField trial = q;
      auto tv = trial.values();
      for (std::size_t i = 0; i < tv.size(); ++i) tv[i] -= alpha * step[i];
      LatticeField tr = residual(trial, p);
      const double tn = tr.sup_norm();
      if (std::isfinite(tn) && (tn < rnorm || tn <= s.tol)) {
        q = std::move(trial);
        r = std::move(tr);
        rnorm = tn;
        break;
      }
      alpha *= 0.5;
      if (alpha < s.min_step_damping)
        throw Error(ErrorKind::NoConvergence,
                    "damping floor hit with residual " + std::to_string(rnorm));
    }
    ++out.iterations;
    out.residual_history.push_back(rnorm);
  }
  return out;
}

ContinuationPath continue_in_d(const LatticeField& seed_at_zero, double omega, double d_target,
                               const NewtonSettings& s, const StepPolicy& policy) {
  if (!(d_target >= 0.0)) throw std::invalid_argument("continue_in_d: d_target must be >= 0");
  const Problem p0(omega, 0.0, seed_at_zero.half_width());
  if (residual(seed_at_zero, p0).sup_norm() > s.tol)
    throw std::invalid_argument("continue_in_d: seed is not an anti-continuum solution");

  ContinuationPath path;
  path.policy = policy;
  path.samples.push_back({0.0, seed_at_zero.with_problem(p0)});

  double d = 0.0;
  double h = policy.initial_step;
  int easy_streak = 0;
  while (d < d_target) {
    const double d_next = std::min(d + h, d_target);
    const Problem pn = p0.with_d(d_next);
    try {
      NewtonResult res = newton_solve(path.samples.back().field, pn, s);
      path.samples.push_back({d_next, std::move(res.solution)});
      d = d_next;
      if (res.iterations <= policy.easy_iterations) {
        if (++easy_streak >= 2) {
          h = std::min(h * policy.growth, policy.max_step);
          easy_streak = 0;
        }
      } else {
        easy_streak = 0;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoConvergence && e.kind() != ErrorKind::SingularJacobian) throw;
      h *= 0.5;
      easy_streak = 0;
      if (h < policy.min_step)
        throw StepFloorReached("continuation stalled beyond d = " + std::to_string(d) + " (" +
                                   e.what() + ")",
                               path.samples.back());
    }
  }
  return path;
}

LatticeField anticontinuum_pattern(const LatticeField& q, double omega) {
  const Problem p(omega, 0.0, q.half_width());
  LatticeField seed(p);
  const double floor = 1e-6 * q.sup_norm();
  const int L = q.half_width();
  for (int n = -L; n <= L; ++n) {
    const double a = std::abs(q[n]);
    if (a <= floor) continue;
    if (a > std::abs(q.at(n - 1)) && a >= std::abs(q.at(n + 1)))
      seed[n] = std::copysign(std::sqrt(omega), q[n]);
  }
  return seed;
}

LatticeField omega_derivative(const LatticeField& q, const Problem& p, double eps,
                              const NewtonSettings& s) {
  if (eps <= 0.0) eps = 1e-4 * p.omega;
  if (eps >= p.omega) throw std::invalid_argument("omega_derivative: eps must be << omega");

  auto side = [&](double omega) {
    return continue_in_d(anticontinuum_pattern(q, omega), omega, p.d, s).final_field();
  };
  auto plus = std::async(std::launch::async, side, p.omega + eps);
  LatticeField minus = side(p.omega - eps);
  LatticeField qp = plus.get();

  LatticeField out(p);
  auto ov = out.values();
  auto pv = qp.values();
  auto mv = minus.values();
  for (std::size_t i = 0; i < ov.size(); ++i) ov[i] = (pv[i] - mv[i]) / (2.0 * eps);
  return out;
}

}  // namespace dnls
