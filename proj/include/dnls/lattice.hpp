#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dnls/tridiagonal.hpp"

namespace dnls {

// A DNLS instance on the truncated lattice [-L, L] with zero-Dirichlet
// boundaries at +-(L+1).
struct Problem {
  double omega = 2.0;
  double d = 0.0;
  int half_width = 30;

  Problem() = default;
  Problem(double omega_, double d_, int half_width_);

  std::size_t size() const { return static_cast<std::size_t>(2 * half_width + 1); }
  Problem with_d(double d_) const { return {omega, d_, half_width}; }
  Problem with_omega(double omega_) const { return {omega_, d, half_width}; }

  bool operator==(const Problem&) const = default;
};

// Real field indexed by n in [-L, L]. Reads outside the lattice return 0.
class LatticeField {
 public:
  LatticeField() = default;
  explicit LatticeField(const Problem& p);
  LatticeField(const Problem& p, std::vector<double> values);

  const Problem& problem() const { return problem_; }
  int half_width() const { return problem_.half_width; }
  std::size_t size() const { return values_.size(); }

  double at(int n) const {
    return (n < -half_width() || n > half_width()) ? 0.0 : values_[index(n)];
  }
  double& operator[](int n) { return values_[index(n)]; }
  double operator[](int n) const { return values_[index(n)]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  // Same values, different parameters on the same lattice (used when a
  // continuation step moves d or omega).
  LatticeField with_problem(const Problem& p) const;

  double sup_norm() const;

 private:
  std::size_t index(int n) const { return static_cast<std::size_t>(n + half_width()); }

  Problem problem_;
  std::vector<double> values_;
};

struct ComplexField {
  LatticeField v;
  LatticeField w;

  ComplexField() = default;
  ComplexField(LatticeField v_, LatticeField w_);
  // Real field embedded as (q, 0).
  static ComplexField from_real(const LatticeField& q);
};

// d (q_{n+1} - 2 q_n + q_{n-1}) - omega q_n + q_n^3
LatticeField residual(const LatticeField& q, const Problem& p);

// Derivative of residual: diagonal -2d - omega + 3 q_n^2, off-diagonal d.
SymTridiagonal jacobian(const LatticeField& q, const Problem& p);

// Q = 1/2 sum (v_n^2 + w_n^2)
double power(const ComplexField& u);
double power(const LatticeField& q);

// H = -sum [ d/2 (v_n - v_{n-1})^2 + d/2 (w_n - w_{n-1})^2 - 1/4 (v_n^2 + w_n^2)^2 ]
// The sum runs over n in [-L, L+1] so both Dirichlet edges contribute.
double hamiltonian(const ComplexField& u, const Problem& p);

// E_n = 2d (v_n w_{n-1} - v_{n-1} w_n) for n in [-L, L].
std::vector<double> density_E(const ComplexField& u, const Problem& p);

// Pointwise R(theta) = [[cos, sin], [-sin, cos]].
ComplexField rotate(const ComplexField& u, double theta);

}  // namespace dnls
