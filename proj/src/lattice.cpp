#include "dnls/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dnls {

Problem::Problem(double omega_, double d_, int half_width_)
    : omega(omega_), d(d_), half_width(half_width_) {
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw std::invalid_argument("omega must be positive, got " + std::to_string(omega));
  if (!(d >= 0.0) || !std::isfinite(d))
    throw std::invalid_argument("coupling d must be nonnegative, got " + std::to_string(d));
  if (half_width < 1)
    throw std::invalid_argument("half_width must be >= 1, got " + std::to_string(half_width));
}

LatticeField::LatticeField(const Problem& p) : problem_(p), values_(p.size(), 0.0) {}

LatticeField::LatticeField(const Problem& p, std::vector<double> values)
    : problem_(p), values_(std::move(values)) {
  if (values_.size() != p.size())
    throw std::invalid_argument("field has " + std::to_string(values_.size()) +
                                " values, lattice needs " + std::to_string(p.size()));
  for (double x : values_)
    if (!std::isfinite(x)) throw std::invalid_argument("field entries must be finite");
}

LatticeField LatticeField::with_problem(const Problem& p) const {
  if (p.half_width != half_width())
    throw std::invalid_argument("with_problem cannot change the lattice size");
  LatticeField out = *this;
  out.problem_ = p;
  return out;
}

double LatticeField::sup_norm() const {
  double m = 0.0;
  for (double x : values_) m = std::max(m, std::abs(x));
  return m;
}

ComplexField::ComplexField(LatticeField v_, LatticeField w_) : v(std::move(v_)), w(std::move(w_)) {
  if (v.half_width() != w.half_width())
    throw std::invalid_argument("real and imaginary parts live on different lattices");
}

ComplexField ComplexField::from_real(const LatticeField& q) {
  return {q, LatticeField(q.problem())};
}

LatticeField residual(const LatticeField& q, const Problem& p) {
  LatticeField r(p);
  const int L = p.half_width;
  for (int n = -L; n <= L; ++n) {
    const double qn = q.at(n);
    r[n] = p.d * (q.at(n + 1) - 2.0 * qn + q.at(n - 1)) - p.omega * qn + qn * qn * qn;
  }
  return r;
}

SymTridiagonal jacobian(const LatticeField& q, const Problem& p) {
  const std::size_t n = p.size();
  SymTridiagonal j;
  j.diag.resize(n);
  j.off.assign(n - 1, p.d);
  const int L = p.half_width;
  for (int k = -L; k <= L; ++k) {
    const double qk = q.at(k);
    j.diag[static_cast<std::size_t>(k + L)] = -2.0 * p.d - p.omega + 3.0 * qk * qk;
  }
  return j;
}

double power(const ComplexField& u) {
  double s = 0.0;
  const int L = u.v.half_width();
  for (int n = -L; n <= L; ++n) s += u.v[n] * u.v[n] + u.w[n] * u.w[n];
  return 0.5 * s;
}

double power(const LatticeField& q) { return power(ComplexField::from_real(q)); }

double hamiltonian(const ComplexField& u, const Problem& p) {
  const int L = u.v.half_width();
  double h = 0.0;
  for (int n = -L; n <= L + 1; ++n) {
    const double dv = u.v.at(n) - u.v.at(n - 1);
    const double dw = u.w.at(n) - u.w.at(n - 1);
    const double rho = u.v.at(n) * u.v.at(n) + u.w.at(n) * u.w.at(n);
    h += 0.5 * p.d * (dv * dv + dw * dw) - 0.25 * rho * rho;
  }
  return -h;
}

std::vector<double> density_E(const ComplexField& u, const Problem& p) {
  const int L = u.v.half_width();
  std::vector<double> e;
  e.reserve(u.v.size());
  for (int n = -L; n <= L; ++n)
    e.push_back(2.0 * p.d * (u.v.at(n) * u.w.at(n - 1) - u.v.at(n - 1) * u.w.at(n)));
  return e;
}

ComplexField rotate(const ComplexField& u, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  LatticeField v(u.v.problem()), w(u.w.problem());
  const int L = u.v.half_width();
  for (int n = -L; n <= L; ++n) {
    v[n] = c * u.v[n] + s * u.w[n];
    w[n] = -s * u.v[n] + c * u.w[n];
  }
  return {v, w};
}

}  // namespace dnls
