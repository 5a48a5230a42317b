#include "dnls/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dnls/error.hpp"

namespace dnls {

double spectral_ratio(double omega, double d) {
  if (!(omega > 0.0)) throw std::invalid_argument("spectral_ratio: omega must be positive");
  if (!(d >= 0.0)) throw std::invalid_argument("spectral_ratio: d must be nonnegative");
  if (d == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 + omega / (2.0 * d) * (1.0 + std::sqrt(1.0 + 4.0 * d / omega));
}

double tail_overlap_b(const LatticeField& q, int distance) {
  if (distance < 2) throw std::invalid_argument("tail_overlap_b: distance must be >= 2");
  const int np = PulseSpec::split_plus(distance);
  const int nm = PulseSpec::split_minus(distance);
  return q.at(np) * q.at(nm + 1) - q.at(np - 1) * q.at(nm);
}

double melnikov_M(const LatticeField& q, const LatticeField& dq_domega) {
  if (q.size() != dq_domega.size()) throw std::invalid_argument("melnikov_M: lattice mismatch");
  double s = 0.0;
  const auto a = q.values();
  const auto b = dq_domega.values();
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

SymTridiagonal interaction_matrix(std::span<const double> b, std::span<const Phase> phases) {
  if (b.size() != phases.size()) throw std::invalid_argument("interaction_matrix: need one phase per b");
  const std::size_t m = b.size() + 1;
  SymTridiagonal A;
  A.diag.assign(m, 0.0);
  A.off.assign(m - 1, 0.0);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double c = cos_of(phases[i]) * b[i];
    A.off[i] = c;
    A.diag[i] -= c;
    A.diag[i + 1] -= c;
  }
  return A;
}

std::vector<double> nonzero_eigenvalues(const SymTridiagonal& A) {
  auto mu = eig_symmetric_tridiagonal(A);
  if (mu.empty()) return mu;
  auto it = std::min_element(mu.begin(), mu.end(),
                             [](double a, double b) { return std::abs(a) < std::abs(b); });
  mu.erase(it);
  return mu;
}

std::vector<TaggedEigenvalue> predict_lambdas(std::span<const double> mu, double M, double d) {
  if (!(M > 0.0))
    throw Error(ErrorKind::MelnikovNonpositive, "Melnikov sum M = " + std::to_string(M) + " is not positive");
  if (!(d > 0.0)) throw std::invalid_argument("predict_lambdas: d must be positive");
  std::vector<TaggedEigenvalue> out;
  out.reserve(mu.size());
  for (double m : mu) {
    if (m == 0.0) throw std::invalid_argument("predict_lambdas: mu_j must be nonzero");
    out.push_back({std::sqrt(std::abs(d * m / M)), m > 0.0 ? Axis::Real : Axis::Imaginary});
  }
  std::sort(out.begin(), out.end(), pair_order);
  return out;
}

std::pair<TaggedEigenvalue, TaggedEigenvalue> three_pulse_closed_form(double b1, double b2,
                                                                      std::pair<Phase, Phase> phases,
                                                                      double M, double d) {
  if (!(M > 0.0))
    throw Error(ErrorKind::MelnikovNonpositive, "Melnikov sum M = " + std::to_string(M) + " is not positive");
  const double c1 = cos_of(phases.first), c2 = cos_of(phases.second);
  const double centre = -b1 * c1 - b2 * c2;
  const double root = std::sqrt(b1 * b1 + b2 * b2 - b1 * b2 * c1 * c2);
  auto tag = [&](double mu) {
    return TaggedEigenvalue{std::sqrt(d / M) * std::sqrt(std::abs(mu)), mu > 0.0 ? Axis::Real : Axis::Imaginary};
  };
  auto x = tag(centre + root), y = tag(centre - root);
  if (pair_order(y, x)) std::swap(x, y);
  return {x, y};
}

std::pair<double, double> three_pulse_leading_magnitudes(double b1, double b2, double M, double d) {
  return {std::sqrt(2.0 * std::abs(b1) * d / M), std::sqrt(3.0 * std::abs(b2) * d / (2.0 * M))};
}

std::vector<double> chain_closed_form(int m, double b, Phase dtheta) {
  if (m < 2) throw std::invalid_argument("chain_closed_form: m must be >= 2");
  std::vector<double> mu;
  for (int j = 1; j < m; ++j)
    mu.push_back(2.0 * b * (std::cos(std::numbers::pi * j / m) - 1.0) * cos_of(dtheta));
  std::sort(mu.begin(), mu.end());
  return mu;
}

TheoryPrediction predict_from_pulse(const PulseSpec& spec, const LatticeField& q, const LatticeField& dq) {
  const Problem& p = q.problem();
  TheoryPrediction t;
  t.omega = p.omega;
  t.d = p.d;
  t.r = spectral_ratio(p.omega, p.d);
  for (int n : spec.distances()) t.b.push_back(tail_overlap_b(q, n));
  t.M = melnikov_M(q, dq);
  t.A = interaction_matrix(t.b, spec.phases());
  t.mu = nonzero_eigenvalues(t.A);
  t.lambda = predict_lambdas(t.mu, t.M, p.d);
  return t;
}

TheoryPrediction predict(const PulseSpec& spec, double omega, double d, const NewtonSettings& s,
                         int half_width) {
  if (half_width <= 0) half_width = default_half_width(spec);
  const Problem p(omega, d, half_width);
  const PulseSpec single({}, {}, 0);
  const LatticeField q = continue_in_d(seed_anticontinuum(single, omega, p), omega, d, s).final_field();
  const LatticeField dq = omega_derivative(q, p, 0.0, s);
  return predict_from_pulse(spec, q, dq);
}

}  // namespace dnls
