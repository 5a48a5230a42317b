#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dnls/eigen_tag.hpp"
#include "dnls/lattice.hpp"
#include "dnls/multipulse.hpp"
#include "dnls/solver.hpp"
#include "dnls/tridiagonal.hpp"

namespace dnls {

// Analytic side of every comparison for one multi-pulse configuration.
struct TheoryPrediction {
  double omega = 0.0;
  double d = 0.0;
  double r = 0.0;                  // spectral ratio
  std::vector<double> b;           // tail overlaps, one per distance
  double M = 0.0;                  // Melnikov sum
  SymTridiagonal A;                // interaction matrix
  std::vector<double> mu;          // nonzero eigenvalues of A, ascending
  std::vector<TaggedEigenvalue> lambda;  // predicted pairs, pair_order
};

// Larger eigenvalue of the transfer matrix at the zero state:
// r = 1 + omega/(2d) (1 + sqrt(1 + 4d/omega)). Returns +inf for d = 0.
double spectral_ratio(double omega, double d);

// Tail overlap of two on-site pulses a distance N apart, from the single
// pulse q centred at 0:
//   b = q(N+) q(N- + 1) - q(N+ - 1) q(N-),  N+ = floor(N/2), N- = N - N+.
// Negative for a positive, even, strictly unimodal q.
double tail_overlap_b(const LatticeField& q, int distance);

// M = sum q_n d_omega q_n.
double melnikov_M(const LatticeField& q, const LatticeField& dq_domega);

// Higher-order Melnikov sum of the transfer formulation, M / d.
inline double melnikov_M2(double M, double d) { return M / d; }

// m x m symmetric tridiagonal with zero row sums: off-diagonal cos(dtheta_i) b_i,
// diagonal -cos(dtheta_{i-1}) b_{i-1} - cos(dtheta_i) b_i.
SymTridiagonal interaction_matrix(std::span<const double> b, std::span<const Phase> phases);

// Drops the eigenvalue closest to zero (null vector (1, ..., 1)) and returns
// the remaining m-1, ascending.
std::vector<double> nonzero_eigenvalues(const SymTridiagonal& A);

// lambda_j = sqrt(d mu_j / M); Real when mu_j > 0, Imaginary when mu_j < 0.
// Throws Error(MelnikovNonpositive) for M <= 0.
std::vector<TaggedEigenvalue> predict_lambdas(std::span<const double> mu, double M, double d);

// Closed form for three pulses:
//   lambda_{1,2} = sqrt(d/M) (-b1 c1 - b2 c2 +- sqrt(b1^2 + b2^2 - b1 b2 c1 c2))^{1/2}
// with c_i = cos(dtheta_i). Returned in pair_order.
std::pair<TaggedEigenvalue, TaggedEigenvalue> three_pulse_closed_form(double b1, double b2,
                                                                      std::pair<Phase, Phase> phases,
                                                                      double M, double d);

// Leading-order magnitudes sqrt(2|b1| d/M) and sqrt(3|b2| d/(2M)) for
// N1 < N2 < 2 N1 (b1 belongs to the shorter distance).
std::pair<double, double> three_pulse_leading_magnitudes(double b1, double b2, double M, double d);

// Equal-b chain: mu_j = 2b (cos(pi j/m) - 1) cos(dtheta), j = 1..m-1, ascending.
std::vector<double> chain_closed_form(int m, double b, Phase dtheta);

// Full prediction for a configuration: continues the single pulse at omega
// and omega +- eps to d, forms b_i, M, A, mu and lambda.
TheoryPrediction predict(const PulseSpec& spec, double omega, double d, const NewtonSettings& s = {},
                         int half_width = 0);

// Same, from an already computed single pulse and its omega-derivative.
TheoryPrediction predict_from_pulse(const PulseSpec& spec, const LatticeField& q, const LatticeField& dq);

}  // namespace dnls
