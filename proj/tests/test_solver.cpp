#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dnls/lattice.hpp"
#include "dnls/multipulse.hpp"
#include "dnls/solver.hpp"
#include "dnls/theory.hpp"
#include "oracles.hpp"

using namespace dnls;

namespace {

LatticeField onsite_seed(double omega, int L) {
  LatticeField q(Problem(omega, 0.0, L));
  q[0] = std::sqrt(omega);
  return q;
}

bool even(const LatticeField& q, double tol) {
  for (int n = 1; n <= q.half_width(); ++n)
    if (std::abs(q[n] - q[-n]) > tol) return false;
  return true;
}

bool positive_unimodal(const LatticeField& q) {
  for (int n = 0; n < q.half_width(); ++n)
    if (!(q[n] > q[n + 1] && q[n + 1] >= 0.0 && q[-n] > q[-n - 1] && q[-n - 1] >= 0.0)) return false;
  return true;
}

}  // namespace

TEST_CASE("settings validation") {
  NewtonSettings s;
  s.tol = 0.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = {};
  s.max_iter = 0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("newton examples") {
  SUBCASE("exact seed returns unchanged") {
    const LatticeField seed = onsite_seed(2.0, 20);
    const auto r = newton_solve(seed, seed.problem());
    CHECK(r.iterations <= 1);
    for (int n = -20; n <= 20; ++n) CHECK(r.solution[n] == seed[n]);
  }
  SUBCASE("small coupling from the on-site seed") {
    const Problem p(2.0, 0.05, 20);
    const auto r = newton_solve(onsite_seed(2.0, 20).with_problem(p), p);
    CHECK(residual(r.solution, p).sup_norm() <= 1e-12);
    CHECK(positive_unimodal(r.solution));
    CHECK(even(r.solution, 1e-14));
  }
  SUBCASE("zero seed") {
    const Problem p(2.0, 0.05, 20);
    const auto r = newton_solve(LatticeField(p), p);
    CHECK(r.solution.sup_norm() == 0.0);
  }
  SUBCASE("quadratic convergence") {
    const Problem p(2.0, 0.3, 20);
    const auto r = newton_solve(onsite_seed(2.0, 20).with_problem(p), p);
    const auto& h = r.residual_history;
    REQUIRE(h.size() >= 3);
    // Only steps whose input residual is still well above round-off are informative.
    int checked = 0;
    for (std::size_t k = 0; k + 1 < h.size(); ++k) {
      if (h[k] < 1e-6 || h[k] > 1e-1) continue;
      CHECK(h[k + 1] <= 10.0 * h[k] * h[k]);
      ++checked;
    }
    CHECK(checked >= 1);
  }
}

TEST_CASE("continuation examples") {
  SUBCASE("d_target = 0 keeps the seed") {
    const auto path = continue_in_d(onsite_seed(2.0, 10), 2.0, 0.0);
    CHECK(path.samples.size() == 1);
    CHECK(path.final_field()[0] == std::sqrt(2.0));
  }
  SUBCASE("single pulse to d = 1") {
    const auto path = continue_in_d(onsite_seed(2.0, 30), 2.0, 1.0);
    const LatticeField& q = path.final_field();
    CHECK(q.problem().d == 1.0);
    CHECK(q[0] == q.sup_norm());
    CHECK(even(q, 1e-10));
    for (std::size_t k = 1; k < path.samples.size(); ++k) {
      CHECK(path.samples[k].d > path.samples[k - 1].d);
      const auto& f = path.samples[k].field;
      CHECK(residual(f, f.problem()).sup_norm() <= 1e-12);
      CHECK(even(f, 1e-10));
    }
  }
  SUBCASE("two-site seed") {
    LatticeField seed(Problem(2.0, 0.0, 30));
    seed[0] = seed[10] = std::sqrt(2.0);
    const LatticeField q = continue_in_d(seed, 2.0, 1.0).final_field();
    int maxima = 0;
    for (int n = -29; n <= 29; ++n)
      if (std::abs(q[n]) > 1e-6 * q.sup_norm() && std::abs(q[n]) > std::abs(q[n - 1]) &&
          std::abs(q[n]) > std::abs(q[n + 1]))
        ++maxima;
    CHECK(maxima == 2);
  }
  SUBCASE("seed must solve d = 0") {
    LatticeField seed(Problem(2.0, 0.0, 10));
    seed[0] = 1.0;
    CHECK_THROWS(continue_in_d(seed, 2.0, 0.5));
  }
  SUBCASE("bit-identical reruns") {
    const auto a = continue_in_d(onsite_seed(2.0, 25), 2.0, 0.8);
    const auto b = continue_in_d(onsite_seed(2.0, 25), 2.0, 0.8);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t k = 0; k < a.samples.size(); ++k) {
      CHECK(a.samples[k].d == b.samples[k].d);
      for (int n = -25; n <= 25; ++n) CHECK(a.samples[k].field[n] == b.samples[k].field[n]);
    }
  }
}

TEST_CASE("tail ratio approaches the inverse spectral ratio") {
  for (double d : {0.5, 1.0}) {
    const LatticeField q = continue_in_d(onsite_seed(2.0, 40), 2.0, d).final_field();
    const double expected = 1.0 / oracle::transfer_ratio(2.0, d);
    for (int n = 6; n <= 10; ++n) CHECK(std::abs(q[n + 1] / q[n] - expected) <= 0.01 * expected);
  }
}

TEST_CASE("omega derivative") {
  SUBCASE("anti-continuum closed form") {
    const LatticeField q = onsite_seed(2.0, 15);
    const LatticeField dq = omega_derivative(q, q.problem());
    for (int n = -15; n <= 15; ++n) {
      const double expected = n == 0 ? 1.0 / (2.0 * std::sqrt(2.0)) : 0.0;
      CHECK(std::abs(dq[n] - expected) <= 1e-6);
    }
  }
  SUBCASE("Melnikov sum positive at d = 1") {
    const LatticeField q = continue_in_d(onsite_seed(2.0, 30), 2.0, 1.0).final_field();
    const LatticeField dq = omega_derivative(q, q.problem());
    double M = 0.0;
    for (int n = -30; n <= 30; ++n) M += q[n] * dq[n];
    CHECK(M > 0.0);
  }
  SUBCASE("Richardson: halving eps changes the result at O(eps^2)") {
    const LatticeField q = continue_in_d(onsite_seed(2.0, 30), 2.0, 1.0).final_field();
    const LatticeField a = omega_derivative(q, q.problem(), 2e-4);
    const LatticeField b = omega_derivative(q, q.problem(), 1e-4);
    double diff = 0.0;
    for (int n = -30; n <= 30; ++n) diff = std::max(diff, std::abs(a[n] - b[n]));
    // Centered difference error ~ C eps^2 with C of order the third derivative.
    CHECK(diff / b.sup_norm() <= 1e-6);
  }
}
