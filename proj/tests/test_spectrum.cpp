#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dnls/error.hpp"
#include "dnls/harness.hpp"
#include "dnls/multipulse.hpp"
#include "dnls/serialize.hpp"
#include "dnls/solver.hpp"
#include "dnls/spectrum.hpp"
#include "oracles.hpp"

using namespace dnls;
using cd = std::complex<double>;

namespace {

LatticeField pulse(double d, int L = 30) { return build_multipulse(PulseSpec{}, 2.0, d, {}, L); }

Spectrum spectrum_of(const LatticeField& q, int m) {
  return classify(eigensolve(assemble(q, q.problem())), m, q.problem());
}

}  // namespace

TEST_CASE("assembly") {
  SUBCASE("zero field blocks") {
    const Problem p(2.0, 1.0, 4);
    const StabilityMatrix a = assemble(LatticeField(p), p);
    for (double x : a.l_plus().diag) CHECK(x == -4.0);
    for (double x : a.l_plus().off) CHECK(x == 1.0);
    CHECK(a.l_plus().diag == a.l_minus().diag);
    CHECK(a.l_plus().off == a.l_minus().off);
    CHECK(a.size() == 18);
  }
  SUBCASE("dense form agrees with apply") {
    const LatticeField q = pulse(0.6, 12);
    const StabilityMatrix a = assemble(q, q.problem());
    std::vector<double> x(a.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(1.0 + i);
    const auto y1 = a.apply(x), y2 = a.dense().apply(x);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-14));
  }
  SUBCASE("kernel relations of a converged pulse") {
    const LatticeField q = pulse(1.0);
    const Problem& p = q.problem();
    const StabilityMatrix a = assemble(q, p);
    const std::size_t n = q.size();

    std::vector<double> x(2 * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) x[n + i] = q.values()[i];
    double worst = 0.0;
    for (double v : a.apply(x)) worst = std::max(worst, std::abs(v));
    CHECK(worst <= 1e-9);

    // L_+ d_omega q = q, so the matrix maps (d_omega q, 0) to R'(0) (q, 0) = (0, -q).
    const LatticeField dq = omega_derivative(q, p);
    std::fill(x.begin(), x.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) x[i] = dq.values()[i];
    const auto y = a.apply(x);
    worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(y[i]));
      worst = std::max(worst, std::abs(y[n + i] + q.values()[i]));
    }
    CHECK(worst <= 1e-5);
  }
}

TEST_CASE("zero-field band against the Fourier oracle") {
  const Problem p(2.0, 1.0, 50);
  const auto eigs = eigensolve(assemble(LatticeField(p), p));
  CHECK(eigs.size() == 2 * p.size());
  for (const cd& z : eigs) {
    CHECK(std::abs(z.real()) <= 1e-8);
    CHECK(std::abs(z.imag()) >= 2.0 - 1e-8);
    CHECK(std::abs(z.imag()) <= 6.0 + 1e-8);
  }
  CHECK(oracle::multiset_distance(eigs, oracle::zero_field_band(2.0, 1.0, 50)) <= 1e-8);
}

TEST_CASE("single pulse spectrum") {
  const LatticeField q = pulse(1.0);
  const auto eigs = eigensolve(assemble(q, q.problem()));
  CHECK(eigs.size() == 2 * q.size());
  int small = 0, below_one = 0;
  for (const cd& z : eigs) {
    if (std::abs(z) <= 1e-6) ++small;
    else if (std::abs(z) < 1.0) ++below_one;
  }
  CHECK(small == 2);
  CHECK(below_one == 0);
  CHECK(quartet_defect(eigs) <= 1e-8);

  const Spectrum s = classify(eigs, 1, q.problem());
  CHECK(s.count(EigenClass::ZeroMode) == 2);
  CHECK(s.count(EigenClass::Interaction) == 0);
  CHECK(s.count(EigenClass::Band) + s.count(EigenClass::Other) == eigs.size() - 2);
}

TEST_CASE("eigenvector residuals of the stability matrix") {
  const LatticeField q = build_multipulse(PulseSpec::parse("+-:10"), 2.0, 1.0, {}, 25);
  const DenseMatrix a = assemble(q, q.problem()).dense();
  for (const cd& z : eigensolve(assemble(q, q.problem()))) {
    if (std::abs(z) <= 1e-6) continue;  // defective kernel block
    const auto v = inverse_iteration(a, z);
    CHECK(eigen_residual(a, z, v) <= 1e-8);
  }
}

TEST_CASE("classification examples") {
  SUBCASE("out-of-phase pair is imaginary") {
    const Spectrum s = spectrum_of(build_multipulse(PulseSpec::parse("+-:10"), 2.0, 1.0), 2);
    CHECK(s.count(EigenClass::ZeroMode) == 2);
    CHECK(s.count(EigenClass::Interaction) == 2);
    CHECK(s.imaginary_pairs() == 1);
    CHECK(s.real_pairs() == 0);
  }
  SUBCASE("in-phase triple has two real pairs") {
    const Spectrum s = spectrum_of(build_multipulse(PulseSpec::parse("+++:10,10"), 2.0, 1.0), 3);
    CHECK(s.count(EigenClass::Interaction) == 4);
    CHECK(s.real_pairs() == 2);
    const auto pairs = s.interaction_pairs();
    CHECK(pairs[1].magnitude / pairs[0].magnitude == doctest::Approx(std::sqrt(3.0)).epsilon(1e-3));
  }
  SUBCASE("wrong m is ambiguous") {
    const LatticeField q = build_multipulse(PulseSpec::parse("++:10"), 2.0, 1.0);
    try {
      spectrum_of(q, 4);
      FAIL("expected ClassificationAmbiguous");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ClassificationAmbiguous);
    }
  }
}

TEST_CASE("quartet symmetry of multi-pulse spectra") {
  for (const char* pattern : {"++:10", "+-+:8,8", "++-:8,6", "+-++:8,8,8"}) {
    const LatticeField q = build_multipulse(PulseSpec::parse(pattern), 2.0, 1.0);
    CHECK(quartet_defect(eigensolve(assemble(q, q.problem()))) <= 1e-8);
  }
}

TEST_CASE("interaction eigenvalues are stable under truncation") {
  const PulseSpec spec = PulseSpec::parse("+-+:8,8");
  const int L = study_half_width(spec);
  const auto a = compute_interaction_pairs(spec, 2.0, 1.0, {}, L).pairs;
  const auto b = compute_interaction_pairs(spec, 2.0, 1.0, {}, L + 20).pairs;
  REQUIRE(a.size() == b.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    CHECK(a[j].axis == b[j].axis);
    CHECK(std::abs(a[j].magnitude - b[j].magnitude) <= 1e-8 * b[j].magnitude);
  }
}

TEST_CASE("spectrum JSON round trip") {
  const Spectrum s = spectrum_of(build_multipulse(PulseSpec::parse("+-:10"), 2.0, 0.8), 2);
  const Spectrum back = spectrum_from_json(Json::parse(to_json(s).dump()));
  CHECK(back.eigenvalues == s.eigenvalues);
  CHECK(back.classes == s.classes);
  CHECK(back.m == s.m);
  CHECK(back.omega == s.omega);
  CHECK(back.d == s.d);
}
