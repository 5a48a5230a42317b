#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dnls/error.hpp"
#include "dnls/multipulse.hpp"
#include "dnls/serialize.hpp"
#include "dnls/solver.hpp"
#include "oracles.hpp"

using namespace dnls;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no dnls::Error thrown");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("spec parsing and derived quantities") {
  const PulseSpec s = PulseSpec::parse("+-+:8,8");
  CHECK(s.m() == 3);
  CHECK(s.distances() == std::vector<int>{8, 8});
  CHECK(s.phases() == std::vector<Phase>{Phase::Pi, Phase::Pi});
  CHECK(s.signs() == std::vector<int>{1, -1, 1});
  CHECK(s.k_zero() == 0);
  CHECK(s.k_pi() == 2);
  CHECK(s.extent() == 16);
  CHECK(s.centers() == std::vector<int>{-8, 0, 8});
  CHECK(s.half_min_distance() == 4.0);
  CHECK(s.pattern() == "+-+:8,8");
  CHECK(PulseSpec::parse(s.pattern()) == s);

  const PulseSpec u = PulseSpec::parse("++-:8,6");
  CHECK(u.phases() == std::vector<Phase>{Phase::Zero, Phase::Pi});
  CHECK(u.half_min_distance() == 3.0);
  CHECK(PulseSpec::split_plus(7) == 3);
  CHECK(PulseSpec::split_minus(7) == 4);

  CHECK(PulseSpec().m() == 1);
  CHECK(PulseSpec::parse("+").m() == 1);
  CHECK_THROWS(PulseSpec::parse("+-:8,8"));
  CHECK_THROWS(PulseSpec::parse("+x:8"));
  CHECK_THROWS(PulseSpec({1}, {Phase::Zero}));
}

TEST_CASE("anti-continuum seeds") {
  SUBCASE("single pulse") {
    const Problem p(2.0, 0.0, 20);
    const LatticeField q = seed_anticontinuum(PulseSpec{}, 2.0, p);
    for (int n = -20; n <= 20; ++n) CHECK(q[n] == (n == 0 ? std::sqrt(2.0) : 0.0));
  }
  SUBCASE("out-of-phase pair") {
    const PulseSpec s({10}, {Phase::Pi}, 0);
    const LatticeField q = seed_anticontinuum(s, 2.0, Problem(2.0, 0.0, 30));
    CHECK(q[0] == std::sqrt(2.0));
    CHECK(q[10] == -std::sqrt(2.0));
  }
  SUBCASE("cumulative signs") {
    const PulseSpec s({8, 8}, {Phase::Pi, Phase::Pi});
    const LatticeField q = seed_anticontinuum(s, 2.0, Problem(2.0, 0.0, 30));
    CHECK(q[-8] > 0);
    CHECK(q[0] < 0);
    CHECK(q[8] > 0);
  }
  SUBCASE("does not fit") {
    const PulseSpec s({20}, {Phase::Zero});
    CHECK(kind_of([&] { seed_anticontinuum(s, 2.0, Problem(2.0, 0.0, 15)); }) == ErrorKind::DoesNotFit);
  }
}

TEST_CASE("build and measure round trip") {
  for (const char* pattern : {"++:10", "+-:10", "+-+:8,8", "++-:8,6", "+--+:7,9,8"}) {
    const PulseSpec s = PulseSpec::parse(pattern);
    const LatticeField q = build_multipulse(s, 2.0, 1.0);
    CHECK(residual(q, q.problem()).sup_norm() <= 1e-10);
    CHECK(measure_spec(q) == s);
  }
}

TEST_CASE("build at d = 0 returns the seed") {
  const PulseSpec s = PulseSpec::parse("+-+:8,8");
  const LatticeField q = build_multipulse(s, 2.0, 0.0);
  const LatticeField seed = seed_anticontinuum(s, 2.0, q.problem());
  for (int n = -q.half_width(); n <= q.half_width(); ++n) CHECK(q[n] == seed[n]);
}

TEST_CASE("measure_spec edge cases") {
  const Problem p(2.0, 0.0, 10);
  CHECK(measure_spec(seed_anticontinuum(PulseSpec{}, 2.0, p)).m() == 1);
  CHECK(kind_of([&] { measure_spec(LatticeField(p)); }) == ErrorKind::AmbiguousStructure);
}

TEST_CASE("symmetric three-pulse is even about its middle") {
  const LatticeField q = build_multipulse(PulseSpec({8, 8}, {Phase::Pi, Phase::Pi}), 2.0, 1.0);
  for (int n = 1; n <= q.half_width(); ++n) CHECK(std::abs(q[n] - q[-n]) <= 1e-8);
}

TEST_CASE("piecewise closeness to shifted single pulses") {
  // Each window of half-width N around a center matches the signed single
  // pulse to within C r^{-N}; check the ratio is stable as N grows.
  const double omega = 2.0, d = 1.0;
  const double r = oracle::transfer_ratio(omega, d);
  const LatticeField single = build_multipulse(PulseSpec{}, omega, d, {}, 60);
  std::vector<double> scaled;
  for (int dist : {8, 10, 12, 14}) {
    const PulseSpec s({dist, dist}, {Phase::Zero, Phase::Pi});
    const LatticeField q = build_multipulse(s, omega, d, {}, 60);
    const int window = dist / 2;
    double err = 0.0;
    const auto centers = s.centers();
    const auto signs = s.signs();
    for (std::size_t k = 0; k < centers.size(); ++k)
      for (int j = -window; j <= window; ++j)
        err = std::max(err, std::abs(q[centers[k] + j] - signs[k] * single[j]));
    scaled.push_back(err * std::pow(r, window));
  }
  const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
  CHECK(*hi / *lo <= 3.0);
}

TEST_CASE("spec JSON round trip") {
  const PulseSpec s = PulseSpec::parse("++-:8,6");
  CHECK(spec_from_json(Json::parse(to_json(s).dump())) == s);
}
