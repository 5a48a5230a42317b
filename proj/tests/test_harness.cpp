#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <regex>
#include <sstream>

#include "dnls/error.hpp"
#include "dnls/harness.hpp"
#include "dnls/serialize.hpp"
#include "dnls/theory.hpp"
#include "oracles.hpp"

using namespace dnls;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("dnls_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace

TEST_CASE("linear fit") {
  SUBCASE("exact line") {
    const std::vector<double> x{0, 1, 2, 3, 4}, y{1, 4, 7, 10, 13};
    const auto f = linear_fit(x, y);
    CHECK(f.slope == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(f.intercept == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f.residual_norm <= 1e-14);
  }
  SUBCASE("two points interpolate") {
    const std::vector<double> x{2.0, 5.0}, y{-1.0, 8.0};
    const auto f = linear_fit(x, y);
    CHECK(f.slope == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(f.intercept == doctest::Approx(-7.0).epsilon(1e-14));
    CHECK(f.residual_norm <= 1e-14);
  }
  SUBCASE("random cloud against brute-force minimization") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> x(10), y(10);
      for (int i = 0; i < 10; ++i) {
        x[i] = 3.0 * u(rng);
        y[i] = -0.7 * x[i] + 0.4 + 0.3 * u(rng);
      }
      const auto f = linear_fit(x, y);
      const auto [a, b] = oracle::brute_force_line(x, y, -5.0, 5.0);
      CHECK(std::abs(f.slope - a) <= 1e-9);
      CHECK(std::abs(f.intercept - b) <= 1e-9);
    }
  }
  SUBCASE("degenerate abscissa") {
    const std::vector<double> x{1.0, 1.0, 1.0}, y{0.0, 1.0, 2.0};
    try {
      linear_fit(x, y);
      FAIL("expected DegenerateAbscissa");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DegenerateAbscissa);
    }
  }
}

TEST_CASE("study half width rule") {
  CHECK(study_half_width(PulseSpec::parse("++:10")) == 5 + 40);
  CHECK(study_half_width(PulseSpec::parse("+++:4,4")) == 4 + 30);
}

TEST_CASE("grid construction") {
  const auto g = make_grid(0.05, 1.0, 0.05);
  CHECK(g.size() == 20);
  CHECK(g.front() == 0.05);
  CHECK(g[2] == 0.15);
  CHECK(g.back() == 1.0);
}

TEST_CASE("decay study") {
  SUBCASE("single row fails at study level") {
    const std::vector<int> one{10};
    const DecayStudy s = run_decay_study(2.0, 1.0, "++", one);
    CHECK_FALSE(s.ok());
    CHECK(s.fits.empty());
  }
  SUBCASE("invalid distances rejected") {
    const std::vector<int> odd{8, 9, 10, 12};
    CHECK_THROWS_AS(run_decay_study(2.0, 1.0, "++", odd), std::invalid_argument);
  }
  SUBCASE("plotted points equal CSV values") {
    const std::vector<int> ns{8, 10, 12, 14};
    const DecayStudy s = run_decay_study(2.0, 1.0, "+-", ns);
    REQUIRE(s.ok());
    const fs::path dir = scratch("decay");
    emit_outputs(s, dir);
    const auto csv = lines(read_text(dir / "decay.csv"));
    CHECK(csv.front() == "distance,N,pair,axis,magnitude,log_magnitude,error");
    CHECK(csv.size() == 1 + ns.size());
    const std::string svg = read_text(dir / "decay.svg");
    CHECK(svg.find("<polyline") != std::string::npos);  // regression line
    std::regex point("data-x=\"([^\"]+)\" data-y=\"([^\"]+)\"");
    std::vector<std::pair<std::string, std::string>> plotted;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), point); it != std::sregex_iterator(); ++it)
      plotted.emplace_back((*it)[1], (*it)[2]);
    REQUIRE(plotted.size() == ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const auto cells = split(csv[i + 1]);
      CHECK(plotted[i].first == cells[1]);
      CHECK(plotted[i].second == cells[5]);
    }
  }
}

TEST_CASE("empty outputs") {
  const fs::path dir = scratch("empty");
  DecayStudy study;
  study.signs = "++";
  study.failure = "no rows";
  emit_outputs(study, dir);
  CHECK(read_text(dir / "decay.csv") == "distance,N,pair,axis,magnitude,log_magnitude,error\n");
  const std::string svg = read_text(dir / "decay.svg");
  CHECK(svg.starts_with("<svg"));
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("no data") != std::string::npos);

  ErrorSweep sweep;
  sweep.spec = PulseSpec::parse("++:10");
  emit_outputs(sweep, dir);
  CHECK(lines(read_text(dir / "sweep.csv")).size() == 1);
}

TEST_CASE("error sweep") {
  const PulseSpec spec = PulseSpec::parse("++-:8,6");
  const std::vector<double> grid{0.3, 0.5, 0.7};
  const ErrorSweep sweep = run_error_sweep(2.0, spec, grid);
  REQUIRE(sweep.rows.size() == grid.size());
  CHECK(sweep.closed_form == "three-pulse");

  SUBCASE("one CSV row per (d, pair)") {
    const auto csv = lines(sweep_csv(sweep));
    std::size_t expected = 1;
    for (const auto& row : sweep.rows) expected += row.error.empty() ? row.pairs.size() : 1;
    CHECK(csv.size() == expected);
    CHECK(csv.size() == 1 + 2 * grid.size());
  }
  SUBCASE("stored prediction recomputes exactly from b, M, d") {
    const Json j = Json::parse(sweep_json(sweep).dump());
    for (const auto& row : j.at("rows")) {
      REQUIRE_FALSE(row.contains("error"));
      const auto b = row.at("b").get<std::vector<double>>();
      const auto lambda = predict_lambdas(nonzero_eigenvalues(interaction_matrix(b, spec.phases())),
                                          row.at("M").get<double>(), row.at("d").get<double>());
      const auto& pairs = row.at("pairs");
      REQUIRE(pairs.size() == lambda.size());
      for (std::size_t k = 0; k < lambda.size(); ++k) {
        CHECK(pairs[k].at("predicted").at("magnitude").get<double>() == lambda[k].magnitude);
        CHECK(pairs[k].at("predicted").at("axis").get<std::string>() == to_string(lambda[k].axis));
      }
    }
  }
  SUBCASE("closed form agrees with the generic path") {
    for (const auto& row : sweep.rows)
      for (const auto& p : row.pairs) {
        REQUIRE(p.closed_form.has_value());
        CHECK(std::abs(p.closed_form->magnitude - p.predicted.magnitude) <= 1e-10 * p.predicted.magnitude);
      }
  }
  SUBCASE("failed rows are reported, not dropped") {
    NewtonSettings impossible;
    impossible.tol = 1e-30;
    const ErrorSweep failed = run_error_sweep(2.0, spec, grid, impossible);
    REQUIRE(failed.rows.size() == grid.size());
    for (const auto& row : failed.rows) CHECK_FALSE(row.error.empty());
    const auto csv = lines(sweep_csv(failed));
    CHECK(csv.size() == 1 + grid.size());
    const Json j = sweep_json(failed);
    for (const auto& row : j.at("rows")) CHECK(row.contains("error"));
  }
  SUBCASE("grid outside the supported range is rejected") {
    const std::vector<double> bad{0.5, 50.0};
    CHECK_THROWS_AS(run_error_sweep(2.0, spec, bad), std::invalid_argument);
  }
}

TEST_CASE("outputs are byte-identical across runs") {
  const PulseSpec spec = PulseSpec::parse("+-+:8,8");
  const std::vector<double> grid{0.4, 0.8};
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  emit_outputs(run_error_sweep(2.0, spec, grid), a);
  emit_outputs(run_error_sweep(2.0, spec, grid), b);
  for (const char* f : {"sweep.csv", "sweep.json", "sweep.svg"}) CHECK(read_text(a / f) == read_text(b / f));
}

TEST_CASE("IO errors carry their kind") {
  try {
    read_text("/nonexistent/dir/file.json");
    FAIL("expected Io");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
}
