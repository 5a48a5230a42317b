// dnls: multi-pulse standing waves of the discrete NLS lattice.
//
//   dnls solve    --omega 2 --d 1 [--half-width 30] [--out solution.json]
//   dnls build    --pattern "+-+:8,8" --omega 2 --d 1 [--out solution.json]
//   dnls spectrum --in solution.json [--out spectrum.json]
//   dnls predict  --pattern "++:10" --omega 2 --d 0.5
//   dnls study decay --pattern "++" --omega 2 --d 1 --n-list 8,10,12,14
//   dnls study error-sweep --pattern "+-+:8,8" --omega 2 --d-min 0.05 --d-max 1 --d-step 0.05
//
// Every subcommand takes --out-dir (default ".") and --config FILE.json whose
// keys are long flag names; flags on the command line win over the file.
//
// Exit codes: 0 success, 1 usage or other error, 2 solver non-convergence,
// 3 classification ambiguity, 4 IO error.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "dnls/error.hpp"
#include "dnls/harness.hpp"
#include "dnls/multipulse.hpp"
#include "dnls/serialize.hpp"
#include "dnls/solver.hpp"
#include "dnls/spectrum.hpp"
#include "dnls/theory.hpp"

namespace fs = std::filesystem;
using namespace dnls;

namespace {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NoConvergence:
    case ErrorKind::SingularJacobian:
    case ErrorKind::StepFloorReached:
    case ErrorKind::StructureMismatch:
      return 2;
    case ErrorKind::ClassificationAmbiguous:
      return 3;
    case ErrorKind::Io:
      return 4;
    default:
      return 1;
  }
}

// Splices config-file values in front of the user's flags so that, with
// TakeLast, the command line overrides the file.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (std::size_t i = 0; i + 1 < args.size(); ++i)
    if (args[i] == "--config") config_path = args[i + 1];
  if (config_path.empty()) return args;

  const Json cfg = read_json(config_path);
  std::vector<std::string> injected;
  for (const auto& [key, value] : cfg.items()) {
    injected.push_back("--" + key);
    if (value.is_string())
      injected.push_back(value.get<std::string>());
    else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) joined += (joined.empty() ? "" : ",") + v.dump();
      injected.push_back(joined);
    } else
      injected.push_back(value.dump());
  }
  std::size_t lead = 0;
  while (lead < args.size() && !args[lead].starts_with("-")) ++lead;
  args.insert(args.begin() + static_cast<long>(lead), injected.begin(), injected.end());
  return args;
}

fs::path target(const std::string& out, const fs::path& out_dir, const std::string& fallback) {
  fs::create_directories(out_dir);
  return out.empty() ? out_dir / fallback : fs::path(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-pulse standing waves of the discrete NLS lattice"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  std::string config, out_dir = ".";
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "JSON file supplying any flag");
    sub->add_option("--out-dir", out_dir, "directory for outputs");
  };

  double omega = 2.0, d = 1.0;
  int half_width = 0;
  std::string out, in, pattern;

  auto* solve_cmd = app.add_subcommand("solve", "continue the single on-site pulse to d");
  common(solve_cmd);
  solve_cmd->add_option("--omega", omega)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--d", d)->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--half-width", half_width, "lattice half-width L (default 30)");
  solve_cmd->add_option("--out", out, "solution file");

  auto* build_cmd = app.add_subcommand("build", "continue a multi-pulse to d");
  common(build_cmd);
  build_cmd->add_option("--pattern", pattern, "e.g. +-+:8,8")->required();
  build_cmd->add_option("--omega", omega)->check(CLI::PositiveNumber);
  build_cmd->add_option("--d", d)->check(CLI::NonNegativeNumber);
  build_cmd->add_option("--half-width", half_width);
  build_cmd->add_option("--out", out);

  auto* spectrum_cmd = app.add_subcommand("spectrum", "stability spectrum of a stored solution");
  common(spectrum_cmd);
  spectrum_cmd->add_option("--in", in, "solution JSON")->required();
  spectrum_cmd->add_option("--out", out);

  auto* predict_cmd = app.add_subcommand("predict", "analytic interaction eigenvalues");
  common(predict_cmd);
  predict_cmd->add_option("--pattern", pattern)->required();
  predict_cmd->add_option("--omega", omega)->check(CLI::PositiveNumber);
  predict_cmd->add_option("--d", d)->check(CLI::PositiveNumber);

  auto* study_cmd = app.add_subcommand("study", "reproduction studies");
  study_cmd->require_subcommand(1);
  std::vector<int> n_list{8, 10, 12, 14};
  auto* decay_cmd = study_cmd->add_subcommand("decay", "log|lambda| vs N regression");
  common(decay_cmd);
  decay_cmd->add_option("--pattern", pattern, "sign pattern, e.g. ++-")->required();
  decay_cmd->add_option("--omega", omega)->check(CLI::PositiveNumber);
  decay_cmd->add_option("--d", d)->check(CLI::PositiveNumber);
  decay_cmd->add_option("--n-list", n_list, "equal inter-pulse distances")->delimiter(',');

  double d_min = 0.05, d_max = 1.0, d_step = 0.05;
  auto* sweep_cmd = study_cmd->add_subcommand("error-sweep", "prediction error across d");
  common(sweep_cmd);
  sweep_cmd->add_option("--pattern", pattern)->required();
  sweep_cmd->add_option("--omega", omega)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--d-min", d_min);
  sweep_cmd->add_option("--d-max", d_max);
  sweep_cmd->add_option("--d-step", d_step);

  try {
    auto args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return exit_code(e.kind());
  }

  try {
    if (solve_cmd->parsed()) {
      const Problem p(omega, 0.0, half_width > 0 ? half_width : 30);
      const auto path = continue_in_d(seed_anticontinuum(PulseSpec{}, omega, p), omega, d);
      const fs::path file = target(out, out_dir, "solution.json");
      write_json(file, to_json(path.final_field()));
      std::cout << "single pulse at omega=" << omega << " d=" << d << ": q_0=" << path.final_field()[0] << ", "
                << path.samples.size() - 1 << " continuation steps -> " << file.string() << '\n';
    } else if (build_cmd->parsed()) {
      const PulseSpec spec = PulseSpec::parse(pattern);
      const LatticeField q = build_multipulse(spec, omega, d, {}, half_width);
      const fs::path file = target(out, out_dir, "solution.json");
      write_json(file, to_json(q));
      write_json(fs::path(out_dir) / "spec.json", to_json(spec));
      std::cout << spec.pattern() << " at omega=" << omega << " d=" << d << " -> " << file.string() << '\n';
    } else if (spectrum_cmd->parsed()) {
      const LatticeField q = field_from_json(read_json(in));
      const Problem& p = q.problem();
      const PulseSpec found = measure_spec(q);
      const Spectrum s = classify(eigensolve(assemble(q, p)), found.m(), p);
      const fs::path file = target(out, out_dir, "spectrum.json");
      write_json(file, to_json(s));
      write_text(fs::path(out_dir) / "spectrum.csv", spectrum_csv(s));
      write_text(fs::path(out_dir) / "spectrum.svg", spectrum_svg(s, "spectral plane " + found.pattern()));
      std::cout << found.pattern() << ": " << s.real_pairs() << " real, " << s.imaginary_pairs()
                << " imaginary interaction pairs\n";
      for (const auto& t : s.interaction_pairs())
        std::cout << "  " << to_string(t.axis) << ' ' << format_double(t.magnitude) << '\n';
    } else if (predict_cmd->parsed()) {
      const PulseSpec spec = PulseSpec::parse(pattern);
      const TheoryPrediction t = predict(spec, omega, d, {}, study_half_width(spec));
      fs::create_directories(out_dir);
      write_json(fs::path(out_dir) / "prediction.json", to_json(t));
      std::string csv = "pattern,j,mu,predicted,axis\n";
      for (std::size_t j = 0; j < t.lambda.size(); ++j)
        csv += spec.pattern() + "," + std::to_string(j) + "," + format_double(t.mu[j]) + "," +
               format_double(t.lambda[j].magnitude) + "," + to_string(t.lambda[j].axis) + "\n";
      write_text(fs::path(out_dir) / "prediction.csv", csv);
      std::cout << spec.pattern() << " r=" << format_double(t.r) << " M=" << format_double(t.M) << '\n';
      for (const auto& l : t.lambda) std::cout << "  " << to_string(l.axis) << ' ' << format_double(l.magnitude) << '\n';
    } else if (decay_cmd->parsed()) {
      const DecayStudy study = run_decay_study(omega, d, pattern, n_list);
      emit_outputs(study, out_dir);
      for (const auto& f : study.fits)
        std::cout << "pair " << f.pair << " (" << to_string(f.axis) << "): slope " << format_double(f.fit.slope)
                  << " target " << format_double(study.target_slope) << " rel.err "
                  << format_double(f.relative_slope_error) << '\n';
      if (!study.ok()) {
        std::cerr << "study failed: " << study.failure << '\n';
        return 2;
      }
    } else if (sweep_cmd->parsed()) {
      const PulseSpec spec = PulseSpec::parse(pattern);
      const ErrorSweep sweep = run_error_sweep(omega, spec, make_grid(d_min, d_max, d_step));
      emit_outputs(sweep, out_dir);
      int failed = 0;
      for (const auto& row : sweep.rows) {
        if (!row.error.empty()) {
          ++failed;
          std::cout << "d=" << format_double(row.d) << " failed: " << row.error << '\n';
          continue;
        }
        std::cout << "d=" << format_double(row.d);
        for (const auto& p : row.pairs) std::cout << "  " << format_double(p.relative_error);
        std::cout << '\n';
      }
      if (failed == static_cast<int>(sweep.rows.size())) return 2;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "IoError: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
