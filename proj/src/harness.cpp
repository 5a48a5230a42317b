#include "dnls/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "dnls/error.hpp"
#include "dnls/svg.hpp"

namespace dnls {

namespace {

// Runs job(i) for i in [0, count) on a small worker pool. Results land in
// index order regardless of completion order.
template <typename Job>
void parallel_for(std::size_t count, Job job) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) job(i);
    });
}

std::string describe(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return err->what();
  return std::string("Error: ") + e.what();
}

// Pairs sorted by magnitude on both sides; the axes must agree pairwise.
bool axes_agree(const std::vector<TaggedEigenvalue>& a, const std::vector<TaggedEigenvalue>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].axis != b[i].axis) return false;
  return true;
}

double relative_error(double predicted, double computed) { return std::abs(predicted - computed) / std::abs(computed); }

}  // namespace

LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("linear_fit: size mismatch");
  const std::size_t n = xs.size();
  if (n < 2) throw Error(ErrorKind::DegenerateAbscissa, "need at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorKind::DegenerateAbscissa, "all abscissae are equal");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = ys[i] - (f.slope * xs[i] + f.intercept);
    rss += e * e;
  }
  f.residual_norm = std::sqrt(rss);
  return f;
}

int study_half_width(const PulseSpec& spec) {
  int n_max = 0;
  for (int n : spec.distances()) n_max = std::max(n_max, n);
  return spec.extent() / 2 + std::max(30, 4 * n_max);
}

ComputedPairs compute_interaction_pairs(const PulseSpec& spec, double omega, double d, const NewtonSettings& s,
                                        int half_width) {
  if (half_width <= 0) half_width = study_half_width(spec);
  LatticeField q = build_multipulse(spec, omega, d, s, half_width);
  const Problem p(omega, d, half_width);
  const auto eigs = eigensolve(assemble(q, p));
  Spectrum spec_out = classify(eigs, spec.m(), p);
  auto pairs = spec_out.interaction_pairs();
  return {std::move(q), std::move(spec_out), std::move(pairs)};
}

DecayStudy run_decay_study(double omega, double d, std::string_view signs, std::span<const int> distances,
                           const NewtonSettings& s) {
  const std::string sign_part(signs.substr(0, signs.find(':')));
  if (sign_part.size() < 2) throw std::invalid_argument("decay study needs at least two pulses");
  for (int n : distances)
    if (n < 6 || n % 2 != 0)
      throw std::invalid_argument("decay study distances must be even and >= 6, got " + std::to_string(n));

  DecayStudy study;
  study.omega = omega;
  study.d = d;
  study.signs = sign_part;
  study.distances.assign(distances.begin(), distances.end());
  study.target_slope = -std::log(spectral_ratio(omega, d));
  study.rows.resize(distances.size());

  std::vector<std::optional<ComputedPairs>> computed(distances.size());
  parallel_for(distances.size(), [&](std::size_t i) {
    DecayRow& row = study.rows[i];
    row.distance = distances[i];
    row.half_distance = 0.5 * distances[i];
    try {
      std::string pattern = sign_part + ":";
      for (std::size_t k = 0; k + 1 < sign_part.size(); ++k)
        pattern += (k ? "," : "") + std::to_string(distances[i]);
      computed[i] = compute_interaction_pairs(PulseSpec::parse(pattern), omega, d, s);
      row.pairs = computed[i]->pairs;
    } catch (const std::exception& e) {
      row.error = describe(e);
    }
  });

  std::vector<const DecayRow*> good;
  for (std::size_t i = 0; i < study.rows.size(); ++i)
    if (study.rows[i].error.empty()) {
      good.push_back(&study.rows[i]);
      if (!study.profile) {
        study.profile = computed[i]->field;
        study.spectrum = computed[i]->spectrum;
      }
    }
  if (good.size() < 4) {
    study.failure = "only " + std::to_string(good.size()) + " of " + std::to_string(study.rows.size()) +
                    " rows succeeded; a decay fit needs at least 4";
    return study;
  }

  const std::size_t pairs = good.front()->pairs.size();
  for (std::size_t j = 0; j < pairs; ++j) {
    std::vector<double> xs, ys;
    for (const DecayRow* row : good) {
      xs.push_back(row->half_distance);
      ys.push_back(std::log(row->pairs[j].magnitude));
      if (row->pairs[j].axis != good.front()->pairs[j].axis)
        study.failure = "pair " + std::to_string(j) + " changes axis across N";
    }
    PairFit pf;
    pf.pair = static_cast<int>(j);
    pf.axis = good.front()->pairs[j].axis;
    pf.fit = linear_fit(xs, ys);
    pf.relative_slope_error = std::abs(pf.fit.slope - study.target_slope) / std::abs(study.target_slope);
    study.fits.push_back(pf);
  }
  return study;
}

std::vector<double> make_grid(double d_min, double d_max, double d_step) {
  if (!(d_step > 0.0) || !(d_max >= d_min)) throw std::invalid_argument("make_grid: need d_step > 0, d_max >= d_min");
  std::vector<double> grid;
  const auto count = static_cast<long>(std::floor((d_max - d_min) / d_step + 1e-9));
  // Rounded to 12 decimals so 0.05 * 3 prints as 0.15.
  for (long k = 0; k <= count; ++k)
    grid.push_back(std::round((d_min + static_cast<double>(k) * d_step) * 1e12) / 1e12);
  return grid;
}

ErrorSweep run_error_sweep(double omega, const PulseSpec& spec, std::span<const double> d_grid,
                           const NewtonSettings& s) {
  if (spec.m() < 2) throw std::invalid_argument("error sweep needs a multi-pulse");
  for (double d : d_grid)
    if (!(d > 0.0 && d <= 1.5)) throw std::invalid_argument("error sweep d values must lie in (0, 1.5]");

  ErrorSweep sweep;
  sweep.omega = omega;
  sweep.spec = spec;
  sweep.half_width = study_half_width(spec);
  const auto& dist = spec.distances();
  const auto& ph = spec.phases();
  const bool uniform = std::adjacent_find(dist.begin(), dist.end(), std::not_equal_to<>()) == dist.end() &&
                       std::adjacent_find(ph.begin(), ph.end(), std::not_equal_to<>()) == ph.end();
  if (spec.m() == 3)
    sweep.closed_form = "three-pulse";
  else if (uniform)
    sweep.closed_form = "chain";
  else
    sweep.closed_form = "none";

  sweep.rows.resize(d_grid.size());
  parallel_for(d_grid.size(), [&](std::size_t i) {
    SweepRow& row = sweep.rows[i];
    row.d = d_grid[i];
    try {
      const auto computed = compute_interaction_pairs(spec, omega, row.d, s, sweep.half_width);
      const TheoryPrediction t = predict(spec, omega, row.d, s, sweep.half_width);
      row.b = t.b;
      row.M = t.M;
      row.mu = t.mu;

      std::optional<std::vector<TaggedEigenvalue>> closed;
      if (sweep.closed_form == "three-pulse") {
        const auto [x, y] = three_pulse_closed_form(t.b[0], t.b[1], {ph[0], ph[1]}, t.M, row.d);
        closed = std::vector<TaggedEigenvalue>{x, y};
      } else if (sweep.closed_form == "chain") {
        closed = predict_lambdas(chain_closed_form(spec.m(), t.b[0], ph[0]), t.M, row.d);
      }

      if (!axes_agree(t.lambda, computed.pairs)) {
        row.error = "AxisMismatch: predicted and computed pair axes disagree";
        return;
      }
      for (std::size_t j = 0; j < t.lambda.size(); ++j) {
        SweepPair sp;
        sp.predicted = t.lambda[j];
        sp.computed = computed.pairs[j];
        sp.relative_error = relative_error(sp.predicted.magnitude, sp.computed.magnitude);
        if (closed && axes_agree(*closed, computed.pairs)) {
          sp.closed_form = (*closed)[j];
          sp.closed_form_relative_error = relative_error(sp.closed_form->magnitude, sp.computed.magnitude);
        }
        row.pairs.push_back(sp);
      }
    } catch (const std::exception& e) {
      row.error = describe(e);
    }
  });
  return sweep;
}

std::string decay_csv(const DecayStudy& study) {
  std::ostringstream o;
  o << "distance,N,pair,axis,magnitude,log_magnitude,error\n";
  for (const auto& row : study.rows) {
    if (!row.error.empty()) {
      o << row.distance << ',' << format_double(row.half_distance) << ",,,,,\"" << row.error << "\"\n";
      continue;
    }
    for (std::size_t j = 0; j < row.pairs.size(); ++j)
      o << row.distance << ',' << format_double(row.half_distance) << ',' << j << ',' << to_string(row.pairs[j].axis)
        << ',' << format_double(row.pairs[j].magnitude) << ',' << format_double(std::log(row.pairs[j].magnitude))
        << ",\n";
  }
  return o.str();
}

std::string sweep_csv(const ErrorSweep& sweep) {
  std::ostringstream o;
  o << "d,pair,predicted_axis,predicted,computed_axis,computed,relative_error,closed_form,closed_form_relative_error,"
       "M,error\n";
  for (const auto& row : sweep.rows) {
    if (!row.error.empty()) {
      o << format_double(row.d) << ",,,,,,,,,,\"" << row.error << "\"\n";
      continue;
    }
    for (std::size_t j = 0; j < row.pairs.size(); ++j) {
      const auto& p = row.pairs[j];
      o << format_double(row.d) << ',' << j << ',' << to_string(p.predicted.axis) << ','
        << format_double(p.predicted.magnitude) << ',' << to_string(p.computed.axis) << ','
        << format_double(p.computed.magnitude) << ',' << format_double(p.relative_error) << ','
        << (p.closed_form ? format_double(p.closed_form->magnitude) : "") << ','
        << (p.closed_form_relative_error ? format_double(*p.closed_form_relative_error) : "") << ','
        << format_double(row.M) << ",\n";
    }
  }
  return o.str();
}

std::string spectrum_csv(const Spectrum& s) {
  std::ostringstream o;
  o << "re,im,class\n";
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
    o << format_double(s.eigenvalues[i].real()) << ',' << format_double(s.eigenvalues[i].imag()) << ','
      << to_string(s.classes[i]) << '\n';
  return o.str();
}

namespace {

Json tagged_json(const TaggedEigenvalue& t) { return {{"magnitude", t.magnitude}, {"axis", to_string(t.axis)}}; }

}  // namespace

Json decay_json(const DecayStudy& study) {
  Json j;
  j["kind"] = "decay";
  j["omega"] = study.omega;
  j["d"] = study.d;
  j["signs"] = study.signs;
  j["distances"] = study.distances;
  j["abscissa"] = "N = distance / 2";
  j["target_slope"] = study.target_slope;
  j["half_width_rule"] = "extent/2 + max(30, 4 N_max)";
  Json rows = Json::array();
  for (const auto& row : study.rows) {
    Json r = {{"distance", row.distance}, {"N", row.half_distance}};
    Json pairs = Json::array();
    for (const auto& p : row.pairs) pairs.push_back(tagged_json(p));
    r["pairs"] = pairs;
    if (!row.error.empty()) r["error"] = row.error;
    rows.push_back(r);
  }
  j["rows"] = rows;
  Json fits = Json::array();
  for (const auto& f : study.fits)
    fits.push_back({{"pair", f.pair},
                    {"axis", to_string(f.axis)},
                    {"slope", f.fit.slope},
                    {"intercept", f.fit.intercept},
                    {"residual_norm", f.fit.residual_norm},
                    {"relative_slope_error", f.relative_slope_error}});
  j["fits"] = fits;
  if (!study.ok()) j["failure"] = study.failure;
  return j;
}

Json sweep_json(const ErrorSweep& sweep) {
  Json j;
  j["kind"] = "error-sweep";
  j["omega"] = sweep.omega;
  j["pattern"] = sweep.spec.pattern();
  j["spec"] = to_json(sweep.spec);
  j["half_width"] = sweep.half_width;
  j["closed_form"] = sweep.closed_form;
  Json rows = Json::array();
  for (const auto& row : sweep.rows) {
    Json r = {{"d", row.d}};
    if (!row.error.empty()) {
      r["error"] = row.error;
    } else {
      r["b"] = row.b;
      r["M"] = row.M;
      r["mu"] = row.mu;
      Json pairs = Json::array();
      for (const auto& p : row.pairs) {
        Json pj = {{"predicted", tagged_json(p.predicted)},
                   {"computed", tagged_json(p.computed)},
                   {"relative_error", p.relative_error}};
        if (p.closed_form) pj["closed_form"] = tagged_json(*p.closed_form);
        if (p.closed_form_relative_error) pj["closed_form_relative_error"] = *p.closed_form_relative_error;
        pairs.push_back(pj);
      }
      r["pairs"] = pairs;
    }
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j;
}

std::string profile_svg(const LatticeField& q, const std::string& title) {
  SvgPlot plot(title, "n", "q_n");
  SvgPlot::Series s{"profile", "steelblue", SvgPlot::Style::Stems, {}, {}};
  const int L = q.half_width();
  for (int n = -L; n <= L; ++n) {
    s.x.push_back(n);
    s.y.push_back(q[n]);
  }
  plot.add(std::move(s));
  return plot.render();
}

std::string spectrum_svg(const Spectrum& s, const std::string& title) {
  SvgPlot plot(title, "Re lambda", "Im lambda");
  const char* colors[] = {"black", "crimson", "steelblue", "gray"};
  for (auto cls : {EigenClass::Band, EigenClass::Other, EigenClass::ZeroMode, EigenClass::Interaction}) {
    SvgPlot::Series ser{to_string(cls), colors[static_cast<int>(cls)], SvgPlot::Style::Markers, {}, {}};
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
      if (s.classes[i] == cls) {
        ser.x.push_back(s.eigenvalues[i].real());
        ser.y.push_back(s.eigenvalues[i].imag());
      }
    plot.add(std::move(ser));
  }
  return plot.render();
}

std::vector<std::filesystem::path> emit_outputs(const DecayStudy& study, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  auto put = [&](const std::string& name, const std::string& text) {
    write_text(out_dir / name, text);
    written.push_back(out_dir / name);
  };
  put("decay.csv", decay_csv(study));
  put("decay.json", decay_json(study).dump(2) + "\n");

  SvgPlot plot("log|lambda| vs N (" + study.signs + ")", "N", "log|lambda|");
  const char* colors[] = {"crimson", "steelblue", "darkgreen", "darkorange", "purple"};
  const std::size_t pairs = study.fits.empty() ? 0 : study.fits.size();
  for (std::size_t j = 0; j < pairs; ++j) {
    SvgPlot::Series pts{"pair " + std::to_string(j), colors[j % 5], SvgPlot::Style::Markers, {}, {}};
    for (const auto& row : study.rows)
      if (row.error.empty() && j < row.pairs.size()) {
        pts.x.push_back(row.half_distance);
        pts.y.push_back(std::log(row.pairs[j].magnitude));
      }
    const auto& f = study.fits[j].fit;
    SvgPlot::Series line{"fit slope " + format_double(static_cast<float>(f.slope)), colors[j % 5], SvgPlot::Style::Line,
                         {}, {}};
    if (!pts.x.empty()) {
      const auto [lo, hi] = std::minmax_element(pts.x.begin(), pts.x.end());
      line.x = {*lo, *hi};
      line.y = {f.slope * *lo + f.intercept, f.slope * *hi + f.intercept};
    }
    plot.add(std::move(pts));
    plot.add(std::move(line));
  }
  put("decay.svg", plot.render());
  if (study.profile) put("profile.svg", profile_svg(*study.profile, "profile " + study.signs));
  if (study.spectrum) put("spectrum.svg", spectrum_svg(*study.spectrum, "spectral plane " + study.signs));
  return written;
}

std::vector<std::filesystem::path> emit_outputs(const ErrorSweep& sweep, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  auto put = [&](const std::string& name, const std::string& text) {
    write_text(out_dir / name, text);
    written.push_back(out_dir / name);
  };
  put("sweep.csv", sweep_csv(sweep));
  put("sweep.json", sweep_json(sweep).dump(2) + "\n");

  SvgPlot plot("log10 relative error vs d (" + sweep.spec.pattern() + ")", "d", "log10 relative error");
  const char* colors[] = {"crimson", "steelblue", "darkgreen", "darkorange", "purple"};
  const std::size_t pairs = static_cast<std::size_t>(sweep.spec.m() - 1);
  for (std::size_t j = 0; j < pairs; ++j) {
    SvgPlot::Series s{"pair " + std::to_string(j), colors[j % 5], SvgPlot::Style::Markers, {}, {}};
    for (const auto& row : sweep.rows)
      if (row.error.empty() && j < row.pairs.size()) {
        s.x.push_back(row.d);
        s.y.push_back(std::log10(row.pairs[j].relative_error));
      }
    plot.add(std::move(s));
  }
  put("sweep.svg", plot.render());
  return written;
}

}  // namespace dnls
