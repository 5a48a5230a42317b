#include "dnls/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "dnls/error.hpp"

namespace dnls {

namespace {

SymTridiagonal schrodinger_block(const LatticeField& q, const Problem& p, double cubic_factor) {
  const std::size_t n = p.size();
  SymTridiagonal t;
  t.diag.resize(n);
  t.off.assign(n - 1, p.d);
  const int L = p.half_width;
  for (int k = -L; k <= L; ++k)
    t.diag[static_cast<std::size_t>(k + L)] = -2.0 * p.d - p.omega + cubic_factor * q[k] * q[k];
  return t;
}

}  // namespace

StabilityMatrix::StabilityMatrix(LatticeField q, const Problem& p)
    : q_(std::move(q)),
      problem_(p),
      l_plus_(schrodinger_block(q_, p, 3.0)),
      l_minus_(schrodinger_block(q_, p, 1.0)) {
  if (q_.half_width() != p.half_width)
    throw std::invalid_argument("StabilityMatrix: field lattice does not match problem");
}

std::vector<double> StabilityMatrix::apply(std::span<const double> x) const {
  const std::size_t n = l_plus_.size();
  if (x.size() != 2 * n) throw std::invalid_argument("StabilityMatrix::apply: size mismatch");
  const auto top = l_minus_.apply(x.subspan(n, n));
  const auto bottom = l_plus_.apply(x.subspan(0, n));
  std::vector<double> y(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = top[i];
    y[n + i] = -bottom[i];
  }
  return y;
}

DenseMatrix StabilityMatrix::dense() const {
  const std::size_t n = l_plus_.size();
  DenseMatrix a(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, n + i) = l_minus_.diag[i];
    a(n + i, i) = -l_plus_.diag[i];
    if (i + 1 < n) {
      a(i, n + i + 1) = a(i + 1, n + i) = l_minus_.off[i];
      a(n + i, i + 1) = a(n + i + 1, i) = -l_plus_.off[i];
    }
  }
  return a;
}

StabilityMatrix assemble(const LatticeField& q, const Problem& p) { return {q, p}; }

std::vector<std::complex<double>> eigensolve(const StabilityMatrix& m) { return eig_general(m.dense()); }

const char* to_string(EigenClass c) {
  switch (c) {
    case EigenClass::ZeroMode: return "zero";
    case EigenClass::Interaction: return "interaction";
    case EigenClass::Band: return "band";
    case EigenClass::Other: return "other";
  }
  return "other";
}

std::size_t Spectrum::count(EigenClass c) const {
  return static_cast<std::size_t>(std::count(classes.begin(), classes.end(), c));
}

std::vector<TaggedEigenvalue> Spectrum::interaction_pairs() const {
  std::vector<TaggedEigenvalue> out;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    if (classes[i] != EigenClass::Interaction) continue;
    const auto z = eigenvalues[i];
    if (z.imag() == 0.0 && z.real() > 0.0) out.push_back({z.real(), Axis::Real});
    if (z.real() == 0.0 && z.imag() > 0.0) out.push_back({z.imag(), Axis::Imaginary});
  }
  std::sort(out.begin(), out.end(), pair_order);
  return out;
}

int Spectrum::real_pairs() const {
  int k = 0;
  for (const auto& t : interaction_pairs()) k += t.axis == Axis::Real;
  return k;
}

int Spectrum::imaginary_pairs() const {
  return static_cast<int>(interaction_pairs().size()) - real_pairs();
}

Spectrum classify(std::span<const std::complex<double>> eigs, int m, const Problem& p,
                  const ClassifyTolerances& tol) {
  if (m < 1) throw std::invalid_argument("classify: m must be >= 1");
  Spectrum s;
  s.eigenvalues.assign(eigs.begin(), eigs.end());
  s.classes.assign(eigs.size(), EigenClass::Other);
  s.m = m;
  s.omega = p.omega;
  s.d = p.d;
  s.tolerances = tol;

  std::vector<std::size_t> order(eigs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(eigs[a]) < std::abs(eigs[b]); });
  if (order.size() < 2) throw Error(ErrorKind::ClassificationAmbiguous, "fewer than two eigenvalues");

  for (std::size_t k = 0; k < 2; ++k) {
    const auto z = eigs[order[k]];
    if (std::abs(z) > tol.zero_tol)
      throw Error(ErrorKind::ClassificationAmbiguous,
                  "kernel eigenvalue has modulus " + std::to_string(std::abs(z)) + " above zero_tol");
    s.classes[order[k]] = EigenClass::ZeroMode;
  }
  if (order.size() > 2 && std::abs(eigs[order[2]]) <= tol.zero_tol)
    throw Error(ErrorKind::ClassificationAmbiguous,
                "a third eigenvalue sits inside the zero tolerance; kernel not separable");

  const double band_floor = p.omega * (1.0 - tol.band_tol);
  std::vector<std::size_t> rest;
  for (std::size_t k = 2; k < order.size(); ++k) {
    const auto i = order[k];
    if (std::abs(eigs[i].imag()) >= band_floor)
      s.classes[i] = EigenClass::Band;
    else
      rest.push_back(i);
  }

  const std::size_t wanted = 2 * static_cast<std::size_t>(m - 1);
  if (rest.size() < wanted)
    throw Error(ErrorKind::ClassificationAmbiguous,
                "only " + std::to_string(rest.size()) + " candidates for " + std::to_string(wanted) +
                    " interaction eigenvalues");
  const double band_margin = tol.band_margin_factor * p.omega;
  int positive = 0;
  for (std::size_t k = 0; k < wanted; ++k) {
    const auto i = rest[k];
    auto z = eigs[i];
    if (std::abs(z) >= p.omega - band_margin)
      throw Error(ErrorKind::ClassificationAmbiguous,
                  "interaction candidate " + std::to_string(std::abs(z)) + " is within the band margin");
    const double re = std::abs(z.real()), im = std::abs(z.imag());
    if (im < tol.axis_ratio * re)
      z = {z.real(), 0.0};
    else if (re < tol.axis_ratio * im)
      z = {0.0, z.imag()};
    else
      throw Error(ErrorKind::ClassificationAmbiguous,
                  "interaction candidate off both axes: " + std::to_string(z.real()) + " + " +
                      std::to_string(z.imag()) + "i");
    s.eigenvalues[i] = z;
    s.classes[i] = EigenClass::Interaction;
    positive += (z.real() > 0.0 || z.imag() > 0.0);
  }
  if (positive != m - 1)
    throw Error(ErrorKind::ClassificationAmbiguous, "interaction candidates do not form +- pairs");
  return s;
}

double quartet_defect(std::span<const std::complex<double>> eigs) {
  double worst = 0.0;
  for (const auto& z : eigs) {
    double best_neg = INFINITY, best_conj = INFINITY;
    for (const auto& w : eigs) {
      best_neg = std::min(best_neg, std::abs(w + z));
      best_conj = std::min(best_conj, std::abs(w - std::conj(z)));
    }
    worst = std::max({worst, best_neg, best_conj});
  }
  return worst;
}

}  // namespace dnls
