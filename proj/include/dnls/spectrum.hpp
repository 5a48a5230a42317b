#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "dnls/dense_eigen.hpp"
#include "dnls/eigen_tag.hpp"
#include "dnls/lattice.hpp"
#include "dnls/tridiagonal.hpp"

namespace dnls {

// Linearization about a real standing wave (q, 0), acting on (v, w):
//
//   [ v' ]   [   0    L_- ] [ v ]      L_+ = d D2 - omega + 3 q^2
//   [ w' ] = [ -L_+    0  ] [ w ],     L_- = d D2 - omega +   q^2
//
// with D2 the Dirichlet second difference.
class StabilityMatrix {
 public:
  StabilityMatrix(LatticeField q, const Problem& p);

  const SymTridiagonal& l_plus() const { return l_plus_; }
  const SymTridiagonal& l_minus() const { return l_minus_; }
  const LatticeField& field() const { return q_; }
  const Problem& problem() const { return problem_; }
  std::size_t size() const { return 2 * l_plus_.size(); }

  std::vector<double> apply(std::span<const double> x) const;
  DenseMatrix dense() const;

 private:
  LatticeField q_;
  Problem problem_;
  SymTridiagonal l_plus_, l_minus_;
};

StabilityMatrix assemble(const LatticeField& q, const Problem& p);

// All 2(2L+1) eigenvalues via the in-repo dense QR.
std::vector<std::complex<double>> eigensolve(const StabilityMatrix& m);

enum class EigenClass { ZeroMode, Interaction, Band, Other };
const char* to_string(EigenClass c);

struct ClassifyTolerances {
  double zero_tol = 1e-6;
  double band_tol = 0.05;
  double band_margin_factor = 0.1;  // band_margin = factor * omega
  double axis_ratio = 1e-3;
};

struct Spectrum {
  std::vector<std::complex<double>> eigenvalues;  // interaction entries snapped to their axis
  std::vector<EigenClass> classes;
  int m = 1;
  double omega = 0.0;
  double d = 0.0;
  ClassifyTolerances tolerances;

  std::size_t count(EigenClass c) const;
  // One representative per interaction pair (Re > 0 or Im > 0), in pair_order.
  std::vector<TaggedEigenvalue> interaction_pairs() const;
  int real_pairs() const;
  int imaginary_pairs() const;
};

// Throws Error(ClassificationAmbiguous) when the small eigenvalues cannot be
// separated cleanly from the kernel, the band, or the axes.
Spectrum classify(std::span<const std::complex<double>> eigs, int m, const Problem& p,
                  const ClassifyTolerances& tol = {});

// Largest distance from any eigenvalue to the nearest of -lambda and
// conj(lambda) in the list; zero for an exactly Hamiltonian spectrum.
double quartet_defect(std::span<const std::complex<double>> eigs);

}  // namespace dnls
