#pragma once

#include <span>
#include <vector>

namespace dnls {

// Symmetric tridiagonal matrix: diag has n entries, off has n-1.
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const { return diag.size(); }
  std::vector<double> apply(std::span<const double> x) const;
  std::vector<std::vector<double>> dense() const;
  double max_abs() const;
};

// Solves T x = rhs by Gaussian elimination with partial pivoting on the band
// (the Jacobian is indefinite, so plain Thomas elimination is not safe).
// Throws Error(SingularJacobian) when a pivot vanishes relative to ||T||.
std::vector<double> solve(const SymTridiagonal& t, std::span<const double> rhs);

// All eigenvalues of a symmetric tridiagonal matrix, ascending.
// Implicit-shift QL (tql1 lineage).
std::vector<double> eig_symmetric_tridiagonal(std::span<const double> diag,
                                              std::span<const double> off);
inline std::vector<double> eig_symmetric_tridiagonal(const SymTridiagonal& t) {
  return eig_symmetric_tridiagonal(t.diag, t.off);
}

}  // namespace dnls
