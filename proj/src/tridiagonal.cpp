#include "dnls/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dnls/error.hpp"

namespace dnls {

std::vector<double> SymTridiagonal::apply(std::span<const double> x) const {
  const std::size_t n = diag.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += off[i - 1] * x[i - 1];
    if (i + 1 < n) s += off[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

std::vector<std::vector<double>> SymTridiagonal::dense() const {
  const std::size_t n = diag.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    a[i][i] = diag[i];
    if (i + 1 < n) a[i][i + 1] = a[i + 1][i] = off[i];
  }
  return a;
}

double SymTridiagonal::max_abs() const {
  double m = 0.0;
  for (double x : diag) m = std::max(m, std::abs(x));
  for (double x : off) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> solve(const SymTridiagonal& t, std::span<const double> rhs) {
  const std::size_t n = t.size();
  if (rhs.size() != n) throw std::invalid_argument("solve: size mismatch");
  if (n == 0) return {};

  // Row i of U holds (u0, u1, u2) at columns (i, i+1, i+2); fill-in from
  // pivoting lands in u2.
  std::vector<double> u0(t.diag), u1(n, 0.0), u2(n, 0.0), lower(n, 0.0);
  std::vector<double> sub(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    u1[i] = t.off[i];
    sub[i] = t.off[i];
  }
  std::vector<double> b(rhs.begin(), rhs.end());
  const double tiny = std::numeric_limits<double>::epsilon() * std::max(t.max_abs(), 1e-300);

  for (std::size_t i = 0; i + 1 < n; ++i) {
    // Candidate rows: i (u0[i], u1[i], u2[i]=0) and i+1 (sub[i], u0[i+1], u1[i+1]).
    if (std::abs(sub[i]) > std::abs(u0[i])) {
      std::swap(u0[i], sub[i]);
      std::swap(u1[i], u0[i + 1]);
      std::swap(u2[i], u1[i + 1]);
      std::swap(b[i], b[i + 1]);
    }
    if (std::abs(u0[i]) <= tiny)
      throw Error(ErrorKind::SingularJacobian, "zero pivot at row " + std::to_string(i));
    const double f = sub[i] / u0[i];
    lower[i] = f;
    u0[i + 1] -= f * u1[i];
    u1[i + 1] -= f * u2[i];
    b[i + 1] -= f * b[i];
  }
  if (std::abs(u0[n - 1]) <= tiny)
    throw Error(ErrorKind::SingularJacobian, "zero pivot at row " + std::to_string(n - 1));

  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    if (k + 1 < n) s -= u1[k] * x[k + 1];
    if (k + 2 < n) s -= u2[k] * x[k + 2];
    x[k] = s / u0[k];
  }
  return x;
}

std::vector<double> eig_symmetric_tridiagonal(std::span<const double> diag,
                                              std::span<const double> off) {
  const std::size_t n = diag.size();
  if (n == 0) return {};
  if (off.size() + 1 != n) throw std::invalid_argument("eig_symmetric_tridiagonal: size mismatch");

  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(n, 0.0);
  std::copy(off.begin(), off.end(), e.begin());

  constexpr int kMaxSweeps = 60;
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        if (++iter > kMaxSweeps)
          throw std::runtime_error("eig_symmetric_tridiagonal: no convergence");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        std::size_t i = m;
        bool underflow = false;
        while (i-- > l) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace dnls
