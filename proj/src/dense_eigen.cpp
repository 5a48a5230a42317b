#include "dnls/dense_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dnls/error.hpp"

namespace dnls {

std::vector<double> DenseMatrix::apply(std::span<const double> x) const {
  std::vector<double> y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

std::vector<std::complex<double>> DenseMatrix::apply(std::span<const std::complex<double>> x) const {
  std::vector<std::complex<double>> y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::complex<double> s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

namespace {

constexpr double kRadix = 2.0;

// Diagonal similarity scaling by powers of two so row and column norms match.
void balance(DenseMatrix& a) {
  const std::size_t n = a.rows();
  const double sqrdx = kRadix * kRadix;
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / kRadix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= kRadix;
        c *= sqrdx;
      }
      g = r * kRadix;
      while (c > g) {
        f /= kRadix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        g = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= g;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

// Householder reduction to upper Hessenberg form.
void to_hessenberg(DenseMatrix& h) {
  const std::size_t n = h.rows();
  if (n < 3) return;
  std::vector<double> ort(n, 0.0);
  const std::size_t high = n - 1;
  for (std::size_t m = 1; m + 1 <= high; ++m) {
    double scale = 0.0;
    for (std::size_t i = m; i <= high; ++i) scale += std::abs(h(i, m - 1));
    if (scale == 0.0) continue;

    double hh = 0.0;
    for (std::size_t i = high + 1; i-- > m;) {
      ort[i] = h(i, m - 1) / scale;
      hh += ort[i] * ort[i];
    }
    double g = std::sqrt(hh);
    if (ort[m] > 0) g = -g;
    hh -= ort[m] * g;
    ort[m] -= g;

    for (std::size_t j = m; j < n; ++j) {
      double f = 0.0;
      for (std::size_t i = high + 1; i-- > m;) f += ort[i] * h(i, j);
      f /= hh;
      for (std::size_t i = m; i <= high; ++i) h(i, j) -= f * ort[i];
    }
    for (std::size_t i = 0; i <= high; ++i) {
      double f = 0.0;
      for (std::size_t j = high + 1; j-- > m;) f += ort[j] * h(i, j);
      f /= hh;
      for (std::size_t j = m; j <= high; ++j) h(i, j) -= f * ort[j];
    }
    h(m, m - 1) = scale * g;
    for (std::size_t i = m + 1; i <= high; ++i) h(i, m - 1) = 0.0;
  }
}

// Francis double-shift QR on an upper Hessenberg matrix, eigenvalues only.
// Indices below are 1-based to stay close to the classical formulation.
std::vector<std::complex<double>> hessenberg_qr(DenseMatrix& h) {
  const int n = static_cast<int>(h.rows());
  auto a = [&h](int i, int j) -> double& {
    return h(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
  };
  std::vector<double> wr(static_cast<std::size_t>(n + 1), 0.0), wi(static_cast<std::size_t>(n + 1), 0.0);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr int kMaxIts = 60;

  double anorm = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = std::max(i - 1, 1); j <= n; ++j) anorm += std::abs(a(i, j));

  int nn = n;
  double t = 0.0;
  while (nn >= 1) {
    int its = 0;
    int l;
    do {
      for (l = nn; l >= 2; --l) {
        double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(a(l, l - 1)) <= eps * s) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      if (l < 1) l = 1;
      double x = a(nn, nn);
      if (l == nn) {
        wr[nn] = x + t;
        wi[nn] = 0.0;
        --nn;
      } else {
        double y = a(nn - 1, nn - 1);
        double w = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {
          double p = 0.5 * (y - x);
          double q = p * p + w;
          double z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + std::copysign(z, p);
            wr[nn - 1] = wr[nn] = x + z;
            if (z != 0.0) wr[nn] = x - w / z;
            wi[nn - 1] = wi[nn] = 0.0;
          } else {
            wr[nn - 1] = wr[nn] = x + p;
            wi[nn - 1] = -z;
            wi[nn] = z;
          }
          nn -= 2;
        } else {
          if (its == kMaxIts)
            throw Error(ErrorKind::NoQRConvergence,
                        "QR iteration stalled at eigenvalue index " + std::to_string(nn - 1));
          if (its > 0 && its % 10 == 0) {
            // Exceptional shift.
            t += x;
            for (int i = 1; i <= nn; ++i) a(i, i) -= x;
            double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          int m;
          double p = 0.0, q = 0.0, r = 0.0, z;
          for (m = nn - 2; m >= l; --m) {
            z = a(m, m);
            r = x - z;
            double s = y - z;
            p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
            q = a(m + 1, m + 1) - z - r - s;
            r = a(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
            double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
            if (u <= eps * v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            a(i, i - 2) = 0.0;
            if (i != m + 2) a(i, i - 3) = 0.0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = 0.0;
              if (k != nn - 1) r = a(k + 2, k - 1);
              x = std::abs(p) + std::abs(q) + std::abs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            double s = std::copysign(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) a(k, k - 1) = -a(k, k - 1);
            } else {
              a(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            z = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {
              p = a(k, j) + q * a(k + 1, j);
              if (k != nn - 1) {
                p += r * a(k + 2, j);
                a(k + 2, j) -= p * z;
              }
              a(k + 1, j) -= p * y;
              a(k, j) -= p * x;
            }
            const int mmin = nn < k + 3 ? nn : k + 3;
            for (int i = l; i <= mmin; ++i) {
              p = x * a(i, k) + y * a(i, k + 1);
              if (k != nn - 1) {
                p += z * a(i, k + 2);
                a(i, k + 2) -= p * r;
              }
              a(i, k + 1) -= p * q;
              a(i, k) -= p;
            }
          }
        }
      }
    } while (l < nn - 1);
  }

  std::vector<std::complex<double>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) out.emplace_back(wr[i], wi[i]);
  return out;
}

}  // namespace

std::vector<std::complex<double>> eig_general(DenseMatrix a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eig_general: matrix must be square");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!std::isfinite(a(i, j))) throw std::invalid_argument("eig_general: non-finite entry");
  if (a.rows() == 0) return {};
  balance(a);
  to_hessenberg(a);
  return hessenberg_qr(a);
}

std::vector<std::complex<double>> inverse_iteration(const DenseMatrix& a, std::complex<double> lambda,
                                                    int iterations) {
  using cd = std::complex<double>;
  const std::size_t n = a.rows();
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) norm = std::max(norm, std::abs(a(i, j)));
  const double tiny = std::numeric_limits<double>::epsilon() * std::max(norm, 1.0);

  std::vector<cd> lu(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) lu[i * n + j] = a(i, j) - (i == j ? lambda : cd(0.0));
  std::vector<std::size_t> perm(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu[i * n + k]) > std::abs(lu[piv * n + k])) piv = i;
    perm[k] = piv;
    if (piv != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(lu[k * n + j], lu[piv * n + j]);
    if (std::abs(lu[k * n + k]) < tiny) lu[k * n + k] = tiny;
    for (std::size_t i = k + 1; i < n; ++i) {
      const cd f = lu[i * n + k] / lu[k * n + k];
      lu[i * n + k] = f;
      for (std::size_t j = k + 1; j < n; ++j) lu[i * n + j] -= f * lu[k * n + j];
    }
  }

  std::vector<cd> v(n, cd(1.0, 0.0));
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t k = 0; k < n; ++k) std::swap(v[k], v[perm[k]]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) v[i] -= lu[i * n + j] * v[j];
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = i + 1; j < n; ++j) v[i] -= lu[i * n + j] * v[j];
      v[i] /= lu[i * n + i];
    }
    double nv = 0.0;
    for (const cd& x : v) nv += std::norm(x);
    nv = std::sqrt(nv);
    for (cd& x : v) x /= nv;
  }
  return v;
}

double eigen_residual(const DenseMatrix& a, std::complex<double> lambda,
                      std::span<const std::complex<double>> v) {
  const auto av = a.apply(v);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    num += std::norm(av[i] - lambda * v[i]);
    den += std::norm(v[i]);
  }
  return std::sqrt(num / den);
}

}  // namespace dnls
