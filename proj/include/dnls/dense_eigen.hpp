#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dnls {

// Row-major dense real matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<double> apply(std::span<const double> x) const;
  std::vector<std::complex<double>> apply(std::span<const std::complex<double>> x) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

// All eigenvalues of a general real square matrix, with multiplicity.
// Balancing, Householder reduction to upper Hessenberg form, then Francis
// double-shift QR with deflation. Complex pairs come out as exact conjugates.
// Throws Error(NoQRConvergence) naming the eigenvalue index that stalled.
std::vector<std::complex<double>> eig_general(DenseMatrix a);

// Unit eigenvector estimate for a computed eigenvalue by inverse iteration on
// (A - lambda I) in complex arithmetic.
std::vector<std::complex<double>> inverse_iteration(const DenseMatrix& a, std::complex<double> lambda,
                                                    int iterations = 3);

// ||A v - lambda v|| / ||v|| in the 2-norm.
double eigen_residual(const DenseMatrix& a, std::complex<double> lambda,
                      std::span<const std::complex<double>> v);

}  // namespace dnls
