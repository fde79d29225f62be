#pragma once

#include <cstddef>
#include <vector>

namespace fnc {

// Dense row-major matrix. Value semantics; everything downstream treats
// instances as immutable after construction.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  const double* row_ptr(std::size_t i) const { return data.data() + i * cols; }
  double* row_ptr(std::size_t i) { return data.data() + i * cols; }

  static Matrix identity(std::size_t n);
};

double dot(const double* a, const double* b, std::size_t n);
double dot(const std::vector<double>& a, const std::vector<double>& b);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double sum_sq(const std::vector<double>& v);
double max_abs(const std::vector<double>& v);

// Serial reference kernels. These are the ground truth the OpenMP versions
// are tested and benchmarked against; both orders each output element's
// summation identically, so results agree bit for bit.
namespace serial {
std::vector<double> matvec(const Matrix& a, const std::vector<double>& x);
std::vector<double> matvec_transpose(const Matrix& a, const std::vector<double>& x);
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix matmul_transb(const Matrix& a, const Matrix& b);  // A * B^T
Matrix gram(const Matrix& x);                            // X^T X
}  // namespace serial

// OpenMP-parallel kernels (fall back to the same loops when built without
// OpenMP).
std::vector<double> matvec(const Matrix& a, const std::vector<double>& x);
std::vector<double> matvec_transpose(const Matrix& a, const std::vector<double>& x);
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix matmul_transb(const Matrix& a, const Matrix& b);
Matrix gram(const Matrix& x);

// Cholesky factor L (lower) of a symmetric positive definite matrix.
// Throws std::runtime_error when a pivot is not positive.
Matrix cholesky_lower(const Matrix& a);

// Solve L^T x = b for upper-triangular L^T given lower L.
std::vector<double> solve_upper_from_lower(const Matrix& l, const std::vector<double>& b);

// All eigenvalues of a symmetric matrix by cyclic Jacobi, ascending order.
std::vector<double> symmetric_eigenvalues(Matrix a, int max_sweeps = 64);

double min_symmetric_eigenvalue(const Matrix& a);

}  // namespace fnc
