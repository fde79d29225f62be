#include "fnc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fnc {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double sum_sq(const std::vector<double>& v) { return dot(v, v); }

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

namespace serial {

std::vector<double> matvec(const Matrix& a, const std::vector<double>& x) {
  std::vector<double> y(a.rows);
  for (std::size_t i = 0; i < a.rows; ++i) y[i] = dot(a.row_ptr(i), x.data(), a.cols);
  return y;
}

std::vector<double> matvec_transpose(const Matrix& a, const std::vector<double>& x) {
  std::vector<double> y(a.cols);
  for (std::size_t j = 0; j < a.cols; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i) s += a(i, j) * x[i];
    y[j] = s;
  }
  return y;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t k = 0; k < a.cols; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      axpy(aik, b.row_ptr(k), c.row_ptr(i), b.cols);
    }
  }
  return c;
}

Matrix matmul_transb(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows, b.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < b.rows; ++j)
      c(i, j) = dot(a.row_ptr(i), b.row_ptr(j), a.cols);
  return c;
}

Matrix gram(const Matrix& x) {
  Matrix g(x.cols, x.cols);
  for (std::size_t j = 0; j < x.cols; ++j) {
    for (std::size_t k = j; k < x.cols; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < x.rows; ++i) s += x(i, j) * x(i, k);
      g(j, k) = s;
      g(k, j) = s;
    }
  }
  return g;
}

}  // namespace serial

std::vector<double> matvec(const Matrix& a, const std::vector<double>& x) {
  std::vector<double> y(a.rows);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    y[i] = dot(a.row_ptr(static_cast<std::size_t>(i)), x.data(), a.cols);
  return y;
}

std::vector<double> matvec_transpose(const Matrix& a, const std::vector<double>& x) {
  std::vector<double> y(a.cols);
  const std::ptrdiff_t p = static_cast<std::ptrdiff_t>(a.cols);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < p; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i) s += a(i, static_cast<std::size_t>(j)) * x[i];
    y[j] = s;
  }
  return y;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows, b.cols);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const std::size_t ii = static_cast<std::size_t>(i);
    for (std::size_t k = 0; k < a.cols; ++k) {
      const double aik = a(ii, k);
      if (aik == 0.0) continue;
      axpy(aik, b.row_ptr(k), c.row_ptr(ii), b.cols);
    }
  }
  return c;
}

Matrix matmul_transb(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows, b.rows);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < b.rows; ++j)
      c(static_cast<std::size_t>(i), j) = dot(a.row_ptr(static_cast<std::size_t>(i)), b.row_ptr(j), a.cols);
  return c;
}

Matrix gram(const Matrix& x) {
  Matrix g(x.cols, x.cols);
  const std::ptrdiff_t p = static_cast<std::ptrdiff_t>(x.cols);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t j = 0; j < p; ++j) {
    const std::size_t jj = static_cast<std::size_t>(j);
    for (std::size_t k = jj; k < x.cols; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < x.rows; ++i) s += x(i, jj) * x(i, k);
      g(jj, k) = s;
      g(k, jj) = s;
    }
  }
  return g;
}

Matrix cholesky_lower(const Matrix& a) {
  if (a.rows != a.cols) throw std::invalid_argument("cholesky: matrix not square");
  const std::size_t n = a.rows;
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j) - dot(l.row_ptr(j), l.row_ptr(j), j);
    if (d <= 0.0)
      throw std::runtime_error("cholesky: matrix not positive definite (pivot " +
                               std::to_string(j) + ")");
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i)
      l(i, j) = (a(i, j) - dot(l.row_ptr(i), l.row_ptr(j), j)) / ljj;
  }
  return l;
}

std::vector<double> solve_upper_from_lower(const Matrix& l, const std::vector<double>& b) {
  const std::size_t n = l.rows;
  std::vector<double> x(b);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = x[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x[k];
    x[ii] = s / l(ii, ii);
  }
  return x;
}

std::vector<double> symmetric_eigenvalues(Matrix a, int max_sweeps) {
  if (a.rows != a.cols) throw std::invalid_argument("eigenvalues: matrix not square");
  const std::size_t n = a.rows;
  if (n == 0) return {};
  if (n == 1) return {a(0, 0)};

  double norm = 0.0;
  for (double v : a.data) norm = std::max(norm, std::abs(v));
  const double stop = 1e-14 * std::max(norm, 1.0);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off = std::max(off, std::abs(a(i, j)));
    if (off < stop) break;

    for (std::size_t pq = 0; pq < n; ++pq) {
      for (std::size_t q = pq + 1; q < n; ++q) {
        const std::size_t p = pq;
        const double apq = a(p, q);
        if (std::abs(apq) < stop * 1e-2) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }

  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

double min_symmetric_eigenvalue(const Matrix& a) { return symmetric_eigenvalues(a).front(); }

}  // namespace fnc
