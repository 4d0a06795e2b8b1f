#include "chirplet/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "chirplet/errors.hpp"

namespace chirplet {

bool cholesky_factor(const SymmetricMatrix& a, SymmetricMatrix& l) {
  const std::size_t n = a.n;
  l = SymmetricMatrix::zeros(n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a.at(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l.at(j, k) * l.at(j, k);
    if (!(d > 0.0)) return false;
    l.at(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a.at(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l.at(i, k) * l.at(j, k);
      l.at(i, j) = s / l.at(j, j);
    }
  }
  return true;
}

std::vector<double> cholesky_solve(const SymmetricMatrix& a,
                                   std::span<const double> b) {
  const std::size_t n = a.n;
  if (b.size() != n) throw std::invalid_argument("cholesky_solve: size mismatch");

  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, a.at(i, i));

  SymmetricMatrix l = SymmetricMatrix::zeros(n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a.at(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l.at(j, k) * l.at(j, k);
    if (!(d > max_diag * 1e-15)) {
      const double est = d > 0.0 ? max_diag / d : std::numeric_limits<double>::infinity();
      throw ill_conditioned_error("cholesky_solve: matrix not numerically positive definite", est);
    }
    l.at(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a.at(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l.at(i, k) * l.at(j, k);
      l.at(i, j) = s / l.at(j, j);
    }
  }

  // forward then backward substitution
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l.at(i, k) * y[k];
    y[i] = s / l.at(i, i);
  }
  std::vector<double> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= l.at(k, ii) * x[k];
    x[ii] = s / l.at(ii, ii);
  }
  return x;
}

std::vector<double> qr_least_squares(std::size_t rows, std::size_t cols,
                                     std::vector<double> a,
                                     std::vector<double> b) {
  if (a.size() != rows * cols || b.size() != rows || rows < cols)
    throw std::invalid_argument("qr_least_squares: bad dimensions");

  // Householder triangularization applied to [A | b] in place.
  for (std::size_t k = 0; k < cols; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < rows; ++i) norm += a[i * cols + k] * a[i * cols + k];
    norm = std::sqrt(norm);
    if (norm == 0.0)
      throw ill_conditioned_error("qr_least_squares: rank-deficient column",
                                  std::numeric_limits<double>::infinity());
    if (a[k * cols + k] > 0.0) norm = -norm;

    std::vector<double> v(rows - k);
    v[0] = a[k * cols + k] - norm;
    for (std::size_t i = k + 1; i < rows; ++i) v[i - k] = a[i * cols + k];
    double vtv = 0.0;
    for (double vi : v) vtv += vi * vi;
    if (vtv == 0.0) continue;

    for (std::size_t j = k; j < cols; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < rows; ++i) dot += v[i - k] * a[i * cols + j];
      const double f = 2.0 * dot / vtv;
      for (std::size_t i = k; i < rows; ++i) a[i * cols + j] -= f * v[i - k];
    }
    double dot = 0.0;
    for (std::size_t i = k; i < rows; ++i) dot += v[i - k] * b[i];
    const double f = 2.0 * dot / vtv;
    for (std::size_t i = k; i < rows; ++i) b[i] -= f * v[i - k];
  }

  std::vector<double> x(cols);
  for (std::size_t ii = cols; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t j = ii + 1; j < cols; ++j) s -= a[ii * cols + j] * x[j];
    const double r = a[ii * cols + ii];
    if (r == 0.0)
      throw ill_conditioned_error("qr_least_squares: singular triangular factor",
                                  std::numeric_limits<double>::infinity());
    x[ii] = s / r;
  }
  return x;
}

}  // namespace chirplet
