#include "chirplet/detrend.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chirplet/linalg.hpp"

namespace chirplet {

DetrendResult polynomial_detrend(std::span<const double> t,
                                 std::span<const double> y, int degree) {
  if (degree < 1 || degree > 10)
    throw std::invalid_argument("polynomial_detrend: degree must be in [1, 10]");
  if (t.size() != y.size()) throw std::invalid_argument("polynomial_detrend: size mismatch");
  const std::size_t n = t.size();
  const std::size_t cols = static_cast<std::size_t>(degree) + 1;
  if (n < cols) throw std::invalid_argument("polynomial_detrend: fewer samples than degree + 1");

  const auto [lo_it, hi_it] = std::minmax_element(t.begin(), t.end());
  DetrendResult fit;
  fit.degree = degree;
  fit.t_mid = 0.5 * (*lo_it + *hi_it);
  fit.t_half = 0.5 * (*hi_it - *lo_it);
  if (!(fit.t_half > 0.0)) throw std::invalid_argument("polynomial_detrend: degenerate time range");

  std::vector<double> vandermonde(n * cols);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = (t[i] - fit.t_mid) / fit.t_half;
    double p = 1.0;
    for (std::size_t k = 0; k < cols; ++k) {
      vandermonde[i * cols + k] = p;
      p *= u;
    }
  }
  fit.coefficients = qr_least_squares(n, cols, std::move(vandermonde),
                                      std::vector<double>(y.begin(), y.end()));

  fit.trend.resize(n);
  fit.residual.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    fit.trend[i] = detrend_eval(fit, t[i]);
    fit.residual[i] = y[i] - fit.trend[i];
  }
  return fit;
}

double detrend_eval(const DetrendResult& fit, double t) {
  const double u = (t - fit.t_mid) / fit.t_half;
  double acc = 0.0;
  for (std::size_t k = fit.coefficients.size(); k-- > 0;)
    acc = acc * u + fit.coefficients[k];
  return acc;
}

}  // namespace chirplet
