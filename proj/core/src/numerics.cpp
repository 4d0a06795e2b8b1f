#include "chirplet/numerics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chirplet {

double trapezoid(std::span<const double> values, double dx) {
  if (values.size() < 2) return 0.0;
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
  return sum * dx;
}

namespace {

// Newton-form coefficients of the degree-4 interpolant through
// (k*h, y[k+2]), k = -2..2. Returns c[0..4] with
// p(x) = c0 + c1 x + c2 x^2 + c3 x^3 + c4 x^4.
void quartic_coefficients(const double y[5], double h, double c[5]) {
  // Finite-difference table in units of h.
  const double d1[4] = {y[1] - y[0], y[2] - y[1], y[3] - y[2], y[4] - y[3]};
  const double d2[3] = {d1[1] - d1[0], d1[2] - d1[1], d1[3] - d1[2]};
  const double d3[2] = {d2[1] - d2[0], d2[2] - d2[1]};
  const double d4 = d3[1] - d3[0];

  // Newton polynomial about x0 = -2h expanded to monomials in t = x/h:
  // p = y0 + d1[0] (t+2) + d2[0]/2 (t+2)(t+1) + d3[0]/6 (t+2)(t+1)t
  //       + d4/24 (t+2)(t+1)t(t-1)
  const double a0 = y[0];
  const double a1 = d1[0];
  const double a2 = d2[0] / 2.0;
  const double a3 = d3[0] / 6.0;
  const double a4 = d4 / 24.0;

  // (t+2)          = t + 2
  // (t+2)(t+1)     = t^2 + 3t + 2
  // (t+2)(t+1)t    = t^3 + 3t^2 + 2t
  // (t+2)(t+1)t(t-1) = t^4 + 2t^3 - t^2 - 2t
  const double b0 = a0 + 2.0 * a1 + 2.0 * a2;
  const double b1 = a1 + 3.0 * a2 + 2.0 * a3 - 2.0 * a4;
  const double b2 = a2 + 3.0 * a3 - a4;
  const double b3 = a3 + 2.0 * a4;
  const double b4 = a4;

  const double ih = 1.0 / h;
  c[0] = b0;
  c[1] = b1 * ih;
  c[2] = b2 * ih * ih;
  c[3] = b3 * ih * ih * ih;
  c[4] = b4 * ih * ih * ih * ih;
}

}  // namespace

double quartic_value(const double y[5], double h, double x) {
  double c[5];
  quartic_coefficients(y, h, c);
  return c[0] + x * (c[1] + x * (c[2] + x * (c[3] + x * c[4])));
}

double quartic_first_derivative(const double y[5], double h, double x) {
  double c[5];
  quartic_coefficients(y, h, c);
  return c[1] + x * (2.0 * c[2] + x * (3.0 * c[3] + x * 4.0 * c[4]));
}

double quartic_second_derivative(const double y[5], double h, double x) {
  double c[5];
  quartic_coefficients(y, h, c);
  return 2.0 * c[2] + x * (6.0 * c[3] + x * 12.0 * c[4]);
}

double GaussianNoise::next_uniform() {
  // (0, 1]: avoids log(0) in Box-Muller below.
  const std::uint64_t r = engine_();
  return (static_cast<double>(r >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianNoise::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

}  // namespace chirplet
