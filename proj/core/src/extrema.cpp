#include "chirplet/extrema.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chirplet/errors.hpp"
#include "chirplet/numerics.hpp"

namespace chirplet {

namespace {

// scipy-style topographic prominence of the peak at `idx` in `v` (written
// for maxima; call with negated values for minima).
double prominence_at(std::span<const double> v, std::size_t idx) {
  const double peak = v[idx];
  double left_min = peak;
  for (std::size_t i = idx; i-- > 0;) {
    if (v[i] > peak) break;
    left_min = std::min(left_min, v[i]);
  }
  double right_min = peak;
  for (std::size_t i = idx + 1; i < v.size(); ++i) {
    if (v[i] > peak) break;
    right_min = std::min(right_min, v[i]);
  }
  return peak - std::max(left_min, right_min);
}

struct RawExtremum {
  std::size_t first;  // start of the (possibly length-1) flat run
  std::size_t last;   // end of the run
  ExtremumKind kind;

  std::size_t index() const { return (first + last) / 2; }
  bool is_plateau() const { return last > first; }
};

}  // namespace

double second_derivative(std::span<const double> half_values, double omega_max,
                         std::size_t index) {
  if (half_values.size() < 5)
    throw std::invalid_argument("second_derivative: need at least 5 samples");
  if (index < 2 || index + 2 >= half_values.size())
    throw std::invalid_argument("second_derivative: index too close to boundary");
  const double h = omega_max / static_cast<double>(half_values.size() - 1);
  double y[5];
  for (int k = -2; k <= 2; ++k)
    y[k + 2] = half_values[static_cast<std::size_t>(static_cast<long>(index) + k)];
  return quartic_second_derivative(y, h, 0.0);
}

double second_derivative(std::span<const double> half_values, double omega_max,
                         double location) {
  if (half_values.size() < 5)
    throw std::invalid_argument("second_derivative: need at least 5 samples");
  const double h = omega_max / static_cast<double>(half_values.size() - 1);
  const double idx_real = location / h;
  long center = std::lround(idx_real);
  const long last = static_cast<long>(half_values.size()) - 1;
  if (idx_real < 2.0 - 0.5 || idx_real > static_cast<double>(last) - 1.5)
    throw std::invalid_argument("second_derivative: location too close to boundary");
  center = std::clamp(center, 2L, last - 2);
  double y[5];
  for (int k = -2; k <= 2; ++k) y[k + 2] = half_values[static_cast<std::size_t>(center + k)];
  return quartic_second_derivative(y, h, location - static_cast<double>(center) * h);
}

ExtremaResult find_extrema(std::span<const double> half_values, double omega_max,
                           double min_prominence) {
  const std::size_t m = half_values.size();
  if (m < 5) throw std::invalid_argument("find_extrema: need at least 5 samples");
  if (!(omega_max > 0.0)) throw std::invalid_argument("find_extrema: omega_max must be positive");

  double vmax = half_values[0], vmin = half_values[0];
  for (double v : half_values) {
    vmax = std::max(vmax, v);
    vmin = std::min(vmin, v);
  }
  if (vmax == vmin) throw degenerate_input_error("find_extrema: constant input");

  const double h = omega_max / static_cast<double>(m - 1);

  // Slope sign changes; zero slopes (plateaus) collapse to their midpoint.
  std::vector<RawExtremum> raw;
  std::size_t i = 1;
  while (i + 1 < m) {
    const double dl = half_values[i] - half_values[i - 1];
    if (dl == 0.0) {
      ++i;
      continue;
    }
    // end of a plateau of equal values starting at i
    std::size_t j = i;
    while (j + 1 < m && half_values[j + 1] == half_values[j]) ++j;
    if (j + 1 >= m) break;
    const double dr = half_values[j + 1] - half_values[j];
    if (dl > 0.0 && dr < 0.0)
      raw.push_back({i, j, ExtremumKind::maximum});
    else if (dl < 0.0 && dr > 0.0)
      raw.push_back({i, j, ExtremumKind::minimum});
    i = j + 1;
  }

  ExtremaResult result;

  // Origin classification by one-sided slope; the function is even so w = 0
  // is always a critical point.
  std::size_t k = 1;
  while (k < m && half_values[k] == half_values[0]) ++k;
  result.origin = (k < m && half_values[k] > half_values[0]) ? ExtremumKind::minimum
                                                             : ExtremumKind::maximum;
  result.origin_value = half_values[0];
  {
    // even extension: f'' (0) from the centered stencil with f(-k h) = f(k h)
    double y[5] = {half_values[2], half_values[1], half_values[0], half_values[1],
                   half_values[2]};
    result.origin_second_deriv = quartic_second_derivative(y, h, 0.0);
  }

  std::vector<double> negated;
  for (const RawExtremum& r : raw)
    if (r.kind == ExtremumKind::minimum && negated.empty()) {
      negated.assign(half_values.begin(), half_values.end());
      for (double& v : negated) v = -v;
    }

  for (const RawExtremum& r : raw) {
    const bool is_max = r.kind == ExtremumKind::maximum;
    const double prom =
        is_max ? prominence_at(half_values, r.index()) : prominence_at(negated, r.index());
    if (prom < min_prominence) continue;

    double loc, val, sd;
    if (r.is_plateau()) {
      // flat run: report the true midpoint, curvature from the parabola
      // through the run's outer neighbours
      const double mid = 0.5 * (static_cast<double>(r.first) + static_cast<double>(r.last));
      const double h_eff = (mid - static_cast<double>(r.first) + 1.0) * h;
      loc = mid * h;
      val = half_values[r.first];
      sd = (half_values[r.first - 1] - 2.0 * val + half_values[r.last + 1]) / (h_eff * h_eff);
    } else {
      // 3-point parabola refinement around the grid extremum
      const double ym = half_values[r.index() - 1];
      const double y0 = half_values[r.index()];
      const double yp = half_values[r.index() + 1];
      const double denom = ym - 2.0 * y0 + yp;
      double offset = 0.0;
      if (denom != 0.0) offset = 0.5 * (ym - yp) / denom;
      offset = std::clamp(offset, -1.0, 1.0);
      loc = (static_cast<double>(r.index()) + offset) * h;
      val = y0 - 0.25 * (ym - yp) * offset;

      if (r.index() >= 2 && r.index() + 2 < m)
        sd = second_derivative(half_values, omega_max, loc);
      else
        sd = denom / (h * h);  // near-boundary fallback: parabola curvature
    }

    // non-degeneracy: reject extrema whose curvature disagrees with the kind
    if (is_max && !(sd < 0.0)) continue;
    if (!is_max && !(sd > 0.0)) continue;

    result.interior.push_back({loc, val, sd, r.kind});
  }

  std::sort(result.interior.begin(), result.interior.end(),
            [](const ExtremumPoint& a, const ExtremumPoint& b) { return a.location < b.location; });
  return result;
}

}  // namespace chirplet
