#pragma once

#include <span>
#include <vector>

namespace chirplet {

// Global least-squares polynomial detrending. The fit runs in the scaled
// variable u = (t - t_mid) / t_half to keep the Vandermonde system sane up
// to degree 10.
struct DetrendResult {
  int degree = 0;
  double t_mid = 0.0;
  double t_half = 1.0;
  std::vector<double> coefficients;  // c_k of sum c_k u^k
  std::vector<double> trend;         // fitted polynomial at the inputs
  std::vector<double> residual;      // y - trend
};

DetrendResult polynomial_detrend(std::span<const double> t,
                                 std::span<const double> y, int degree);

// Fitted polynomial value at an arbitrary time.
double detrend_eval(const DetrendResult& fit, double t);

}  // namespace chirplet
