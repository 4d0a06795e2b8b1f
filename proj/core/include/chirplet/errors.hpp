#pragma once

#include <stdexcept>
#include <string>

namespace chirplet {

// Thrown when a linear solve meets a numerically singular or indefinite
// matrix. Carries a rough condition estimate (pivot-ratio based).
class ill_conditioned_error : public std::runtime_error {
public:
  ill_conditioned_error(const std::string& what, double condition_estimate)
      : std::runtime_error(what), condition_estimate_(condition_estimate) {}

  double condition_estimate() const noexcept { return condition_estimate_; }

private:
  double condition_estimate_;
};

// Thrown when an input is structurally degenerate (zero spectrum, amplitude
// everywhere below the phase floor, constant extrema input, ...).
class degenerate_input_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

}  // namespace chirplet
