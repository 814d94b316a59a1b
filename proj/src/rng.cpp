#include "monogamy/rng.hpp"

#include <cmath>
#include <numbers>

namespace monogamy {

std::complex<double> CounterRng::complex_normal() noexcept {
  const double r = std::sqrt(-std::log(uniform_open_low()));
  const double theta = 2.0 * std::numbers::pi * uniform();
  return {r * std::cos(theta), r * std::sin(theta)};
}

double CounterRng::normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform_open_low()));
  const double theta = 2.0 * std::numbers::pi * uniform();
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

}  // namespace monogamy
