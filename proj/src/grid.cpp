#include "mixdom/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace mixdom {

double MixedDomainGrid::spacing() const {
  return std::pow(static_cast<double>(n), delta - 1.0);
}

MixedDomainGrid make_grid(std::size_t n, double delta) {
  if (n == 0) throw std::invalid_argument("make_grid: n must be >= 1");
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw std::invalid_argument("make_grid: delta must lie in [0, 1)");
  }
  return MixedDomainGrid{n, delta};
}

}  // namespace mixdom
