#include "mixdom/params.hpp"

#include <cmath>
#include <stdexcept>

namespace mixdom {

void validate(const ThetaParams& theta) {
  for (double v : theta.as_array()) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("ThetaParams: all components must be positive and finite");
    }
  }
}

void validate(const ParamBox& box) {
  validate(box.lower);
  validate(box.upper);
  for (int i = 0; i < 3; ++i) {
    if (!(box.lower[i] < box.upper[i])) {
      throw std::invalid_argument("ParamBox: lower must be componentwise below upper");
    }
  }
}

ParamBox default_box() {
  return ParamBox{ThetaParams{1e-3, 1e-3, 1e-3}, ThetaParams{1e3, 1e3, 1e3}};
}

}  // namespace mixdom
