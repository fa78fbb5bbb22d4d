#pragma once

#include <array>
#include <stdexcept>

namespace mixdom {

/// Covariance parameters of the nugget + Ornstein-Uhlenbeck model.
/// theta1 is the nugget (measurement error) variance, theta2 = sigma^2 * kappa
/// and theta3 = kappa, so the marginal OU variance is theta2 / theta3.
struct ThetaParams {
  double theta1;
  double theta2;
  double theta3;

  double operator[](int i) const {
    switch (i) {
      case 0: return theta1;
      case 1: return theta2;
      case 2: return theta3;
      default: throw std::out_of_range("ThetaParams index");
    }
  }

  std::array<double, 3> as_array() const { return {theta1, theta2, theta3}; }

  /// Marginal variance of the latent OU path.
  double ou_variance() const { return theta2 / theta3; }

  bool operator==(const ThetaParams&) const = default;
};

/// Throws std::invalid_argument unless all three components are strictly
/// positive and finite.
void validate(const ThetaParams& theta);

/// Compact box constraint for the parameter search, componentwise
/// 0 < lower < upper < infinity.
struct ParamBox {
  ThetaParams lower;
  ThetaParams upper;
};

void validate(const ParamBox& box);

/// Default search box used when no configuration overrides it.
ParamBox default_box();

}  // namespace mixdom
