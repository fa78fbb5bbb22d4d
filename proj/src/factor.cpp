#include "mixdom/factor.hpp"

#include <cmath>
#include <stdexcept>

#include "mixdom/util.hpp"

namespace mixdom {

TridiagFactor build_factor(const ThetaParams& theta, const MixedDomainGrid& grid) {
  validate(theta);
  const std::size_t n = grid.n;
  const double h = grid.spacing();
  const double rho = std::exp(-theta.theta3 * h);
  const double one_minus_rho2 = -std::expm1(-2.0 * theta.theta3 * h);

  TridiagFactor f;
  f.theta = theta;
  f.grid = grid;
  f.rho = rho;
  f.d_first = theta.theta2 / theta.theta3;
  f.d_rest = f.d_first * one_minus_rho2;

  f.t_diag.resize(n);
  f.t_off.resize(n > 0 ? n - 1 : 0);
  f.t_diag[0] = f.d_first + theta.theta1;
  const double interior = f.d_rest + theta.theta1 * (1.0 + rho * rho);
  for (std::size_t i = 1; i < n; ++i) f.t_diag[i] = interior;
  const double off = -theta.theta1 * rho;
  for (std::size_t i = 0; i + 1 < n; ++i) f.t_off[i] = off;

  // Unpivoted LDL' of the SPD tridiagonal T.
  f.ldl_d.resize(n);
  f.ldl_l.resize(n > 0 ? n - 1 : 0);
  f.ldl_d[0] = f.t_diag[0];
  if (!(f.ldl_d[0] > 0.0)) throw std::runtime_error("build_factor: lost positive definiteness");
  for (std::size_t i = 1; i < n; ++i) {
    const double l = f.t_off[i - 1] / f.ldl_d[i - 1];
    f.ldl_l[i - 1] = l;
    f.ldl_d[i] = f.t_diag[i] - l * f.t_off[i - 1];
    if (!(f.ldl_d[i] > 0.0)) throw std::runtime_error("build_factor: lost positive definiteness");
  }
  return f;
}

double logdet_sigma(const TridiagFactor& factor) {
  // Product of ldl_d with the exponent tracked separately via frexp; one
  // final log instead of n of them.
  double mantissa = 1.0;
  long exponent = 0;
  for (double d : factor.ldl_d) {
    mantissa *= d;
    int e = 0;
    mantissa = std::frexp(mantissa, &e);
    exponent += e;
  }
  return std::log(mantissa) + static_cast<double>(exponent) * 0.6931471805599453;
}

namespace {

void apply_g(const TridiagFactor& f, const std::vector<double>& v, std::vector<double>& out) {
  const std::size_t n = f.n();
  out.resize(n);
  out[0] = v[0];
  const double rho = f.rho;
  for (std::size_t i = 1; i < n; ++i) out[i] = v[i] - rho * v[i - 1];
}

void forward_solve_inplace(const TridiagFactor& f, std::vector<double>& v) {
  const std::size_t n = f.n();
  for (std::size_t i = 1; i < n; ++i) v[i] -= f.ldl_l[i - 1] * v[i - 1];
}

}  // namespace

std::vector<double> half_solve(const TridiagFactor& factor, const std::vector<double>& v) {
  if (v.size() != factor.n()) throw std::invalid_argument("half_solve: length mismatch");
  std::vector<double> w;
  apply_g(factor, v, w);
  forward_solve_inplace(factor, w);
  return w;
}

std::vector<double> sigma_solve(const TridiagFactor& factor, const std::vector<double>& b) {
  if (b.size() != factor.n()) throw std::invalid_argument("sigma_solve: length mismatch");
  const std::size_t n = factor.n();
  std::vector<double> y;
  apply_g(factor, b, y);
  forward_solve_inplace(factor, y);
  for (std::size_t i = 0; i < n; ++i) y[i] /= factor.ldl_d[i];
  for (std::size_t i = n - 1; i-- > 0;) y[i] -= factor.ldl_l[i] * y[i + 1];
  // y = T^-1 G b; finish with G'.
  const double rho = factor.rho;
  for (std::size_t i = 0; i + 1 < n; ++i) y[i] -= rho * y[i + 1];
  return y;
}

double quad_form(const TridiagFactor& factor, const std::vector<double>& a,
                 const std::vector<double>& b) {
  if (a.size() != factor.n() || b.size() != factor.n()) {
    throw std::invalid_argument("quad_form: length mismatch");
  }
  const std::vector<double> wa = half_solve(factor, a);
  const std::vector<double> wb = half_solve(factor, b);
  KahanSum sum;
  for (std::size_t i = 0; i < wa.size(); ++i) sum.add(wa[i] * wb[i] / factor.ldl_d[i]);
  return sum.value();
}

}  // namespace mixdom
