#pragma once

#include <vector>

#include "mixdom/grid.hpp"
#include "mixdom/params.hpp"

namespace mixdom {

/// Modified Cholesky decomposition of the covariance
///   Sigma = (theta2/theta3) * exp(-theta3 |s_i - s_j|) + theta1 * I
/// on a regular grid: Sigma^-1 = G' T^-1 G, where G is unit lower bidiagonal
/// with subdiagonal -rho (rho = exp(-theta3 * spacing)), D is the diagonal of
/// the AR(1) innovation variances (first entry theta2/theta3, the rest
/// theta2/theta3 * (1 - rho^2)), and T = D + theta1 * G G' is symmetric
/// positive definite tridiagonal:
///   t_diag[0]   = d_first + theta1            (row 1 of G has no subdiagonal)
///   t_diag[i>0] = d_rest + theta1 * (1 + rho^2)
///   t_off[i]    = -theta1 * rho
/// An unpivoted LDL' factorization of T makes every Sigma operation O(n),
/// and det G = 1 gives log det Sigma = sum(log ldl_d).
struct TridiagFactor {
  ThetaParams theta;
  MixedDomainGrid grid;
  double rho;
  double d_first;
  double d_rest;
  std::vector<double> t_diag;
  std::vector<double> t_off;
  std::vector<double> ldl_d;
  std::vector<double> ldl_l;

  std::size_t n() const { return t_diag.size(); }
};

/// Builds the factor in O(n). 1 - rho^2 is computed as -expm1(-2*theta3*h)
/// so tiny spacings do not cancel d_rest to zero. Throws std::runtime_error
/// if positive definiteness is lost (any ldl_d <= 0).
TridiagFactor build_factor(const ThetaParams& theta, const MixedDomainGrid& grid);

/// log det Sigma in O(n).
double logdet_sigma(const TridiagFactor& factor);

/// Sigma^-1 b computed as G'(T^-1(G b)); O(n).
std::vector<double> sigma_solve(const TridiagFactor& factor, const std::vector<double>& b);

/// Half solve w = L^-1 G v with T = L D L'. Building block for quadratic
/// forms: a' Sigma^-1 b = sum_i w_i(a) w_i(b) / ldl_d[i], which makes
/// quad_form symmetric in its arguments bitwise and quad_form(b, b) > 0
/// structural.
std::vector<double> half_solve(const TridiagFactor& factor, const std::vector<double>& v);

/// a' Sigma^-1 b with compensated summation; O(n).
double quad_form(const TridiagFactor& factor, const std::vector<double>& a,
                 const std::vector<double>& b);

}  // namespace mixdom
