// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef KREINBEM_KERNELS_HPP
#define KREINBEM_KERNELS_HPP

#include <complex>
#include <span>

#include <Eigen/Dense>

namespace kreinbem
{

using cplx = std::complex<double>;

//
// Complex-argument Bessel and Hankel functions.
//
// Small arguments (|zeta| <= 12) use the ascending series; larger arguments use
// the Hankel asymptotic expansion truncated at its smallest term. Only arguments
// with Im(zeta) >= 0 are supported for the Hankel functions; J_m is entire.
//

/// Digamma function for real x > 0 (upward recurrence to x >= 10, then the
/// asymptotic series).
double digamma(double x);

/// J_m(zeta) for integer m (negative orders via J_{-m} = (-1)^m J_m).
cplx bessel_j(int m, cplx zeta);

/// Y_m(zeta) for integer m >= 0, zeta off the cut (-inf, 0].
cplx bessel_y(int m, cplx zeta);

/// J_nu(zeta) for real nu not a negative integer, summed from the ascending series
/// only. Meant for moderate |zeta| and for cross-checking the closed forms.
cplx bessel_j_series(double nu, cplx zeta);

/// Y_nu(zeta) = (J_nu cos(nu pi) - J_{-nu}) / sin(nu pi) for non-integer nu > 0.
cplx bessel_y_series(double nu, cplx zeta);

/// H^{(1)}_order(zeta) for integer or half-integer order >= 0.
/// Throws DomainError for zeta = 0 or Im(zeta) < -1e-12.
cplx hankel1(double order, cplx zeta);

/// H^{(1)}_0 and H^{(1)}_1 at the same argument, sharing one series pass.
struct Hankel01
{
  cplx h0;
  cplx h1;
};
Hankel01 hankel1_01(cplx zeta);

/// Square root on the branch Im(w) >= 0. Real z > 0 maps to +sqrt(z).
cplx sqrt_upper(cplx z);

/// Spectral parameter z together with its cached root sqrt_upper(z).
class SpectralParameter
{
public:
  SpectralParameter() = default;
  SpectralParameter(cplx z) : z_(z), sqrt_z_(sqrt_upper(z)) {}  // NOLINT: implicit by design of call sites
  SpectralParameter(double z) : SpectralParameter(cplx(z, 0.0)) {}  // NOLINT

  cplx z() const { return z_; }
  cplx sqrt_z() const { return sqrt_z_; }
  bool is_zero() const { return z_ == cplx(0.0, 0.0); }
  SpectralParameter conj() const { return SpectralParameter(std::conj(z_)); }

private:
  cplx z_{0.0, 0.0};
  cplx sqrt_z_{0.0, 0.0};
};

//
// Fundamental solution E_n(z; x) of (-Delta - z) in R^n:
//   E_n = (i/4) (2 pi |x| / sqrt z)^{(2-n)/2} H^{(1)}_{(n-2)/2}(sqrt z |x|),  z != 0,
//   E_2 = -ln|x| / (2 pi),  E_n = |x|^{2-n} / ((n-2) omega_{n-1}),        z  = 0.
//

/// Radial profile F(r) = E_n(z; x), |x| = r, and its first two r-derivatives.
struct RadialProfile
{
  cplx value;
  cplx d1;
  cplx d2;
};

/// n in {2, ..., 5}; derivatives requested up to `order` (0, 1 or 2) for n in {2, 3}.
RadialProfile radial_profile(int n, const SpectralParameter &z, double r, int order = 0);

/// E_n(z; x) for n in {2, 3, 4, 5}. Only |x| enters, so x may have any length.
cplx fundamental_solution(int n, const SpectralParameter &z, std::span<const double> x);

/// Gradient of E_n(z; .) at x, n in {2, 3}, with x.size() == n.
Eigen::VectorXcd fundamental_gradient(int n, const SpectralParameter &z,
                                      std::span<const double> x);

/// Hessian of E_n(z; .) at x, n in {2, 3}, with x.size() == n.
Eigen::MatrixXcd fundamental_hessian(int n, const SpectralParameter &z,
                                     std::span<const double> x);

/// Value, gradient and Hessian of E_n(z; x) - E_n(0; x) for n in {2, 3}, evaluated
/// without cancellation for small |x|.
struct KernelValue
{
  cplx value;
  Eigen::VectorXcd gradient;
  Eigen::MatrixXcd hessian;
};
KernelValue fundamental_difference(int n, const SpectralParameter &z,
                                   std::span<const double> x);

/// Regular part G(r) = E_2(z; r) + ln(r) / (2 pi) with derivatives. G is continuous
/// at r = 0 with G(0) = i/4 - (ln(sqrt(z)/2) + gamma) / (2 pi); zero when z = 0.
RadialProfile helmholtz2d_regular_part(const SpectralParameter &z, double r);

/// Limit of helmholtz2d_regular_part as r -> 0.
cplx helmholtz2d_regular_limit(const SpectralParameter &z);

/// Fast 2-D kernel for assembly loops: E_2(z; r) and dE_2/dr.
struct Kernel2d
{
  cplx value;
  cplx d1;
};
Kernel2d helmholtz2d(const SpectralParameter &z, double r);

/// Value-only fast path.
cplx helmholtz2d_value(const SpectralParameter &z, double r);

}  // namespace kreinbem

#endif  // KREINBEM_KERNELS_HPP
