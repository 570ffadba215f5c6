// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include "kreinbem/errors.hpp"
#include "kreinbem/kernels.hpp"

namespace kreinbem
{

namespace
{

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;
constexpr cplx kI{0.0, 1.0};

// |sqrt(z) r| below which the regular part uses its own series.
constexpr double kRegularSeriesRadius = 4.0;

double norm_of(std::span<const double> x)
{
  double s = 0.0;
  for (double v : x)
  {
    s += v * v;
  }
  return std::sqrt(s);
}

void check_dimension(int n, int max_n)
{
  if (n < 2 || n > max_n)
  {
    throw DomainError("fundamental solution: unsupported dimension " + std::to_string(n));
  }
}

double sphere_area(int n)  // omega_{n-1}, area of the unit sphere in R^n
{
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

RadialProfile laplace_profile(int n, double r)
{
  if (n == 2)
  {
    return {-std::log(r) / (2.0 * kPi), -1.0 / (2.0 * kPi * r), 1.0 / (2.0 * kPi * r * r)};
  }
  const double omega = sphere_area(n);
  return {std::pow(r, 2.0 - n) / ((n - 2) * omega), -std::pow(r, 1.0 - n) / omega,
          (n - 1) * std::pow(r, -double(n)) / omega};
}

// Assemble gradient and Hessian of a radial function from F'(r), F''(r).
KernelValue radial_derivatives(std::span<const double> x, double r, cplx value, cplx d1,
                               cplx d2)
{
  const auto n = static_cast<Eigen::Index>(x.size());
  KernelValue out;
  out.value = value;
  out.gradient.resize(n);
  out.hessian.resize(n, n);
  const cplx d1_over_r = d1 / r;
  for (Eigen::Index j = 0; j < n; ++j)
  {
    out.gradient(j) = d1_over_r * x[j];
  }
  const double r2 = r * r;
  for (Eigen::Index j = 0; j < n; ++j)
  {
    for (Eigen::Index k = j; k < n; ++k)
    {
      const double xx = x[j] * x[k] / r2;
      cplx h = d2 * xx - d1_over_r * xx;
      if (j == k)
      {
        h += d1_over_r;
      }
      out.hessian(j, k) = h;
      out.hessian(k, j) = h;
    }
  }
  return out;
}

void check_point(int n, std::span<const double> x, double r)
{
  if (static_cast<int>(x.size()) != n)
  {
    throw DomainError("kernel: point dimension does not match n");
  }
  if (r == 0.0)
  {
    throw DomainError("kernel evaluated at the pole x = 0");
  }
}

// D(r) = (e^{ikr} - 1) / (4 pi r) and its derivatives.
RadialProfile difference3d(cplx k, double r)
{
  const cplx ikr = kI * k * r;
  if (std::abs(ikr) < 0.5)
  {
    cplx value(0.0), d1(0.0), d2(0.0);
    cplx ik_m = kI * k;  // (ik)^m
    double fact = 1.0;   // m!
    double r_pow = 1.0;  // r^{m-1}
    double r_pow1 = 0.0; // r^{m-2}
    double r_pow2 = 0.0; // r^{m-3}
    for (int m = 1; m < 40; ++m)
    {
      fact *= m;
      const cplx c = ik_m / fact;
      value += c * r_pow;
      d1 += c * double(m - 1) * r_pow1;
      d2 += c * double((m - 1) * (m - 2)) * r_pow2;
      if (std::abs(c) * r_pow < 1e-18 * std::abs(value) && m > 3)
      {
        break;
      }
      r_pow2 = r_pow1;
      r_pow1 = r_pow;
      r_pow *= r;
      ik_m *= kI * k;
    }
    const double s = 1.0 / (4.0 * kPi);
    return {s * value, s * d1, s * d2};
  }
  const cplx e = std::exp(ikr);
  const cplx g = e - 1.0;
  const cplx g1 = kI * k * e;
  const cplx g2 = -k * k * e;
  const double s = 1.0 / (4.0 * kPi);
  return {s * g / r, s * (g1 * r - g) / (r * r),
          s * (g2 * r * r - 2.0 * g1 * r + 2.0 * g) / (r * r * r)};
}

}  // namespace

cplx sqrt_upper(cplx z)
{
  cplx w = std::sqrt(z);
  if (w.imag() < 0.0)
  {
    w = -w;
  }
  return w;
}

RadialProfile radial_profile(int n, const SpectralParameter &z, double r, int order)
{
  check_dimension(n, 5);
  if (!(r > 0.0))
  {
    throw DomainError("kernel evaluated at the pole x = 0");
  }
  if (order > 0 && n > 3)
  {
    throw DomainError("derivatives are only provided for n = 2, 3");
  }
  if (z.is_zero())
  {
    return laplace_profile(n, r);
  }
  const cplx k = z.sqrt_z();
  const cplx zeta = k * r;
  const double nu = 0.5 * (n - 2);
  const cplx c = (kI / 4.0) * std::pow(2.0 * kPi, -nu);
  const cplx scale = c * std::pow(k / r, nu);  // c_n (k/r)^nu

  RadialProfile out{};
  if (n == 2 && order == 1)
  {
    const Hankel01 h = hankel1_01(zeta);
    out.value = scale * h.h0;
    out.d1 = -scale * k * h.h1;
    return out;
  }
  const cplx h_nu = hankel1(nu, zeta);
  out.value = scale * h_nu;
  if (order == 0)
  {
    return out;
  }
  const cplx h_next = hankel1(nu + 1.0, zeta);
  out.d1 = -scale * k * h_next;
  if (order >= 2)
  {
    out.d2 = -scale * k * k * (h_nu - (2.0 * nu + 1.0) / zeta * h_next);
  }
  return out;
}

cplx fundamental_solution(int n, const SpectralParameter &z, std::span<const double> x)
{
  check_dimension(n, 5);
  const double r = norm_of(x);
  if (r == 0.0)
  {
    throw DomainError("kernel evaluated at the pole x = 0");
  }
  return radial_profile(n, z, r, 0).value;
}

Eigen::VectorXcd fundamental_gradient(int n, const SpectralParameter &z,
                                      std::span<const double> x)
{
  check_dimension(n, 3);
  const double r = norm_of(x);
  check_point(n, x, r);
  const RadialProfile p = radial_profile(n, z, r, 1);
  Eigen::VectorXcd g(n);
  for (int j = 0; j < n; ++j)
  {
    g(j) = p.d1 * (x[j] / r);
  }
  return g;
}

Eigen::MatrixXcd fundamental_hessian(int n, const SpectralParameter &z,
                                     std::span<const double> x)
{
  check_dimension(n, 3);
  const double r = norm_of(x);
  check_point(n, x, r);
  const RadialProfile p = radial_profile(n, z, r, 2);
  return radial_derivatives(x, r, p.value, p.d1, p.d2).hessian;
}

KernelValue fundamental_difference(int n, const SpectralParameter &z,
                                   std::span<const double> x)
{
  check_dimension(n, 3);
  const double r = norm_of(x);
  check_point(n, x, r);
  if (z.is_zero())
  {
    return radial_derivatives(x, r, 0.0, 0.0, 0.0);
  }
  const RadialProfile p =
      n == 2 ? helmholtz2d_regular_part(z, r) : difference3d(z.sqrt_z(), r);
  return radial_derivatives(x, r, p.value, p.d1, p.d2);
}

cplx helmholtz2d_regular_limit(const SpectralParameter &z)
{
  if (z.is_zero())
  {
    return 0.0;
  }
  return kI / 4.0 - (std::log(0.5 * z.sqrt_z()) + kEulerGamma) / (2.0 * kPi);
}

RadialProfile helmholtz2d_regular_part(const SpectralParameter &z, double r)
{
  if (z.is_zero())
  {
    return {0.0, 0.0, 0.0};
  }
  const double inv2pi = 1.0 / (2.0 * kPi);
  if (!(r > 0.0))
  {
    // G''(r) grows like ln r; only the value has a limit.
    throw DomainError("regular part evaluated at r = 0; use helmholtz2d_regular_limit");
  }
  if (std::abs(z.sqrt_z()) * r > kRegularSeriesRadius)
  {
    const RadialProfile p = radial_profile(2, z, r, 2);
    return {p.value + std::log(r) * inv2pi, p.d1 + inv2pi / r, p.d2 - inv2pi / (r * r)};
  }
  // G = C0 J0 - ln(r)/(2 pi) (J0 - 1) + (1/(2 pi)) sum_{k>=1} H_k a_k,
  // a_k = (-z r^2/4)^k / (k!)^2, b_k = a_k / r^2.
  const cplx c0 = helmholtz2d_regular_limit(z);
  const cplx q = -0.25 * z.z();
  const double r2 = r * r;
  cplx b = q;  // b_1 = (-z/4)
  double harmonic = 0.0;
  cplx s_b(0.0), s_j1(0.0), s_j2(0.0), s_h(0.0), s_h1(0.0), s_h2(0.0);
  for (int k = 1; k < 80; ++k)
  {
    if (k > 1)
    {
      b *= q * r2 / (double(k) * double(k));
    }
    harmonic += 1.0 / k;
    const double tk = 2.0 * k;
    s_b += b;
    s_j1 += tk * b;
    s_j2 += tk * (tk - 1.0) * b;
    s_h += harmonic * b;
    s_h1 += harmonic * tk * b;
    s_h2 += harmonic * tk * (tk - 1.0) * b;
    const double scale = std::abs(s_b) + std::abs(s_j2) + std::abs(s_h2);
    if (std::abs(q) * r2 < double(k) * double(k) &&
        std::abs(b) * tk * tk * (1.0 + harmonic) < 1e-17 * scale)
    {
      break;
    }
  }
  const double log_r = std::log(r);
  const cplx s_j = s_b * r2;
  RadialProfile out;
  out.value = c0 * (1.0 + s_j) - inv2pi * log_r * s_j + inv2pi * s_h * r2;
  out.d1 = r * (c0 * s_j1 - inv2pi * (s_b + log_r * s_j1) + inv2pi * s_h1);
  out.d2 = c0 * s_j2 - inv2pi * (-s_b + 2.0 * s_j1 + log_r * s_j2) + inv2pi * s_h2;
  return out;
}

Kernel2d helmholtz2d(const SpectralParameter &z, double r)
{
  if (z.is_zero())
  {
    return {-std::log(r) / (2.0 * kPi), -1.0 / (2.0 * kPi * r)};
  }
  const cplx k = z.sqrt_z();
  const Hankel01 h = hankel1_01(k * r);
  return {(kI / 4.0) * h.h0, -(kI / 4.0) * k * h.h1};
}

cplx helmholtz2d_value(const SpectralParameter &z, double r)
{
  if (z.is_zero())
  {
    return -std::log(r) / (2.0 * kPi);
  }
  return (kI / 4.0) * hankel1(0.0, z.sqrt_z() * r);
}

}  // namespace kreinbem
