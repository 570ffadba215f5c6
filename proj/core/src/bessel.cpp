// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>
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

// Series below this modulus, Hankel asymptotics above.
constexpr double kSeriesRadius = 12.0;
constexpr double kTermTol = 1e-17;
constexpr int kMaxSeriesTerms = 150;
constexpr int kMaxAsymptoticTerms = 40;

cplx ipow(cplx base, int m)
{
  cplx result(1.0, 0.0);
  if (m < 0)
  {
    base = 1.0 / base;
    m = -m;
  }
  while (m > 0)
  {
    if (m & 1)
    {
      result *= base;
    }
    base *= base;
    m >>= 1;
  }
  return result;
}

double factorial(int n)
{
  double f = 1.0;
  for (int k = 2; k <= n; ++k)
  {
    f *= k;
  }
  return f;
}

bool is_integer(double v) { return v == std::floor(v); }

bool is_half_integer(double v) { return is_integer(v - 0.5); }

// Past the peak of the series (term ratio |t| / (k (m + k)) < 1) and below
// tolerance relative to the running maximum.
bool series_converged(double term_mag, double scale, int k, int m, double t_mag)
{
  return double(k) * double(m + k) > t_mag && term_mag <= kTermTol * scale;
}

// Integer order ascending series for J_m, m >= 0.
cplx j_series_int(int m, cplx zeta)
{
  const cplx half = 0.5 * zeta;
  const cplx t = -half * half;
  const double t_mag = std::abs(t);
  cplx term(1.0 / factorial(m), 0.0);
  cplx sum = term;
  double scale = std::abs(term);
  for (int k = 1; k < kMaxSeriesTerms; ++k)
  {
    term *= t / (double(k) * double(m + k));
    sum += term;
    const double mag = std::abs(term);
    scale = std::max(scale, mag);
    if (series_converged(mag, scale, k, m, t_mag))
    {
      break;
    }
  }
  return ipow(half, m) * sum;
}

// Integer order ascending series for Y_m, m >= 0 (Abramowitz-Stegun 9.1.11).
cplx y_series_int(int m, cplx zeta)
{
  const cplx half = 0.5 * zeta;
  const cplx t = half * half;
  const double t_mag = std::abs(t);

  cplx finite(0.0, 0.0);
  if (m > 0)
  {
    cplx tk(1.0, 0.0);
    for (int k = 0; k < m; ++k)
    {
      finite += factorial(m - k - 1) / factorial(k) * tk;
      tk *= t;
    }
    finite *= -1.0 / (kPi * ipow(half, m));
  }

  const cplx log_term = (2.0 / kPi) * j_series_int(m, zeta) * std::log(half);

  double psi_a = -kEulerGamma;  // psi(k + 1)
  double psi_b = digamma(m + 1.0);  // psi(m + k + 1)
  cplx term(1.0 / factorial(m), 0.0);
  cplx sum = (psi_a + psi_b) * term;
  double scale = std::abs(sum);
  for (int k = 1; k < kMaxSeriesTerms; ++k)
  {
    term *= -t / (double(k) * double(m + k));
    psi_a += 1.0 / k;
    psi_b += 1.0 / (m + k);
    const cplx contrib = (psi_a + psi_b) * term;
    sum += contrib;
    const double mag = std::abs(contrib);
    scale = std::max(scale, mag);
    if (series_converged(mag, scale, k, m, t_mag))
    {
      break;
    }
  }
  const cplx infinite = -ipow(half, m) / kPi * sum;
  return finite + log_term + infinite;
}

// Hankel asymptotic expansion, kind 1 or 2, truncated at its smallest term.
// For half-integer order the sum terminates and the result is exact.
cplx hankel_asymptotic(double nu, cplx zeta, int kind)
{
  const double mu = 4.0 * nu * nu;
  const cplx omega = zeta - (0.5 * nu + 0.25) * kPi;
  const cplx prefactor = std::sqrt(2.0 / (kPi * zeta));
  const cplx rot = kind == 1 ? kI : -kI;
  const cplx inv_zeta = 1.0 / zeta;

  cplx term(1.0, 0.0);
  cplx sum = term;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < kMaxAsymptoticTerms; ++k)
  {
    const double odd = 2.0 * k - 1.0;
    const double a = (mu - odd * odd) / (8.0 * k);
    if (a == 0.0)
    {
      break;
    }
    const cplx next = term * rot * a * inv_zeta;
    const double mag = std::abs(next);
    if (mag > prev)
    {
      break;
    }
    term = next;
    sum += term;
    prev = mag;
    if (mag <= kTermTol * std::abs(sum))
    {
      break;
    }
  }
  const cplx phase = kind == 1 ? std::exp(kI * omega) : std::exp(-kI * omega);
  return prefactor * phase * sum;
}

void check_hankel_argument(cplx zeta)
{
  if (zeta == cplx(0.0, 0.0))
  {
    throw DomainError("Hankel function evaluated at zeta = 0");
  }
  if (zeta.imag() < -1e-12)
  {
    throw DomainError("Hankel function requires Im(zeta) >= 0");
  }
}

}  // namespace

double digamma(double x)
{
  if (!(x > 0.0))
  {
    throw DomainError("digamma requires x > 0");
  }
  double acc = 0.0;
  while (x < 10.0)
  {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double x2 = 1.0 / (x * x);
  const double tail =
      x2 * (1.0 / 12 -
            x2 * (1.0 / 120 -
                  x2 * (1.0 / 252 -
                        x2 * (1.0 / 240 - x2 * (1.0 / 132 - x2 * (691.0 / 32760 - x2 / 12))))));
  return acc + std::log(x) - 0.5 / x - tail;
}

cplx bessel_j(int m, cplx zeta)
{
  double sign = 1.0;
  if (m < 0)
  {
    m = -m;
    sign = (m % 2) ? -1.0 : 1.0;
  }
  // Reduce to the closed upper half plane: J_m(conj z) = conj J_m(z).
  if (zeta.imag() < 0.0)
  {
    return sign * std::conj(bessel_j(m, std::conj(zeta)));
  }
  if (std::abs(zeta) <= kSeriesRadius)
  {
    return sign * j_series_int(m, zeta);
  }
  return sign * 0.5 * (hankel_asymptotic(m, zeta, 1) + hankel_asymptotic(m, zeta, 2));
}

cplx bessel_y(int m, cplx zeta)
{
  if (m < 0)
  {
    throw DomainError("bessel_y: negative order not supported");
  }
  if (zeta == cplx(0.0, 0.0))
  {
    throw DomainError("bessel_y evaluated at zeta = 0");
  }
  if (std::abs(zeta) <= kSeriesRadius)
  {
    return y_series_int(m, zeta);
  }
  if (zeta.imag() < 0.0)
  {
    throw DomainError("bessel_y: large-argument branch needs Im(zeta) >= 0");
  }
  return (hankel_asymptotic(m, zeta, 1) - hankel_asymptotic(m, zeta, 2)) / (2.0 * kI);
}

cplx bessel_j_series(double nu, cplx zeta)
{
  if (nu < 0.0 && is_integer(nu))
  {
    const int m = static_cast<int>(-nu);
    return bessel_j(-m, zeta);
  }
  const cplx half = 0.5 * zeta;
  const cplx t = -half * half;
  const double t_mag = std::abs(t);
  cplx term(1.0 / std::tgamma(nu + 1.0), 0.0);
  cplx sum = term;
  double scale = std::abs(term);
  for (int k = 1; k < kMaxSeriesTerms; ++k)
  {
    term *= t / (double(k) * (nu + k));
    sum += term;
    const double mag = std::abs(term);
    scale = std::max(scale, mag);
    if (double(k) * std::abs(nu + k) > t_mag && mag <= kTermTol * scale)
    {
      break;
    }
  }
  return std::pow(half, nu) * sum;
}

cplx bessel_y_series(double nu, cplx zeta)
{
  if (is_integer(nu))
  {
    throw DomainError("bessel_y_series: integer order, use bessel_y");
  }
  const double s = std::sin(nu * kPi);
  const double c = is_half_integer(nu) ? 0.0 : std::cos(nu * kPi);
  return (bessel_j_series(nu, zeta) * c - bessel_j_series(-nu, zeta)) / s;
}

cplx hankel1(double order, cplx zeta)
{
  check_hankel_argument(zeta);
  if (order < 0.0)
  {
    throw DomainError("hankel1: order must be nonnegative");
  }
  if (is_half_integer(order))
  {
    return hankel_asymptotic(order, zeta, 1);
  }
  if (!is_integer(order))
  {
    throw DomainError("hankel1: only integer and half-integer orders are supported");
  }
  const int m = static_cast<int>(order);
  if (std::abs(zeta) <= kSeriesRadius)
  {
    return j_series_int(m, zeta) + kI * y_series_int(m, zeta);
  }
  return hankel_asymptotic(m, zeta, 1);
}

Hankel01 hankel1_01(cplx zeta)
{
  check_hankel_argument(zeta);
  if (std::abs(zeta) > kSeriesRadius)
  {
    return {hankel_asymptotic(0.0, zeta, 1), hankel_asymptotic(1.0, zeta, 1)};
  }
  // Shared ascending series for J0, J1, Y0, Y1.
  const cplx half = 0.5 * zeta;
  const cplx u = -half * half;
  const double u_mag = std::abs(u);
  const cplx log_half = std::log(half);

  cplx a(1.0, 0.0);  // (-t)^k / (k!)^2
  cplx b(1.0, 0.0);  // (-t)^k / (k! (k+1)!)
  cplx sum_a = a;
  cplx sum_b = b;
  cplx sum_ha(0.0, 0.0);  // sum H_k a_k
  cplx sum_pb = (-2.0 * kEulerGamma + 1.0) * b;  // sum [psi(k+1) + psi(k+2)] b_k
  double harmonic = 0.0;
  double scale = 1.0;
  for (int k = 1; k < kMaxSeriesTerms; ++k)
  {
    a *= u / (double(k) * double(k));
    b *= u / (double(k) * double(k + 1));
    harmonic += 1.0 / k;
    sum_a += a;
    sum_b += b;
    sum_ha += harmonic * a;
    const double harmonic_next = harmonic + 1.0 / (k + 1);
    sum_pb += (-2.0 * kEulerGamma + harmonic + harmonic_next) * b;
    const double mag = std::abs(a) * (1.0 + harmonic);
    scale = std::max(scale, mag);
    if (double(k) * double(k) > u_mag && mag <= kTermTol * scale)
    {
      break;
    }
  }
  const cplx j0 = sum_a;
  const cplx j1 = half * sum_b;
  const cplx y0 = (2.0 / kPi) * ((log_half + kEulerGamma) * j0 - sum_ha);
  const cplx y1 = -2.0 / (kPi * zeta) + (2.0 / kPi) * log_half * j1 - half / kPi * sum_pb;
  return {j0 + kI * y0, j1 + kI * y1};
}

}  // namespace kreinbem
