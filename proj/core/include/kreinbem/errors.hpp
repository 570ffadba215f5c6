// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef KREINBEM_ERRORS_HPP
#define KREINBEM_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace kreinbem
{

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a special function or kernel (e.g. x = 0).
class DomainError : public Error
{
public:
  using Error::Error;
};

class InvalidDomain : public Error
{
public:
  using Error::Error;
};

class EmptyGrid : public Error
{
public:
  using Error::Error;
};

/// Operands live on different boundary meshes (or have mismatched sizes).
class MeshMismatch : public Error
{
public:
  using Error::Error;
};

class GridTooCoarse : public Error
{
public:
  using Error::Error;
};

class SupportTooWide : public Error
{
public:
  using Error::Error;
};

class ZeroData : public Error
{
public:
  using Error::Error;
};

class RootNotBracketed : public Error
{
public:
  using Error::Error;
};

/// A boundary operator is numerically singular at the requested spectral
/// parameter. Signals z in a spectrum or in the exceptional set of the
/// boundary integral formulation.
class NearSingular : public Error
{
public:
  NearSingular(std::complex<double> z, double condition, const std::string &what)
    : Error(what + ": near-singular at z = " + std::to_string(z.real()) + "+" +
            std::to_string(z.imag()) + "i (condition ~ " + std::to_string(condition) +
            ")"),
      z_(z), condition_(condition)
  {
  }

  std::complex<double> z() const { return z_; }
  double condition() const { return condition_; }

private:
  std::complex<double> z_;
  double condition_;
};

}  // namespace kreinbem

#endif  // KREINBEM_ERRORS_HPP
