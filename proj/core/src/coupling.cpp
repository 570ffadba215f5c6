// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#include "kreinbem/coupling.hpp"

#include <cmath>
#include <numbers>

#include "kreinbem/errors.hpp"
#include "kreinbem/format.hpp"

namespace kreinbem
{

namespace
{

constexpr double kPi = std::numbers::pi;

}  // namespace

RobinCoupling RobinCoupling::constant(double theta)
{
  RobinCoupling c;
  c.kind_ = Kind::multiplication;
  c.constant_ = theta;
  return c;
}

RobinCoupling RobinCoupling::multiplication(Eigen::VectorXd theta)
{
  RobinCoupling c;
  c.kind_ = Kind::multiplication;
  c.constant_.reset();
  c.theta_ = std::move(theta);
  return c;
}

RobinCoupling RobinCoupling::fourier_multiplier(double exponent, double scale)
{
  if (!(exponent < 1.0))
  {
    throw Error("Fourier multiplier exponent must be < 1");
  }
  RobinCoupling c;
  c.kind_ = Kind::fourier_multiplier;
  c.constant_.reset();
  c.exponent_ = exponent;
  c.scale_ = scale;
  return c;
}

RobinCoupling RobinCoupling::explicit_matrix(Eigen::MatrixXcd theta, Eigen::VectorXd weights)
{
  if (theta.rows() != theta.cols() || theta.rows() != weights.size())
  {
    throw MeshMismatch("explicit coupling matrix does not match the weights");
  }
  // W Theta must be Hermitian.
  const Eigen::MatrixXcd wt = weights.asDiagonal() * theta;
  const double asym = (wt - wt.adjoint()).norm();
  if (asym > 1e-10 * std::max(1.0, wt.norm()))
  {
    throw Error("explicit coupling matrix is not W-Hermitian");
  }
  RobinCoupling c;
  c.kind_ = Kind::explicit_matrix;
  c.constant_.reset();
  c.matrix_ = std::move(theta);
  return c;
}

bool RobinCoupling::is_zero() const
{
  switch (kind_)
  {
  case Kind::multiplication:
    return constant_ ? *constant_ == 0.0 : theta_.isZero(0.0);
  case Kind::fourier_multiplier:
    return scale_ == 0.0;
  case Kind::explicit_matrix:
    return matrix_.isZero(0.0);
  }
  return false;
}

double RobinCoupling::symbol(int k) const
{
  if (k == 0)
  {
    return exponent_ > 0.0 ? 0.0 : (exponent_ == 0.0 ? scale_ : 0.0);
  }
  return scale_ * std::pow(std::abs(double(k)), exponent_);
}

void RobinCoupling::check_mesh(const BoundaryMesh &mesh) const
{
  switch (kind_)
  {
  case Kind::multiplication:
    if (!constant_ && theta_.size() != mesh.size())
    {
      throw MeshMismatch("coupling samples do not match the mesh");
    }
    break;
  case Kind::fourier_multiplier:
    if (!mesh.spec.is_circle())
    {
      throw MeshMismatch("Fourier multiplier coupling requires a circle mesh");
    }
    break;
  case Kind::explicit_matrix:
    if (matrix_.rows() != mesh.size())
    {
      throw MeshMismatch("coupling matrix does not match the mesh");
    }
    break;
  }
}

Eigen::MatrixXcd RobinCoupling::matrix(const BoundaryMesh &mesh) const
{
  check_mesh(mesh);
  const Eigen::Index n = mesh.size();
  switch (kind_)
  {
  case Kind::multiplication:
    if (constant_)
    {
      return Eigen::MatrixXcd::Identity(n, n) * (*constant_);
    }
    return theta_.cast<cplx>().asDiagonal();
  case Kind::fourier_multiplier:
  {
    // Circulant: Theta_{jl} = (1/N) sum_k m_k e^{ik(t_j - t_l)}, k in (-N/2, N/2].
    Eigen::VectorXd row(n);
    const double dt = 2.0 * kPi / n;
    const auto kmin = -(n - 1) / 2;
    const auto kmax = n / 2;
    for (Eigen::Index d = 0; d < n; ++d)
    {
      double s = 0.0;
      for (auto k = kmin; k <= kmax; ++k)
      {
        s += symbol(static_cast<int>(k)) * std::cos(double(k) * double(d) * dt);
      }
      row(d) = s / n;
    }
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index l = 0; l < n; ++l)
    {
      for (Eigen::Index j = 0; j < n; ++j)
      {
        m(j, l) = row((j - l + n) % n);
      }
    }
    return m;
  }
  case Kind::explicit_matrix:
    return matrix_;
  }
  return {};
}

Eigen::VectorXcd RobinCoupling::apply(const BoundaryMesh &mesh, const Eigen::VectorXcd &f) const
{
  check_mesh(mesh);
  if (f.size() != mesh.size())
  {
    throw MeshMismatch("density length does not match the mesh");
  }
  if (kind_ == Kind::multiplication)
  {
    if (constant_)
    {
      return *constant_ * f;
    }
    return theta_.cast<cplx>().cwiseProduct(f);
  }
  return matrix(mesh) * f;
}

double RobinCoupling::c_theta(const BoundaryMesh &mesh) const
{
  check_mesh(mesh);
  switch (kind_)
  {
  case Kind::multiplication:
    return constant_ ? *constant_ : theta_.minCoeff();
  case Kind::fourier_multiplier:
  {
    const Eigen::Index n = mesh.size();
    double c = symbol(0);
    for (auto k = -(n - 1) / 2; k <= n / 2; ++k)
    {
      c = std::min(c, symbol(static_cast<int>(k)));
    }
    return c;
  }
  case Kind::explicit_matrix:
  {
    const Eigen::VectorXd s = mesh.weights.cwiseSqrt();
    Eigen::MatrixXcd h = s.asDiagonal() * matrix_ * s.cwiseInverse().asDiagonal();
    h = 0.5 * (h + h.adjoint()).eval();
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h, Eigen::EigenvaluesOnly)
        .eigenvalues()
        .minCoeff();
  }
  }
  return 0.0;
}

std::string RobinCoupling::literal() const
{
  switch (kind_)
  {
  case Kind::multiplication:
    if (constant_)
    {
      return "const:" + format_double(*constant_);
    }
    return "theta:" + std::to_string(theta_.size());
  case Kind::fourier_multiplier:
    return "multiplier:k^" + format_double(exponent_) + "," + format_double(scale_);
  case Kind::explicit_matrix:
    return "matrix:" + std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols());
  }
  return {};
}

}  // namespace kreinbem
