// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#include "kreinbem/dense.hpp"

#include <cmath>
#include <limits>

#include "kreinbem/errors.hpp"

namespace kreinbem
{

cplx inner_w(const Eigen::VectorXd &w, const Eigen::VectorXcd &f, const Eigen::VectorXcd &g)
{
  if (f.size() != w.size() || g.size() != w.size())
  {
    throw MeshMismatch("inner product: vector length does not match the mesh");
  }
  cplx s(0.0, 0.0);
  for (Eigen::Index i = 0; i < w.size(); ++i)
  {
    s += w(i) * std::conj(f(i)) * g(i);
  }
  return s;
}

double norm_w(const Eigen::VectorXd &w, const Eigen::VectorXcd &f)
{
  return std::sqrt(std::max(0.0, inner_w(w, f, f).real()));
}

Eigen::VectorXcd DenseOperator::apply(const Eigen::VectorXcd &f) const
{
  if (f.size() != matrix.cols())
  {
    throw MeshMismatch("operator applied to a density of the wrong length");
  }
  return matrix * f;
}

DenseOperator DenseOperator::weighted_adjoint() const
{
  DenseOperator out;
  out.weights = weights;
  const Eigen::Index n = matrix.rows();
  out.matrix.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
  {
    for (Eigen::Index i = 0; i < n; ++i)
    {
      out.matrix(i, j) = std::conj(matrix(j, i)) * (weights(j) / weights(i));
    }
  }
  return out;
}

Eigen::MatrixXcd DenseOperator::symmetrized() const
{
  const Eigen::VectorXd s = weights.cwiseSqrt();
  return s.asDiagonal() * matrix * s.cwiseInverse().asDiagonal();
}

double DenseOperator::weighted_norm() const { return weighted_operator_norm(matrix, weights); }

double weighted_operator_norm(const Eigen::MatrixXcd &x, const Eigen::VectorXd &w)
{
  if (x.rows() == 0)
  {
    return 0.0;
  }
  const Eigen::VectorXd s = w.cwiseSqrt();
  const Eigen::MatrixXcd y = s.asDiagonal() * x * s.cwiseInverse().asDiagonal();
  if (y.rows() <= 64)
  {
    return Eigen::JacobiSVD<Eigen::MatrixXcd>(y).singularValues()(0);
  }
  return Eigen::BDCSVD<Eigen::MatrixXcd>(y).singularValues()(0);
}

LuSolver::LuSolver(const Eigen::MatrixXcd &a, cplx z, const std::string &what, double threshold)
  : lu_(a)
{
  const double rc = lu_.rcond();
  condition_ = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
  if (!(condition_ <= threshold))
  {
    throw NearSingular(z, condition_, what);
  }
}

Eigen::MatrixXcd LuSolver::solve_right(const Eigen::MatrixXcd &x) const
{
  // X A^{-1} = (A^{-T} X^T)^T
  const Eigen::MatrixXcd xt = x.transpose();
  const Eigen::MatrixXcd yt = lu_.transpose().solve(xt);
  return yt.transpose();
}

}  // namespace kreinbem
