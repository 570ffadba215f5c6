// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef KREINBEM_DENSE_HPP
#define KREINBEM_DENSE_HPP

#include <string>

#include <Eigen/Dense>

#include "kreinbem/kernels.hpp"

namespace kreinbem
{

/// Condition number above which a boundary solve is reported as NearSingular.
inline constexpr double kNearSingularCondition = 1e12;

/// <f, g>_W = sum_i w_i conj(f_i) g_i.
cplx inner_w(const Eigen::VectorXd &w, const Eigen::VectorXcd &f, const Eigen::VectorXcd &g);
double norm_w(const Eigen::VectorXd &w, const Eigen::VectorXcd &f);

/// Complex matrix acting on raw node values; entries already carry the
/// quadrature weights. `weights` defines the discrete L2 inner product.
struct DenseOperator
{
  Eigen::MatrixXcd matrix;
  Eigen::VectorXd weights;

  Eigen::Index size() const { return matrix.rows(); }
  Eigen::VectorXcd apply(const Eigen::VectorXcd &f) const;

  /// Adjoint in <.,.>_W: (A*)_{ij} = conj(A_{ji}) w_j / w_i.
  DenseOperator weighted_adjoint() const;

  /// W^{1/2} A W^{-1/2}, the unitarily equivalent matrix in the Euclidean norm.
  Eigen::MatrixXcd symmetrized() const;

  /// Operator norm induced by ||.||_W.
  double weighted_norm() const;
};

/// Operator norm of X in the W-weighted norm, ||W^{1/2} X W^{-1/2}||_2.
double weighted_operator_norm(const Eigen::MatrixXcd &x, const Eigen::VectorXd &w);

/// Partial-pivot LU with a reciprocal-condition estimate. Factoring throws
/// NearSingular when the estimated condition number exceeds the threshold.
class LuSolver
{
public:
  LuSolver() = default;
  LuSolver(const Eigen::MatrixXcd &a, cplx z, const std::string &what,
           double threshold = kNearSingularCondition);

  Eigen::VectorXcd solve(const Eigen::VectorXcd &b) const { return lu_.solve(b); }
  Eigen::MatrixXcd solve(const Eigen::MatrixXcd &b) const { return lu_.solve(b); }
  /// X A^{-1}, computed through the transposed factorization.
  Eigen::MatrixXcd solve_right(const Eigen::MatrixXcd &x) const;

  double condition() const { return condition_; }
  const Eigen::PartialPivLU<Eigen::MatrixXcd> &lu() const { return lu_; }

private:
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
  double condition_ = 0.0;
};

}  // namespace kreinbem

#endif  // KREINBEM_DENSE_HPP
