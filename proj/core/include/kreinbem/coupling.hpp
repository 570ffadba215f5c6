// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef KREINBEM_COUPLING_HPP
#define KREINBEM_COUPLING_HPP

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "kreinbem/geometry.hpp"
#include "kreinbem/kernels.hpp"

namespace kreinbem
{

/// Discrete Robin coupling Theta in gamma_N u + Theta gamma_D u = g. Three
/// realizations: pointwise multiplication by real theta, a Fourier multiplier
/// m_k = scale |k|^exponent on circle meshes, or an explicit W-Hermitian matrix.
class RobinCoupling
{
public:
  enum class Kind
  {
    multiplication,
    fourier_multiplier,
    explicit_matrix
  };

  /// Theta = 0 (Neumann).
  static RobinCoupling zero() { return constant(0.0); }
  /// Multiplication by a constant; sized to whatever mesh it is applied on.
  static RobinCoupling constant(double theta);
  static RobinCoupling multiplication(Eigen::VectorXd theta);
  /// Requires exponent < 1 (symbol growth |m_k| <= C (1+|k|)^{1-eps}).
  static RobinCoupling fourier_multiplier(double exponent, double scale);
  /// Throws Error unless `theta` is W-Hermitian to relative 1e-10.
  static RobinCoupling explicit_matrix(Eigen::MatrixXcd theta, Eigen::VectorXd weights);

  Kind kind() const { return kind_; }
  bool is_zero() const;
  std::optional<double> constant_value() const { return constant_; }
  double exponent() const { return exponent_; }
  double scale() const { return scale_; }

  /// Symbol value of the Fourier multiplier at mode k.
  double symbol(int k) const;

  /// Dense N x N realization on `mesh` (acts on raw node values).
  Eigen::MatrixXcd matrix(const BoundaryMesh &mesh) const;

  /// Theta f. Throws MeshMismatch on size mismatch or a multiplier on a non-circle mesh.
  Eigen::VectorXcd apply(const BoundaryMesh &mesh, const Eigen::VectorXcd &f) const;

  /// Largest c with <f, Theta f>_W >= c <f, f>_W on this mesh.
  double c_theta(const BoundaryMesh &mesh) const;

  /// Canonical literal: "const:c", "multiplier:k^s,c", "matrix:<n>x<n>", "theta:<n>".
  std::string literal() const;

private:
  Kind kind_ = Kind::multiplication;
  std::optional<double> constant_{0.0};
  Eigen::VectorXd theta_;
  double exponent_ = 0.0;
  double scale_ = 0.0;
  Eigen::MatrixXcd matrix_;

  void check_mesh(const BoundaryMesh &mesh) const;
};

}  // namespace kreinbem

#endif  // KREINBEM_COUPLING_HPP
