// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef KREINBEM_BOUNDARY_OPS_HPP
#define KREINBEM_BOUNDARY_OPS_HPP

#include <vector>

#include <Eigen/Dense>

#include "kreinbem/coupling.hpp"
#include "kreinbem/dense.hpp"
#include "kreinbem/geometry.hpp"
#include "kreinbem/kernels.hpp"

namespace kreinbem
{

//
// Nystrom discretization of the boundary operators on a BoundaryMesh.
//
//   single layer  (S h)_i   = sum_j E_2(z; x_i - x_j) h_j w_j
//   adjoint DL    (K# h)_i  = sum_j nu_i . grad E_2(z; x_i - x_j) h_j w_j
//   double layer  (K h)_i   = sum_j nu_j . grad E_2(z; x_j - x_i) h_j w_j
//
// Smooth meshes: the self term of S uses the punctured-trapezoid log correction
// w_i (-(1/2pi) ln(w_i / 2pi) + G(0)); K and K# self terms are -w_i kappa_i / (4pi).
// Polygon meshes: panels close to the collocation point are integrated with the
// analytic segment integrals of the Laplace kernels plus the smooth remainder.
//

struct LayerOperators
{
  DenseOperator single_layer;
  DenseOperator kprime;
  DenseOperator k;
};

/// All three operators in one pass over the kernel.
LayerOperators assemble_layer_operators(const BoundaryMesh &mesh, const SpectralParameter &z);

DenseOperator assemble_single_layer(const BoundaryMesh &mesh, const SpectralParameter &z);
DenseOperator assemble_kprime(const BoundaryMesh &mesh, const SpectralParameter &z);
DenseOperator assemble_k(const BoundaryMesh &mesh, const SpectralParameter &z);

Eigen::VectorXcd apply_theta(const RobinCoupling &coupling, const BoundaryMesh &mesh,
                             const Eigen::VectorXcd &f);

enum class TraceSide
{
  interior,
  exterior
};

/// Neumann trace of S_z g along the outward normal: (+1/2 + K#) g from inside,
/// (-1/2 + K#) g from outside.
Eigen::VectorXcd neumann_trace_single_layer(const BoundaryMesh &mesh, const SpectralParameter &z,
                                            const Eigen::VectorXcd &g,
                                            TraceSide side = TraceSide::interior);

struct EvalOptions
{
  // Upsample panels near the target so the quadrature resolves the kernel.
  bool near_field = true;
  int max_refinement = 256;
};

struct PotentialValues
{
  Eigen::VectorXcd values;
  // Target closer to the boundary than 2 * max panel length.
  std::vector<bool> too_close;

  bool any_too_close() const;
};

/// Single layer potential S_z g at arbitrary points off the boundary.
PotentialValues eval_single_layer(const BoundaryMesh &mesh, const SpectralParameter &z,
                                  const Eigen::VectorXcd &g, const std::vector<Point> &targets,
                                  const EvalOptions &options = {});

/// Double layer potential sum_j nu_j . grad_y E_2(z; t - y_j) g_j w_j.
PotentialValues eval_double_layer(const BoundaryMesh &mesh, const SpectralParameter &z,
                                  const Eigen::VectorXcd &g, const std::vector<Point> &targets,
                                  const EvalOptions &options = {});

struct JumpReport
{
  // ||(1/2 + K#) g - (-1/2 + K#) g - g||_W / ||g||_W
  double density_jump = 0.0;
  // max over both sides of ||S g (x +- delta nu) - gamma_D S g||_W / ||g||_W
  double dirichlet_continuity = 0.0;
  // Relative W-norm gap between (+-1/2 + K#) g and one-sided finite differences of
  // the potential on offset curves x -+ t nu, t = delta_fd, 2 delta_fd, 3 delta_fd.
  double neumann_interior = 0.0;
  double neumann_exterior = 0.0;
  double delta_continuity = 0.0;
  double delta_fd = 0.0;
};

/// Jump relations of the single layer. delta_fd <= 0 selects 5 * max panel length.
JumpReport check_jump(const BoundaryMesh &mesh, const SpectralParameter &z,
                      const Eigen::VectorXcd &g, double delta_continuity = 1e-3,
                      double delta_fd = -1.0);

}  // namespace kreinbem

#endif  // KREINBEM_BOUNDARY_OPS_HPP
