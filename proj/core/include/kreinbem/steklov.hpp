// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef KREINBEM_STEKLOV_HPP
#define KREINBEM_STEKLOV_HPP

#include <Eigen/Dense>

#include "kreinbem/bvp.hpp"
#include "kreinbem/coupling.hpp"
#include "kreinbem/dense.hpp"

namespace kreinbem
{

enum class MapDirection
{
  rtd,
  dtr
};

/// How the Dirichlet-to-Robin map is discretized.
///   indirect: -(1/2 + K# + Theta S) S^{-1}   (single layer ansatz)
///   direct:   -(S^{-1} (1/2 + K) + Theta)    (Green representation, gamma_N u = S^{-1}(1/2 + K) f)
enum class DtrRoute
{
  indirect,
  direct
};

struct SteklovMap
{
  DenseOperator matrix;
  SpectralParameter z;
  RobinCoupling coupling;
  MapDirection direction = MapDirection::rtd;
};

/// Robin-to-Dirichlet map g -> gamma_D u, M = S A^{-1}.
SteklovMap assemble_rtd(const BoundaryContext &ctx, const RobinCoupling &coupling);
SteklovMap assemble_rtd(const BoundaryMesh &mesh, const SpectralParameter &z,
                        const RobinCoupling &coupling);

/// Dirichlet-to-Robin map f -> -(gamma_N u + Theta gamma_D u).
SteklovMap assemble_dtr(const BoundaryContext &ctx, const RobinCoupling &coupling,
                        DtrRoute route = DtrRoute::indirect);
SteklovMap assemble_dtr(const BoundaryMesh &mesh, const SpectralParameter &z,
                        const RobinCoupling &coupling, DtrRoute route = DtrRoute::indirect);

/// W-orthogonal projector onto the resolvable low modes: Fourier modes |m| <= cutoff
/// on a circle mesh, otherwise the 2 cutoff + 1 dominant singular vectors of the
/// symmetrized single layer.
Eigen::MatrixXcd low_mode_projector(const BoundaryContext &ctx, int cutoff);

struct InverseReport
{
  int cutoff = 0;
  // ||(M_dtr M_rtd + I) P||_W and ||(M_rtd M_dtr + I) P||_W
  double dtr_rtd = 0.0;
  double rtd_dtr = 0.0;

  double residual() const { return dtr_rtd > rtd_dtr ? dtr_rtd : rtd_dtr; }
};

/// Mutual inversion M_dtr M_rtd = -I on low modes. The DtR map goes through the
/// direct route so the product is not an algebraic identity of the discretization.
/// cutoff < 0 selects N / 32.
InverseReport check_inverse(const BoundaryMesh &mesh, const SpectralParameter &z,
                            const RobinCoupling &coupling, int cutoff = -1);

/// ||W^{-1} M_rtd(z)^H W - M_rtd(conj z)||_W / ||M_rtd(z)||_W.
double check_symmetry(const BoundaryMesh &mesh, const SpectralParameter &z,
                      const RobinCoupling &coupling);

struct HerglotzReport
{
  double lhs = 0.0;
  double rhs = 0.0;
  double relative_gap = 0.0;
  // Smallest eigenvalue of the W-Hermitian imaginary part (M - M*) / 2i.
  double min_imag_eigenvalue = 0.0;
  double map_norm = 0.0;
};

/// lhs = Im <g, M_rtd(z) g>_W; rhs = Im z ||u||^2 over the grid cells, u the Robin
/// solution with datum g. Requires Im z > 0 and g != 0 (ZeroData).
HerglotzReport check_herglotz(const BoundaryMesh &mesh, const InteriorGrid &grid,
                              const SpectralParameter &z, const RobinCoupling &coupling,
                              const Eigen::VectorXcd &g);

}  // namespace kreinbem

#endif  // KREINBEM_STEKLOV_HPP
