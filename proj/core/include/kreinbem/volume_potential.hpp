// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef KREINBEM_VOLUME_POTENTIAL_HPP
#define KREINBEM_VOLUME_POTENTIAL_HPP

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "kreinbem/geometry.hpp"
#include "kreinbem/kernels.hpp"

namespace kreinbem
{

/// Level below which a gaussian bump is treated as zero.
inline constexpr double kGaussianCutoff = 1e-12;

struct Gaussian
{
  Point center;
  double width = 0.1;
  double amplitude = 1.0;

  /// Radius beyond which |f| < kGaussianCutoff.
  double support_radius() const;
};

/// Interior source f: a sum of gaussian bumps, or values sampled at the cell
/// centers of an InteriorGrid (piecewise constant per cell).
class SourceField
{
public:
  static SourceField zero() { return SourceField{}; }
  static SourceField gaussian(const Point &center, double width, double amplitude);
  static SourceField sum(std::vector<Gaussian> bumps);
  static SourceField sampled(const InteriorGrid &grid, Eigen::VectorXcd values);

  bool is_sampled() const { return sampled_grid_ != nullptr; }
  bool is_zero() const;
  const std::vector<Gaussian> &gaussians() const { return bumps_; }
  const Eigen::VectorXcd &samples() const { return samples_; }

  /// Value at a point (sampled fields: value of the containing cell, 0 outside).
  cplx operator()(const Point &y) const;

  /// Smallest distance from the support (|f| >= cutoff) to the boundary.
  /// Sampled fields touch the boundary and report 0.
  double support_margin(const DomainSpec &spec) const;

  double min_width() const;

  /// Throws InvalidDomain if a center lies outside the domain or the support
  /// reaches the boundary.
  void validate(const DomainSpec &spec) const;

private:
  std::vector<Gaussian> bumps_;
  std::shared_ptr<const InteriorGrid> sampled_grid_;
  Eigen::VectorXcd samples_;
};

/// Field values at points, with the spectral parameter that produced them.
struct InteriorField
{
  std::vector<Point> points;
  Eigen::VectorXcd values;
  SpectralParameter z;
};

/// f at the grid cell centers.
Eigen::VectorXcd sample_on_grid(const InteriorGrid &grid, const SourceField &f);

/// w(t) = sum_cells E_2(z; t - y_c) f(y_c) h^2, with the cell containing t replaced
/// by the exact log integral over a disk of area h^2 plus G(0) h^2.
/// Throws GridTooCoarse when h > width / 8 for some bump.
InteriorField newton_potential(const InteriorGrid &grid, const SourceField &f,
                               const SpectralParameter &z, const std::vector<Point> &targets);

/// Same quadrature evaluated at every grid point through a table of the kernel
/// indexed by lattice offset.
Eigen::VectorXcd newton_potential_on_grid(const InteriorGrid &grid, const SourceField &f,
                                          const SpectralParameter &z);

struct NewtonTraces
{
  Eigen::VectorXcd dirichlet;
  Eigen::VectorXcd neumann;
};

/// gamma_D w and gamma_N w at the mesh nodes. Gaussian sources must keep a
/// support margin >= 2 * max panel length (else SupportTooWide); sampled sources
/// are integrated with sub-cell refinement near each node.
NewtonTraces newton_boundary_traces(const InteriorGrid &grid, const SourceField &f,
                                    const SpectralParameter &z, const BoundaryMesh &mesh);

}  // namespace kreinbem

#endif  // KREINBEM_VOLUME_POTENTIAL_HPP
