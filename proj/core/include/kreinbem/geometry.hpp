// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef KREINBEM_GEOMETRY_HPP
#define KREINBEM_GEOMETRY_HPP

#include <map>
#include <vector>

#include <Eigen/Dense>

namespace kreinbem
{

using Point = Eigen::Vector2d;

/// Bounded planar domain: disk centered at the origin, simple polygon, or a
/// star domain r < rho(phi) with a trigonometric polynomial rho.
struct DomainSpec
{
  enum class Kind
  {
    disk,
    polygon,
    star
  };

  Kind kind = Kind::disk;
  double radius = 1.0;
  std::vector<Point> vertices;
  double grading = 3.0;
  // rho(phi) = sum over keys: 0 -> constant, k > 0 -> cos(k phi), -k -> sin(k phi).
  std::map<int, double> coeffs;
  // Total panel count for disk/star, panels per edge for polygons.
  int panels = 256;

  static DomainSpec disk(double radius, int panels);
  static DomainSpec polygon(std::vector<Point> vertices, int panels_per_edge,
                            double grading = 3.0);
  static DomainSpec star(std::map<int, double> coeffs, int panels);
  /// Axis-aligned square [-side/2, side/2]^2.
  static DomainSpec square(double side, int panels_per_edge, double grading = 3.0);

  /// Throws InvalidDomain unless the invariants hold (simple CCW polygon,
  /// rho >= rho_min > 0 on a 4096-point grid, positive panel count).
  void validate() const;

  /// Same geometry with a different panel count.
  DomainSpec with_panels(int panels) const;

  /// True for disks and for stars whose radial function is constant.
  bool is_circle() const;
  double circle_radius() const;
};

/// Panelized boundary: one Nystrom node per panel (the panel midpoint).
struct BoundaryMesh
{
  DomainSpec spec;
  std::vector<Point> nodes;
  std::vector<Point> normals;
  Eigen::VectorXd weights;
  std::vector<double> curvature;
  std::vector<Point> panel_start;
  std::vector<Point> panel_end;
  // Curve piece and local coordinate of each node: the curve parameter t for
  // disk/star (one periodic piece), arclength along the edge for polygons.
  std::vector<int> piece;
  std::vector<double> param;
  // Half-width of each panel in the local coordinate.
  std::vector<double> param_halfwidth;
  double length = 0.0;

  Eigen::Index size() const { return weights.size(); }
  double max_panel_length() const { return weights.maxCoeff(); }
  /// Polar angle of node i about the origin.
  double angle(Eigen::Index i) const;
};

BoundaryMesh build_mesh(const DomainSpec &spec);

/// Point, outward normal and weight of the F equal sub-panels of panel j
/// (sub-panels equal in the local coordinate).
struct SubPanels
{
  std::vector<Point> points;
  std::vector<Point> normals;
  std::vector<double> weights;
  std::vector<double> params;
};
SubPanels subdivide_panel(const BoundaryMesh &mesh, Eigen::Index j, int factor);

/// Interpolation weights of a density at local coordinate `t` of the piece
/// containing node j: returns (node index, weight) pairs (local Lagrange).
std::vector<std::pair<Eigen::Index, double>> interpolation_stencil(const BoundaryMesh &mesh,
                                                                   Eigen::Index j, double t);

/// Point-in-domain test (winding number for polygons, radius comparison otherwise).
bool contains(const DomainSpec &spec, const Point &x);

/// Unsigned distance from x to the boundary curve.
double distance_to_boundary(const DomainSpec &spec, const Point &x);

double domain_area(const DomainSpec &spec);
double domain_perimeter(const DomainSpec &spec);

/// Cell-centered lattice of spacing h whose centers lie inside the domain at
/// distance >= margin from the boundary.
struct InteriorGrid
{
  DomainSpec spec;
  double h = 0.0;
  double margin = 0.0;
  Point origin;  // center of lattice cell (0, 0)
  int nx = 0;
  int ny = 0;
  std::vector<Point> points;
  std::vector<int> ix;
  std::vector<int> iy;
  Eigen::VectorXd cell_weights;

  Eigen::Index size() const { return cell_weights.size(); }
};

InteriorGrid interior_grid(const DomainSpec &spec, double h, double margin);

}  // namespace kreinbem

#endif  // KREINBEM_GEOMETRY_HPP
