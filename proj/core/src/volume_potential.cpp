// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#include "kreinbem/volume_potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kreinbem/errors.hpp"

namespace kreinbem
{

namespace
{

constexpr double kPi = std::numbers::pi;
// Cells per gaussian width required by the volume quadrature.
constexpr double kCellsPerWidth = 8.0;
// Sub-cell split used for sampled sources next to a boundary node.
constexpr int kSubCells = 8;

struct Cell
{
  Point y;
  cplx f;
  int ix;
  int iy;
};

void check_resolution(const InteriorGrid &grid, const SourceField &f)
{
  for (const Gaussian &g : f.gaussians())
  {
    if (grid.h > g.width / kCellsPerWidth * (1.0 + 1e-12))
    {
      throw GridTooCoarse("volume grid spacing exceeds width / 8 of a gaussian source");
    }
  }
}

std::vector<Cell> active_cells(const InteriorGrid &grid, const SourceField &f)
{
  std::vector<Cell> cells;
  if (f.is_sampled())
  {
    const Eigen::VectorXcd &s = f.samples();
    if (s.size() != grid.size())
    {
      throw MeshMismatch("sampled source lives on a different grid");
    }
    for (Eigen::Index c = 0; c < grid.size(); ++c)
    {
      if (s(c) != cplx(0.0, 0.0))
      {
        cells.push_back({grid.points[c], s(c), grid.ix[c], grid.iy[c]});
      }
    }
    return cells;
  }
  for (Eigen::Index c = 0; c < grid.size(); ++c)
  {
    const Point &y = grid.points[c];
    bool inside = false;
    for (const Gaussian &g : f.gaussians())
    {
      inside = inside || (y - g.center).norm() <= g.support_radius();
    }
    if (!inside)
    {
      continue;
    }
    const cplx v = f(y);
    if (v != cplx(0.0, 0.0))
    {
      cells.push_back({y, v, grid.ix[c], grid.iy[c]});
    }
  }
  return cells;
}

// Integral of E_2(z; t - y) over a disk of area h^2 centered at t.
cplx self_cell(const SpectralParameter &z, double h)
{
  const double h2 = h * h;
  return h2 / (4.0 * kPi) * (1.0 - 2.0 * std::log(h / std::sqrt(kPi))) +
         helmholtz2d_regular_limit(z) * h2;
}

}  // namespace

double Gaussian::support_radius() const
{
  const double a = std::abs(amplitude);
  if (a <= kGaussianCutoff)
  {
    return 0.0;
  }
  return width * std::sqrt(2.0 * std::log(a / kGaussianCutoff));
}

SourceField SourceField::gaussian(const Point &center, double width, double amplitude)
{
  return sum({Gaussian{center, width, amplitude}});
}

SourceField SourceField::sum(std::vector<Gaussian> bumps)
{
  for (const Gaussian &g : bumps)
  {
    if (!(g.width > 0.0))
    {
      throw InvalidDomain("gaussian width must be positive");
    }
  }
  SourceField f;
  f.bumps_ = std::move(bumps);
  return f;
}

SourceField SourceField::sampled(const InteriorGrid &grid, Eigen::VectorXcd values)
{
  if (values.size() != grid.size())
  {
    throw MeshMismatch("sample count does not match the grid");
  }
  SourceField f;
  f.sampled_grid_ = std::make_shared<const InteriorGrid>(grid);
  f.samples_ = std::move(values);
  return f;
}

bool SourceField::is_zero() const
{
  if (is_sampled())
  {
    return samples_.isZero(0.0);
  }
  for (const Gaussian &g : bumps_)
  {
    if (g.amplitude != 0.0)
    {
      return false;
    }
  }
  return true;
}

cplx SourceField::operator()(const Point &y) const
{
  if (is_sampled())
  {
    const InteriorGrid &g = *sampled_grid_;
    const long ix = std::lround((y.x() - g.origin.x()) / g.h);
    const long iy = std::lround((y.y() - g.origin.y()) / g.h);
    // Lattice points are stored row by row; binary search on (iy, ix).
    std::size_t lo = 0;
    std::size_t hi = g.points.size();
    while (lo < hi)
    {
      const std::size_t mid = (lo + hi) / 2;
      if (g.iy[mid] < iy || (g.iy[mid] == iy && g.ix[mid] < ix))
      {
        lo = mid + 1;
      }
      else
      {
        hi = mid;
      }
    }
    if (lo < g.points.size() && g.ix[lo] == ix && g.iy[lo] == iy)
    {
      return samples_(static_cast<Eigen::Index>(lo));
    }
    return 0.0;
  }
  double v = 0.0;
  for (const Gaussian &g : bumps_)
  {
    const double r2 = (y - g.center).squaredNorm();
    v += g.amplitude * std::exp(-r2 / (2.0 * g.width * g.width));
  }
  return v;
}

double SourceField::support_margin(const DomainSpec &spec) const
{
  if (is_sampled())
  {
    return 0.0;
  }
  double m = std::numeric_limits<double>::infinity();
  for (const Gaussian &g : bumps_)
  {
    if (g.amplitude == 0.0)
    {
      continue;
    }
    const double d = distance_to_boundary(spec, g.center);
    m = std::min(m, contains(spec, g.center) ? d - g.support_radius() : -d);
  }
  return m;
}

double SourceField::min_width() const
{
  double w = std::numeric_limits<double>::infinity();
  for (const Gaussian &g : bumps_)
  {
    w = std::min(w, g.width);
  }
  return w;
}

void SourceField::validate(const DomainSpec &spec) const
{
  if (is_sampled())
  {
    return;
  }
  for (const Gaussian &g : bumps_)
  {
    if (g.amplitude != 0.0 && !contains(spec, g.center))
    {
      throw InvalidDomain("gaussian center lies outside the domain");
    }
  }
  if (!(support_margin(spec) > 0.0))
  {
    throw InvalidDomain("gaussian support reaches the boundary");
  }
}

Eigen::VectorXcd sample_on_grid(const InteriorGrid &grid, const SourceField &f)
{
  Eigen::VectorXcd v(grid.size());
  for (Eigen::Index c = 0; c < grid.size(); ++c)
  {
    v(c) = f(grid.points[c]);
  }
  return v;
}

InteriorField newton_potential(const InteriorGrid &grid, const SourceField &f,
                               const SpectralParameter &z, const std::vector<Point> &targets)
{
  InteriorField out;
  out.points = targets;
  out.z = z;
  out.values = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(targets.size()));
  if (f.is_zero())
  {
    return out;
  }
  check_resolution(grid, f);
  f.validate(grid.spec);
  const std::vector<Cell> cells = active_cells(grid, f);
  const double h = grid.h;
  const double h2 = h * h;
  const cplx self = self_cell(z, h);
  for (std::size_t k = 0; k < targets.size(); ++k)
  {
    const Point &t = targets[k];
    cplx sum(0.0, 0.0);
    bool self_used = false;
    for (const Cell &c : cells)
    {
      const Point d = t - c.y;
      if (!self_used && std::abs(d.x()) <= 0.5 * h && std::abs(d.y()) <= 0.5 * h)
      {
        sum += self * c.f;
        self_used = true;
        continue;
      }
      sum += helmholtz2d_value(z, d.norm()) * c.f * h2;
    }
    out.values(static_cast<Eigen::Index>(k)) = sum;
  }
  return out;
}

Eigen::VectorXcd newton_potential_on_grid(const InteriorGrid &grid, const SourceField &f,
                                          const SpectralParameter &z)
{
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(grid.size());
  if (f.is_zero())
  {
    return out;
  }
  check_resolution(grid, f);
  f.validate(grid.spec);
  if (f.is_sampled() && f.samples().size() != grid.size())
  {
    throw MeshMismatch("sampled source lives on a different grid");
  }
  const std::vector<Cell> cells = active_cells(grid, f);
  const double h = grid.h;
  // Kernel table by lattice offset (|dx|, |dy|), quadrature weight included.
  Eigen::MatrixXcd table(grid.nx, grid.ny);
  for (int b = 0; b < grid.ny; ++b)
  {
    for (int a = 0; a < grid.nx; ++a)
    {
      table(a, b) = (a == 0 && b == 0)
                        ? self_cell(z, h)
                        : helmholtz2d_value(z, h * std::hypot(double(a), double(b))) * h * h;
    }
  }
  for (Eigen::Index p = 0; p < grid.size(); ++p)
  {
    const int px = grid.ix[p];
    const int py = grid.iy[p];
    cplx sum(0.0, 0.0);
    for (const Cell &c : cells)
    {
      sum += table(std::abs(px - c.ix), std::abs(py - c.iy)) * c.f;
    }
    out(p) = sum;
  }
  return out;
}

NewtonTraces newton_boundary_traces(const InteriorGrid &grid, const SourceField &f,
                                    const SpectralParameter &z, const BoundaryMesh &mesh)
{
  const Eigen::Index n = mesh.size();
  NewtonTraces out{Eigen::VectorXcd::Zero(n), Eigen::VectorXcd::Zero(n)};
  if (f.is_zero())
  {
    return out;
  }
  check_resolution(grid, f);
  if (!f.is_sampled())
  {
    f.validate(grid.spec);
    if (f.support_margin(mesh.spec) < 2.0 * mesh.max_panel_length())
    {
      throw SupportTooWide("source support is closer than two panel lengths to the boundary");
    }
  }
  const std::vector<Cell> cells = active_cells(grid, f);
  const double h = grid.h;
  const double h2 = h * h;
  const double near = 2.0 * h;
  for (Eigen::Index i = 0; i < n; ++i)
  {
    const Point &x = mesh.nodes[i];
    const Point &nu = mesh.normals[i];
    cplx dsum(0.0, 0.0);
    cplx nsum(0.0, 0.0);
    auto add = [&](const Point &y, cplx fw) {
      const Point d = x - y;
      const double r = d.norm();
      if (r == 0.0)
      {
        return;
      }
      const Kernel2d e = helmholtz2d(z, r);
      dsum += e.value * fw;
      nsum += e.d1 * (nu.dot(d) / r) * fw;
    };
    for (const Cell &c : cells)
    {
      if (f.is_sampled() && (x - c.y).norm() < near)
      {
        const double hs = h / kSubCells;
        for (int b = 0; b < kSubCells; ++b)
        {
          for (int a = 0; a < kSubCells; ++a)
          {
            const Point y = c.y + Point((a + 0.5) * hs - 0.5 * h, (b + 0.5) * hs - 0.5 * h);
            add(y, c.f * hs * hs);
          }
        }
        continue;
      }
      add(c.y, c.f * h2);
    }
    out.dirichlet(i) = dsum;
    out.neumann(i) = nsum;
  }
  return out;
}

}  // namespace kreinbem
