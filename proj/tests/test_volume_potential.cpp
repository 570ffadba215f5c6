// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "kreinbem/errors.hpp"
#include "kreinbem/volume_potential.hpp"

namespace kb = kreinbem;
using kb::cplx;
using kb::Point;

namespace
{

constexpr double kPi = std::numbers::pi;

// Max over interior lattice points of |(-Delta_h - z) w - f| / max|f|, 5-point stencil.
double pde_residual(double h, cplx z)
{
  const auto spec = kb::DomainSpec::disk(1.0, 64);
  const auto grid = kb::interior_grid(spec, h, 0.0);
  const auto f = kb::SourceField::gaussian({0.0, 0.0}, 0.1, 1.0);
  std::vector<Point> pts;
  const std::vector<Point> centers{{0.0, 0.0}, {0.1, 0.05}, {-0.2, 0.1}, {0.05, -0.25}};
  for (const Point &c0 : centers)
  {
    // Snap to the lattice so the stencil uses cell centers.
    const Point c = grid.origin + h * Point(std::round((c0.x() - grid.origin.x()) / h),
                                            std::round((c0.y() - grid.origin.y()) / h));
    for (const Point &d : {Point(0, 0), Point(h, 0), Point(-h, 0), Point(0, h), Point(0, -h)})
    {
      pts.push_back(c + d);
    }
  }
  const auto w = kb::newton_potential(grid, f, z, pts).values;
  double worst = 0.0;
  for (std::size_t k = 0; k < centers.size(); ++k)
  {
    const auto i = static_cast<Eigen::Index>(5 * k);
    const cplx lap = (w(i + 1) + w(i + 2) + w(i + 3) + w(i + 4) - 4.0 * w(i)) / (h * h);
    worst = std::max(worst, std::abs(-lap - z * w(i) - f(pts[5 * k])));
  }
  return worst;
}

}  // namespace

TEST(NewtonPotential, ZeroSource)
{
  const auto spec = kb::DomainSpec::disk(1.0, 64);
  const auto grid = kb::interior_grid(spec, 0.05, 0.0);
  const auto w = kb::newton_potential(grid, kb::SourceField::zero(), cplx(2.0, 1.0), {Point(0.1, 0.1)});
  EXPECT_EQ(w.values(0), cplx(0.0, 0.0));
  const auto mesh = kb::build_mesh(spec);
  const auto t = kb::newton_boundary_traces(grid, kb::SourceField::zero(), cplx(2.0, 1.0), mesh);
  EXPECT_EQ(t.dirichlet.norm() + t.neumann.norm(), 0.0);
}

TEST(NewtonPotential, NarrowBumpReproducesLogKernel)
{
  const auto spec = kb::DomainSpec::disk(1.0, 64);
  const double width = 0.02;
  const double amplitude = 1.0 / (2.0 * kPi * width * width);
  const auto f = kb::SourceField::gaussian({0.0, 0.0}, width, amplitude);
  const auto grid = kb::interior_grid(spec, width / 8.0, 0.7);
  std::vector<Point> targets;
  for (double r : {0.3, 0.4, 0.5, 0.6})
  {
    targets.emplace_back(r * std::cos(r), r * std::sin(r));
  }
  const auto w = kb::newton_potential(grid, f, 0.0, targets);
  for (std::size_t k = 0; k < targets.size(); ++k)
  {
    const double expected = -std::log(targets[k].norm()) / (2.0 * kPi);
    EXPECT_NEAR(w.values(static_cast<Eigen::Index>(k)).real(), expected, 1e-2 * std::abs(expected));
  }
}

TEST(NewtonPotential, PdeResidualAndRefinement)
{
  const cplx z(2.0, 1.0);
  const double coarse = pde_residual(0.01, z);
  EXPECT_LE(coarse, 2e-2);
  const double fine = pde_residual(0.005, z);
  EXPECT_GE(coarse / fine, 3.0);
}

TEST(NewtonPotential, GridAgreesWithPointEvaluation)
{
  const auto spec = kb::DomainSpec::disk(1.0, 64);
  const auto grid = kb::interior_grid(spec, 0.0075, 0.0);
  const auto f = kb::SourceField::gaussian({0.1, -0.1}, 0.08, 1.0);
  const cplx z(1.0, 0.5);
  const Eigen::VectorXcd all = kb::newton_potential_on_grid(grid, f, z);
  const std::vector<Point> some{grid.points[0], grid.points[grid.points.size() / 2]};
  const auto w = kb::newton_potential(grid, f, z, some);
  EXPECT_LE(std::abs(w.values(0) - all(0)), 1e-12 * all.cwiseAbs().maxCoeff());
  EXPECT_LE(std::abs(w.values(1) - all(static_cast<Eigen::Index>(grid.points.size() / 2))),
            1e-12 * all.cwiseAbs().maxCoeff());
}

TEST(NewtonPotential, LinearityAndConjugation)
{
  const auto spec = kb::DomainSpec::disk(1.0, 64);
  const auto grid = kb::interior_grid(spec, 0.0075, 0.0);
  const kb::Gaussian a{{0.1, 0.0}, 0.08, 1.0};
  const kb::Gaussian b{{-0.2, 0.1}, 0.06, -0.5};
  const cplx z(2.0, 1.5);
  const std::vector<Point> t{{0.3, 0.1}, {-0.1, -0.4}};
  const auto wa = kb::newton_potential(grid, kb::SourceField::sum({a}), z, t).values;
  const auto wb = kb::newton_potential(grid, kb::SourceField::sum({b}), z, t).values;
  const auto wab = kb::newton_potential(grid, kb::SourceField::sum({a, b}), z, t).values;
  EXPECT_LE((wab - wa - wb).norm(), 1e-11 * (wa.norm() + wb.norm()));
  const auto wc = kb::newton_potential(grid, kb::SourceField::sum({a}), std::conj(z), t).values;
  EXPECT_LE((wc - wa.conjugate()).norm(), 1e-11 * wa.norm());
}

TEST(NewtonTraces, GaussLawAndRadialSymmetry)
{
  const auto spec = kb::DomainSpec::disk(1.0, 256);
  const auto mesh = kb::build_mesh(spec);
  const double width = 0.1;
  const auto f = kb::SourceField::gaussian({0.0, 0.0}, width, 1.0);
  const double mass = 2.0 * kPi * width * width;
  const auto grid = kb::interior_grid(spec, width / 8.0, 0.0);
  const auto t = kb::newton_boundary_traces(grid, f, 0.0, mesh);
  const double flux = -mass / (2.0 * kPi);
  EXPECT_LE((t.neumann.array() - flux).abs().maxCoeff(), 1e-3 * std::abs(flux));
  const cplx mean = t.dirichlet.mean();
  EXPECT_LE((t.dirichlet.array() - mean).abs().maxCoeff(), 1e-3 * std::abs(mean) + 1e-12);
}

TEST(NewtonPotential, ResolutionAndSupportChecks)
{
  const auto spec = kb::DomainSpec::disk(1.0, 64);
  const auto coarse = kb::interior_grid(spec, 0.05, 0.0);
  const auto f = kb::SourceField::gaussian({0.0, 0.0}, 0.1, 1.0);
  EXPECT_THROW(kb::newton_potential(coarse, f, 1.0, {Point(0.0, 0.0)}), kb::GridTooCoarse);
  // Support clears the boundary, but by less than two panel lengths of a 16-panel mesh.
  const auto sparse = kb::DomainSpec::disk(1.0, 16);
  const auto grid = kb::interior_grid(sparse, 0.01, 0.0);
  ASSERT_GT(f.support_margin(sparse), 0.0);
  EXPECT_THROW(kb::newton_boundary_traces(grid, f, 1.0, kb::build_mesh(sparse)), kb::SupportTooWide);
  EXPECT_THROW(kb::SourceField::gaussian({2.0, 0.0}, 0.1, 1.0).validate(spec), kb::InvalidDomain);
}

TEST(SourceField, SampledValues)
{
  const auto spec = kb::DomainSpec::disk(1.0, 64);
  const auto grid = kb::interior_grid(spec, 0.1, 0.0);
  Eigen::VectorXcd v = Eigen::VectorXcd::LinSpaced(grid.size(), 0.0, 1.0);
  const auto f = kb::SourceField::sampled(grid, v);
  EXPECT_TRUE(f.is_sampled());
  EXPECT_EQ(f(grid.points[3]), v(3));
  EXPECT_EQ(f(Point(3.0, 0.0)), cplx(0.0, 0.0));
  EXPECT_EQ(kb::sample_on_grid(grid, f), v);
  EXPECT_EQ(f.support_margin(spec), 0.0);
}
