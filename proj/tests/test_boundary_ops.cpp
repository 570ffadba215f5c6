// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "kreinbem/boundary_ops.hpp"
#include "kreinbem/bvp.hpp"
#include "kreinbem/errors.hpp"

namespace kb = kreinbem;
using kb::cplx;
using kb::Point;

namespace
{

constexpr double kPi = std::numbers::pi;

Eigen::VectorXcd mode(const kb::BoundaryMesh &mesh, int m)
{
  return kb::boundary_data(mesh, "fourier:" + std::to_string(m));
}

double rel_w(const kb::BoundaryMesh &mesh, const Eigen::VectorXcd &a, const Eigen::VectorXcd &b)
{
  return kb::norm_w(mesh.weights, a - b) / kb::norm_w(mesh.weights, b);
}

Eigen::VectorXcd random_density(const kb::BoundaryMesh &mesh, std::mt19937 &rng)
{
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::VectorXcd f(mesh.size());
  for (Eigen::Index i = 0; i < f.size(); ++i)
  {
    f(i) = cplx(n(rng), n(rng));
  }
  return f;
}

}  // namespace

TEST(SingleLayer, CircleLaplaceSpectrum)
{
  const auto mesh = kb::build_mesh(kb::DomainSpec::disk(1.0, 512));
  const auto s = kb::assemble_single_layer(mesh, 0.0);
  for (int m = 1; m <= 5; ++m)
  {
    const auto f = mode(mesh, m);
    EXPECT_LE(rel_w(mesh, s.apply(f), f / (2.0 * m)), 1e-3) << m;
  }
  const Eigen::VectorXcd one = Eigen::VectorXcd::Ones(mesh.size());
  EXPECT_LE(kb::norm_w(mesh.weights, s.apply(one)), 1e-3);
}

TEST(SingleLayer, SymmetricAfterWeightStripping)
{
  const auto mesh = kb::build_mesh(kb::DomainSpec::star({{0, 1.0}, {3, 0.15}}, 128));
  const auto s = kb::assemble_single_layer(mesh, cplx(2.0, 1.0));
  const Eigen::MatrixXcd k = s.matrix * mesh.weights.cwiseInverse().asDiagonal();
  EXPECT_LE((k - k.transpose()).cwiseAbs().maxCoeff(), 1e-13 * k.cwiseAbs().maxCoeff());
}

TEST(KPrime, CircleLaplaceExamples)
{
  const auto mesh = kb::build_mesh(kb::DomainSpec::disk(1.0, 256));
  const auto kp = kb::assemble_kprime(mesh, 0.0);
  const auto k = kb::assemble_k(mesh, 0.0);
  const Eigen::VectorXcd one = Eigen::VectorXcd::Ones(mesh.size());
  EXPECT_LE(rel_w(mesh, kp.apply(one), -0.5 * one), 1e-3);
  EXPECT_LE(rel_w(mesh, k.apply(one), -0.5 * one), 1e-3);
  for (int m : {1, 2, 7})
  {
    EXPECT_LE(kb::norm_w(mesh.weights, kp.apply(mode(mesh, m))), 1e-3);
    EXPECT_LE(kb::norm_w(mesh.weights, k.apply(mode(mesh, m))), 1e-3);
  }
}

TEST(KPrime, AdjointPairing)
{
  for (const auto &spec : {kb::DomainSpec::disk(1.0, 96), kb::DomainSpec::star({{0, 1.0}, {2, 0.2}}, 96)})
  {
    const auto mesh = kb::build_mesh(spec);
    const kb::SpectralParameter z(cplx(2.0, 1.0));
    const auto kp = kb::assemble_kprime(mesh, z);
    const auto k = kb::assemble_k(mesh, z.conj());
    const Eigen::MatrixXcd diff = kp.weighted_adjoint().matrix - k.matrix;
    EXPECT_LE(diff.cwiseAbs().maxCoeff(), 1e-10 * k.matrix.cwiseAbs().maxCoeff());
  }
}

TEST(DenseOperator, WeightedAdjointIsInvolution)
{
  const auto mesh = kb::build_mesh(kb::DomainSpec::star({{0, 1.0}, {3, 0.2}}, 64));
  const auto s = kb::assemble_single_layer(mesh, cplx(1.0, 2.0));
  const Eigen::MatrixXcd twice = s.weighted_adjoint().weighted_adjoint().matrix;
  EXPECT_LE((twice - s.matrix).cwiseAbs().maxCoeff(), 4e-16 * s.matrix.cwiseAbs().maxCoeff());
  std::mt19937 rng(3);
  const auto f = random_density(mesh, rng);
  const auto g = random_density(mesh, rng);
  const cplx lhs = kb::inner_w(mesh.weights, s.apply(f), g);
  const cplx rhs = kb::inner_w(mesh.weights, f, s.weighted_adjoint().apply(g));
  EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::abs(lhs));
}

TEST(LayerOperators, BundleMatchesSingleAssemblies)
{
  const auto mesh = kb::build_mesh(kb::DomainSpec::disk(1.0, 64));
  const kb::SpectralParameter z(cplx(2.0, 1.0));
  const auto ops = kb::assemble_layer_operators(mesh, z);
  EXPECT_LE((ops.single_layer.matrix - kb::assemble_single_layer(mesh, z).matrix).norm(), 1e-13);
  EXPECT_LE((ops.kprime.matrix - kb::assemble_kprime(mesh, z).matrix).norm(), 1e-13);
  EXPECT_LE((ops.k.matrix - kb::assemble_k(mesh, z).matrix).norm(), 1e-13);
}

TEST(Theta, ApplyExamples)
{
  const auto mesh = kb::build_mesh(kb::DomainSpec::disk(1.0, 64));
  const auto f = mode(mesh, 2);
  EXPECT_EQ(kb::apply_theta(kb::RobinCoupling::zero(), mesh, f).norm(), 0.0);
  const Eigen::VectorXcd one = Eigen::VectorXcd::Ones(mesh.size());
  EXPECT_LE((kb::apply_theta(kb::RobinCoupling::constant(1.0), mesh, one) - one).norm(), 1e-15);
  const auto mult = kb::RobinCoupling::fourier_multiplier(0.25, 1.0);
  EXPECT_LE(rel_w(mesh, kb::apply_theta(mult, mesh, f), std::pow(2.0, 0.25) * f), 1e-12);
}

TEST(Theta, MismatchAndInvalidConstructors)
{
  const auto mesh = kb::build_mesh(kb::DomainSpec::disk(1.0, 64));
  const auto square = kb::build_mesh(kb::DomainSpec::square(1.0, 8));
  const auto mult = kb::RobinCoupling::fourier_multiplier(0.5, 1.0);
  EXPECT_THROW(kb::apply_theta(mult, square, Eigen::VectorXcd::Ones(square.size())), kb::MeshMismatch);
  EXPECT_THROW(kb::apply_theta(kb::RobinCoupling::constant(1.0), mesh, Eigen::VectorXcd::Ones(3)),
               kb::MeshMismatch);
  EXPECT_THROW(kb::RobinCoupling::fourier_multiplier(1.0, 1.0), kb::Error);
  Eigen::MatrixXcd skew = Eigen::MatrixXcd::Zero(4, 4);
  skew(0, 1) = 1.0;
  EXPECT_THROW(kb::RobinCoupling::explicit_matrix(skew, Eigen::VectorXd::Ones(4)), kb::Error);
}

TEST(Theta, HermitianAndLowerBoundOnRandomDensities)
{
  const auto mesh = kb::build_mesh(kb::DomainSpec::disk(1.0, 64));
  std::mt19937 rng(5);
  Eigen::VectorXd theta(mesh.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i)
  {
    theta(i) = 1.0 + std::sin(3.0 * mesh.angle(i));
  }
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Random(mesh.size(), mesh.size());
  // W-Hermitian: W h must be Hermitian.
  const Eigen::MatrixXcd wh = 0.5 * (h + h.adjoint());
  const Eigen::MatrixXcd explicit_theta = mesh.weights.cwiseInverse().asDiagonal() * wh;
  const std::vector<kb::RobinCoupling> couplings{
      kb::RobinCoupling::constant(-0.5), kb::RobinCoupling::multiplication(theta),
      kb::RobinCoupling::fourier_multiplier(0.5, 2.0),
      kb::RobinCoupling::explicit_matrix(explicit_theta, mesh.weights)};
  for (const auto &c : couplings)
  {
    const double ct = c.c_theta(mesh);
    for (int k = 0; k < 100; ++k)
    {
      const auto f = random_density(mesh, rng);
      const auto g = random_density(mesh, rng);
      const cplx a = kb::inner_w(mesh.weights, c.apply(mesh, f), g);
      const cplx b = kb::inner_w(mesh.weights, f, c.apply(mesh, g));
      EXPECT_LE(std::abs(a - b), 1e-10 * (std::abs(a) + 1.0)) << c.literal();
      const double q = kb::inner_w(mesh.weights, f, c.apply(mesh, f)).real();
      EXPECT_GE(q, ct * kb::inner_w(mesh.weights, f, f).real() - 1e-10) << c.literal();
    }
  }
}

TEST(SingleLayerPotential, HarmonicExtensionOnCircle)
{
  const auto mesh = kb::build_mesh(kb::DomainSpec::disk(1.0, 256));
  const auto u = kb::eval_single_layer(mesh, 0.0, mode(mesh, 1), {Point(0.5, 0.0)});
  EXPECT_NEAR(std::abs(u.values(0) - cplx(0.25, 0.0)), 0.0, 1e-6);
  EXPECT_FALSE(u.any_too_close());
  const auto zero = kb::eval_single_layer(mesh, 0.0, Eigen::VectorXcd::Zero(mesh.size()), {Point(0.1, 0.2)});
  EXPECT_EQ(zero.values(0), cplx(0.0, 0.0));
}

TEST(SingleLayerPotential, SatisfiesHelmholtzInside)
{
  const auto mesh = kb::build_mesh(kb::DomainSpec::disk(1.0, 256));
  const cplx z(2.0, 1.0);
  const double h = 1e-3;
  const Point c(0.3, 0.2);
  const std::vector<Point> pts{c, c + Point(h, 0), c - Point(h, 0), c + Point(0, h), c - Point(0, h)};
  const auto u = kb::eval_single_layer(mesh, z, mode(mesh, 2), pts).values;
  const cplx lap = (u(1) + u(2) + u(3) + u(4) - 4.0 * u(0)) / (h * h);
  EXPECT_LE(std::abs(-lap - z * u(0)), 1e-4 * std::abs(z * u(0)));
}

TEST(SingleLayerPotential, TooCloseFlag)
{
  const auto mesh = kb::build_mesh(kb::DomainSpec::disk(1.0, 64));
  const auto u = kb::eval_single_layer(mesh, 1.0, mode(mesh, 0), {Point(0.999, 0.0), Point(0.0, 0.0)});
  EXPECT_TRUE(u.too_close[0]);
  EXPECT_FALSE(u.too_close[1]);
  EXPECT_TRUE(std::isfinite(u.values(0).real()));
}

TEST(DoubleLayerPotential, GaussIdentity)
{
  const auto mesh = kb::build_mesh(kb::DomainSpec::star({{0, 1.0}, {3, 0.1}}, 256));
  const Eigen::VectorXcd one = Eigen::VectorXcd::Ones(mesh.size());
  const auto v = kb::eval_double_layer(mesh, 0.0, one, {Point(0.1, -0.2), Point(0.3, 0.3), Point(2.0, 1.0)});
  EXPECT_NEAR(std::abs(v.values(0) + 1.0), 0.0, 1e-6);
  EXPECT_NEAR(std::abs(v.values(1) + 1.0), 0.0, 1e-6);
  EXPECT_NEAR(std::abs(v.values(2)), 0.0, 1e-6);
  const auto zero = kb::eval_double_layer(mesh, 0.0, Eigen::VectorXcd::Zero(mesh.size()), {Point(0.0, 0.0)});
  EXPECT_EQ(zero.values(0), cplx(0.0, 0.0));
}

TEST(NeumannTrace, CircleExamples)
{
  const auto mesh = kb::build_mesh(kb::DomainSpec::disk(1.0, 256));
  const auto f = mode(mesh, 1);
  EXPECT_LE(rel_w(mesh, kb::neumann_trace_single_layer(mesh, 0.0, f), 0.5 * f), 1e-3);
  const Eigen::VectorXcd one = Eigen::VectorXcd::Ones(mesh.size());
  EXPECT_LE(kb::norm_w(mesh.weights, kb::neumann_trace_single_layer(mesh, 0.0, one)), 1e-3);
  const auto ext = kb::neumann_trace_single_layer(mesh, 0.0, one, kb::TraceSide::exterior);
  EXPECT_LE(rel_w(mesh, ext, -one), 1e-3);
}

TEST(JumpRelations, DiskAtComplexParameter)
{
  const auto mesh = kb::build_mesh(kb::DomainSpec::disk(1.0, 256));
  Eigen::VectorXcd g(mesh.size());
  for (Eigen::Index i = 0; i < g.size(); ++i)
  {
    g(i) = std::cos(3.0 * mesh.angle(i));
  }
  const auto r = kb::check_jump(mesh, cplx(2.0, 1.0), g);
  EXPECT_LE(r.density_jump, 1e-14);
  EXPECT_LE(r.dirichlet_continuity, 1e-3);
  EXPECT_LE(r.neumann_interior, 5e-2);
  EXPECT_LE(r.neumann_exterior, 5e-2);
  EXPECT_DOUBLE_EQ(r.delta_fd, 5.0 * mesh.max_panel_length());
}

TEST(JumpRelations, SmoothStarDomain)
{
  const auto mesh = kb::build_mesh(kb::DomainSpec::star({{0, 1.0}, {3, 0.1}}, 256));
  const auto r = kb::check_jump(mesh, cplx(1.0, 0.5), mode(mesh, 2));
  EXPECT_LE(r.density_jump, 1e-14);
  EXPECT_LE(r.dirichlet_continuity, 1e-2);
  EXPECT_LE(r.neumann_interior, 5e-2);
  EXPECT_LE(r.neumann_exterior, 5e-2);
}
