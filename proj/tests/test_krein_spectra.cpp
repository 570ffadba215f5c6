// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <functional>

#include <gtest/gtest.h>

#include "kreinbem/errors.hpp"
#include "kreinbem/krein_spectra.hpp"
#include "kreinbem/steklov.hpp"
#include "support/oracles.hpp"

namespace kb = kreinbem;
using kb::cplx;
using kb::Point;

namespace
{

kb::BoundaryMesh disk(int n) { return kb::build_mesh(kb::DomainSpec::disk(1.0, n)); }

// Sign changes of F sampled on (a, b], refined by long-double bisection.
std::vector<double> roots(const std::function<long double(long double)> &F, double a, double b, int samples)
{
  std::vector<double> out;
  long double x0 = a;
  long double f0 = F(x0);
  for (int i = 1; i <= samples; ++i)
  {
    long double x1 = a + (b - a) * static_cast<long double>(i) / samples;
    const long double f1 = F(x1);
    if ((f0 < 0) != (f1 < 0))
    {
      long double lo = x0;
      long double hi = x1;
      long double flo = f0;
      for (int it = 0; it < 200 && hi - lo > 1e-16L * hi; ++it)
      {
        const long double mid = 0.5L * (lo + hi);
        const long double fm = F(mid);
        if ((fm < 0) == (flo < 0))
        {
          lo = mid;
          flo = fm;
        }
        else
        {
          hi = mid;
        }
      }
      out.push_back(static_cast<double>(0.5L * (lo + hi)));
    }
    x0 = x1;
    f0 = f1;
  }
  return out;
}

long double jl(int m, long double x) { return oracle::bessel_j(m, x).real(); }

// Unit disk eigenvalues below lambda_max with multiplicity; theta < 0 is Dirichlet.
std::vector<double> oracle_eigenvalues(double theta, double lambda_max)
{
  std::vector<double> out;
  if (theta == 0.0)
  {
    out.push_back(0.0);
  }
  for (int m = 0; m <= 12; ++m)
  {
    std::function<long double(long double)> F;
    if (theta < 0.0)
    {
      F = [m](long double lam) { return jl(m, std::sqrt(lam)); };
    }
    else
    {
      F = [m, theta](long double lam) {
        const long double k = std::sqrt(lam);
        return 0.5L * k * (jl(m - 1, k) - jl(m + 1, k)) + static_cast<long double>(theta) * jl(m, k);
      };
    }
    for (double r : roots(F, 1e-9, lambda_max, 4000))
    {
      out.insert(out.end(), m == 0 ? 1 : 2, r);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Point> ring_targets()
{
  std::vector<Point> t;
  for (int k = 0; k < 12; ++k)
  {
    const double r = k < 6 ? 0.25 : 0.5;
    const double a = 2.0 * 3.141592653589793 * (k % 6) / 6.0 + 0.3;
    t.emplace_back(r * std::cos(a), r * std::sin(a));
  }
  return t;
}

double krein_error(int n, double h, const kb::RobinCoupling &coupling)
{
  const auto spec = kb::DomainSpec::disk(1.0, n);
  const auto grid = kb::interior_grid(spec, h, 0.0);
  const auto f = kb::SourceField::gaussian({0.2, 0.0}, 0.1, 1.0);
  return kb::krein_check(kb::build_mesh(spec), grid, cplx(2.0, 1.5), coupling, f, ring_targets())
      .relative_error;
}

}  // namespace

TEST(Krein, ZeroSource)
{
  const auto spec = kb::DomainSpec::disk(1.0, 64);
  const auto grid = kb::interior_grid(spec, 0.05, 0.0);
  const auto r = kb::krein_check(kb::build_mesh(spec), grid, cplx(2.0, 1.5), kb::RobinCoupling::constant(1.0),
                                 kb::SourceField::zero(), ring_targets());
  EXPECT_EQ(r.lhs.norm(), 0.0);
  EXPECT_EQ(r.rhs.norm(), 0.0);
  EXPECT_EQ(r.relative_error, 0.0);
}

TEST(Krein, RobinAndNeumannFormulas)
{
  EXPECT_LE(krein_error(256, 0.0125, kb::RobinCoupling::constant(1.0)), 1e-2);
  EXPECT_LE(krein_error(256, 0.0125, kb::RobinCoupling::zero()), 1e-2);
}

TEST(Krein, ErrorAtRoundingLevelUnderRefinement)
{
  // Both sides share one discretization, so the identity holds to rounding at every
  // resolution and refinement has nothing left to halve.
  const auto coupling = kb::RobinCoupling::constant(1.0);
  EXPECT_LE(krein_error(256, 0.0125, coupling), 1e-12);
  EXPECT_LE(krein_error(512, 0.00625, coupling), 1e-12);
}

TEST(DiskOracle, FirstBesselZero)
{
  const double j01 = kb::bessel_j_zero(0, 1);
  EXPECT_NEAR(j01, 2.404826, 5e-7);
  const auto r = roots([](long double x) { return jl(0, x); }, 2.0, 3.0, 10);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(j01, r[0], 1e-9);
  EXPECT_NEAR(kb::bessel_j_zero_in(0, 2.0, 3.0), r[0], 1e-9);
  EXPECT_THROW(kb::bessel_j_zero_in(0, 3.0, 4.0), kb::RootNotBracketed);
}

TEST(DiskOracle, EigenvaluesMatchIndependentRoots)
{
  const auto dir = kb::disk_dirichlet_eigenvalues(1.0, 40.0);
  const auto dir_ref = oracle_eigenvalues(-1.0, 40.0);
  ASSERT_EQ(dir.size(), dir_ref.size());
  for (std::size_t i = 0; i < dir.size(); ++i)
  {
    EXPECT_NEAR(dir[i], dir_ref[i], 1e-9 * dir_ref[i]);
  }
  const auto rob = kb::disk_robin_eigenvalues(1.0, 1.0, 40.0);
  const auto rob_ref = oracle_eigenvalues(1.0, 40.0);
  ASSERT_EQ(rob.size(), rob_ref.size());
  for (std::size_t i = 0; i < rob.size(); ++i)
  {
    EXPECT_NEAR(rob[i], rob_ref[i], 1e-9 * rob_ref[i]);
  }
  EXPECT_NEAR(kb::disk_dirichlet_eigenvalue(1, 1, 2.0), dir_ref[1] / 4.0, 1e-9);
}

TEST(DiskOracle, LargeThetaApproachesDirichlet)
{
  const double d = kb::disk_dirichlet_eigenvalue(0, 1, 1.0);
  EXPECT_NEAR(kb::disk_robin_eigenvalue(0, 1, 1e6, 1.0), d, 1e-3 * d);
}

TEST(DiskOracle, RtdEigenvalueAgreesWithAssembledMap)
{
  const auto mesh = disk(256);
  const auto map = kb::assemble_rtd(mesh, -1.0, kb::RobinCoupling::zero());
  const cplx lambda = kb::disk_rtd_eigenvalue(0, -1.0, 0.0, 1.0);
  // sqrt(-1) = i turns the Bessel ratio into I_0(1) / I_1(1).
  const double i0 = static_cast<double>(oracle::bessel_j(0, {0.0L, 1.0L}).real());
  const double i1 = static_cast<double>((oracle::bessel_j(1, {0.0L, 1.0L}) / std::complex<long double>(0.0L, 1.0L)).real());
  EXPECT_NEAR(lambda.imag(), 0.0, 1e-14);
  EXPECT_NEAR(lambda.real(), i0 / i1, 1e-12);
  EXPECT_NEAR(std::abs(lambda - oracle::disk_robin_trace(0, -1.0, 0.0)), 0.0, 1e-12);
  const Eigen::VectorXcd e = kb::boundary_data(mesh, "fourier:0");
  const Eigen::VectorXcd me = map.matrix.apply(e);
  EXPECT_LE((me - lambda * e).cwiseAbs().maxCoeff(), 1e-4 * std::abs(lambda));
  const cplx mu = kb::disk_dtr_eigenvalue(3, cplx(2.0, 1.0), 1.0, 1.0);
  EXPECT_NEAR(std::abs(mu * kb::disk_rtd_eigenvalue(3, cplx(2.0, 1.0), 1.0, 1.0) + 1.0), 0.0, 1e-12);
}

TEST(SpectrumScan, DirichletDiskSmall)
{
  const auto scan = kb::spectrum_scan(disk(128), kb::ScanOperator::dirichlet(), 4.0, 16.0, 120);
  EXPECT_TRUE(scan.dirichlet);
  EXPECT_EQ(scan.z.size(), 121u);
  for (double s : scan.sigma_min)
  {
    EXPECT_GE(s, 0.0);
  }
  const auto found = scan.eigenvalues();
  const auto expected = oracle_eigenvalues(-1.0, 16.0);
  ASSERT_EQ(found.size(), expected.size());
  for (std::size_t i = 0; i < found.size(); ++i)
  {
    EXPECT_NEAR(found[i], expected[i], 1e-3 * expected[i]);
  }
}

TEST(SpectrumScan, DipsAreLocalMinima)
{
  const auto scan = kb::spectrum_scan(disk(64), kb::RobinCoupling::constant(1.0), 0.5, 16.0, 80);
  ASSERT_FALSE(scan.dips.empty());
  for (const auto &d : scan.dips)
  {
    const auto it = std::lower_bound(scan.z.begin(), scan.z.end(), d.z);
    const auto i = static_cast<std::size_t>(it - scan.z.begin());
    ASSERT_GT(i, 0u);
    ASSERT_LT(i, scan.z.size());
    // The refined minimum is no larger than the samples bracketing it.
    EXPECT_LE(d.sigma_min, std::max(scan.sigma_min[i - 1], scan.sigma_min[i]) + 1e-15);
  }
}

TEST(SpectrumScan, RobinMonotoneInThetaAndBoundedBelow)
{
  const auto mesh = disk(128);
  std::vector<std::vector<double>> eig;
  for (double theta : {0.0, 1.0, 10.0})
  {
    const auto scan = kb::spectrum_scan(mesh, kb::RobinCoupling::constant(theta), -0.95, 16.0, 160);
    eig.push_back(scan.eigenvalues());
    const auto expected = oracle_eigenvalues(theta, 16.0);
    ASSERT_EQ(eig.back().size(), expected.size()) << "theta=" << theta;
    for (std::size_t i = 0; i < expected.size(); ++i)
    {
      EXPECT_NEAR(eig.back()[i], expected[i], 1e-3 * std::max(1.0, expected[i])) << "theta=" << theta;
      EXPECT_GE(eig.back()[i], -1e-6);
    }
  }
  for (std::size_t t = 1; t < eig.size(); ++t)
  {
    const std::size_t n = std::min(eig[t].size(), eig[t - 1].size());
    for (std::size_t i = 0; i < n; ++i)
    {
      EXPECT_GE(eig[t][i], eig[t - 1][i]) << "index " << i;
    }
  }
}

TEST(SpectrumScan, SolvesSucceedBetweenDips)
{
  const auto mesh = disk(128);
  const auto coupling = kb::RobinCoupling::constant(1.0);
  auto eig = oracle_eigenvalues(1.0, 16.0);
  eig.erase(std::unique(eig.begin(), eig.end()), eig.end());
  const Eigen::VectorXcd g = kb::boundary_data(mesh, "gauss:0.3,0.5");
  for (std::size_t i = 0; i + 1 < eig.size(); ++i)
  {
    const double z = 0.5 * (eig[i] + eig[i + 1]);
    const auto sol = kb::solve_robin(mesh, z, coupling, g);
    EXPECT_LT(sol.condition, 1e10) << "z=" << z;
  }
}

TEST(SpectrumScan, SmallestSingularValuesAscending)
{
  const auto s = kb::smallest_singular_values(disk(64), 3.0, kb::RobinCoupling::constant(1.0), 3);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_LE(s[0], s[1]);
  EXPECT_LE(s[1], s[2]);
  EXPECT_GE(s[0], 0.0);
}
