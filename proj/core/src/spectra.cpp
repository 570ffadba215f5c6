// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#include "kreinbem/krein_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "kreinbem/errors.hpp"

namespace kreinbem
{

namespace
{

using Lu = Eigen::PartialPivLU<Eigen::MatrixXcd>;

constexpr double kPi = std::numbers::pi;

// Fixed z used to precondition the single layer in Dirichlet scans.
constexpr double kPreconditionZ = -1.0;
// Singular values within this factor of sigma_min count towards the multiplicity.
constexpr double kMultiplicityFactor = 100.0;
constexpr int kMaxSubspaceIterations = 40;

// sigma_min machinery for one mesh; caches the Dirichlet preconditioner.
class Scanner
{
public:
  Scanner(const BoundaryMesh &mesh, const ScanOperator &op)
    : mesh_(std::make_shared<const BoundaryMesh>(mesh)), op_(op), d_(mesh.weights.cwiseSqrt())
  {
    if (op_.is_dirichlet())
    {
      precond_ = assemble_single_layer(*mesh_, SpectralParameter(kPreconditionZ)).matrix;
    }
  }

  std::vector<double> singular_values(double z, int count) const
  {
    const BoundaryContext ctx(mesh_, SpectralParameter(z));
    const Lu lu(op_.is_dirichlet() ? ctx.single_layer().matrix
                                   : ctx.robin_operator(op_.coupling()));
    // B^{-1} and B^{-H} for B = D A D^{-1} (Robin) or D S_z S_{-1}^{-1} D^{-1} (Dirichlet).
    auto inv = [&](const Eigen::MatrixXcd &x) -> Eigen::MatrixXcd {
      Eigen::MatrixXcd y = lu.solve(d_.cwiseInverse().asDiagonal() * x);
      if (op_.is_dirichlet())
      {
        y = precond_ * y;
      }
      return d_.asDiagonal() * y;
    };
    auto inv_adj = [&](const Eigen::MatrixXcd &x) -> Eigen::MatrixXcd {
      Eigen::MatrixXcd y = d_.asDiagonal() * x;
      if (op_.is_dirichlet())
      {
        y = precond_.adjoint() * y;
      }
      // A^{-H} y = conj(A^{-T} conj(y))
      const Eigen::MatrixXcd yc = y.conjugate();
      const Eigen::MatrixXcd t = lu.transpose().solve(yc);
      return d_.cwiseInverse().asDiagonal() * t.conjugate();
    };
    return subspace_iteration(inv, inv_adj, count);
  }

private:
  std::shared_ptr<const BoundaryMesh> mesh_;
  ScanOperator op_;
  Eigen::VectorXd d_;
  Eigen::MatrixXcd precond_;

  // Largest singular values of B^{-1} by block power iteration on B^{-H} B^{-1};
  // returns their reciprocals, the smallest singular values of B.
  template <class Inv, class InvAdj>
  std::vector<double> subspace_iteration(const Inv &inv, const InvAdj &inv_adj, int count) const
  {
    const Eigen::Index n = mesh_->size();
    const Eigen::Index p = std::min<Eigen::Index>(count + 2, n);
    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> normal;
    Eigen::MatrixXcd q(n, p);
    for (Eigen::Index j = 0; j < p; ++j)
    {
      for (Eigen::Index i = 0; i < n; ++i)
      {
        q(i, j) = cplx(normal(rng), normal(rng));
      }
    }
    q = Eigen::HouseholderQR<Eigen::MatrixXcd>(q).householderQ() * Eigen::MatrixXcd::Identity(n, p);
    Eigen::VectorXd est = Eigen::VectorXd::Zero(p);
    for (int it = 0; it < kMaxSubspaceIterations; ++it)
    {
      const Eigen::MatrixXcd y = inv(q);
      if (!y.allFinite())
      {
        return std::vector<double>(static_cast<std::size_t>(count), 0.0);
      }
      const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(y).singularValues();
      const double change = std::abs(sv(count - 1) - est(count - 1)) / sv(count - 1);
      est = sv;
      if (change < 1e-8)
      {
        break;
      }
      const Eigen::MatrixXcd zq = inv_adj(y);
      q = Eigen::HouseholderQR<Eigen::MatrixXcd>(zq).householderQ() *
          Eigen::MatrixXcd::Identity(n, p);
    }
    std::vector<double> out;
    for (int j = 0; j < count; ++j)
    {
      out.push_back(est(j) > 0.0 ? 1.0 / est(j) : std::numeric_limits<double>::infinity());
    }
    return out;
  }
};

double real_j(int m, double x) { return bessel_j(m, cplx(x, 0.0)).real(); }

double real_jp(int m, double x) { return bessel_j_derivative(m, cplx(x, 0.0)).real(); }

double bisect_root(const std::function<double(double)> &f, double a, double b)
{
  const double fa = f(a);
  const double fb = f(b);
  if (fa == 0.0)
  {
    return a;
  }
  if (fb == 0.0)
  {
    return b;
  }
  if ((fa > 0.0) == (fb > 0.0))
  {
    throw RootNotBracketed("no sign change on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "]");
  }
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::bisect(f, a, b, boost::math::tools::eps_tolerance<double>(52),
                                            iters);
  return 0.5 * (r.first + r.second);
}

// Roots of f on (0, x_max], found by sign changes on a fine lattice. Bessel-type
// roots of order m exceed m, so the lattice starts at m / 2 where J_m is still
// representable.
std::vector<double> scan_roots(const std::function<double(double)> &f, int m, double x_max,
                               std::size_t max_count)
{
  constexpr double step = 0.02;
  std::vector<double> roots;
  double a = std::max(1e-3, 0.5 * m);
  double fa = f(a);
  while (a < x_max && roots.size() < max_count)
  {
    const double b = std::min(a + step, x_max);
    const double fb = f(b);
    if (fb == 0.0 || (fa > 0.0) != (fb > 0.0))
    {
      roots.push_back(bisect_root(f, a, b));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

std::function<double(double)> robin_function(int m, double theta, double radius)
{
  // x J_m'(x) + theta R J_m(x), x = sqrt(l) R
  return [=](double x) { return x * real_jp(m, x) + theta * radius * real_j(m, x); };
}

void check_disk_args(int m, int k, double radius)
{
  if (m < 0 || k < 1 || !(radius > 0.0))
  {
    throw DomainError("disk oracle needs m >= 0, k >= 1, R > 0");
  }
}

}  // namespace

ScanOperator ScanOperator::dirichlet()
{
  ScanOperator op;
  op.dirichlet_ = true;
  return op;
}

std::vector<double> SpectrumScan::eigenvalues(double max_contrast) const
{
  std::vector<double> out;
  for (const SpectrumDip &d : dips)
  {
    if (d.contrast <= max_contrast)
    {
      out.insert(out.end(), static_cast<std::size_t>(d.multiplicity), d.z);
    }
  }
  return out;
}

std::vector<double> smallest_singular_values(const BoundaryMesh &mesh, double z,
                                             const ScanOperator &op, int count)
{
  if (count < 1)
  {
    throw Error("singular value count must be positive");
  }
  return Scanner(mesh, op).singular_values(z, count);
}

SpectrumScan spectrum_scan(const BoundaryMesh &mesh, const ScanOperator &op, double z_min,
                           double z_max, int steps)
{
  if (!(z_min < z_max))
  {
    throw Error("spectrum scan needs z_min < z_max");
  }
  if (steps < 16)
  {
    throw Error("spectrum scan needs at least 16 steps");
  }
  const Scanner scanner(mesh, op);
  SpectrumScan scan;
  scan.dirichlet = op.is_dirichlet();
  const double dz = (z_max - z_min) / steps;
  for (int k = 0; k <= steps; ++k)
  {
    const double z = k == steps ? z_max : z_min + k * dz;
    scan.z.push_back(z);
    scan.sigma_min.push_back(scanner.singular_values(z, 1)[0]);
  }
  const auto &s = scan.sigma_min;
  for (std::size_t k = 1; k + 1 < s.size(); ++k)
  {
    if (!(s[k] < s[k - 1] && s[k] <= s[k + 1]))
    {
      continue;
    }
    std::uintmax_t iters = 100;
    const auto best = boost::math::tools::brent_find_minima(
        [&](double z) { return scanner.singular_values(z, 1)[0]; }, scan.z[k - 1], scan.z[k + 1],
        40, iters);
    SpectrumDip dip;
    dip.z = best.first;
    dip.sigma_min = std::min(best.second, s[k]);
    if (best.second > s[k])
    {
      dip.z = scan.z[k];
    }
    dip.contrast = dip.sigma_min / std::max(s[k - 1], s[k + 1]);
    const std::vector<double> sv = scanner.singular_values(dip.z, 4);
    dip.multiplicity = static_cast<int>(std::count_if(sv.begin(), sv.end(), [&](double v) {
      return v <= kMultiplicityFactor * sv[0];
    }));
    scan.dips.push_back(dip);
  }
  return scan;
}

cplx bessel_j_derivative(int m, cplx x)
{
  if (m == 0)
  {
    return -bessel_j(1, x);
  }
  if (x == cplx(0.0, 0.0))
  {
    return m == 1 ? 0.5 : 0.0;
  }
  return static_cast<double>(m) * bessel_j(m, x) / x - bessel_j(m + 1, x);
}

double bessel_j_zero_in(int m, double a, double b)
{
  return bisect_root([m](double x) { return real_j(m, x); }, a, b);
}

double bessel_j_zero(int m, int k)
{
  check_disk_args(m, k, 1.0);
  // j_{m,k} < m + pi (k + m/2) + 2 with room to spare
  const double x_max = m + kPi * (k + 0.5 * m + 1.0) + 2.0;
  const std::vector<double> r =
      scan_roots([m](double x) { return real_j(m, x); }, m, x_max, static_cast<std::size_t>(k));
  if (r.size() < static_cast<std::size_t>(k))
  {
    throw RootNotBracketed("Bessel zero not found");
  }
  return r.back();
}

double disk_dirichlet_eigenvalue(int m, int k, double radius)
{
  check_disk_args(m, k, radius);
  const double j = bessel_j_zero(m, k);
  return j * j / (radius * radius);
}

double disk_robin_eigenvalue(int m, int k, double theta, double radius)
{
  check_disk_args(m, k, radius);
  if (!(theta >= 0.0))
  {
    throw DomainError("disk Robin oracle needs theta >= 0");
  }
  int want = k;
  if (m == 0 && theta == 0.0)
  {
    if (k == 1)
    {
      return 0.0;
    }
    want = k - 1;
  }
  // The want-th Robin root lies below j_{m,want+1}.
  const double x_max = bessel_j_zero(m, want + 1) + 0.1;
  const std::vector<double> r =
      scan_roots(robin_function(m, theta, radius), m, x_max, static_cast<std::size_t>(want));
  if (r.size() < static_cast<std::size_t>(want))
  {
    throw RootNotBracketed("Robin root not found");
  }
  return r.back() * r.back() / (radius * radius);
}

std::vector<double> disk_dirichlet_eigenvalues(double radius, double lambda_max)
{
  std::vector<double> out;
  const double x_max = std::sqrt(std::max(lambda_max, 0.0)) * radius;
  for (int m = 0; m <= static_cast<int>(x_max) + 1; ++m)
  {
    for (double x : scan_roots([m](double t) { return real_j(m, t); }, m, x_max, 1000))
    {
      out.insert(out.end(), m == 0 ? 1 : 2, x * x / (radius * radius));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> disk_robin_eigenvalues(double theta, double radius, double lambda_max)
{
  if (!(theta >= 0.0))
  {
    throw DomainError("disk Robin oracle needs theta >= 0");
  }
  std::vector<double> out;
  if (lambda_max < 0.0)
  {
    return out;
  }
  const double x_max = std::sqrt(lambda_max) * radius;
  if (theta == 0.0)
  {
    out.push_back(0.0);
  }
  for (int m = 0; m <= static_cast<int>(x_max) + 1; ++m)
  {
    for (double x : scan_roots(robin_function(m, theta, radius), m, x_max, 1000))
    {
      out.insert(out.end(), m == 0 ? 1 : 2, x * x / (radius * radius));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

cplx disk_rtd_eigenvalue(int m, const SpectralParameter &z, double theta, double radius)
{
  if (!(radius > 0.0))
  {
    throw DomainError("disk oracle needs R > 0");
  }
  m = std::abs(m);
  const cplx k = z.sqrt_z();
  const cplx x = k * radius;
  if (z.is_zero())
  {
    // Harmonic limit: u = r^m e^{i m phi}, gamma_N u = m R^{m-1}.
    const double d = m / radius + theta;
    if (d == 0.0)
    {
      throw DomainError("Robin-to-Dirichlet map undefined at z = 0 for this mode");
    }
    return 1.0 / d;
  }
  const cplx j = bessel_j(m, x);
  return j / (k * bessel_j_derivative(m, x) + theta * j);
}

cplx disk_dtr_eigenvalue(int m, const SpectralParameter &z, double theta, double radius)
{
  return -1.0 / disk_rtd_eigenvalue(m, z, theta, radius);
}

}  // namespace kreinbem
