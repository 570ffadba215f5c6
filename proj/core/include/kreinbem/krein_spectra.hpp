// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef KREINBEM_KREIN_SPECTRA_HPP
#define KREINBEM_KREIN_SPECTRA_HPP

#include <vector>

#include <Eigen/Dense>

#include "kreinbem/bvp.hpp"
#include "kreinbem/coupling.hpp"
#include "kreinbem/geometry.hpp"
#include "kreinbem/volume_potential.hpp"

namespace kreinbem
{

struct KreinReport
{
  SpectralParameter z;
  RobinCoupling coupling;
  std::vector<Point> targets;
  // Robin resolvent applied to f.
  Eigen::VectorXcd lhs;
  // Dirichlet resolvent plus the boundary correction through M_rtd.
  Eigen::VectorXcd rhs;
  // max |lhs - rhs| / max |lhs| (0 when lhs vanishes identically)
  double relative_error = 0.0;
};

/// Both sides of
///   R_Theta(z) f = R_D(z) f - E_z M_rtd(z) gamma_N R_D(z) f,
/// where E_z phi is the solution of the Dirichlet problem with data phi.
KreinReport krein_check(const BoundaryMesh &mesh, const InteriorGrid &grid,
                        const SpectralParameter &z, const RobinCoupling &coupling,
                        const SourceField &f, const std::vector<Point> &targets);

/// Operator whose singular values are scanned: the Robin operator of a coupling,
/// or the single layer (Dirichlet eigenvalues).
class ScanOperator
{
public:
  ScanOperator(RobinCoupling coupling) : coupling_(std::move(coupling)) {}
  static ScanOperator dirichlet();

  bool is_dirichlet() const { return dirichlet_; }
  const RobinCoupling &coupling() const { return coupling_; }

private:
  ScanOperator() = default;
  bool dirichlet_ = false;
  RobinCoupling coupling_;
};

struct SpectrumDip
{
  double z = 0.0;
  double sigma_min = 0.0;
  // sigma_min at the dip over the larger sample at the ends of its bracket.
  double contrast = 0.0;
  // Number of singular values within a factor 100 of sigma_min at the dip.
  int multiplicity = 1;
};

struct SpectrumScan
{
  bool dirichlet = false;
  std::vector<double> z;
  std::vector<double> sigma_min;
  std::vector<SpectrumDip> dips;

  /// Dips with contrast below `max_contrast`, each repeated `multiplicity` times.
  std::vector<double> eigenvalues(double max_contrast = 0.05) const;
};

/// Smallest singular value of the scanned operator at real z, in the W-symmetrized
/// norm. The single layer is preconditioned by S_{-1}^{-1}, which is z independent
/// and invertible, so the dips are not masked by the 1/N decay of sigma_min(S_z).
/// Returns the `count` smallest values in increasing order.
std::vector<double> smallest_singular_values(const BoundaryMesh &mesh, double z,
                                             const ScanOperator &op, int count = 1);

/// sigma_min on `steps` + 1 equispaced samples of [z_min, z_max]; every interior local
/// minimum of the samples is refined by Brent minimization inside its bracket.
SpectrumScan spectrum_scan(const BoundaryMesh &mesh, const ScanOperator &op, double z_min,
                           double z_max, int steps);

// Separation-of-variables values on the disk of radius R.

/// k-th positive zero (k >= 1) of J_m.
double bessel_j_zero(int m, int k);

/// Zero of J_m bracketed by [a, b]; throws RootNotBracketed.
double bessel_j_zero_in(int m, double a, double b);

/// (j_{m,k} / R)^2.
double disk_dirichlet_eigenvalue(int m, int k, double radius);

/// k-th root (k >= 1) of sqrt(l) J_m'(sqrt(l) R) + theta J_m(sqrt(l) R) = 0, theta >= 0.
/// For theta = 0 and m = 0 the root l = 0 counts as k = 1.
double disk_robin_eigenvalue(int m, int k, double theta, double radius);

/// All eigenvalues <= lambda_max with multiplicity (modes +-m counted twice), ascending.
std::vector<double> disk_dirichlet_eigenvalues(double radius, double lambda_max);
std::vector<double> disk_robin_eigenvalues(double theta, double radius, double lambda_max);

/// Eigenvalue of M_rtd(z) on e^{i m phi}: J_m(k R) / (k J_m'(k R) + theta J_m(k R)), k = sqrt z.
cplx disk_rtd_eigenvalue(int m, const SpectralParameter &z, double theta, double radius);

/// Eigenvalue of M_dtr(z) on e^{i m phi}: -1 / disk_rtd_eigenvalue.
cplx disk_dtr_eigenvalue(int m, const SpectralParameter &z, double theta, double radius);

/// J_m'(x) = m J_m(x) / x - J_{m+1}(x) (x != 0), J_0'(x) = -J_1(x).
cplx bessel_j_derivative(int m, cplx x);

}  // namespace kreinbem

#endif  // KREINBEM_KREIN_SPECTRA_HPP
