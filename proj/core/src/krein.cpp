// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#include "kreinbem/krein_spectra.hpp"

#include "kreinbem/steklov.hpp"

namespace kreinbem
{

KreinReport krein_check(const BoundaryMesh &mesh, const InteriorGrid &grid,
                        const SpectralParameter &z, const RobinCoupling &coupling,
                        const SourceField &f, const std::vector<Point> &targets)
{
  KreinReport r;
  r.z = z;
  r.coupling = coupling;
  r.targets = targets;
  const auto nt = static_cast<Eigen::Index>(targets.size());
  if (f.is_zero())
  {
    r.lhs = Eigen::VectorXcd::Zero(nt);
    r.rhs = Eigen::VectorXcd::Zero(nt);
    return r;
  }
  const BoundaryContext ctx(mesh, z);
  const NewtonPart part = make_newton_part(ctx, grid, f);

  r.lhs = robin_resolvent_solution(ctx, coupling, part).evaluate(targets).values;

  const BVPSolution rd = dirichlet_resolvent_solution(ctx, part);
  const Eigen::VectorXcd phi = assemble_rtd(ctx, coupling).matrix.apply(rd.gamma_n);
  const BVPSolution ext = solve_dirichlet(ctx, phi);
  r.rhs = rd.evaluate(targets).values - ext.evaluate(targets).values;

  const double scale = r.lhs.cwiseAbs().maxCoeff();
  const double diff = (r.lhs - r.rhs).cwiseAbs().maxCoeff();
  r.relative_error = scale > 0.0 ? diff / scale : diff;
  return r;
}

}  // namespace kreinbem
