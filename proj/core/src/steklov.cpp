// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#include "kreinbem/steklov.hpp"

#include <algorithm>
#include <cmath>

#include "kreinbem/errors.hpp"

namespace kreinbem
{

namespace
{

DenseOperator with_weights(Eigen::MatrixXcd m, const BoundaryMesh &mesh)
{
  DenseOperator op;
  op.matrix = std::move(m);
  op.weights = mesh.weights;
  return op;
}

Eigen::MatrixXcd theta_times(const RobinCoupling &coupling, const BoundaryMesh &mesh,
                             const Eigen::MatrixXcd &x)
{
  if (coupling.is_zero())
  {
    return Eigen::MatrixXcd::Zero(x.rows(), x.cols());
  }
  return coupling.matrix(mesh) * x;
}

}  // namespace

SteklovMap assemble_rtd(const BoundaryContext &ctx, const RobinCoupling &coupling)
{
  const LuSolver &lu = ctx.robin_lu(coupling);
  SteklovMap m;
  m.matrix = with_weights(lu.solve_right(ctx.single_layer().matrix), ctx.mesh());
  m.z = ctx.z();
  m.coupling = coupling;
  m.direction = MapDirection::rtd;
  return m;
}

SteklovMap assemble_rtd(const BoundaryMesh &mesh, const SpectralParameter &z,
                        const RobinCoupling &coupling)
{
  return assemble_rtd(BoundaryContext(mesh, z), coupling);
}

SteklovMap assemble_dtr(const BoundaryContext &ctx, const RobinCoupling &coupling,
                        DtrRoute route)
{
  const LuSolver &s = ctx.single_layer_lu();
  Eigen::MatrixXcd m;
  if (route == DtrRoute::indirect)
  {
    m = -s.solve_right(ctx.robin_operator(coupling));
  }
  else
  {
    Eigen::MatrixXcd k = ctx.k().matrix;
    k.diagonal().array() += 0.5;
    const Eigen::Index n = ctx.mesh().size();
    m = -(s.solve(k) + theta_times(coupling, ctx.mesh(), Eigen::MatrixXcd::Identity(n, n)));
  }
  SteklovMap out;
  out.matrix = with_weights(std::move(m), ctx.mesh());
  out.z = ctx.z();
  out.coupling = coupling;
  out.direction = MapDirection::dtr;
  return out;
}

SteklovMap assemble_dtr(const BoundaryMesh &mesh, const SpectralParameter &z,
                        const RobinCoupling &coupling, DtrRoute route)
{
  return assemble_dtr(BoundaryContext(mesh, z), coupling, route);
}

Eigen::MatrixXcd low_mode_projector(const BoundaryContext &ctx, int cutoff)
{
  const BoundaryMesh &mesh = ctx.mesh();
  const Eigen::Index n = mesh.size();
  if (cutoff < 0)
  {
    throw Error("mode cutoff must be nonnegative");
  }
  const Eigen::Index k = std::min<Eigen::Index>(2 * static_cast<Eigen::Index>(cutoff) + 1, n);
  const Eigen::VectorXd &w = mesh.weights;
  if (mesh.spec.is_circle())
  {
    Eigen::MatrixXcd b(n, k);
    for (Eigen::Index c = 0; c < k; ++c)
    {
      const int m = static_cast<int>((c + 1) / 2) * (c % 2 == 1 ? 1 : -1);
      for (Eigen::Index i = 0; i < n; ++i)
      {
        b(i, c) = std::polar(1.0, m * mesh.angle(i));
      }
    }
    const Eigen::MatrixXcd bw = b.adjoint() * w.asDiagonal();
    const Eigen::MatrixXcd gram = bw * b;
    return b * gram.ldlt().solve(bw);
  }
  // Dominant right singular vectors of W^{1/2} S W^{-1/2}: the smoothest modes.
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(ctx.single_layer().symmetrized(), Eigen::ComputeThinV);
  const Eigen::MatrixXcd v = svd.matrixV().leftCols(k);
  const Eigen::VectorXd s = w.cwiseSqrt();
  return s.cwiseInverse().asDiagonal() * (v * v.adjoint()) * s.asDiagonal();
}

InverseReport check_inverse(const BoundaryMesh &mesh, const SpectralParameter &z,
                            const RobinCoupling &coupling, int cutoff)
{
  const BoundaryContext ctx(mesh, z);
  const Eigen::Index n = mesh.size();
  if (cutoff < 0)
  {
    cutoff = std::max(1, static_cast<int>(n / 32));
  }
  const Eigen::MatrixXcd rtd = assemble_rtd(ctx, coupling).matrix.matrix;
  const Eigen::MatrixXcd dtr = assemble_dtr(ctx, coupling, DtrRoute::direct).matrix.matrix;
  const Eigen::MatrixXcd p = low_mode_projector(ctx, cutoff);
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
  InverseReport r;
  r.cutoff = cutoff;
  r.dtr_rtd = weighted_operator_norm((dtr * rtd + eye) * p, mesh.weights);
  r.rtd_dtr = weighted_operator_norm((rtd * dtr + eye) * p, mesh.weights);
  return r;
}

double check_symmetry(const BoundaryMesh &mesh, const SpectralParameter &z,
                      const RobinCoupling &coupling)
{
  const SteklovMap m = assemble_rtd(mesh, z, coupling);
  const SteklovMap mc = assemble_rtd(mesh, z.conj(), coupling);
  const Eigen::MatrixXcd diff = m.matrix.weighted_adjoint().matrix - mc.matrix.matrix;
  return weighted_operator_norm(diff, mesh.weights) / m.matrix.weighted_norm();
}

HerglotzReport check_herglotz(const BoundaryMesh &mesh, const InteriorGrid &grid,
                              const SpectralParameter &z, const RobinCoupling &coupling,
                              const Eigen::VectorXcd &g)
{
  if (!(z.z().imag() > 0.0))
  {
    throw DomainError("Herglotz check needs Im z > 0");
  }
  if (g.size() != mesh.size())
  {
    throw MeshMismatch("Herglotz datum length does not match the mesh");
  }
  if (g.isZero(0.0))
  {
    throw ZeroData("Herglotz check needs a nonzero boundary datum");
  }
  const BoundaryContext ctx(mesh, z);
  const SteklovMap m = assemble_rtd(ctx, coupling);
  const Eigen::VectorXd &w = mesh.weights;
  const Eigen::VectorXcd mg = m.matrix.apply(g);
  const cplx a = inner_w(w, g, mg);
  const cplx b = inner_w(w, mg, g);
  HerglotzReport r;
  r.lhs = ((a - b) / cplx(0.0, 2.0)).real();

  const BVPSolution u = solve_robin(ctx, coupling, g);
  const InteriorField field = u.evaluate(grid.points);
  r.rhs = z.z().imag() * (field.values.cwiseAbs2().array() * grid.cell_weights.array()).sum();
  r.relative_gap = std::abs(r.lhs - r.rhs) / std::abs(r.rhs);

  const Eigen::MatrixXcd h = m.matrix.symmetrized();
  const Eigen::MatrixXcd im = (h - h.adjoint()) / cplx(0.0, 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(im, Eigen::EigenvaluesOnly);
  r.min_imag_eigenvalue = eig.eigenvalues()(0);
  r.map_norm = m.matrix.weighted_norm();
  return r;
}

}  // namespace kreinbem
