// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#include "kreinbem/bvp.hpp"

#include <cmath>
#include <numbers>

#include "kreinbem/errors.hpp"
#include "kreinbem/format.hpp"

namespace kreinbem
{

namespace
{

constexpr double kPi = std::numbers::pi;

double relative_residual(const Eigen::VectorXd &w, const Eigen::VectorXcd &r,
                         const Eigen::VectorXcd &data)
{
  const double nd = norm_w(w, data);
  const double nr = norm_w(w, r);
  return nd > 0.0 ? nr / nd : nr;
}

bool cacheable(const RobinCoupling &c)
{
  return c.kind() != RobinCoupling::Kind::explicit_matrix &&
         !(c.kind() == RobinCoupling::Kind::multiplication && !c.constant_value());
}

BVPSolution layer_solution(const BoundaryContext &ctx, Problem problem, Eigen::VectorXcd h,
                           double condition)
{
  BVPSolution sol;
  sol.problem = problem;
  sol.z = ctx.z();
  sol.mesh = ctx.mesh_ptr();
  sol.gamma_d = ctx.single_layer().apply(h);
  sol.gamma_n = 0.5 * h + ctx.kprime().apply(h);
  sol.density = std::move(h);
  sol.condition = condition;
  return sol;
}

}  // namespace

BoundaryContext::BoundaryContext(const BoundaryMesh &mesh, const SpectralParameter &z)
  : BoundaryContext(std::make_shared<const BoundaryMesh>(mesh), z)
{
}

BoundaryContext::BoundaryContext(std::shared_ptr<const BoundaryMesh> mesh,
                                 const SpectralParameter &z)
  : mesh_(std::move(mesh)), z_(z), ops_(assemble_layer_operators(*mesh_, z))
{
}

const LuSolver &BoundaryContext::single_layer_lu() const
{
  if (!s_lu_)
  {
    s_lu_.emplace(ops_.single_layer.matrix, z_.z(), "single layer operator");
  }
  return *s_lu_;
}

Eigen::MatrixXcd BoundaryContext::robin_operator(const RobinCoupling &coupling) const
{
  const Eigen::Index n = mesh_->size();
  Eigen::MatrixXcd a = ops_.kprime.matrix;
  a.diagonal().array() += 0.5;
  if (!coupling.is_zero())
  {
    if (coupling.kind() == RobinCoupling::Kind::multiplication)
    {
      // Row scaling: Theta is diagonal.
      const Eigen::VectorXcd theta =
          coupling.apply(*mesh_, Eigen::VectorXcd::Ones(n));
      a += theta.asDiagonal() * ops_.single_layer.matrix;
    }
    else
    {
      a += coupling.matrix(*mesh_) * ops_.single_layer.matrix;
    }
  }
  return a;
}

const LuSolver &BoundaryContext::robin_lu(const RobinCoupling &coupling) const
{
  const std::string key = cacheable(coupling) ? coupling.literal() : std::string();
  if (!robin_lu_ || key.empty() || key != robin_key_)
  {
    robin_lu_.reset();
    robin_key_.clear();
    robin_lu_.emplace(robin_operator(coupling), z_.z(), "Robin boundary operator");
    robin_key_ = key;
  }
  return *robin_lu_;
}

std::string to_string(Problem p)
{
  switch (p)
  {
  case Problem::dirichlet:
    return "dirichlet";
  case Problem::neumann:
    return "neumann";
  case Problem::robin:
    return "robin";
  }
  return {};
}

InteriorField BVPSolution::evaluate(const std::vector<Point> &targets,
                                    const EvalOptions &options) const
{
  InteriorField out;
  out.points = targets;
  out.z = z;
  out.values = eval_single_layer(*mesh, z, density, targets, options).values;
  if (newton)
  {
    out.values += newton_potential(*newton->grid, newton->source, z, targets).values;
  }
  return out;
}

BVPSolution solve_dirichlet(const BoundaryContext &ctx, const Eigen::VectorXcd &f)
{
  if (f.size() != ctx.mesh().size())
  {
    throw MeshMismatch("Dirichlet data length does not match the mesh");
  }
  const LuSolver &lu = ctx.single_layer_lu();
  BVPSolution sol = layer_solution(ctx, Problem::dirichlet, lu.solve(f), lu.condition());
  sol.residual = relative_residual(ctx.mesh().weights, sol.gamma_d - f, f);
  return sol;
}

BVPSolution solve_dirichlet(const BoundaryMesh &mesh, const SpectralParameter &z,
                            const Eigen::VectorXcd &f)
{
  return solve_dirichlet(BoundaryContext(mesh, z), f);
}

BVPSolution solve_robin(const BoundaryContext &ctx, const RobinCoupling &coupling,
                        const Eigen::VectorXcd &g)
{
  if (g.size() != ctx.mesh().size())
  {
    throw MeshMismatch("Robin data length does not match the mesh");
  }
  const LuSolver &lu = ctx.robin_lu(coupling);
  const Problem tag = coupling.is_zero() ? Problem::neumann : Problem::robin;
  BVPSolution sol = layer_solution(ctx, tag, lu.solve(g), lu.condition());
  const Eigen::VectorXcd bc = sol.gamma_n + coupling.apply(ctx.mesh(), sol.gamma_d);
  sol.residual = relative_residual(ctx.mesh().weights, bc - g, g);
  return sol;
}

BVPSolution solve_robin(const BoundaryMesh &mesh, const SpectralParameter &z,
                        const RobinCoupling &coupling, const Eigen::VectorXcd &g)
{
  return solve_robin(BoundaryContext(mesh, z), coupling, g);
}

NewtonPart make_newton_part(const BoundaryContext &ctx, const InteriorGrid &grid,
                            const SourceField &f)
{
  return NewtonPart{std::make_shared<const InteriorGrid>(grid), f,
                    newton_boundary_traces(grid, f, ctx.z(), ctx.mesh())};
}

BVPSolution dirichlet_resolvent_solution(const BoundaryContext &ctx, const NewtonPart &part)
{
  BVPSolution sol = solve_dirichlet(ctx, -part.traces.dirichlet);
  sol.gamma_d += part.traces.dirichlet;
  sol.gamma_n += part.traces.neumann;
  sol.newton = part;
  return sol;
}

BVPSolution dirichlet_resolvent_solution(const BoundaryContext &ctx, const InteriorGrid &grid,
                                         const SourceField &f)
{
  return dirichlet_resolvent_solution(ctx, make_newton_part(ctx, grid, f));
}

InteriorField dirichlet_resolvent(const BoundaryMesh &mesh, const InteriorGrid &grid,
                                  const SpectralParameter &z, const SourceField &f,
                                  const std::vector<Point> &targets)
{
  if (f.is_zero())
  {
    return InteriorField{targets, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(targets.size())), z};
  }
  return dirichlet_resolvent_solution(BoundaryContext(mesh, z), grid, f).evaluate(targets);
}

BVPSolution robin_resolvent_solution(const BoundaryContext &ctx, const RobinCoupling &coupling,
                                     const NewtonPart &part)
{
  const Eigen::VectorXcd data =
      -(part.traces.neumann + coupling.apply(ctx.mesh(), part.traces.dirichlet));
  BVPSolution sol = solve_robin(ctx, coupling, data);
  sol.gamma_d += part.traces.dirichlet;
  sol.gamma_n += part.traces.neumann;
  sol.newton = part;
  return sol;
}

BVPSolution robin_resolvent_solution(const BoundaryContext &ctx, const InteriorGrid &grid,
                                     const RobinCoupling &coupling, const SourceField &f)
{
  return robin_resolvent_solution(ctx, coupling, make_newton_part(ctx, grid, f));
}

InteriorField robin_resolvent(const BoundaryMesh &mesh, const InteriorGrid &grid,
                              const SpectralParameter &z, const RobinCoupling &coupling,
                              const SourceField &f, const std::vector<Point> &targets)
{
  if (f.is_zero())
  {
    return InteriorField{targets, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(targets.size())), z};
  }
  return robin_resolvent_solution(BoundaryContext(mesh, z), grid, coupling, f).evaluate(targets);
}

Eigen::VectorXcd neumann_trace_of_dirichlet_resolvent(const BoundaryContext &ctx,
                                                      const InteriorGrid &grid,
                                                      const SourceField &f)
{
  if (f.is_zero())
  {
    return Eigen::VectorXcd::Zero(ctx.mesh().size());
  }
  return dirichlet_resolvent_solution(ctx, grid, f).gamma_n;
}

Eigen::VectorXcd neumann_trace_of_dirichlet_resolvent(const BoundaryMesh &mesh,
                                                      const InteriorGrid &grid,
                                                      const SpectralParameter &z,
                                                      const SourceField &f)
{
  return neumann_trace_of_dirichlet_resolvent(BoundaryContext(mesh, z), grid, f);
}

Eigen::VectorXcd boundary_data(const BoundaryMesh &mesh, const std::string &family)
{
  const auto colon = family.find(':');
  if (colon == std::string::npos)
  {
    throw Error("boundary data family must look like name:args, got '" + family + "'");
  }
  const std::string name = family.substr(0, colon);
  const std::string args = family.substr(colon + 1);
  const Eigen::Index n = mesh.size();
  Eigen::VectorXcd v(n);
  if (name == "fourier")
  {
    std::size_t used = 0;
    const int m = std::stoi(args, &used);
    if (used != args.size())
    {
      throw Error("fourier data needs an integer mode, got '" + args + "'");
    }
    for (Eigen::Index i = 0; i < n; ++i)
    {
      v(i) = std::polar(1.0, m * mesh.angle(i));
    }
    return v;
  }
  if (name == "const")
  {
    v.setConstant(parse_complex(args));
    return v;
  }
  if (name == "gauss")
  {
    const auto comma = args.find(',');
    if (comma == std::string::npos)
    {
      throw Error("gauss data needs center_angle,width");
    }
    const double c = std::stod(args.substr(0, comma));
    const double w = std::stod(args.substr(comma + 1));
    if (!(w > 0.0))
    {
      throw Error("gauss data width must be positive");
    }
    for (Eigen::Index i = 0; i < n; ++i)
    {
      const double d = std::remainder(mesh.angle(i) - c, 2.0 * kPi);
      v(i) = std::exp(-d * d / (2.0 * w * w));
    }
    return v;
  }
  throw Error("unknown boundary data family '" + name + "'");
}

}  // namespace kreinbem
