// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef KREINBEM_BVP_HPP
#define KREINBEM_BVP_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kreinbem/boundary_ops.hpp"
#include "kreinbem/coupling.hpp"
#include "kreinbem/dense.hpp"
#include "kreinbem/geometry.hpp"
#include "kreinbem/volume_potential.hpp"

namespace kreinbem
{

/// Boundary operators of one mesh at one spectral parameter, with cached
/// factorizations. Not safe for concurrent first use of the lazy factorizations.
class BoundaryContext
{
public:
  BoundaryContext(const BoundaryMesh &mesh, const SpectralParameter &z);
  BoundaryContext(std::shared_ptr<const BoundaryMesh> mesh, const SpectralParameter &z);

  const BoundaryMesh &mesh() const { return *mesh_; }
  const std::shared_ptr<const BoundaryMesh> &mesh_ptr() const { return mesh_; }
  const SpectralParameter &z() const { return z_; }

  const DenseOperator &single_layer() const { return ops_.single_layer; }
  const DenseOperator &kprime() const { return ops_.kprime; }
  const DenseOperator &k() const { return ops_.k; }

  /// LU of gamma_D S_z; throws NearSingular.
  const LuSolver &single_layer_lu() const;

  /// Robin boundary operator A = 1/2 I + K#_z + Theta gamma_D S_z.
  Eigen::MatrixXcd robin_operator(const RobinCoupling &coupling) const;

  /// LU of A for `coupling` (cached for the last coupling used); throws NearSingular.
  const LuSolver &robin_lu(const RobinCoupling &coupling) const;

private:
  std::shared_ptr<const BoundaryMesh> mesh_;
  SpectralParameter z_;
  LayerOperators ops_;
  mutable std::optional<LuSolver> s_lu_;
  mutable std::optional<LuSolver> robin_lu_;
  mutable std::string robin_key_;
};

enum class Problem
{
  dirichlet,
  neumann,
  robin
};

std::string to_string(Problem p);

/// Newton-potential part of a resolvent solution.
struct NewtonPart
{
  std::shared_ptr<const InteriorGrid> grid;
  SourceField source;
  NewtonTraces traces;
};

/// u = S_z h (+ Newton potential of f) in the domain.
struct BVPSolution
{
  Problem problem = Problem::dirichlet;
  SpectralParameter z;
  std::shared_ptr<const BoundaryMesh> mesh;
  Eigen::VectorXcd density;
  std::optional<NewtonPart> newton;
  // Interior boundary traces of the full field at the nodes.
  Eigen::VectorXcd gamma_d;
  Eigen::VectorXcd gamma_n;
  // Relative W-norm residual of the discrete boundary condition.
  double residual = 0.0;
  double condition = 0.0;

  /// u at interior points.
  InteriorField evaluate(const std::vector<Point> &targets, const EvalOptions &options = {}) const;
};

/// h = (gamma_D S_z)^{-1} f. Throws NearSingular when cond > 1e12.
BVPSolution solve_dirichlet(const BoundaryContext &ctx, const Eigen::VectorXcd &f);
BVPSolution solve_dirichlet(const BoundaryMesh &mesh, const SpectralParameter &z,
                            const Eigen::VectorXcd &f);

/// h = A^{-1} g for gamma_N u + Theta gamma_D u = g.
BVPSolution solve_robin(const BoundaryContext &ctx, const RobinCoupling &coupling,
                        const Eigen::VectorXcd &g);
BVPSolution solve_robin(const BoundaryMesh &mesh, const SpectralParameter &z,
                        const RobinCoupling &coupling, const Eigen::VectorXcd &g);

/// Newton potential of f with its boundary traces on the context mesh.
NewtonPart make_newton_part(const BoundaryContext &ctx, const InteriorGrid &grid,
                            const SourceField &f);

/// (-Delta_D - z)^{-1} f = v + u with v the Newton potential and u the Dirichlet
/// solution with data -gamma_D v.
BVPSolution dirichlet_resolvent_solution(const BoundaryContext &ctx, const InteriorGrid &grid,
                                         const SourceField &f);
BVPSolution dirichlet_resolvent_solution(const BoundaryContext &ctx, const NewtonPart &part);
InteriorField dirichlet_resolvent(const BoundaryMesh &mesh, const InteriorGrid &grid,
                                  const SpectralParameter &z, const SourceField &f,
                                  const std::vector<Point> &targets);

/// (-Delta_Theta - z)^{-1} f = v + u with u the Robin solution with data
/// -(gamma_N v + Theta gamma_D v).
BVPSolution robin_resolvent_solution(const BoundaryContext &ctx, const InteriorGrid &grid,
                                     const RobinCoupling &coupling, const SourceField &f);
BVPSolution robin_resolvent_solution(const BoundaryContext &ctx, const RobinCoupling &coupling,
                                     const NewtonPart &part);
InteriorField robin_resolvent(const BoundaryMesh &mesh, const InteriorGrid &grid,
                              const SpectralParameter &z, const RobinCoupling &coupling,
                              const SourceField &f, const std::vector<Point> &targets);

/// gamma_N (-Delta_D - z)^{-1} f.
Eigen::VectorXcd neumann_trace_of_dirichlet_resolvent(const BoundaryContext &ctx,
                                                      const InteriorGrid &grid,
                                                      const SourceField &f);
Eigen::VectorXcd neumann_trace_of_dirichlet_resolvent(const BoundaryMesh &mesh,
                                                      const InteriorGrid &grid,
                                                      const SpectralParameter &z,
                                                      const SourceField &f);

/// Named boundary data: "fourier:m" (e^{i m phi} by node angle), "const:c",
/// "gauss:center_angle,width" (periodic gaussian in the node angle).
Eigen::VectorXcd boundary_data(const BoundaryMesh &mesh, const std::string &family);

}  // namespace kreinbem

#endif  // KREINBEM_BVP_HPP
