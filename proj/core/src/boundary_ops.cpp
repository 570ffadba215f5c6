// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#include "kreinbem/boundary_ops.hpp"

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
constexpr double kInv2Pi = 1.0 / (2.0 * kPi);

// Polygon panels closer than this many panel lengths get product integration.
constexpr double kProductRadius = 4.0;
// Potential evaluation upsamples panels closer than this many panel lengths.
constexpr double kNearRadius = 6.0;

double cross(const Point &a, const Point &b) { return a.x() * b.y() - a.y() * b.x(); }

// Integrals over the segment y = a + s u, s in [0, L], seen from x:
//   log_int = int ln|x - y| ds,  inv_sq = int ds / |x - y|^2,
//   lin = int (s - p) / |x - y|^2 ds, with p the projection of x onto the line.
struct SegmentIntegrals
{
  double log_int = 0.0;
  double inv_sq = 0.0;
  double lin = 0.0;
  double p = 0.0;
  double q = 0.0;
};

SegmentIntegrals segment_integrals(const Point &x, const Point &a, const Point &b)
{
  SegmentIntegrals out;
  const double len = (b - a).norm();
  const Point u = (b - a) / len;
  const Point xa = x - a;
  const double p = xa.dot(u);
  const double q = cross(u, xa);
  out.p = p;
  out.q = q;
  const double t0 = -p;
  const double t1 = len - p;
  const double q2 = q * q;
  auto phi = [&](double t) {
    double v = -2.0 * t;
    const double rr = t * t + q2;
    if (rr > 0.0)
    {
      v += t * std::log(rr);
    }
    if (q != 0.0)
    {
      v += 2.0 * q * std::atan(t / q);
    }
    return v;
  };
  out.log_int = 0.5 * (phi(t1) - phi(t0));
  if (q != 0.0)
  {
    out.inv_sq = (std::atan(t1 / q) - std::atan(t0 / q)) / q;
  }
  else if (t0 > 0.0 || t1 < 0.0)
  {
    out.inv_sq = 1.0 / t0 - 1.0 / t1;
  }
  else
  {
    out.inv_sq = std::numeric_limits<double>::infinity();
  }
  const double r0 = t0 * t0 + q2;
  const double r1 = t1 * t1 + q2;
  out.lin = (r0 > 0.0 && r1 > 0.0) ? 0.5 * std::log(r1 / r0) : 0.0;
  return out;
}

// Replaces entries (i, j) of the three operators for polygon panels near x_i by
// analytic Laplace integrals plus the smooth Helmholtz remainder at the node.
void polygon_product_integration(const BoundaryMesh &mesh, const SpectralParameter &z,
                                 LayerOperators &ops)
{
  const Eigen::Index n = mesh.size();
  const cplx g0 = helmholtz2d_regular_limit(z);
  for (Eigen::Index i = 0; i < n; ++i)
  {
    const Point &x = mesh.nodes[i];
    const Point &nu_i = mesh.normals[i];
    for (Eigen::Index j = 0; j < n; ++j)
    {
      const double wj = mesh.weights(j);
      const Point d = x - mesh.nodes[j];
      const double r = d.norm();
      if (r >= kProductRadius * wj && i != j)
      {
        continue;
      }
      const Point &a = mesh.panel_start[j];
      const Point &b = mesh.panel_end[j];
      const SegmentIntegrals si = segment_integrals(x, a, b);
      const Point u = (b - a) / (b - a).norm();
      const Point &nu_j = mesh.normals[j];

      cplx g_val = g0;
      cplx g_d1 = 0.0;
      if (i != j && !z.is_zero())
      {
        const RadialProfile g = helmholtz2d_regular_part(z, r);
        g_val = g.value;
        g_d1 = g.d1;
      }
      ops.single_layer.matrix(i, j) = -kInv2Pi * si.log_int + g_val * wj;

      if (mesh.piece[i] == mesh.piece[j])
      {
        // Collinear panels: nu . (x - y) vanishes identically.
        ops.kprime.matrix(i, j) = 0.0;
        ops.k.matrix(i, j) = 0.0;
        continue;
      }
      // nu_i . (x - y) = (alpha - p beta) - (s - p) beta
      const double alpha = nu_i.dot(x - a);
      const double beta = nu_i.dot(u);
      const double kp_laplace = -kInv2Pi * ((alpha - si.p * beta) * si.inv_sq - beta * si.lin);
      // nu_j . (y - x) = nu_j . (a - x), constant along the panel
      const double gamma = nu_j.dot(a - x);
      const double k_laplace = -kInv2Pi * gamma * si.inv_sq;
      ops.kprime.matrix(i, j) = kp_laplace + g_d1 * (nu_i.dot(d) / r) * wj;
      ops.k.matrix(i, j) = k_laplace + g_d1 * (nu_j.dot(-d) / r) * wj;
    }
  }
}

double chord_distance(const BoundaryMesh &mesh, Eigen::Index j, const Point &t)
{
  const Point &a = mesh.panel_start[j];
  const Point ab = mesh.panel_end[j] - a;
  const double s = std::clamp((t - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  return (t - (a + s * ab)).norm();
}

enum class LayerKind
{
  single,
  dbl
};

cplx layer_term(LayerKind kind, const SpectralParameter &z, const Point &t, const Point &y,
                const Point &nu_y)
{
  const Point d = t - y;
  const double r = d.norm();
  if (r == 0.0)
  {
    return 0.0;
  }
  if (kind == LayerKind::single)
  {
    return helmholtz2d_value(z, r);
  }
  // nu_y . grad_y E(t - y) = -F'(r) nu_y . (t - y) / r
  return -helmholtz2d(z, r).d1 * (nu_y.dot(d) / r);
}

PotentialValues eval_layer(LayerKind kind, const BoundaryMesh &mesh, const SpectralParameter &z,
                           const Eigen::VectorXcd &g, const std::vector<Point> &targets,
                           const EvalOptions &options)
{
  if (g.size() != mesh.size())
  {
    throw MeshMismatch("density length does not match the mesh");
  }
  const Eigen::Index n = mesh.size();
  const double hmax = mesh.max_panel_length();
  PotentialValues out;
  out.values = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(targets.size()));
  out.too_close.assign(targets.size(), false);
  if (g.isZero(0.0))
  {
    for (std::size_t k = 0; k < targets.size(); ++k)
    {
      double dmin = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < n; ++j)
      {
        dmin = std::min(dmin, (targets[k] - mesh.nodes[j]).norm());
      }
      out.too_close[k] = dmin < 2.0 * hmax;
    }
    return out;
  }
  for (std::size_t k = 0; k < targets.size(); ++k)
  {
    const Point &t = targets[k];
    cplx sum(0.0, 0.0);
    double dmin = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < n; ++j)
    {
      const double wj = mesh.weights(j);
      const double r = (t - mesh.nodes[j]).norm();
      dmin = std::min(dmin, r);
      if (options.near_field && r < kNearRadius * wj)
      {
        const double d = chord_distance(mesh, j, t);
        int factor = 1;
        while (factor < options.max_refinement && wj / factor > d / 3.0)
        {
          factor *= 2;
        }
        if (factor > 1)
        {
          const SubPanels sub = subdivide_panel(mesh, j, factor);
          for (int q = 0; q < factor; ++q)
          {
            cplx gq(0.0, 0.0);
            for (const auto &[idx, w] : interpolation_stencil(mesh, j, sub.params[q]))
            {
              gq += w * g(idx);
            }
            sum += layer_term(kind, z, t, sub.points[q], sub.normals[q]) * gq * sub.weights[q];
          }
          continue;
        }
      }
      sum += layer_term(kind, z, t, mesh.nodes[j], mesh.normals[j]) * g(j) * wj;
    }
    out.values(static_cast<Eigen::Index>(k)) = sum;
    out.too_close[k] = dmin < 2.0 * hmax;
  }
  return out;
}

}  // namespace

LayerOperators assemble_layer_operators(const BoundaryMesh &mesh, const SpectralParameter &z)
{
  const Eigen::Index n = mesh.size();
  LayerOperators ops;
  for (DenseOperator *op : {&ops.single_layer, &ops.kprime, &ops.k})
  {
    op->matrix.resize(n, n);
    op->weights = mesh.weights;
  }
  auto &s = ops.single_layer.matrix;
  auto &kp = ops.kprime.matrix;
  auto &kk = ops.k.matrix;
  const Eigen::VectorXd &w = mesh.weights;

  for (Eigen::Index j = 0; j < n; ++j)
  {
    for (Eigen::Index i = j + 1; i < n; ++i)
    {
      const Point d = mesh.nodes[i] - mesh.nodes[j];  // x_i - x_j
      const double r = d.norm();
      const Kernel2d e = helmholtz2d(z, r);
      const double ni_d = mesh.normals[i].dot(d) / r;  // nu_i . (x_i - x_j) / r
      const double nj_d = -mesh.normals[j].dot(d) / r; // nu_j . (x_j - x_i) / r
      s(i, j) = e.value * w(j);
      s(j, i) = e.value * w(i);
      kp(i, j) = e.d1 * ni_d * w(j);
      kp(j, i) = e.d1 * nj_d * w(i);
      kk(i, j) = e.d1 * nj_d * w(j);
      kk(j, i) = e.d1 * ni_d * w(i);
    }
  }

  if (mesh.spec.kind == DomainSpec::Kind::polygon)
  {
    polygon_product_integration(mesh, z, ops);
    return ops;
  }
  const cplx g0 = helmholtz2d_regular_limit(z);
  for (Eigen::Index i = 0; i < n; ++i)
  {
    const double wi = w(i);
    s(i, i) = wi * (-kInv2Pi * std::log(wi / (2.0 * kPi)) + g0);
    const double self = -wi * mesh.curvature[i] / (4.0 * kPi);
    kp(i, i) = self;
    kk(i, i) = self;
  }
  return ops;
}

DenseOperator assemble_single_layer(const BoundaryMesh &mesh, const SpectralParameter &z)
{
  return assemble_layer_operators(mesh, z).single_layer;
}

DenseOperator assemble_kprime(const BoundaryMesh &mesh, const SpectralParameter &z)
{
  return assemble_layer_operators(mesh, z).kprime;
}

DenseOperator assemble_k(const BoundaryMesh &mesh, const SpectralParameter &z)
{
  return assemble_layer_operators(mesh, z).k;
}

Eigen::VectorXcd apply_theta(const RobinCoupling &coupling, const BoundaryMesh &mesh,
                             const Eigen::VectorXcd &f)
{
  return coupling.apply(mesh, f);
}

Eigen::VectorXcd neumann_trace_single_layer(const BoundaryMesh &mesh, const SpectralParameter &z,
                                            const Eigen::VectorXcd &g, TraceSide side)
{
  if (g.size() != mesh.size())
  {
    throw MeshMismatch("density length does not match the mesh");
  }
  const double sigma = side == TraceSide::interior ? 0.5 : -0.5;
  return sigma * g + assemble_kprime(mesh, z).apply(g);
}

bool PotentialValues::any_too_close() const
{
  return std::any_of(too_close.begin(), too_close.end(), [](bool b) { return b; });
}

PotentialValues eval_single_layer(const BoundaryMesh &mesh, const SpectralParameter &z,
                                  const Eigen::VectorXcd &g, const std::vector<Point> &targets,
                                  const EvalOptions &options)
{
  return eval_layer(LayerKind::single, mesh, z, g, targets, options);
}

PotentialValues eval_double_layer(const BoundaryMesh &mesh, const SpectralParameter &z,
                                  const Eigen::VectorXcd &g, const std::vector<Point> &targets,
                                  const EvalOptions &options)
{
  return eval_layer(LayerKind::dbl, mesh, z, g, targets, options);
}

JumpReport check_jump(const BoundaryMesh &mesh, const SpectralParameter &z,
                      const Eigen::VectorXcd &g, double delta_continuity, double delta_fd)
{
  if (g.size() != mesh.size())
  {
    throw MeshMismatch("density length does not match the mesh");
  }
  const Eigen::Index n = mesh.size();
  const Eigen::VectorXd &w = mesh.weights;
  const LayerOperators ops = assemble_layer_operators(mesh, z);
  const Eigen::VectorXcd kg = ops.kprime.apply(g);
  const Eigen::VectorXcd trace_in = 0.5 * g + kg;
  const Eigen::VectorXcd trace_out = -0.5 * g + kg;
  const Eigen::VectorXcd sg = ops.single_layer.apply(g);

  JumpReport r;
  r.delta_continuity = delta_continuity;
  r.delta_fd = delta_fd > 0.0 ? delta_fd : 5.0 * mesh.max_panel_length();
  const double gn = norm_w(w, g);
  r.density_jump = gn > 0.0 ? norm_w(w, trace_in - trace_out - g) / gn : 0.0;

  auto offset = [&](double t) {
    std::vector<Point> pts(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
    {
      pts[static_cast<std::size_t>(i)] = mesh.nodes[i] + t * mesh.normals[i];
    }
    return eval_single_layer(mesh, z, g, pts).values;
  };
  auto rel = [&](const Eigen::VectorXcd &a, const Eigen::VectorXcd &b) {
    const double nb = norm_w(w, b);
    return nb > 0.0 ? norm_w(w, a - b) / nb : norm_w(w, a);
  };

  // Offset values differ from the trace by delta * gamma_N u, so the gap is measured
  // relative to the density.
  const Eigen::VectorXcd up = offset(delta_continuity);
  const Eigen::VectorXcd um = offset(-delta_continuity);
  r.dirichlet_continuity =
      gn > 0.0 ? std::max(norm_w(w, up - sg), norm_w(w, um - sg)) / gn : norm_w(w, up - sg);

  // f(t) = u(x + s t nu), s = -1 inside, +1 outside; f'(0) from f(0) = gamma_D S g and
  // three offset samples: f'(0) ~ (-11 f0 + 18 f1 - 9 f2 + 2 f3) / (6 h).
  const double h = r.delta_fd;
  auto one_sided = [&](double s) {
    const Eigen::VectorXcd f1 = offset(s * h);
    const Eigen::VectorXcd f2 = offset(2.0 * s * h);
    const Eigen::VectorXcd f3 = offset(3.0 * s * h);
    return Eigen::VectorXcd(s * (-11.0 * sg + 18.0 * f1 - 9.0 * f2 + 2.0 * f3) / (6.0 * h));
  };
  r.neumann_interior = rel(one_sided(-1.0), trace_in);
  r.neumann_exterior = rel(one_sided(1.0), trace_out);
  return r;
}

}  // namespace kreinbem
