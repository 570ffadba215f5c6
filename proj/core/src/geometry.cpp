// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#include "kreinbem/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "kreinbem/errors.hpp"

namespace kreinbem
{

namespace
{

constexpr double kPi = std::numbers::pi;
constexpr int kCheckPoints = 4096;
constexpr int kSmoothStencil = 8;
constexpr int kEdgeStencil = 6;

// Radial function of a star domain (a disk is the constant case).
struct Radial
{
  std::map<int, double> coeffs;

  // rho and its first two derivatives in phi.
  std::array<double, 3> eval(double t) const
  {
    std::array<double, 3> r{0.0, 0.0, 0.0};
    for (const auto &[key, c] : coeffs)
    {
      if (key == 0)
      {
        r[0] += c;
        continue;
      }
      const double k = std::abs(key);
      const double cs = std::cos(k * t);
      const double sn = std::sin(k * t);
      if (key > 0)
      {
        r[0] += c * cs;
        r[1] -= c * k * sn;
        r[2] -= c * k * k * cs;
      }
      else
      {
        r[0] += c * sn;
        r[1] += c * k * cs;
        r[2] -= c * k * k * sn;
      }
    }
    return r;
  }
};

Radial radial_of(const DomainSpec &spec)
{
  if (spec.kind == DomainSpec::Kind::disk)
  {
    return Radial{{{0, spec.radius}}};
  }
  return Radial{spec.coeffs};
}

struct CurvePoint
{
  Point x;
  Point d1;
  Point d2;
};

CurvePoint curve_at(const Radial &rho, double t)
{
  const auto r = rho.eval(t);
  const Point e(std::cos(t), std::sin(t));
  const Point e_perp(-std::sin(t), std::cos(t));
  return {r[0] * e, r[1] * e + r[0] * e_perp, r[2] * e + 2.0 * r[1] * e_perp - r[0] * e};
}

Point outward_normal(const Point &tangent)
{
  return Point(tangent.y(), -tangent.x()) / tangent.norm();
}

double cross(const Point &a, const Point &b) { return a.x() * b.y() - a.y() * b.x(); }

double signed_area(const std::vector<Point> &v)
{
  double a = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
  {
    a += cross(v[i], v[(i + 1) % v.size()]);
  }
  return 0.5 * a;
}

bool segments_intersect(const Point &a, const Point &b, const Point &c, const Point &d)
{
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
  {
    return true;
  }
  auto on_segment = [](const Point &p, const Point &q, const Point &r) {
    return std::min(p.x(), q.x()) <= r.x() && r.x() <= std::max(p.x(), q.x()) &&
           std::min(p.y(), q.y()) <= r.y() && r.y() <= std::max(p.y(), q.y());
  };
  return (d1 == 0 && on_segment(a, b, c)) || (d2 == 0 && on_segment(a, b, d)) ||
         (d3 == 0 && on_segment(c, d, a)) || (d4 == 0 && on_segment(c, d, b));
}

double segment_distance(const Point &p, const Point &a, const Point &b)
{
  const Point ab = b - a;
  const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

// Corner grading map on [0, 1], symmetric about 1/2.
double grade(double s, double p)
{
  if (s <= 0.5)
  {
    return 0.5 * std::pow(2.0 * s, p);
  }
  return 1.0 - 0.5 * std::pow(2.0 - 2.0 * s, p);
}

std::vector<Point> star_polyline(const Radial &rho, int count)
{
  std::vector<Point> pts(count);
  for (int i = 0; i < count; ++i)
  {
    pts[i] = curve_at(rho, 2.0 * kPi * i / count).x;
  }
  return pts;
}

double polyline_distance(const std::vector<Point> &poly, const Point &x)
{
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i)
  {
    d = std::min(d, segment_distance(x, poly[i], poly[(i + 1) % poly.size()]));
  }
  return d;
}

std::vector<double> lagrange_weights(const std::vector<double> &xs, double t)
{
  std::vector<double> w(xs.size(), 1.0);
  for (std::size_t a = 0; a < xs.size(); ++a)
  {
    for (std::size_t b = 0; b < xs.size(); ++b)
    {
      if (a != b)
      {
        w[a] *= (t - xs[b]) / (xs[a] - xs[b]);
      }
    }
  }
  return w;
}

}  // namespace

DomainSpec DomainSpec::disk(double radius, int panels)
{
  DomainSpec s;
  s.kind = Kind::disk;
  s.radius = radius;
  s.panels = panels;
  return s;
}

DomainSpec DomainSpec::polygon(std::vector<Point> vertices, int panels_per_edge, double grading)
{
  DomainSpec s;
  s.kind = Kind::polygon;
  s.vertices = std::move(vertices);
  s.panels = panels_per_edge;
  s.grading = grading;
  return s;
}

DomainSpec DomainSpec::star(std::map<int, double> coeffs, int panels)
{
  DomainSpec s;
  s.kind = Kind::star;
  s.coeffs = std::move(coeffs);
  s.panels = panels;
  return s;
}

DomainSpec DomainSpec::square(double side, int panels_per_edge, double grading)
{
  const double a = 0.5 * side;
  return polygon({Point(-a, -a), Point(a, -a), Point(a, a), Point(-a, a)}, panels_per_edge,
                 grading);
}

void DomainSpec::validate() const
{
  if (panels < 1)
  {
    throw InvalidDomain("panel count must be positive");
  }
  switch (kind)
  {
  case Kind::disk:
    if (!(radius > 0.0))
    {
      throw InvalidDomain("disk radius must be positive");
    }
    break;
  case Kind::polygon:
  {
    const std::size_t n = vertices.size();
    if (n < 3)
    {
      throw InvalidDomain("polygon needs at least 3 vertices");
    }
    if (!(grading >= 1.0))
    {
      throw InvalidDomain("grading exponent must be >= 1");
    }
    for (std::size_t i = 0; i < n; ++i)
    {
      if ((vertices[i] - vertices[(i + 1) % n]).norm() == 0.0)
      {
        throw InvalidDomain("polygon has a repeated vertex");
      }
    }
    for (std::size_t i = 0; i < n; ++i)
    {
      for (std::size_t j = i + 1; j < n; ++j)
      {
        const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
        if (adjacent)
        {
          continue;
        }
        if (segments_intersect(vertices[i], vertices[(i + 1) % n], vertices[j],
                               vertices[(j + 1) % n]))
        {
          throw InvalidDomain("polygon is self-intersecting");
        }
      }
    }
    if (!(signed_area(vertices) > 0.0))
    {
      throw InvalidDomain("polygon must be positively oriented");
    }
    break;
  }
  case Kind::star:
  {
    if (coeffs.empty())
    {
      throw InvalidDomain("star domain has no coefficients");
    }
    const Radial rho{coeffs};
    double rho_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kCheckPoints; ++i)
    {
      rho_min = std::min(rho_min, rho.eval(2.0 * kPi * i / kCheckPoints)[0]);
    }
    if (!(rho_min > 0.0))
    {
      throw InvalidDomain("star radial function must stay positive");
    }
    break;
  }
  }
}

DomainSpec DomainSpec::with_panels(int p) const
{
  DomainSpec s = *this;
  s.panels = p;
  return s;
}

bool DomainSpec::is_circle() const
{
  if (kind == Kind::disk)
  {
    return true;
  }
  if (kind != Kind::star)
  {
    return false;
  }
  return std::all_of(coeffs.begin(), coeffs.end(),
                     [](const auto &kv) { return kv.first == 0 || kv.second == 0.0; });
}

double DomainSpec::circle_radius() const
{
  if (kind == Kind::disk)
  {
    return radius;
  }
  const auto it = coeffs.find(0);
  return it == coeffs.end() ? 0.0 : it->second;
}

double BoundaryMesh::angle(Eigen::Index i) const
{
  return std::atan2(nodes[i].y(), nodes[i].x());
}

BoundaryMesh build_mesh(const DomainSpec &spec)
{
  spec.validate();
  BoundaryMesh m;
  m.spec = spec;
  if (spec.kind == DomainSpec::Kind::polygon)
  {
    const std::size_t nv = spec.vertices.size();
    const int k_per_edge = spec.panels;
    const auto total = static_cast<Eigen::Index>(nv) * k_per_edge;
    m.weights.resize(total);
    Eigen::Index idx = 0;
    for (std::size_t e = 0; e < nv; ++e)
    {
      const Point a = spec.vertices[e];
      const Point b = spec.vertices[(e + 1) % nv];
      const double len = (b - a).norm();
      const Point dir = (b - a) / len;
      const Point nrm(dir.y(), -dir.x());
      for (int k = 0; k < k_per_edge; ++k)
      {
        const double s0 = len * grade(double(k) / k_per_edge, spec.grading);
        const double s1 = len * grade(double(k + 1) / k_per_edge, spec.grading);
        const double mid = 0.5 * (s0 + s1);
        m.nodes.push_back(a + mid * dir);
        m.normals.push_back(nrm);
        m.weights(idx++) = s1 - s0;
        m.curvature.push_back(0.0);
        m.panel_start.push_back(a + s0 * dir);
        m.panel_end.push_back(a + s1 * dir);
        m.piece.push_back(static_cast<int>(e));
        m.param.push_back(mid);
        m.param_halfwidth.push_back(0.5 * (s1 - s0));
      }
      m.length += len;
    }
    return m;
  }

  const Radial rho = radial_of(spec);
  const int n = spec.panels;
  const double dt = 2.0 * kPi / n;
  m.weights.resize(n);
  for (int k = 0; k < n; ++k)
  {
    const double t = dt * (k + 0.5);
    const CurvePoint c = curve_at(rho, t);
    const double speed = c.d1.norm();
    m.nodes.push_back(c.x);
    m.normals.push_back(outward_normal(c.d1));
    m.weights(k) = speed * dt;
    m.curvature.push_back(cross(c.d1, c.d2) / (speed * speed * speed));
    m.panel_start.push_back(curve_at(rho, dt * k).x);
    m.panel_end.push_back(curve_at(rho, dt * (k + 1)).x);
    m.piece.push_back(0);
    m.param.push_back(t);
    m.param_halfwidth.push_back(0.5 * dt);
  }
  m.length = m.weights.sum();
  return m;
}

SubPanels subdivide_panel(const BoundaryMesh &mesh, Eigen::Index j, int factor)
{
  SubPanels out;
  const double hw = mesh.param_halfwidth[j];
  const double step = 2.0 * hw / factor;
  const double t0 = mesh.param[j] - hw;
  out.points.reserve(factor);
  out.normals.reserve(factor);
  out.weights.reserve(factor);
  out.params.reserve(factor);
  if (mesh.spec.kind == DomainSpec::Kind::polygon)
  {
    const std::size_t nv = mesh.spec.vertices.size();
    const auto e = static_cast<std::size_t>(mesh.piece[j]);
    const Point a = mesh.spec.vertices[e];
    const Point b = mesh.spec.vertices[(e + 1) % nv];
    const Point dir = (b - a).normalized();
    for (int q = 0; q < factor; ++q)
    {
      const double s = t0 + (q + 0.5) * step;
      out.points.push_back(a + s * dir);
      out.normals.push_back(mesh.normals[j]);
      out.weights.push_back(step);
      out.params.push_back(s);
    }
    return out;
  }
  const Radial rho = radial_of(mesh.spec);
  for (int q = 0; q < factor; ++q)
  {
    const double t = t0 + (q + 0.5) * step;
    const CurvePoint c = curve_at(rho, t);
    out.points.push_back(c.x);
    out.normals.push_back(outward_normal(c.d1));
    out.weights.push_back(c.d1.norm() * step);
    out.params.push_back(t);
  }
  return out;
}

std::vector<std::pair<Eigen::Index, double>> interpolation_stencil(const BoundaryMesh &mesh,
                                                                   Eigen::Index j, double t)
{
  std::vector<std::pair<Eigen::Index, double>> out;
  if (mesh.spec.kind != DomainSpec::Kind::polygon)
  {
    // Equispaced periodic nodes: local Lagrange on the nearest kSmoothStencil nodes.
    const Eigen::Index n = mesh.size();
    const int width = static_cast<int>(std::min<Eigen::Index>(kSmoothStencil, n));
    const double dt = 2.0 * kPi / n;
    const double rel = (t - mesh.param[j]) / dt;
    const auto base = static_cast<Eigen::Index>(std::floor(rel)) + j - (width - 1) / 2;
    std::vector<double> xs(width);
    for (int a = 0; a < width; ++a)
    {
      xs[a] = double(base + a - j);
    }
    const auto w = lagrange_weights(xs, rel);
    for (int a = 0; a < width; ++a)
    {
      const Eigen::Index idx = ((base + a) % n + n) % n;
      out.emplace_back(idx, w[a]);
    }
    return out;
  }
  // Polygon: nodes of the same edge, nearest in arclength.
  const int k_per_edge = mesh.spec.panels;
  const Eigen::Index first = static_cast<Eigen::Index>(mesh.piece[j]) * k_per_edge;
  const int width = std::min(kEdgeStencil, k_per_edge);
  Eigen::Index lo = j - width / 2;
  lo = std::clamp(lo, first, first + k_per_edge - width);
  std::vector<double> xs(width);
  for (int a = 0; a < width; ++a)
  {
    xs[a] = mesh.param[lo + a];
  }
  const auto w = lagrange_weights(xs, t);
  for (int a = 0; a < width; ++a)
  {
    out.emplace_back(lo + a, w[a]);
  }
  return out;
}

bool contains(const DomainSpec &spec, const Point &x)
{
  switch (spec.kind)
  {
  case DomainSpec::Kind::disk:
    return x.norm() < spec.radius;
  case DomainSpec::Kind::star:
    return x.norm() < Radial{spec.coeffs}.eval(std::atan2(x.y(), x.x()))[0];
  case DomainSpec::Kind::polygon:
  {
    int winding = 0;
    const auto &v = spec.vertices;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
      const Point &a = v[i];
      const Point &b = v[(i + 1) % v.size()];
      if (a.y() <= x.y())
      {
        if (b.y() > x.y() && cross(b - a, x - a) > 0)
        {
          ++winding;
        }
      }
      else if (b.y() <= x.y() && cross(b - a, x - a) < 0)
      {
        --winding;
      }
    }
    return winding != 0;
  }
  }
  return false;
}

double distance_to_boundary(const DomainSpec &spec, const Point &x)
{
  if (spec.kind == DomainSpec::Kind::disk)
  {
    return std::abs(spec.radius - x.norm());
  }
  if (spec.kind == DomainSpec::Kind::polygon)
  {
    return polyline_distance(spec.vertices, x);
  }
  return polyline_distance(star_polyline(Radial{spec.coeffs}, kCheckPoints), x);
}

double domain_area(const DomainSpec &spec)
{
  switch (spec.kind)
  {
  case DomainSpec::Kind::disk:
    return kPi * spec.radius * spec.radius;
  case DomainSpec::Kind::polygon:
    return signed_area(spec.vertices);
  case DomainSpec::Kind::star:
  {
    double a = 0.0;
    for (const auto &[key, c] : spec.coeffs)
    {
      a += key == 0 ? kPi * c * c : 0.5 * kPi * c * c;
    }
    return a;
  }
  }
  return 0.0;
}

double domain_perimeter(const DomainSpec &spec)
{
  switch (spec.kind)
  {
  case DomainSpec::Kind::disk:
    return 2.0 * kPi * spec.radius;
  case DomainSpec::Kind::polygon:
  {
    double p = 0.0;
    const auto &v = spec.vertices;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
      p += (v[(i + 1) % v.size()] - v[i]).norm();
    }
    return p;
  }
  case DomainSpec::Kind::star:
  {
    const Radial rho{spec.coeffs};
    double p = 0.0;
    for (int i = 0; i < kCheckPoints; ++i)
    {
      p += curve_at(rho, 2.0 * kPi * i / kCheckPoints).d1.norm();
    }
    return p * 2.0 * kPi / kCheckPoints;
  }
  }
  return 0.0;
}

InteriorGrid interior_grid(const DomainSpec &spec, double h, double margin)
{
  spec.validate();
  if (!(h > 0.0) || !(margin >= 0.0))
  {
    throw EmptyGrid("interior grid needs h > 0 and margin >= 0");
  }
  Point lo;
  Point hi;
  std::vector<Point> star_poly;
  switch (spec.kind)
  {
  case DomainSpec::Kind::disk:
    lo = Point(-spec.radius, -spec.radius);
    hi = -lo;
    break;
  case DomainSpec::Kind::polygon:
    lo = hi = spec.vertices.front();
    for (const Point &v : spec.vertices)
    {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
    break;
  case DomainSpec::Kind::star:
  {
    star_poly = star_polyline(Radial{spec.coeffs}, kCheckPoints);
    double rmax = 0.0;
    for (const Point &p : star_poly)
    {
      rmax = std::max(rmax, p.norm());
    }
    lo = Point(-rmax, -rmax);
    hi = -lo;
    break;
  }
  }

  InteriorGrid g;
  g.spec = spec;
  g.h = h;
  g.margin = margin;
  g.origin = lo + Point(0.5 * h, 0.5 * h);
  g.nx = static_cast<int>(std::ceil((hi.x() - lo.x()) / h));
  g.ny = static_cast<int>(std::ceil((hi.y() - lo.y()) / h));
  for (int j = 0; j < g.ny; ++j)
  {
    for (int i = 0; i < g.nx; ++i)
    {
      const Point p = g.origin + Point(i * h, j * h);
      if (!contains(spec, p))
      {
        continue;
      }
      const double dist = spec.kind == DomainSpec::Kind::star
                              ? polyline_distance(star_poly, p)
                              : distance_to_boundary(spec, p);
      if (margin > 0.0 && dist < margin)
      {
        continue;
      }
      g.points.push_back(p);
      g.ix.push_back(i);
      g.iy.push_back(j);
    }
  }
  if (g.points.empty())
  {
    throw EmptyGrid("no lattice point inside the domain at the requested margin");
  }
  g.cell_weights = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(g.points.size()), h * h);
  return g;
}

}  // namespace kreinbem
