// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "kreinbem/kreinbem.hpp"

namespace kreinbem::cli
{

namespace
{

using ojson = nlohmann::ordered_json;

// Bad input detected after parsing (exit code 1).
class UsageError : public Error
{
public:
  using Error::Error;
};

struct Options
{
  std::string domain;
  int panels = 0;
  std::string z = "0";
  std::string theta = "const:0";
  std::string data = "fourier:0";
  std::vector<std::string> tol;
  std::string report;
};

class Report
{
public:
  Report(std::string command, const std::vector<std::string> &tol_args)
  {
    j_["schema"] = std::string(kSchema);
    j_["command"] = std::move(command);
    j_["inputs"] = ojson::object();
    j_["residuals"] = ojson::object();
    j_["tolerance"] = ojson::object();
    for (const std::string &t : tol_args)
    {
      const auto eq = t.find('=');
      if (eq == std::string::npos)
      {
        global_ = parse_number(t, "--tol");
      }
      else
      {
        named_[t.substr(0, eq)] = parse_number(t.substr(eq + 1), "--tol");
      }
    }
  }

  ojson &inputs() { return j_["inputs"]; }
  ojson &residuals() { return j_["residuals"]; }
  ojson &extra(const std::string &key) { return j_[key]; }

  double tolerance(const std::string &name, double fallback) const
  {
    if (auto it = named_.find(name); it != named_.end())
    {
      return it->second;
    }
    return global_ ? *global_ : fallback;
  }

  /// residual <= tolerance
  void check(const std::string &name, double value, double default_tol)
  {
    const double tol = tolerance(name, default_tol);
    j_["residuals"][name] = value;
    j_["tolerance"][name] = tol;
    pass_ = pass_ && (value <= tol);
  }

  void require(bool ok) { pass_ = pass_ && ok; }

  int finish(std::ostream &out, const std::string &path)
  {
    for (const auto &[name, v] : named_)
    {
      if (!j_["tolerance"].contains(name))
      {
        throw UsageError("unknown tolerance name '" + name + "'");
      }
    }
    j_["pass"] = pass_;
    const std::string text = j_.dump(2) + "\n";
    out << text;
    if (!path.empty())
    {
      write_text_file(path, text);
    }
    return pass_ ? kPass : kToleranceFail;
  }

  static double parse_number(const std::string &s, const std::string &what)
  {
    std::size_t used = 0;
    double v = 0.0;
    try
    {
      v = std::stod(s, &used);
    }
    catch (const std::exception &)
    {
      used = 0;
    }
    if (used == 0 || used != s.size())
    {
      throw UsageError("malformed number for " + what + ": '" + s + "'");
    }
    return v;
  }

private:
  ojson j_;
  std::optional<double> global_;
  std::map<std::string, double> named_;
  bool pass_ = true;
};

DomainSpec load_domain(const Options &o)
{
  if (o.domain.empty())
  {
    throw UsageError("--domain is required");
  }
  DomainSpec spec = domain_from_json(read_json_file(o.domain));
  if (o.panels > 0)
  {
    spec = spec.with_panels(o.panels);
  }
  return spec;
}

SpectralParameter load_z(const Options &o) { return SpectralParameter(parse_complex(o.z)); }

std::string coupling_literal(const RobinCoupling &c, const std::string &given)
{
  return c.kind() == RobinCoupling::Kind::explicit_matrix ? given : c.literal();
}

void add_common(CLI::App *app, Options &o, bool domain, bool z, bool theta, bool data)
{
  if (domain)
  {
    app->add_option("--domain", o.domain, "DomainSpec JSON file")->required();
    app->add_option("--panels", o.panels, "override the panel count of the domain file");
  }
  if (z)
  {
    app->add_option("--z", o.z, "spectral parameter a+bi");
  }
  if (theta)
  {
    app->add_option("--theta", o.theta, "Robin coupling: const:c | multiplier:k^s,c | matrix:path");
  }
  if (data)
  {
    app->add_option("--data", o.data, "boundary data: fourier:m | const:c | gauss:angle,width");
  }
  app->add_option("--tol", o.tol, "tolerance override: value or name=value (repeatable)");
  app->add_option("--report", o.report, "also write the JSON report to this file");
}

void echo_common(Report &r, const DomainSpec *spec, const SpectralParameter *z,
                 const std::string *theta, const std::string *data)
{
  if (spec)
  {
    r.inputs()["domain"] = ojson::parse(domain_to_json(*spec).dump());
  }
  if (z)
  {
    r.inputs()["z"] = format_complex(z->z());
  }
  if (theta)
  {
    r.inputs()["theta"] = *theta;
  }
  if (data)
  {
    r.inputs()["data"] = *data;
  }
}

std::vector<double> parse_list(const std::string &s, const std::string &what)
{
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
  {
    v.push_back(Report::parse_number(item, what));
  }
  return v;
}

std::vector<Point> parse_points(const std::string &s)
{
  std::vector<Point> pts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';'))
  {
    const auto v = parse_list(item, "--targets");
    if (v.size() != 2)
    {
      throw UsageError("targets must be x,y;x,y;...");
    }
    pts.emplace_back(v[0], v[1]);
  }
  return pts;
}

// Six angles on two rings at 1/4 and 1/2 of the distance from the origin to the boundary.
std::vector<Point> default_targets(const DomainSpec &spec)
{
  const Point origin(0.0, 0.0);
  if (!contains(spec, origin))
  {
    throw UsageError("default targets need the origin inside the domain; pass --targets");
  }
  const double d = distance_to_boundary(spec, origin);
  std::vector<Point> pts;
  for (int k = 0; k < 6; ++k)
  {
    const double a = 2.0 * std::numbers::pi * k / 6.0;
    pts.emplace_back(0.25 * d * std::cos(a), 0.25 * d * std::sin(a));
    pts.emplace_back(0.5 * d * std::cos(a + 0.3), 0.5 * d * std::sin(a + 0.3));
  }
  return pts;
}

std::optional<int> fourier_mode(const std::string &data)
{
  if (data.rfind("fourier:", 0) != 0)
  {
    return std::nullopt;
  }
  return std::stoi(data.substr(8));
}

ojson complex_list(const Eigen::VectorXcd &v)
{
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
  {
    a.push_back(format_complex(v(i)));
  }
  return a;
}

// ---------------------------------------------------------------------------

int cmd_kernels_eval(int n, const std::string &x_arg, const Options &o, std::ostream &out)
{
  Report r("kernels eval", o.tol);
  const SpectralParameter z = load_z(o);
  const std::vector<double> x = parse_list(x_arg, "--x");
  if (n < 2 || n > 5)
  {
    throw UsageError("--n must be 2, 3, 4 or 5");
  }
  r.inputs()["n"] = n;
  r.inputs()["z"] = format_complex(z.z());
  r.inputs()["x"] = x;
  const cplx e = fundamental_solution(n, z, x);
  r.extra("value") = format_complex(e);
  if (n <= 3)
  {
    if (static_cast<int>(x.size()) != n)
    {
      throw UsageError("--x must have n components for n = 2, 3");
    }
    const Eigen::VectorXcd grad = fundamental_gradient(n, z, x);
    const Eigen::MatrixXcd hess = fundamental_hessian(n, z, x);
    r.extra("gradient") = complex_list(grad);
    // (-Delta - z) E = 0 away from the pole
    const cplx tr = hess.trace();
    const double scale = std::max(std::abs(z.z() * e), hess.cwiseAbs().maxCoeff());
    r.check("trace_identity", std::abs(tr + z.z() * e) / scale, 1e-8);
    // d_j E_n = -2 pi x_j E_{n+2}
    const cplx e2 = fundamental_solution(n + 2, z, x);
    double rec = 0.0;
    for (int j = 0; j < n; ++j)
    {
      rec = std::max(rec, std::abs(grad(j) + 2.0 * std::numbers::pi * x[j] * e2) /
                              std::max(std::abs(grad(j)), 1e-300));
    }
    r.check("recursion", rec, 1e-10);
  }
  return r.finish(out, o.report);
}

int cmd_bvp_solve(const std::string &problem, const std::string &csv, const Options &o,
                  std::ostream &out)
{
  Report r("bvp solve", o.tol);
  const DomainSpec spec = load_domain(o);
  const SpectralParameter z = load_z(o);
  const BoundaryMesh mesh = build_mesh(spec);
  const Eigen::VectorXcd data = boundary_data(mesh, o.data);
  const BoundaryContext ctx(mesh, z);
  std::optional<RobinCoupling> coupling;
  if (problem == "robin")
  {
    coupling = parse_coupling(o.theta);
  }
  else if (problem == "neumann")
  {
    coupling = RobinCoupling::zero();
  }
  else if (problem != "dirichlet")
  {
    throw UsageError("--problem must be dirichlet, neumann or robin");
  }
  r.inputs()["problem"] = problem;
  const std::string theta_lit = coupling ? coupling_literal(*coupling, o.theta) : "";
  echo_common(r, &spec, &z, coupling ? &theta_lit : nullptr, &o.data);

  const BVPSolution sol = coupling ? solve_robin(ctx, *coupling, data) : solve_dirichlet(ctx, data);
  r.check("residual", sol.residual, 1e-8);
  r.extra("condition") = sol.condition;

  // Disk oracle for Fourier data with a constant coupling.
  const auto m = fourier_mode(o.data);
  if (spec.is_circle() && m && (!coupling || coupling->constant_value()))
  {
    const double radius = spec.circle_radius();
    double err = 0.0;
    if (coupling)
    {
      const cplx lam = disk_rtd_eigenvalue(*m, z, *coupling->constant_value(), radius);
      err = norm_w(mesh.weights, sol.gamma_d - lam * data) / norm_w(mesh.weights, lam * data);
    }
    else
    {
      const cplx lam = disk_dtr_eigenvalue(*m, z, 0.0, radius);
      err = norm_w(mesh.weights, sol.gamma_n + lam * data) / norm_w(mesh.weights, lam * data);
    }
    r.check("oracle_error", err, 1e-4);
  }
  if (!csv.empty())
  {
    std::ostringstream s;
    s << "i,x,y,re_gamma_d,im_gamma_d,re_gamma_n,im_gamma_n\n";
    for (Eigen::Index i = 0; i < mesh.size(); ++i)
    {
      s << i << ',' << format_double(mesh.nodes[i].x()) << ',' << format_double(mesh.nodes[i].y())
        << ',' << format_double(sol.gamma_d(i).real()) << ','
        << format_double(sol.gamma_d(i).imag()) << ',' << format_double(sol.gamma_n(i).real())
        << ',' << format_double(sol.gamma_n(i).imag()) << '\n';
    }
    write_text_file(csv, s.str());
  }
  return r.finish(out, o.report);
}

int cmd_map(MapDirection dir, const std::string &path, const std::string &csv, const Options &o,
            std::ostream &out)
{
  Report r(dir == MapDirection::rtd ? "map rtd" : "map dtr", o.tol);
  const DomainSpec spec = load_domain(o);
  const SpectralParameter z = load_z(o);
  const RobinCoupling coupling = parse_coupling(o.theta);
  const std::string theta_lit = coupling_literal(coupling, o.theta);
  echo_common(r, &spec, &z, &theta_lit, nullptr);
  const BoundaryMesh mesh = build_mesh(spec);
  const SteklovMap map =
      dir == MapDirection::rtd ? assemble_rtd(mesh, z, coupling) : assemble_dtr(mesh, z, coupling);
  r.extra("n") = mesh.size();
  r.extra("weighted_norm") = map.matrix.weighted_norm();
  if (!path.empty())
  {
    write_text_file(path, operator_to_json(map.matrix).dump() + "\n");
    const DenseOperator back = operator_from_json(read_json_file(path));
    const bool exact = back.matrix == map.matrix.matrix && back.weights == map.matrix.weights;
    r.check("roundtrip", exact ? 0.0 : 1.0, 0.0);
    r.inputs()["out"] = path;
  }
  if (!csv.empty())
  {
    write_text_file(csv, operator_to_csv(map.matrix));
  }
  if (spec.is_circle() && coupling.constant_value())
  {
    const double theta = *coupling.constant_value();
    double err = 0.0;
    const int mmax = std::min<int>(8, static_cast<int>(mesh.size() / 8));
    for (int m = -mmax; m <= mmax; ++m)
    {
      const Eigen::VectorXcd b = boundary_data(mesh, "fourier:" + std::to_string(m));
      const cplx lam = dir == MapDirection::rtd
                           ? disk_rtd_eigenvalue(m, z, theta, spec.circle_radius())
                           : disk_dtr_eigenvalue(m, z, theta, spec.circle_radius());
      err = std::max(err, norm_w(mesh.weights, map.matrix.apply(b) - lam * b) /
                              norm_w(mesh.weights, lam * b));
    }
    r.check("oracle_error", err, 1e-3);
  }
  return r.finish(out, o.report);
}

int cmd_check_jump(const Options &o, std::ostream &out)
{
  Report r("check jump", o.tol);
  const DomainSpec spec = load_domain(o);
  const SpectralParameter z = load_z(o);
  echo_common(r, &spec, &z, nullptr, &o.data);
  const BoundaryMesh mesh = build_mesh(spec);
  const JumpReport j = check_jump(mesh, z, boundary_data(mesh, o.data));
  r.inputs()["delta_continuity"] = j.delta_continuity;
  r.inputs()["delta_fd"] = j.delta_fd;
  r.check("density_jump", j.density_jump, 1e-12);
  r.check("dirichlet_continuity", j.dirichlet_continuity, 1e-3);
  r.check("neumann_interior", j.neumann_interior, 5e-2);
  r.check("neumann_exterior", j.neumann_exterior, 5e-2);
  return r.finish(out, o.report);
}

int cmd_check_inverse(int cutoff, const Options &o, std::ostream &out)
{
  Report r("check inverse", o.tol);
  const DomainSpec spec = load_domain(o);
  const SpectralParameter z = load_z(o);
  const RobinCoupling coupling = parse_coupling(o.theta);
  const std::string theta_lit = coupling_literal(coupling, o.theta);
  echo_common(r, &spec, &z, &theta_lit, nullptr);
  const InverseReport inv = check_inverse(build_mesh(spec), z, coupling, cutoff);
  r.inputs()["cutoff"] = inv.cutoff;
  r.check("dtr_rtd", inv.dtr_rtd, 1e-3);
  r.check("rtd_dtr", inv.rtd_dtr, 1e-3);
  return r.finish(out, o.report);
}

int cmd_check_symmetry(const Options &o, std::ostream &out)
{
  Report r("check symmetry", o.tol);
  const DomainSpec spec = load_domain(o);
  const SpectralParameter z = load_z(o);
  const RobinCoupling coupling = parse_coupling(o.theta);
  const std::string theta_lit = coupling_literal(coupling, o.theta);
  echo_common(r, &spec, &z, &theta_lit, nullptr);
  const double res = check_symmetry(build_mesh(spec), z, coupling);
  r.check("symmetry", res, z.z().imag() == 0.0 ? 1e-8 : 1e-3);
  return r.finish(out, o.report);
}

int cmd_check_herglotz(double h, const Options &o, std::ostream &out)
{
  Report r("check herglotz", o.tol);
  const DomainSpec spec = load_domain(o);
  const SpectralParameter z = load_z(o);
  const RobinCoupling coupling = parse_coupling(o.theta);
  const std::string theta_lit = coupling_literal(coupling, o.theta);
  echo_common(r, &spec, &z, &theta_lit, &o.data);
  r.inputs()["h"] = h;
  const BoundaryMesh mesh = build_mesh(spec);
  const InteriorGrid grid = interior_grid(spec, h, 0.0);
  const HerglotzReport hr = check_herglotz(mesh, grid, z, coupling, boundary_data(mesh, o.data));
  r.extra("lhs") = hr.lhs;
  r.extra("rhs") = hr.rhs;
  r.extra("min_imag_eigenvalue") = hr.min_imag_eigenvalue;
  r.extra("map_norm") = hr.map_norm;
  r.require(hr.lhs > 0.0);
  r.check("relative_gap", hr.relative_gap, 2e-2);
  r.check("imag_part_negativity", std::max(0.0, -hr.min_imag_eigenvalue) / hr.map_norm, 1e-6);
  return r.finish(out, o.report);
}

int cmd_check_krein(const std::string &source, double h, const std::string &targets_arg,
                    const Options &o, std::ostream &out)
{
  Report r("check krein", o.tol);
  const DomainSpec spec = load_domain(o);
  const SpectralParameter z = load_z(o);
  const RobinCoupling coupling = parse_coupling(o.theta);
  const std::string theta_lit = coupling_literal(coupling, o.theta);
  echo_common(r, &spec, &z, &theta_lit, nullptr);
  const SourceField f = source_from_json(read_json_file(source));
  r.inputs()["source"] = ojson::parse(source_to_json(f).dump());
  r.inputs()["h"] = h;
  const std::vector<Point> targets =
      targets_arg.empty() ? default_targets(spec) : parse_points(targets_arg);
  ojson t = ojson::array();
  for (const Point &p : targets)
  {
    t.push_back({p.x(), p.y()});
  }
  r.inputs()["targets"] = t;
  const KreinReport k =
      krein_check(build_mesh(spec), interior_grid(spec, h, 0.0), z, coupling, f, targets);
  r.extra("lhs") = complex_list(k.lhs);
  r.extra("rhs") = complex_list(k.rhs);
  r.check("relative_error", k.relative_error, 1e-2);
  return r.finish(out, o.report);
}

int cmd_spectrum_scan(double zmin, double zmax, int steps, const std::string &csv,
                      const std::string &minima, const Options &o, std::ostream &out)
{
  Report r("spectrum scan", o.tol);
  const DomainSpec spec = load_domain(o);
  const bool dirichlet = o.theta == "dirichlet";
  const ScanOperator op = dirichlet ? ScanOperator::dirichlet() : ScanOperator(parse_coupling(o.theta));
  const std::string theta_lit = dirichlet ? o.theta : coupling_literal(op.coupling(), o.theta);
  echo_common(r, &spec, nullptr, &theta_lit, nullptr);
  r.inputs()["zmin"] = zmin;
  r.inputs()["zmax"] = zmax;
  r.inputs()["steps"] = steps;
  const SpectrumScan scan = spectrum_scan(build_mesh(spec), op, zmin, zmax, steps);

  ojson dips = ojson::array();
  for (const SpectrumDip &d : scan.dips)
  {
    ojson e;
    e["z"] = d.z;
    e["sigma_min"] = d.sigma_min;
    e["contrast"] = d.contrast;
    e["multiplicity"] = d.multiplicity;
    dips.push_back(e);
  }
  r.extra("minima") = dips;
  r.extra("eigenvalues") = scan.eigenvalues();

  // Disk oracle: every eigenvalue at least one step inside the range must have a dip.
  const std::optional<double> theta =
      dirichlet ? std::nullopt : op.coupling().constant_value();
  if (spec.is_circle() && (dirichlet || (theta && *theta >= 0.0)))
  {
    const double radius = spec.circle_radius();
    const std::vector<double> oracle = dirichlet
                                           ? disk_dirichlet_eigenvalues(radius, zmax)
                                           : disk_robin_eigenvalues(*theta, radius, zmax);
    const double dz = (zmax - zmin) / steps;
    const std::vector<double> found = scan.eigenvalues();
    double worst = 0.0;
    ojson used = ojson::array();
    for (double lam : oracle)
    {
      if (lam < zmin + dz || lam > zmax - dz)
      {
        continue;
      }
      double best = std::numeric_limits<double>::infinity();
      for (double f : found)
      {
        best = std::min(best, std::abs(f - lam));
      }
      worst = std::max(worst, best);
      used.push_back(lam);
    }
    r.extra("oracle") = used;
    r.check("oracle_max_error", worst, 1e-3);
  }
  if (!csv.empty())
  {
    std::ostringstream s;
    s << "z,sigma_min\n";
    for (std::size_t k = 0; k < scan.z.size(); ++k)
    {
      s << format_double(scan.z[k]) << ',' << format_double(scan.sigma_min[k]) << '\n';
    }
    write_text_file(csv, s.str());
  }
  if (!minima.empty())
  {
    write_text_file(minima, dips.dump(2) + "\n");
  }
  return r.finish(out, o.report);
}

int cmd_oracle_disk(const std::string &kind, int m, int k, double theta, double radius,
                    const Options &o, std::ostream &out)
{
  Report r("oracle disk", o.tol);
  r.inputs()["kind"] = kind;
  r.inputs()["m"] = m;
  r.inputs()["radius"] = radius;
  if (kind == "dirichlet_eigen")
  {
    r.inputs()["k"] = k;
    r.extra("value") = disk_dirichlet_eigenvalue(m, k, radius);
  }
  else if (kind == "robin_eigen")
  {
    r.inputs()["k"] = k;
    r.inputs()["theta"] = theta;
    r.extra("value") = disk_robin_eigenvalue(m, k, theta, radius);
  }
  else if (kind == "rtd_eigenvalue")
  {
    const SpectralParameter z = load_z(o);
    r.inputs()["theta"] = theta;
    r.inputs()["z"] = format_complex(z.z());
    r.extra("value") = format_complex(disk_rtd_eigenvalue(m, z, theta, radius));
  }
  else
  {
    throw UsageError("--kind must be dirichlet_eigen, robin_eigen or rtd_eigenvalue");
  }
  return r.finish(out, o.report);
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Boundary integral solvers for Robin, Dirichlet and Neumann Laplacians", "kreinbem"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  // kernels eval
  auto *kernels = app.add_subcommand("kernels", "fundamental solution spot checks");
  kernels->require_subcommand(1);
  auto *keval = kernels->add_subcommand("eval", "E_n(z; x) with derivative identities");
  int kn = 2;
  std::string kx = "1,0";
  keval->add_option("--n", kn, "dimension 2..5");
  keval->add_option("--x", kx, "point, comma separated");
  add_common(keval, o, false, true, false, false);
  keval->callback([&] { action = [&] { return cmd_kernels_eval(kn, kx, o, out); }; });

  // bvp solve
  auto *bvp = app.add_subcommand("bvp", "boundary value problems");
  bvp->require_subcommand(1);
  auto *bsolve = bvp->add_subcommand("solve", "solve one boundary value problem");
  std::string problem = "robin";
  std::string bcsv;
  bsolve->add_option("--problem", problem, "dirichlet | neumann | robin");
  bsolve->add_option("--csv", bcsv, "write boundary traces as CSV");
  add_common(bsolve, o, true, true, true, true);
  bsolve->callback([&] { action = [&] { return cmd_bvp_solve(problem, bcsv, o, out); }; });

  // map rtd / map dtr
  auto *map = app.add_subcommand("map", "Robin-to-Dirichlet and Dirichlet-to-Robin maps");
  map->require_subcommand(1);
  std::string map_out;
  std::string map_csv;
  for (const auto dir : {MapDirection::rtd, MapDirection::dtr})
  {
    auto *sub = map->add_subcommand(dir == MapDirection::rtd ? "rtd" : "dtr",
                                    dir == MapDirection::rtd ? "Robin-to-Dirichlet map"
                                                             : "Dirichlet-to-Robin map");
    sub->add_option("--out", map_out, "write the matrix as DenseOperator JSON");
    sub->add_option("--csv", map_csv, "write the matrix as CSV (i,j,re,im)");
    add_common(sub, o, true, true, true, false);
    sub->callback([&, dir] { action = [&, dir] { return cmd_map(dir, map_out, map_csv, o, out); }; });
  }

  // check ...
  auto *check = app.add_subcommand("check", "identity checks");
  check->require_subcommand(1);
  auto *cjump = check->add_subcommand("jump", "single layer jump relations");
  add_common(cjump, o, true, true, false, true);
  cjump->callback([&] { action = [&] { return cmd_check_jump(o, out); }; });

  auto *cinv = check->add_subcommand("inverse", "M_dtr M_rtd = -I on low modes");
  int cutoff = -1;
  cinv->add_option("--cutoff", cutoff, "mode cutoff (default N/32)");
  add_common(cinv, o, true, true, true, false);
  cinv->callback([&] { action = [&] { return cmd_check_inverse(cutoff, o, out); }; });

  auto *csym = check->add_subcommand("symmetry", "M_rtd(z)* = M_rtd(conj z)");
  add_common(csym, o, true, true, true, false);
  csym->callback([&] { action = [&] { return cmd_check_symmetry(o, out); }; });

  auto *cher = check->add_subcommand("herglotz", "Im <g, M g> = Im z ||u||^2");
  double hh = 0.01;
  cher->set_help_flag("--help", "Print this help message and exit");
  cher->add_option("--h", hh, "interior grid spacing");
  add_common(cher, o, true, true, true, true);
  cher->callback([&] { action = [&] { return cmd_check_herglotz(hh, o, out); }; });

  auto *ckr = check->add_subcommand("krein", "Krein resolvent formula");
  std::string source;
  double kh = 0.01;
  std::string targets;
  ckr->set_help_flag("--help", "Print this help message and exit");
  ckr->add_option("--source", source, "SourceField JSON file")->required();
  ckr->add_option("--h", kh, "volume grid spacing");
  ckr->add_option("--targets", targets, "x,y;x,y;... (default: 12 points around the origin)");
  add_common(ckr, o, true, true, true, false);
  ckr->callback([&] { action = [&] { return cmd_check_krein(source, kh, targets, o, out); }; });

  // spectrum scan
  auto *spectrum = app.add_subcommand("spectrum", "eigenvalues from singular value dips");
  spectrum->require_subcommand(1);
  auto *scan = spectrum->add_subcommand("scan", "scan sigma_min over a real interval");
  double zmin = 0.0;
  double zmax = 30.0;
  int steps = 600;
  std::string scsv;
  std::string sout;
  scan->add_option("--zmin", zmin);
  scan->add_option("--zmax", zmax);
  scan->add_option("--steps", steps);
  scan->add_option("--csv", scsv, "write z,sigma_min samples");
  scan->add_option("--out", sout, "write the refined minima as JSON");
  add_common(scan, o, true, false, true, false);
  scan->callback([&] {
    action = [&] { return cmd_spectrum_scan(zmin, zmax, steps, scsv, sout, o, out); };
  });

  // oracle disk
  auto *oracle = app.add_subcommand("oracle", "analytic reference values");
  oracle->require_subcommand(1);
  auto *odisk = oracle->add_subcommand("disk", "separation of variables on a disk");
  std::string kind = "dirichlet_eigen";
  int om = 0;
  int ok = 1;
  double otheta = 0.0;
  double radius = 1.0;
  odisk->add_option("--kind", kind, "dirichlet_eigen | robin_eigen | rtd_eigenvalue");
  odisk->add_option("--m", om);
  odisk->add_option("--k", ok);
  odisk->add_option("--theta-value", otheta, "constant Robin coefficient");
  odisk->add_option("--radius", radius);
  add_common(odisk, o, false, true, false, false);
  odisk->callback([&] {
    action = [&] { return cmd_oracle_disk(kind, om, ok, otheta, radius, o, out); };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try
  {
    app.parse(reversed);
  }
  catch (const CLI::CallForHelp &)
  {
    out << app.help();
    return kPass;
  }
  catch (const CLI::ParseError &e)
  {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try
  {
    return action();
  }
  catch (const NearSingular &e)
  {
    err << "near-singular: " << e.what() << " (condition " << e.condition() << ")\n";
    return kNearSingular;
  }
  catch (const Error &e)
  {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  catch (const nlohmann::json::exception &e)
  {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  catch (const std::invalid_argument &e)
  {
    err << "error: malformed argument (" << e.what() << ")\n";
    return kUsage;
  }
}

}  // namespace kreinbem::cli
