// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#include "kreinbem/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "kreinbem/errors.hpp"

namespace kreinbem
{

namespace
{

double parse_double(std::string_view s, std::string_view what)
{
  double v = 0.0;
  const char *end = s.data() + s.size();
  if (!s.empty() && s.front() == '+')
  {
    s.remove_prefix(1);
  }
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end)
  {
    throw Error("malformed " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

template <class T>
T required(const nlohmann::json &j, const char *key)
{
  if (!j.contains(key))
  {
    throw Error(std::string("missing JSON field '") + key + "'");
  }
  return j.at(key).get<T>();
}

Gaussian gaussian_from_json(const nlohmann::json &j)
{
  const auto c = required<std::vector<double>>(j, "center");
  if (c.size() != 2)
  {
    throw Error("gaussian center must have two coordinates");
  }
  Gaussian g;
  g.center = Point(c[0], c[1]);
  g.width = required<double>(j, "width");
  g.amplitude = j.value("amplitude", 1.0);
  return g;
}

nlohmann::json gaussian_to_json(const Gaussian &g)
{
  nlohmann::json j;
  j["kind"] = "gaussian";
  j["center"] = {g.center.x(), g.center.y()};
  j["width"] = g.width;
  j["amplitude"] = g.amplitude;
  return j;
}

}  // namespace

std::string format_double(double v)
{
  if (std::isnan(v))
  {
    return "nan";
  }
  if (std::isinf(v))
  {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string format_complex(std::complex<double> z)
{
  std::string s = format_double(z.real());
  const double im = z.imag();
  if (std::signbit(im))
  {
    s += "-" + format_double(-im);
  }
  else
  {
    s += "+" + format_double(im);
  }
  return s + "i";
}

std::complex<double> parse_complex(std::string_view s)
{
  if (s.empty())
  {
    throw Error("empty complex literal");
  }
  if (s.back() != 'i')
  {
    return {parse_double(s, "complex literal"), 0.0};
  }
  const std::string_view body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not the leading one or an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;)
  {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E')
    {
      split = k;
      break;
    }
  }
  auto imag_part = [](std::string_view t) {
    if (t.empty() || t == "+")
    {
      return 1.0;
    }
    if (t == "-")
    {
      return -1.0;
    }
    return parse_double(t, "complex literal");
  };
  if (split == std::string_view::npos)
  {
    return {0.0, imag_part(body)};
  }
  return {parse_double(body.substr(0, split), "complex literal"), imag_part(body.substr(split))};
}

nlohmann::json domain_to_json(const DomainSpec &spec)
{
  nlohmann::json j;
  switch (spec.kind)
  {
  case DomainSpec::Kind::disk:
    j["kind"] = "disk";
    j["radius"] = spec.radius;
    j["panels"] = spec.panels;
    break;
  case DomainSpec::Kind::polygon:
  {
    j["kind"] = "polygon";
    nlohmann::json v = nlohmann::json::array();
    for (const Point &p : spec.vertices)
    {
      v.push_back({p.x(), p.y()});
    }
    j["vertices"] = v;
    j["panels_per_edge"] = spec.panels;
    j["grading"] = spec.grading;
    break;
  }
  case DomainSpec::Kind::star:
  {
    j["kind"] = "star";
    nlohmann::json c = nlohmann::json::object();
    for (const auto &[k, v] : spec.coeffs)
    {
      c[std::to_string(k)] = v;
    }
    j["coeffs"] = c;
    j["panels"] = spec.panels;
    break;
  }
  }
  return j;
}

DomainSpec domain_from_json(const nlohmann::json &j)
{
  const auto kind = required<std::string>(j, "kind");
  DomainSpec spec;
  if (kind == "disk")
  {
    spec = DomainSpec::disk(j.value("radius", 1.0), j.value("panels", 256));
  }
  else if (kind == "polygon")
  {
    std::vector<Point> verts;
    for (const auto &v : required<std::vector<std::vector<double>>>(j, "vertices"))
    {
      if (v.size() != 2)
      {
        throw Error("polygon vertices must have two coordinates");
      }
      verts.emplace_back(v[0], v[1]);
    }
    spec = DomainSpec::polygon(std::move(verts), j.value("panels_per_edge", 32),
                               j.value("grading", 3.0));
  }
  else if (kind == "star")
  {
    std::map<int, double> coeffs;
    const auto table = required<nlohmann::json>(j, "coeffs");
    for (const auto &[k, v] : table.items())
    {
      int key = 0;
      const auto [end, ec] = std::from_chars(k.data(), k.data() + k.size(), key);
      if (ec != std::errc() || end != k.data() + k.size())
      {
        throw Error("star coefficient keys must be integers, got '" + k + "'");
      }
      coeffs[key] = v.get<double>();
    }
    spec = DomainSpec::star(std::move(coeffs), j.value("panels", 256));
  }
  else
  {
    throw Error("unknown domain kind '" + kind + "'");
  }
  spec.validate();
  return spec;
}

nlohmann::json source_to_json(const SourceField &f)
{
  if (f.is_sampled())
  {
    throw Error("sampled sources have no JSON form");
  }
  const auto &g = f.gaussians();
  if (g.size() == 1)
  {
    return gaussian_to_json(g.front());
  }
  nlohmann::json terms = nlohmann::json::array();
  for (const Gaussian &b : g)
  {
    terms.push_back(gaussian_to_json(b));
  }
  return {{"kind", "sum"}, {"terms", terms}};
}

SourceField source_from_json(const nlohmann::json &j)
{
  const auto kind = required<std::string>(j, "kind");
  if (kind == "gaussian")
  {
    return SourceField::sum({gaussian_from_json(j)});
  }
  if (kind == "sum")
  {
    std::vector<Gaussian> bumps;
    for (const auto &t : required<nlohmann::json>(j, "terms"))
    {
      bumps.push_back(gaussian_from_json(t));
    }
    return SourceField::sum(std::move(bumps));
  }
  if (kind == "zero")
  {
    return SourceField::zero();
  }
  throw Error("unknown source kind '" + kind + "'");
}

nlohmann::json operator_to_json(const DenseOperator &op)
{
  const Eigen::Index n = op.size();
  std::vector<double> re;
  std::vector<double> im;
  re.reserve(static_cast<std::size_t>(n * n));
  im.reserve(static_cast<std::size_t>(n * n));
  for (Eigen::Index i = 0; i < n; ++i)
  {
    for (Eigen::Index k = 0; k < n; ++k)
    {
      re.push_back(op.matrix(i, k).real());
      im.push_back(op.matrix(i, k).imag());
    }
  }
  nlohmann::json j;
  j["n"] = n;
  j["re"] = re;
  j["im"] = im;
  j["weights"] = std::vector<double>(op.weights.data(), op.weights.data() + op.weights.size());
  return j;
}

DenseOperator operator_from_json(const nlohmann::json &j)
{
  const auto n = required<Eigen::Index>(j, "n");
  const auto re = required<std::vector<double>>(j, "re");
  const auto im = required<std::vector<double>>(j, "im");
  const auto w = required<std::vector<double>>(j, "weights");
  const auto nn = static_cast<std::size_t>(n * n);
  if (n < 0 || re.size() != nn || im.size() != nn || w.size() != static_cast<std::size_t>(n))
  {
    throw Error("operator JSON sizes are inconsistent");
  }
  DenseOperator op;
  op.matrix.resize(n, n);
  op.weights = Eigen::Map<const Eigen::VectorXd>(w.data(), n);
  for (Eigen::Index i = 0; i < n; ++i)
  {
    for (Eigen::Index k = 0; k < n; ++k)
    {
      const auto idx = static_cast<std::size_t>(i * n + k);
      op.matrix(i, k) = cplx(re[idx], im[idx]);
    }
  }
  return op;
}

std::string operator_to_csv(const DenseOperator &op)
{
  std::ostringstream out;
  out << "i,j,re,im\n";
  for (Eigen::Index i = 0; i < op.size(); ++i)
  {
    for (Eigen::Index k = 0; k < op.size(); ++k)
    {
      out << i << ',' << k << ',' << format_double(op.matrix(i, k).real()) << ','
          << format_double(op.matrix(i, k).imag()) << '\n';
    }
  }
  return out.str();
}

RobinCoupling parse_coupling(std::string_view literal, const std::filesystem::path &base)
{
  const auto colon = literal.find(':');
  if (colon == std::string_view::npos)
  {
    throw Error("coupling literal must look like kind:args, got '" + std::string(literal) + "'");
  }
  const std::string_view kind = literal.substr(0, colon);
  const std::string_view args = literal.substr(colon + 1);
  if (kind == "const")
  {
    return RobinCoupling::constant(parse_double(args, "coupling constant"));
  }
  if (kind == "multiplier")
  {
    const auto comma = args.find(',');
    if (args.substr(0, 2) != "k^" || comma == std::string_view::npos)
    {
      throw Error("multiplier literal must look like multiplier:k^s,c");
    }
    return RobinCoupling::fourier_multiplier(parse_double(args.substr(2, comma - 2), "exponent"),
                                             parse_double(args.substr(comma + 1), "scale"));
  }
  if (kind == "matrix")
  {
    std::filesystem::path p{std::string(args)};
    if (p.is_relative() && !base.empty())
    {
      p = base / p;
    }
    DenseOperator op = operator_from_json(read_json_file(p));
    return RobinCoupling::explicit_matrix(std::move(op.matrix), std::move(op.weights));
  }
  throw Error("unknown coupling kind '" + std::string(kind) + "'");
}

nlohmann::json read_json_file(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw Error("cannot open '" + path.string() + "'");
  }
  try
  {
    return nlohmann::json::parse(in);
  }
  catch (const nlohmann::json::exception &e)
  {
    throw Error("invalid JSON in '" + path.string() + "': " + e.what());
  }
}

void write_text_file(const std::filesystem::path &path, const std::string &text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
  {
    throw Error("cannot write '" + path.string() + "'");
  }
  out << text;
}

}  // namespace kreinbem
