#pragma once

#include "hyperstat/core/calculus.hpp"
#include "hyperstat/core/io.hpp"
#include "hyperstat/density/estimate.hpp"
#include "hyperstat/ensemble/ensemble.hpp"
#include "hyperstat/evolve/cdf.hpp"
#include "hyperstat/evolve/linear.hpp"
#include "hyperstat/evolve/nonlocal.hpp"
#include "hyperstat/harness/config.hpp"
#include "hyperstat/harness/metrics.hpp"
#include "hyperstat/multipoint/npoint.hpp"
#include "hyperstat/scenarios/catalog.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace hyperstat {

struct Metric {
  std::string name;
  std::string route_a;
  std::string route_b;
  double value = 0.0;
};

struct RouteResult {
  std::string name;
  std::optional<CdfField> cdf;
  std::optional<DensityField> pdf;
  Moments moments;
  /// False when t_final lies past the scenario's no-shock horizon, so the
  /// statistics equations behind this route no longer apply.
  bool within_validity = true;
  std::vector<std::pair<std::string, double>> properties;
  std::vector<Metric> own_metrics;
};

struct Report {
  std::string config_echo;
  std::map<std::string, RouteResult> routes;
  std::vector<Metric> metrics;

  const Metric* find(const std::string& name, const std::string& a, const std::string& b) const
  {
    for (const auto& m : metrics)
      if (m.name == name && ((m.route_a == a && m.route_b == b) || (m.route_a == b && m.route_b == a)))
        return &m;
    return nullptr;
  }
};

namespace detail {

inline const std::function<double(double)>& linear_speed(const Scenario& sc, const std::string& route)
{
  const auto* l = std::get_if<LinearSpeed>(&sc.flux);
  if (!l)
    throw ConfigError("route " + route + " needs a linear scenario");
  return l->s;
}

inline void density_properties(RouteResult& r, const DensityField& raw)
{
  double lo = 0.0;
  for (double v : raw.values)
    lo = std::min(lo, v);
  r.properties.push_back({"pdf_min_before_clip", lo});
  r.properties.push_back({"pdf_normalization_drift", max_normalization_drift(raw)});
}

inline DensityField clipped(DensityField f)
{
  for (auto& v : f.values)
    v = std::max(v, 0.0);
  return f;
}

inline RouteResult mc_route(const std::string& name, const Scenario& sc, const RunConfig& c, const Axis& x,
                            const Axis& u)
{
  RouteResult r;
  r.name = name;
  const Ensemble e0 = sample_ensemble(sc, x, c.samples, c.seed);
  const Ensemble e = evolve_ensemble(e0, sc, c.t_final, c.realization_dt(), c.mc_limiter);
  const EstimatorSpec spec{{c.kernel, c.bandwidth}, c.bandwidth_mode};
  r.cdf = ensemble_kernel_cdf(e, u, spec);
  r.pdf = ensemble_kde(e, u, spec);
  r.moments = moments(e);
  r.properties.push_back({"pdf_normalization_drift", max_normalization_drift(*r.pdf)});
  return r;
}

inline RouteResult pdf_evolve_route(const Scenario& sc, const RunConfig& c, const Axis& x, const Axis& u)
{
  RouteResult r;
  r.name = "pdf-evolve";
  const auto& s = linear_speed(sc, r.name);
  const DensityField f = evolve_pdf_linear(initial_density(sc, x, u), s, c.t_final, c.dt, sc.boundary, c.pdf_limiter);
  density_properties(r, f);
  r.pdf = clipped(f);
  r.cdf = pdf_to_cdf(*r.pdf);
  r.moments = moments(*r.pdf);
  return r;
}

inline RouteResult cdf_route(const std::string& name, const Scenario& sc, const RunConfig& c, const Axis& x,
                             const Axis& u)
{
  RouteResult r;
  r.name = name;
  r.within_validity = sc.valid_at(c.t_final);
  const CdfField F0 = initial_cdf_field(sc, x, u);
  CdfField F;
  if (const auto* l = std::get_if<LinearSpeed>(&sc.flux)) {
    F = name == "cdf-exact" ? evolve_cdf_characteristics(F0, l->s, c.t_final, sc.initial_cdf)
                            : evolve_cdf_linear(F0, l->s, c.t_final, c.dt, sc.boundary, c.limiter);
  } else {
    const auto da = flux_derivative(sc.flux);
    F = name == "cdf-exact" ? evolve_cdf_exact(F0, da, c.t_final, sc.initial_cdf)
                            : evolve_cdf_fv(F0, da, c.t_final, c.dt, sc.boundary, c.limiter);
  }
  double lo = 1.0, hi = 0.0;
  for (double v : F.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  r.properties.push_back({"cdf_min", lo});
  r.properties.push_back({"cdf_max", hi});
  r.properties.push_back({"cdf_monotonicity_defect", monotonicity_defect(F)});
  const DensityField raw = cdf_to_pdf(F, false);
  density_properties(r, raw);
  r.pdf = clipped(raw);
  r.moments = moments(F);
  r.cdf = std::move(F);
  return r;
}

inline RouteResult nonlocal_route(const Scenario& sc, const RunConfig& c, const Axis& x, const Axis& u)
{
  RouteResult r;
  r.name = "pdf-nonlocal";
  if (is_linear(sc.flux))
    throw ConfigError("route pdf-nonlocal needs a convex-flux scenario");
  r.within_validity = sc.valid_at(c.t_final);
  NonlocalOptions opt;
  opt.theta = c.theta;
  opt.speeds = c.wave_speeds;
  opt.reconstruction = c.reconstruction;
  opt.boundary = sc.boundary;
  const DensityField f = evolve_pdf_nonlocal(initial_density(sc, x, u), sc.flux, c.t_final, c.dt, opt);
  density_properties(r, f);
  r.pdf = clipped(f);
  r.cdf = pdf_to_cdf(*r.pdf);
  r.moments = moments(*r.pdf);
  return r;
}

/// Standard normal quantile by bisection on erfc.
inline double normal_quantile(double p)
{
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (0.5 * std::erfc(-mid / std::numbers::sqrt2) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// Deterministic quadrature nodes of the parameter law: midpoints in
/// probability per coordinate, mapped through the law (tensor grid).
inline std::vector<std::vector<double>> parameter_nodes(const Scenario& sc, std::size_t per_axis)
{
  std::vector<double> probs(per_axis);
  for (std::size_t i = 0; i < per_axis; ++i)
    probs[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(per_axis);
  return std::visit(
      [&](const auto& law) -> std::vector<std::vector<double>> {
        using L = std::decay_t<decltype(law)>;
        std::vector<std::vector<double>> out;
        if constexpr (std::is_same_v<L, Uniform01>) {
          for (double p : probs)
            out.push_back({p});
        } else if constexpr (std::is_same_v<L, BernoulliHalf>) {
          out = {{0.0}, {1.0}};
        } else if constexpr (std::is_same_v<L, PointMass>) {
          out = {law.at};
        } else {
          const std::size_t d = law.mean.size();
          if (d > 2)
            throw ConfigError("two-point route: Gaussian laws of dimension > 2 are not supported");
          const auto chol = cholesky(law.covariance, d);
          std::vector<double> z(per_axis);
          for (std::size_t i = 0; i < per_axis; ++i)
            z[i] = normal_quantile(probs[i]);
          std::vector<std::size_t> idx(d, 0);
          const std::size_t total = d == 1 ? per_axis : per_axis * per_axis;
          for (std::size_t flat = 0; flat < total; ++flat) {
            std::vector<double> zz(d);
            zz[0] = z[flat % per_axis];
            if (d == 2)
              zz[1] = z[flat / per_axis];
            std::vector<double> g(law.mean);
            for (std::size_t a = 0; a < d; ++a)
              for (std::size_t b = 0; b <= a; ++b)
                g[a] += chol[a * d + b] * zz[b];
            out.push_back(std::move(g));
          }
        }
        return out;
      },
      sc.law);
}

/// Two-point density of the scenario's initial data on (x, y; U, V) from
/// the parameter quadrature, binned into cells.
inline MultiPointDensity initial_two_point(const Scenario& sc, const Axis& x, const Axis& u)
{
  const std::size_t per_axis = sc.parameter_dim == 1 ? 8192 : 256;
  const auto nodes = parameter_nodes(sc, per_axis);
  const double w = 1.0 / static_cast<double>(nodes.size());
  const double dens = w / (u.spacing() * u.spacing());
  MultiPointDensity f(PhaseGrid({x, x}, {u, u}), 0.0);
  // Profile values per node and cell.
  std::vector<double> prof(nodes.size() * x.size());
  for (std::size_t q = 0; q < nodes.size(); ++q)
    for (std::size_t j = 0; j < x.size(); ++j)
      prof[q * x.size() + j] = sc.initial_data(nodes[q], x.center(j));
  auto bin = [&](double v) -> long {
    if (!u.contains(v))
      return -1;
    return static_cast<long>(std::min(static_cast<std::size_t>((v - u.lo()) / u.spacing()), u.size() - 1));
  };
  const std::size_t nu = u.size();
  for (std::size_t q = 0; q < nodes.size(); ++q)
    for (std::size_t j = 0; j < x.size(); ++j) {
      const long a = bin(prof[q * x.size() + j]);
      if (a < 0)
        continue;
      for (std::size_t l = 0; l < x.size(); ++l) {
        const long b = bin(prof[q * x.size() + l]);
        if (b < 0)
          continue;
        f.values[((j * x.size() + l) * nu + static_cast<std::size_t>(a)) * nu + static_cast<std::size_t>(b)] +=
            dens;
      }
    }
  return f;
}

inline RouteResult two_point_route(const Scenario& sc, const RunConfig& c)
{
  RouteResult r;
  r.name = "two-point";
  const auto& s = linear_speed(sc, r.name);
  const Axis x = sc.spatial_axis(c.dy);
  const Axis u = sc.state_axis(c.dv);
  const MultiPointDensity f0 = initial_two_point(sc, x, u);
  SplitOptions opt;
  opt.boundary = sc.boundary;
  opt.limiter = Limiter::none;
  const MultiPointDensity f = evolve_two_point(f0, s, s, c.t_final, c.dt, opt);
  const DensityField marginal = as_density(marginalize(f, {0}));
  const DensityField direct =
      evolve_pdf_linear(as_density(marginalize(f0, {0})), s, c.t_final, c.dt, sc.boundary, Limiter::none);
  density_properties(r, marginal);
  r.own_metrics.push_back({"two_point_marginal_l1", "two-point", "pdf-evolve(coarse)", l1_distance(marginal, direct)});
  r.moments = moments(clipped(marginal));
  r.pdf = clipped(marginal);
  return r;
}

template <class Fn>
RouteResult tagged(const std::string& route, Fn&& fn)
{
  try {
    return fn();
  } catch (const CflViolation& e) {
    throw CflViolation("route " + route + ": " + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError("route " + route + ": " + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError("route " + route + ": " + e.what());
  }
}

} // namespace detail

/// Run every requested route and compare all pairs that share a grid.
inline Report run_experiment(const RunConfig& cfg)
{
  validate(cfg);
  Report rep;
  rep.config_echo = echo_config(cfg);
  const Scenario sc = build_scenario(cfg.scenario);
  const Axis x = sc.spatial_axis(cfg.dx);
  const Axis u = sc.state_axis(cfg.du);

  std::vector<std::string> order = cfg.routes;
  std::sort(order.begin(), order.end());
  for (const auto& name : order) {
    RouteResult r = detail::tagged(name, [&]() -> RouteResult {
      if (name == "mc-kde")
        return detail::mc_route(name, sc, cfg, x, u);
      if (name == "mc-kde-paired") {
        const Scenario paired = build_scenario(cfg.paired_scenario);
        if (!(paired.spatial_axis(cfg.dx) == x) || !(paired.state_axis(cfg.du) == u))
          throw ConfigError("paired scenario has a different grid");
        return detail::mc_route(name, paired, cfg, x, u);
      }
      if (name == "pdf-evolve")
        return detail::pdf_evolve_route(sc, cfg, x, u);
      if (name == "cdf-exact" || name == "cdf-fv")
        return detail::cdf_route(name, sc, cfg, x, u);
      if (name == "pdf-nonlocal")
        return detail::nonlocal_route(sc, cfg, x, u);
      return detail::two_point_route(sc, cfg);
    });
    for (const auto& m : r.own_metrics)
      rep.metrics.push_back(m);
    rep.routes.emplace(name, std::move(r));
  }

  for (auto a = rep.routes.begin(); a != rep.routes.end(); ++a)
    for (auto b = std::next(a); b != rep.routes.end(); ++b) {
      const RouteResult& A = a->second;
      const RouteResult& B = b->second;
      if (A.name == "two-point" || B.name == "two-point")
        continue;
      if (A.cdf && B.cdf) {
        rep.metrics.push_back({"cdf_l1", A.name, B.name, l1_window(*A.cdf, *B.cdf, cfg.margin)});
        rep.metrics.push_back({"cdf_kolmogorov", A.name, B.name, kolmogorov_window(*A.cdf, *B.cdf, cfg.margin)});
      }
      if (A.pdf && B.pdf)
        rep.metrics.push_back({"pdf_l1", A.name, B.name, l1_window(*A.pdf, *B.pdf, cfg.margin)});
      rep.metrics.push_back({"mean_l1", A.name, B.name, l1_window(A.moments.mean, B.moments.mean, cfg.margin)});
      rep.metrics.push_back(
          {"var_l1", A.name, B.name, l1_window(A.moments.variance, B.moments.variance, cfg.margin)});
    }
  return rep;
}

inline std::string format_report(const Report& rep)
{
  std::ostringstream os;
  os << "# hyperstat report\n";
  os << "[config]\n" << rep.config_echo;
  os << "[provenance]\n";
  os << "library = hyperstat 0.1.0\n";
  os << "compiler = " << __VERSION__ << '\n';
  os << "[routes]\n";
  for (const auto& [name, r] : rep.routes) {
    os << name << ".within_validity = " << (r.within_validity ? "true" : "false") << '\n';
    for (const auto& [k, v] : r.properties)
      os << name << '.' << k << " = " << format_real(v) << '\n';
  }
  os << "[metrics]\n";
  os << "metric,route_a,route_b,value\n";
  for (const auto& m : rep.metrics)
    os << m.name << ',' << m.route_a << ',' << m.route_b << ',' << format_real(m.value) << '\n';
  return os.str();
}

/// Write report.txt, metrics.csv, moments.csv and (optionally) every route's
/// fields into the configured output directory.
inline void write_report(const Report& rep, const RunConfig& cfg)
{
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec)
    throw ConfigError("cannot create output directory '" + cfg.output_dir + "'");
  const fs::path dir(cfg.output_dir);
  auto open = [&](const std::string& file) {
    std::ofstream os(dir / file);
    if (!os)
      throw ConfigError("cannot write '" + (dir / file).string() + "'");
    return os;
  };
  {
    auto os = open("report.txt");
    os << format_report(rep);
  }
  {
    auto os = open("metrics.csv");
    os << "metric,route_a,route_b,value\n";
    for (const auto& m : rep.metrics)
      os << m.name << ',' << m.route_a << ',' << m.route_b << ',' << format_real(m.value) << '\n';
  }
  {
    auto os = open("moments.csv");
    std::vector<const RouteResult*> main;
    for (const auto& [name, r] : rep.routes)
      if (name != "two-point")
        main.push_back(&r);
    if (!main.empty()) {
      os << "x";
      for (const auto* r : main)
        os << ",mean_" << r->name << ",var_" << r->name;
      os << '\n';
      const Axis& ax = main.front()->moments.mean.axis;
      for (std::size_t j = 0; j < ax.size(); ++j) {
        os << format_real(ax.center(j));
        for (const auto* r : main)
          os << ',' << format_real(r->moments.mean.values[j]) << ',' << format_real(r->moments.variance.values[j]);
        os << '\n';
      }
    }
  }
  if (cfg.write_fields)
    for (const auto& [name, r] : rep.routes) {
      if (r.cdf) {
        auto os = open(name + ".cdf.txt");
        write_field(os, *r.cdf);
      }
      if (r.pdf) {
        auto os = open(name + ".pdf.txt");
        write_field(os, *r.pdf);
      }
    }
}

} // namespace hyperstat
