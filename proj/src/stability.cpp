#include "hjnet/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hjnet/csv.hpp"

namespace hjnet {

namespace {

std::vector<double> semilimit_impl(const std::vector<SemilimitLevel>& levels,
                                   const SampleCloud& limit, AmbientMetric metric,
                                   int window, bool upper) {
  if (levels.empty()) throw std::invalid_argument("semilimit: no levels");
  if (window < 1) throw std::invalid_argument("semilimit: window must be >= 1");
  for (const auto& lv : levels) {
    if (!lv.field) throw std::invalid_argument("semilimit: missing field");
    if (lv.radius < 2.0 * lv.hausdorff)
      throw std::invalid_argument(
          "semilimit: radius schedule violates the capture condition "
          "(need r_n >= 2 * hausdorff gap at level " +
          std::to_string(lv.n) + ")");
  }
  const std::size_t first =
      levels.size() > static_cast<std::size_t>(window) ? levels.size() - window : 0;

  std::vector<double> out(limit.size(),
                          upper ? -std::numeric_limits<double>::infinity()
                                : std::numeric_limits<double>::infinity());
  for (std::size_t li = first; li < levels.size(); ++li) {
    const SemilimitLevel& lv = levels[li];
    const SolverGrid& g = lv.field->grid();
    std::vector<AmbientPoint> node_pos(g.node_count());
    for (int i = 0; i < g.node_count(); ++i) node_pos[i] = g.node_pos(i);
    PointIndex index(node_pos);
    for (std::size_t s = 0; s < limit.size(); ++s) {
      const auto ids = index.within(limit.positions[s], lv.radius, metric);
      if (ids.empty())
        throw std::runtime_error(
            "semilimit: no level-" + std::to_string(lv.n) +
            " node inside the capture radius of a limit sample");
      double ext = upper ? -std::numeric_limits<double>::infinity()
                         : std::numeric_limits<double>::infinity();
      for (int id : ids) {
        const double v = lv.field->at_node(id);
        ext = upper ? std::max(ext, v) : std::min(ext, v);
      }
      out[s] = upper ? std::max(out[s], ext) : std::min(out[s], ext);
    }
  }
  return out;
}

double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

double broadcast(const std::vector<double>& v, std::size_t i, const char* what) {
  if (v.empty()) throw std::invalid_argument(std::string(what) + ": empty");
  if (v.size() == 1) return v[0];
  if (i < v.size()) return v[i];
  throw std::invalid_argument(std::string(what) + ": per-level list too short");
}

}  // namespace

double Correspondence::max_gap() const {
  double m = 0.0;
  for (double g : gap) m = std::max(m, g);
  return m;
}

Correspondence correspondence(const SampleCloud& limit, const SampleCloud& approx,
                              AmbientMetric metric) {
  if (limit.size() == 0 || approx.size() == 0)
    throw std::invalid_argument("correspondence: empty cloud");
  PointIndex index(approx.positions);
  Correspondence c;
  c.match.resize(limit.size());
  c.gap.resize(limit.size());
  for (std::size_t i = 0; i < limit.size(); ++i) {
    double d = 0.0;
    c.match[i] = index.nearest(limit.positions[i], metric, &d);
    c.gap[i] = d;
  }
  return c;
}

std::vector<double> upper_semilimit(const std::vector<SemilimitLevel>& levels,
                                    const SampleCloud& limit, AmbientMetric metric,
                                    int window) {
  return semilimit_impl(levels, limit, metric, window, true);
}

std::vector<double> lower_semilimit(const std::vector<SemilimitLevel>& levels,
                                    const SampleCloud& limit, AmbientMetric metric,
                                    int window) {
  return semilimit_impl(levels, limit, metric, window, false);
}

void ConvergenceReport::write_csv(std::ostream& os) const {
  os << "n,hausdorff,h2_gap,sup_error,upper_semilimit_gap,lower_semilimit_gap\n";
  for (const auto& r : rows) {
    os << r.n << ',' << fmt_double(r.hausdorff) << ',' << fmt_double(r.h2_gap)
       << ',' << fmt_double(r.sup_error) << ',' << fmt_double(r.upper_gap) << ','
       << fmt_double(r.lower_gap) << "\n";
  }
}

void ConvergenceReport::write_plot_data(std::ostream& os) const {
  for (const auto& r : rows) {
    os << fmt_double(std::log2(static_cast<double>(r.n))) << ' '
       << fmt_double(std::log2(std::max(r.sup_error, 1e-30))) << "\n";
  }
}

ConvergenceReport stability_experiment(const StabilityConfig& config) {
  const SpaceSequence& seq = config.seq;
  if (seq.levels.empty()) throw std::invalid_argument("stability: no levels");
  for (std::size_t i = 1; i < seq.levels.size(); ++i) {
    if (seq.levels[i].n <= seq.levels[i - 1].n)
      throw std::invalid_argument("stability: levels must strictly increase");
  }
  if (!(config.density > 0.0)) throw std::invalid_argument("stability: density must be > 0");
  if (config.boundary.empty()) throw std::invalid_argument("stability: empty boundary");

  const std::size_t L = seq.levels.size();
  const SampleCloud limit_cloud = seq.limit.sample(config.density);

  // Limit solution at the limit samples.
  const std::size_t limit_param = L;  // index into the per-level parameter lists
  const double f_lim = broadcast(config.f_per_level, limit_param, "f_per_level");
  const double lam_lim = broadcast(config.lambda_per_level, limit_param, "lambda_per_level");
  std::vector<double> limit_values(limit_cloud.size());
  std::optional<ScalarField> limit_field;
  if (seq.limit.kind == Space::Kind::Network) {
    std::vector<FieldSource> bnd;
    for (const auto& [pos, g] : config.boundary)
      bnd.emplace_back(seq.limit.net->locate(pos, seq.ambient), g);
    auto net = seq.limit.net;
    const double spacing =
        config.h_solver > 0.0 ? config.h_solver : SolverGrid::default_spacing(*net);
    if (config.solver == SolverKind::Eikonal) {
      limit_field = solve_eikonal(net, bnd, SpeedField{f_lim}, spacing).u;
    } else {
      limit_field = solve_discounted(net, HamiltonianSpec::eikonal(lam_lim, SpeedField{f_lim}),
                                     &bnd, config.discounted_tol,
                                     config.discounted_max_sweeps, spacing)
                        .u;
    }
    for (std::size_t s = 0; s < limit_cloud.size(); ++s)
      limit_values[s] = (*limit_field)(limit_cloud.net_points[s]);
  } else {
    // Manhattan plane: closed forms along geodesics.
    for (std::size_t s = 0; s < limit_cloud.size(); ++s) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& [pos, g] : config.boundary) {
        const double d = manhattan(pos, limit_cloud.positions[s]);
        if (config.solver == SolverKind::Eikonal) {
          best = std::min(best, g + f_lim * d);
        } else {
          const double w = std::exp(-lam_lim * d);
          best = std::min(f_lim / lam_lim,
                          std::min(best, (1.0 - w) * f_lim / lam_lim + w * g));
        }
      }
      limit_values[s] = best;
    }
  }

  // Per-level solves and matched errors.
  std::vector<ScalarField> fields;
  std::vector<double> hausdorffs(L), errors(L);
  std::vector<Correspondence> matches(L);
  std::vector<SampleCloud> clouds;
  fields.reserve(L);
  clouds.reserve(L);
  for (std::size_t li = 0; li < L; ++li) {
    const auto& level = seq.levels[li];
    if (level.space.kind != Space::Kind::Network)
      throw std::invalid_argument("stability: approximating levels must be networks");
    auto net = level.space.net;
    std::vector<FieldSource> bnd;
    for (const auto& [pos, g] : config.boundary)
      bnd.emplace_back(net->locate(pos, seq.ambient), g);
    const double spacing =
        config.h_solver > 0.0 ? config.h_solver : SolverGrid::default_spacing(*net);
    const double f_n = broadcast(config.f_per_level, li, "f_per_level");
    const double lam_n = broadcast(config.lambda_per_level, li, "lambda_per_level");
    if (config.solver == SolverKind::Eikonal) {
      fields.push_back(solve_eikonal(net, bnd, SpeedField{f_n}, spacing).u);
    } else {
      auto res = solve_discounted(net, HamiltonianSpec::eikonal(lam_n, SpeedField{f_n}),
                                  &bnd, config.discounted_tol,
                                  config.discounted_max_sweeps, spacing);
      if (!res.converged)
        throw std::runtime_error("stability: discounted solve at level " +
                                 std::to_string(level.n) +
                                 " stopped at residual " + fmt_double(res.residual));
      fields.push_back(res.u);
    }
    clouds.push_back(level.space.sample(config.density));
    hausdorffs[li] = hausdorff_distance(limit_cloud, clouds[li], seq.ambient);
    matches[li] = correspondence(limit_cloud, clouds[li], seq.ambient);
    double sup = 0.0;
    for (std::size_t s = 0; s < limit_cloud.size(); ++s) {
      const NetPoint& mp = clouds[li].net_points[matches[li].match[s]];
      sup = std::max(sup, std::abs(fields[li](mp) - limit_values[s]));
    }
    errors[li] = sup;
  }

  // Radius schedule (capture condition holds by construction for the default).
  std::vector<double> radii(L);
  for (std::size_t li = 0; li < L; ++li) {
    radii[li] = config.radii.empty() ? 2.0 * hausdorffs[li] + config.density
                                     : config.radii[li];
  }

  const H2Report h2 =
      check_h2(seq, config.h2_pairs, config.seed, config.tol, config.density);

  ConvergenceReport report;
  report.abscissa = config.abscissa;
  report.tol = config.tol;
  for (std::size_t li = 0; li < L; ++li) {
    std::vector<SemilimitLevel> tail;
    for (std::size_t k = 0; k <= li; ++k)
      tail.push_back({seq.levels[k].n, &fields[k], radii[k], hausdorffs[k]});
    const auto up = upper_semilimit(tail, limit_cloud, seq.ambient, config.semilimit_window);
    const auto lo = lower_semilimit(tail, limit_cloud, seq.ambient, config.semilimit_window);
    StabilityLevelRow row;
    row.n = seq.levels[li].n;
    row.hausdorff = hausdorffs[li];
    row.h2_gap = h2.rows[li].max_gap;
    row.sup_error = errors[li];
    for (std::size_t s = 0; s < limit_cloud.size(); ++s) {
      if (lo[s] > up[s])
        throw std::runtime_error("stability: lower semilimit exceeded upper semilimit");
      row.upper_gap = std::max(row.upper_gap, std::abs(up[s] - limit_values[s]));
      row.lower_gap = std::max(row.lower_gap, std::abs(lo[s] - limit_values[s]));
    }
    report.rows.push_back(row);
  }

  if (L >= 2) {
    double cauchy = 0.0;
    for (std::size_t s = 0; s < limit_cloud.size(); ++s) {
      const NetPoint& pa = clouds[L - 2].net_points[matches[L - 2].match[s]];
      const NetPoint& pb = clouds[L - 1].net_points[matches[L - 1].match[s]];
      cauchy = std::max(cauchy, std::abs(fields[L - 2](pa) - fields[L - 1](pb)));
    }
    report.proxy_self_error = cauchy;
  }

  std::vector<double> xs, ys;
  for (std::size_t li = 0; li < L; ++li) {
    xs.push_back(config.abscissa == RateAbscissa::Level
                     ? static_cast<double>(seq.levels[li].n)
                     : std::log2(static_cast<double>(seq.levels[li].n)));
    ys.push_back(std::log2(std::max(errors[li], 1e-30)));
  }
  report.rate = regression_slope(xs, ys);
  report.h2_pass = h2.pass;
  report.pass = h2.pass && (config.tol <= 0.0 || errors.back() <= config.tol);
  return report;
}

}  // namespace hjnet
