#include "hjnet/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "hjnet/csv.hpp"

namespace hjnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Heap = std::priority_queue<std::pair<double, int>,
                                 std::vector<std::pair<double, int>>,
                                 std::greater<>>;

std::shared_ptr<const SolverGrid> grid_with_points(
    std::shared_ptr<const MetricNetwork> net, double spacing,
    const std::vector<FieldSource>* boundary) {
  if (spacing <= 0.0) spacing = SolverGrid::default_spacing(*net);
  std::vector<NetPoint> required;
  if (boundary)
    for (const auto& s : *boundary) required.push_back(s.first);
  return std::make_shared<const SolverGrid>(std::move(net), spacing, required);
}

}  // namespace

double SpeedField::min_value(const MetricNetwork& net) const {
  if (per_edge.empty()) return constant;
  double m = kInf;
  for (int e = 0; e < net.edge_count(); ++e) m = std::min(m, on_edge(e));
  return m;
}

double SpeedField::max_value(const MetricNetwork& net) const {
  if (per_edge.empty()) return constant;
  double m = -kInf;
  for (int e = 0; e < net.edge_count(); ++e) m = std::max(m, on_edge(e));
  return m;
}

EikonalResult solve_eikonal(std::shared_ptr<const SolverGrid> grid,
                            const std::vector<FieldSource>& boundary,
                            const SpeedField& f) {
  if (boundary.empty()) throw std::invalid_argument("solve_eikonal: empty boundary");
  const SolverGrid& g = *grid;
  if (!f.per_edge.empty() &&
      static_cast<int>(f.per_edge.size()) != g.net().edge_count())
    throw std::invalid_argument("solve_eikonal: f size does not match edges");
  if (!(f.min_value(g.net()) > 0.0))
    throw std::invalid_argument("solve_eikonal: f must be positive");

  std::vector<double> u(g.node_count(), kInf);
  std::vector<int> origin(g.node_count(), -1);  // boundary index that set the label
  Heap heap;
  auto seed = [&](int node, double val, int src) {
    if (val < u[node]) {
      u[node] = val;
      origin[node] = src;
      heap.emplace(val, node);
    }
  };
  std::vector<int> bnode(boundary.size(), -1);
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    const auto& [q, gval] = boundary[i];
    if (!std::isfinite(gval))
      throw std::invalid_argument("solve_eikonal: non-finite boundary value");
    const int exact = g.exact_node(q);
    bnode[i] = exact;
    if (exact >= 0) {
      seed(exact, gval, static_cast<int>(i));
      continue;
    }
    const NetPoint p = g.net().canonical(q);
    const double fe = f.on_edge(p.edge);
    const auto& eoffs = g.edge_node_offsets(p.edge);
    auto it = std::upper_bound(eoffs.begin(), eoffs.end(), p.offset);
    const std::size_t hi = std::min<std::size_t>(it - eoffs.begin(), eoffs.size() - 1);
    const auto& ids = g.edge_node_ids(p.edge);
    seed(ids[hi - 1], gval + fe * (p.offset - eoffs[hi - 1]), static_cast<int>(i));
    seed(ids[hi], gval + fe * (eoffs[hi] - p.offset), static_cast<int>(i));
  }
  while (!heap.empty()) {
    auto [d, i] = heap.top();
    heap.pop();
    if (d != u[i]) continue;
    for (const auto& link : g.neighbors(i)) {
      const double nd = d + link.gap * f.on_edge(link.edge);
      if (nd < u[link.node]) {
        u[link.node] = nd;
        origin[link.node] = origin[i];
        heap.emplace(nd, link.node);
      }
    }
  }

  EikonalResult result{ScalarField(grid, u), {}};
  // Compatibility check: a boundary point undercut by another boundary
  // point's cone means the data violated |g_i - g_j| <= weighted distance.
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    const double got = bnode[i] >= 0 ? u[bnode[i]] : result.u(boundary[i].first);
    const double tol = 1e-9 * std::max(1.0, std::abs(boundary[i].second));
    if (got < boundary[i].second - tol) {
      const int dominating = bnode[i] >= 0 ? origin[bnode[i]] : -1;
      const NetPoint other = dominating >= 0 && dominating != static_cast<int>(i)
                                 ? boundary[dominating].first
                                 : boundary[i].first;
      result.incompatible.emplace_back(boundary[i].first, other);
    }
  }
  return result;
}

EikonalResult solve_eikonal(std::shared_ptr<const MetricNetwork> net,
                            const std::vector<FieldSource>& boundary,
                            const SpeedField& f, double spacing) {
  return solve_eikonal(grid_with_points(std::move(net), spacing, &boundary),
                       boundary, f);
}

DiscountedResult solve_discounted(std::shared_ptr<const SolverGrid> grid,
                                  const HamiltonianSpec& H,
                                  const std::vector<FieldSource>* boundary,
                                  double tol, int max_sweeps) {
  if (H.form != HamiltonianSpec::Form::Eikonal)
    throw std::invalid_argument("solve_discounted: generic Hamiltonians are check-only");
  const double lambda = H.lambda;
  if (!(lambda > 0.0))
    throw std::invalid_argument(
        "solve_discounted: lambda must be > 0 (no fixed point is selected otherwise)");
  if (!(tol > 0.0)) throw std::invalid_argument("solve_discounted: tol must be > 0");
  const SolverGrid& g = *grid;
  if (!(H.f.min_value(g.net()) > 0.0))
    throw std::invalid_argument("solve_discounted: f must be positive");

  const int N = g.node_count();
  // Node-local cap f(x)/lambda: at a vertex take the min over incident edges.
  std::vector<double> cap(N, kInf);
  for (int e = 0; e < g.net().edge_count(); ++e) {
    const double c = H.f.on_edge(e) / lambda;
    for (int id : g.edge_node_ids(e)) cap[id] = std::min(cap[id], c);
  }

  std::vector<char> clamped(N, 0);
  std::vector<double> u(N);
  const double top = H.f.max_value(g.net()) / lambda;
  for (int i = 0; i < N; ++i) u[i] = cap[i] == kInf ? top : std::min(top, cap[i]);
  if (boundary) {
    for (const auto& [q, gval] : *boundary) {
      const int node = g.exact_node(q);
      if (node < 0)
        throw std::invalid_argument(
            "solve_discounted: boundary point is not a grid node");
      u[node] = gval;
      clamped[node] = 1;
    }
  }

  DiscountedResult result{ScalarField(grid, u), 0, kInf, false, {}};
  auto update_node = [&](int i) {
    if (clamped[i]) return 0.0;
    double best = cap[i];
    for (const auto& link : g.neighbors(i)) {
      const double fe = H.f.on_edge(link.edge);
      const double w = std::exp(-lambda * link.gap);
      best = std::min(best, (1.0 - w) * fe / lambda + w * u[link.node]);
    }
    const double change = u[i] - best;
    if (best < u[i]) u[i] = best;
    return std::max(change, 0.0);
  };

  int sweeps = 0;
  double residual = kInf;
  while (sweeps < max_sweeps) {
    double change = 0.0;
    if (sweeps % 2 == 0) {
      for (int i = 0; i < N; ++i) change = std::max(change, update_node(i));
    } else {
      for (int i = N - 1; i >= 0; --i) change = std::max(change, update_node(i));
    }
    ++sweeps;
    residual = change;
    result.residual_history.push_back(change);
    if (change < tol) break;
  }
  result.u = ScalarField(grid, std::move(u));
  result.sweeps = sweeps;
  result.residual = residual;
  result.converged = residual < tol;
  return result;
}

DiscountedResult solve_discounted(std::shared_ptr<const MetricNetwork> net,
                                  const HamiltonianSpec& H,
                                  const std::vector<FieldSource>* boundary,
                                  double tol, int max_sweeps, double spacing) {
  return solve_discounted(grid_with_points(std::move(net), spacing, boundary), H,
                          boundary, tol, max_sweeps);
}

ScalarField hopf_lax_evolve(const ScalarField& u0, double t, double speed) {
  if (!(t >= 0.0)) throw std::invalid_argument("hopf_lax_evolve: t must be >= 0");
  if (!(speed >= 0.0)) throw std::invalid_argument("hopf_lax_evolve: speed must be >= 0");
  const double R = speed * t;
  const SolverGrid& g = u0.grid();
  const int N = g.node_count();
  if (R == 0.0) return u0;

  std::vector<double> out(N);
  // Per-node truncated sweep over the radius-R ball; dist reset via stamps.
  std::vector<double> dist(N, kInf);
  std::vector<int> stamp(N, -1);
  Heap heap;
  for (int x = 0; x < N; ++x) {
    double best = u0.at_node(x);
    dist[x] = 0.0;
    stamp[x] = x;
    heap = Heap();
    heap.emplace(0.0, x);
    while (!heap.empty()) {
      auto [d, i] = heap.top();
      heap.pop();
      if (stamp[i] != x || d != dist[i]) continue;
      best = std::min(best, u0.at_node(i));
      for (const auto& link : g.neighbors(i)) {
        const double nd = d + link.gap;
        const double cur = stamp[link.node] == x ? dist[link.node] : kInf;
        if (nd <= R) {
          if (nd < cur) {
            dist[link.node] = nd;
            stamp[link.node] = x;
            heap.emplace(nd, link.node);
          }
        } else if (d < R) {
          // Ball boundary cuts this link: the interpolant's minimum over the
          // reachable sub-segment sits at the cut point.
          const double frac = (R - d) / link.gap;
          const double uc = u0.at_node(i) + (u0.at_node(link.node) - u0.at_node(i)) * frac;
          best = std::min(best, uc);
        }
      }
    }
    out[x] = best;
  }
  return ScalarField(u0.grid_ptr(), std::move(out));
}

std::vector<Violation> viscosity_check(const ScalarField& u,
                                       const HamiltonianSpec& H, CheckMode mode,
                                       const std::vector<NetPoint>& anchors,
                                       const std::vector<double>& k_grid,
                                       double radius, double tol) {
  const SolverGrid& g = u.grid();
  const int N = g.node_count();
  if (!(radius > g.max_gap()))
    throw std::invalid_argument("viscosity_check: radius below grid resolution");
  for (double k : k_grid)
    if (k < 0.0) throw std::invalid_argument("viscosity_check: k must be >= 0");

  // Radius balls, computed once and reused for every anchor and k.
  std::vector<std::vector<int>> ball(N);
  {
    std::vector<double> dist(N, kInf);
    std::vector<int> stamp(N, -1);
    Heap heap;
    for (int x = 0; x < N; ++x) {
      dist[x] = 0.0;
      stamp[x] = x;
      heap = Heap();
      heap.emplace(0.0, x);
      while (!heap.empty()) {
        auto [d, i] = heap.top();
        heap.pop();
        if (stamp[i] != x || d != dist[i]) continue;
        ball[x].push_back(i);
        for (const auto& link : g.neighbors(i)) {
          const double nd = d + link.gap;
          if (nd > radius) continue;
          const double cur = stamp[link.node] == x ? dist[link.node] : kInf;
          if (nd < cur) {
            dist[link.node] = nd;
            stamp[link.node] = x;
            heap.emplace(nd, link.node);
          }
        }
      }
    }
  }

  std::vector<Violation> violations;
  const double sign = mode == CheckMode::Sub ? 1.0 : -1.0;
  for (const NetPoint& anchor_raw : anchors) {
    const NetPoint anchor = g.net().canonical(anchor_raw);
    // Exact d(anchor, node) for every node via one sweep on the grid.
    const ScalarField danchor = distance_field(u.grid_ptr(), {{anchor, 0.0}});
    for (double k : k_grid) {
      // phi = u - sign * (k/2) d^2; touches are local maxima of sign * phi.
      std::vector<double> phi(N);
      for (int i = 0; i < N; ++i) {
        const double d = danchor.at_node(i);
        phi[i] = sign * u.at_node(i) - 0.5 * k * d * d;
      }
      for (int i = 0; i < N; ++i) {
        bool touch = true;
        for (int j : ball[i]) {
          if (phi[j] > phi[i] || (phi[j] == phi[i] && j < i)) {
            touch = false;
            break;
          }
        }
        if (!touch) continue;
        const double d = danchor.at_node(i);
        const double h_value = H.eval(g.node_point(i), u.at_node(i), k * d);
        const bool bad = mode == CheckMode::Sub ? h_value > tol : h_value < -tol;
        if (bad)
          violations.push_back({anchor, k, g.node_point(i), h_value, mode, d});
      }
    }
  }
  return violations;
}

void write_violations_csv(std::ostream& os, const std::vector<Violation>& v) {
  os << "anchor,k,x,h_value,mode\n";
  for (const auto& viol : v) {
    os << viol.anchor.edge << ':' << fmt_double(viol.anchor.offset) << ','
       << fmt_double(viol.k) << ',' << viol.x.edge << ':'
       << fmt_double(viol.x.offset) << ',' << fmt_double(viol.h_value) << ','
       << (viol.mode == CheckMode::Sub ? "SUB" : "SUPER") << "\n";
  }
}

}  // namespace hjnet
