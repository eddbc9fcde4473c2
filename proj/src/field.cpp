#include "hjnet/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "hjnet/csv.hpp"

namespace hjnet {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

SolverGrid::SolverGrid(std::shared_ptr<const MetricNetwork> net, double spacing,
                       const std::vector<NetPoint>& required)
    : net_(std::move(net)), spacing_(spacing) {
  if (!(spacing_ > 0.0)) throw std::invalid_argument("grid spacing must be > 0");
  const int V = net_->vertex_count();
  const int E = net_->edge_count();

  std::vector<std::vector<double>> extra(E);
  for (const NetPoint& q : required) {
    const NetPoint p = net_->canonical(q);
    if (!net_->is_vertex(p)) extra[p.edge].push_back(p.offset);
  }

  points_.reserve(V);
  for (int v = 0; v < V; ++v) {
    points_.push_back(net_->vertex_point(v));
    pos_.push_back(net_->vertex(v));
  }

  edge_nodes_.assign(E, {});
  edge_offsets_.assign(E, {});
  for (int e = 0; e < E; ++e) {
    const Edge& ed = net_->edge(e);
    const double L = ed.length;
    const int k = std::max(1, static_cast<int>(std::ceil(L / spacing_)));
    std::vector<double> offs;
    for (int j = 1; j < k; ++j) offs.push_back(L * j / k);
    offs.insert(offs.end(), extra[e].begin(), extra[e].end());
    std::sort(offs.begin(), offs.end());
    const double tol = 1e-12 * std::max(1.0, L);
    std::vector<double> dedup;
    for (double o : offs) {
      if (o <= tol || o >= L - tol) continue;
      if (!dedup.empty() && o - dedup.back() <= tol) continue;
      dedup.push_back(o);
    }
    auto& ids = edge_nodes_[e];
    auto& eoffs = edge_offsets_[e];
    ids.push_back(ed.a);
    eoffs.push_back(0.0);
    for (double o : dedup) {
      ids.push_back(static_cast<int>(points_.size()));
      eoffs.push_back(o);
      points_.push_back({e, o});
      pos_.push_back(net_->position({e, o}));
    }
    ids.push_back(ed.b);
    eoffs.push_back(L);
  }

  nbr_.assign(points_.size(), {});
  for (int e = 0; e < E; ++e) {
    const auto& ids = edge_nodes_[e];
    const auto& offs = edge_offsets_[e];
    for (std::size_t i = 1; i < ids.size(); ++i) {
      const double gap = offs[i] - offs[i - 1];
      max_gap_ = std::max(max_gap_, gap);
      nbr_[ids[i - 1]].push_back({ids[i], gap, e});
      nbr_[ids[i]].push_back({ids[i - 1], gap, e});
    }
  }
}

int SolverGrid::exact_node(const NetPoint& q) const {
  const NetPoint p = net_->canonical(q);
  int v = -1;
  if (net_->is_vertex(p, &v)) return v;
  const auto& offs = edge_offsets_[p.edge];
  const double tol = 1e-12 * std::max(1.0, net_->edge(p.edge).length);
  auto it = std::lower_bound(offs.begin(), offs.end(), p.offset - tol);
  if (it != offs.end() && std::abs(*it - p.offset) <= tol)
    return edge_nodes_[p.edge][it - offs.begin()];
  return -1;
}

SolverGrid::Bracket SolverGrid::bracket(const NetPoint& q) const {
  const NetPoint p = net_->canonical(q);
  int v = -1;
  if (net_->is_vertex(p, &v)) return {v, v, 0.0};
  const auto& offs = edge_offsets_[p.edge];
  const auto& ids = edge_nodes_[p.edge];
  auto it = std::upper_bound(offs.begin(), offs.end(), p.offset);
  std::size_t hi = std::min<std::size_t>(it - offs.begin(), offs.size() - 1);
  const std::size_t lo = hi - 1;
  const double gap = offs[hi] - offs[lo];
  return {ids[lo], ids[hi], gap > 0.0 ? (p.offset - offs[lo]) / gap : 0.0};
}

ScalarField::ScalarField(std::shared_ptr<const SolverGrid> grid,
                         std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid_->node_count())
    throw std::invalid_argument("field size does not match grid");
}

double ScalarField::operator()(const NetPoint& p) const {
  const auto b = grid_->bracket(p);
  return values_[b.lo] + (values_[b.hi] - values_[b.lo]) * b.t;
}

double ScalarField::min_value() const {
  return *std::min_element(values_.begin(), values_.end());
}

double ScalarField::max_value() const {
  return *std::max_element(values_.begin(), values_.end());
}

ScalarField distance_field(std::shared_ptr<const SolverGrid> grid,
                           const std::vector<FieldSource>& sources) {
  if (sources.empty()) throw std::invalid_argument("distance_field: empty source list");
  const SolverGrid& g = *grid;
  std::vector<double> dist(g.node_count(), kInf);
  std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>,
                      std::greater<>>
      heap;
  auto seed = [&](int node, double d) {
    if (d < dist[node]) {
      dist[node] = d;
      heap.emplace(d, node);
    }
  };
  for (const auto& [q, gval] : sources) {
    if (!std::isfinite(gval)) throw std::invalid_argument("non-finite boundary value");
    const int exact = g.exact_node(q);
    if (exact >= 0) {
      seed(exact, gval);
      continue;
    }
    // Off-node source: seed its bracketing chain nodes with the exact gap
    // distances, which keeps the sweep exact at every node.
    const NetPoint p = g.net().canonical(q);
    const auto& eoffs = g.edge_node_offsets(p.edge);
    auto it = std::upper_bound(eoffs.begin(), eoffs.end(), p.offset);
    const std::size_t hi = std::min<std::size_t>(it - eoffs.begin(), eoffs.size() - 1);
    const auto& ids = g.edge_node_ids(p.edge);
    seed(ids[hi - 1], gval + (p.offset - eoffs[hi - 1]));
    seed(ids[hi], gval + (eoffs[hi] - p.offset));
  }
  while (!heap.empty()) {
    auto [d, i] = heap.top();
    heap.pop();
    if (d != dist[i]) continue;
    for (const auto& link : g.neighbors(i)) {
      const double nd = d + link.gap;
      if (nd < dist[link.node]) {
        dist[link.node] = nd;
        heap.emplace(nd, link.node);
      }
    }
  }
  return ScalarField(std::move(grid), std::move(dist));
}

ScalarField distance_field(std::shared_ptr<const MetricNetwork> net,
                           const std::vector<FieldSource>& sources,
                           double spacing) {
  if (sources.empty()) throw std::invalid_argument("distance_field: empty source list");
  if (spacing <= 0.0) spacing = SolverGrid::default_spacing(*net);
  std::vector<NetPoint> required;
  for (const auto& s : sources) required.push_back(s.first);
  auto grid = std::make_shared<const SolverGrid>(net, spacing, required);
  return distance_field(std::move(grid), sources);
}

double local_slope(const ScalarField& u, NetPoint p, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("local_slope: h must be > 0");
  const MetricNetwork& net = u.grid().net();
  p = net.canonical(p);
  const double up = u(p);
  double best = 0.0;
  int steps = 0;
  auto probe = [&](const NetPoint& q) {
    best = std::max(best, std::abs(u(q) - up) / h);
    ++steps;
  };
  int v = -1;
  if (net.is_vertex(p, &v)) {
    for (int e : net.incident_edges(v)) {
      const Edge& ed = net.edge(e);
      if (h > ed.length)
        throw std::invalid_argument("local_slope: h exceeds incident edge length");
      if (ed.a == v) probe({e, h});
      if (ed.b == v) probe({e, ed.length - h});
    }
  } else {
    const Edge& ed = net.edge(p.edge);
    if (h > p.offset || h > ed.length - p.offset)
      throw std::invalid_argument("local_slope: h exceeds edge remainder around p");
    probe({p.edge, p.offset - h});
    probe({p.edge, p.offset + h});
  }
  if (steps == 0) throw std::runtime_error("local_slope: no directions out of p");
  return best;
}

void write_field_csv(std::ostream& os, const ScalarField& u) {
  os << "node,edge,offset,x,y,value\n";
  const SolverGrid& g = u.grid();
  for (int i = 0; i < g.node_count(); ++i) {
    const NetPoint& p = g.node_point(i);
    const AmbientPoint& a = g.node_pos(i);
    os << i << ',' << p.edge << ',' << fmt_double(p.offset) << ','
       << fmt_double(a.x) << ',' << fmt_double(a.y) << ','
       << fmt_double(u.at_node(i)) << "\n";
  }
}

ScalarField read_field_csv(std::istream& is,
                           std::shared_ptr<const MetricNetwork> net) {
  std::string line;
  std::vector<NetPoint> pts;
  std::vector<double> vals;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("node,", 0) == 0) continue;
    std::istringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 6) throw std::runtime_error("field CSV: bad row: " + line);
    pts.push_back({std::stoi(cells[1]), std::stod(cells[2])});
    vals.push_back(std::stod(cells[5]));
  }
  if (pts.empty()) throw std::runtime_error("field CSV: no rows");
  // Rebuild the grid from the stored node set: interior nodes become
  // required points at a spacing no uniform refinement can beat.
  auto grid = std::make_shared<const SolverGrid>(
      net, std::numeric_limits<double>::max() / 4.0, pts);
  if (grid->node_count() != static_cast<int>(pts.size()))
    throw std::runtime_error("field CSV: node set does not match network");
  std::vector<double> values(grid->node_count(), 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const int id = grid->exact_node(pts[i]);
    if (id < 0) throw std::runtime_error("field CSV: node not on grid");
    values[id] = vals[i];
  }
  return ScalarField(std::move(grid), std::move(values));
}

}  // namespace hjnet
