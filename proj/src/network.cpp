#include "hjnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hjnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double polyline_length(const std::vector<AmbientPoint>& pts) {
  double s = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) s += euclidean(pts[i - 1], pts[i]);
  return s;
}

// Min-heap of (distance, vertex); ties pop the smallest vertex id, which
// makes every sweep deterministic.
using Heap = std::priority_queue<std::pair<double, int>,
                                 std::vector<std::pair<double, int>>,
                                 std::greater<>>;

}  // namespace

MetricNetwork::MetricNetwork(std::vector<AmbientPoint> vertices,
                             std::vector<Edge> edges)
    : verts_(std::move(vertices)), edges_(std::move(edges)) {
  incident_.assign(verts_.size(), {});
  for (int e = 0; e < edge_count(); ++e) {
    const Edge& ed = edges_[e];
    if (ed.a < 0 || ed.a >= vertex_count() || ed.b < 0 || ed.b >= vertex_count()) {
      throw std::runtime_error("edges[" + std::to_string(e) +
                               "]: vertex id out of range");
    }
    incident_[ed.a].push_back(e);
    if (ed.b != ed.a) incident_[ed.b].push_back(e);
  }
  for (auto& inc : incident_) std::sort(inc.begin(), inc.end());

  geom_length_.assign(edges_.size(), 0.0);
  for (int e = 0; e < edge_count(); ++e) {
    if (!edges_[e].geometry.empty())
      geom_length_[e] = polyline_length(edges_[e].geometry);
  }

  cum_length_.assign(edges_.size() + 1, 0.0);
  min_edge_length_ = edges_.empty() ? 0.0 : kInf;
  for (int e = 0; e < edge_count(); ++e) {
    cum_length_[e + 1] = cum_length_[e] + edges_[e].length;
    min_edge_length_ = std::min(min_edge_length_, edges_[e].length);
  }
  total_length_ = cum_length_.back();

  validate();
}

void MetricNetwork::validate() const {
  if (verts_.empty()) throw std::runtime_error("network has no vertices");
  for (int v = 0; v < vertex_count(); ++v) {
    if (!std::isfinite(verts_[v].x) || !std::isfinite(verts_[v].y))
      throw std::runtime_error("vertices[" + std::to_string(v) +
                               "]: non-finite coordinate");
  }
  for (int e = 0; e < edge_count(); ++e) {
    const Edge& ed = edges_[e];
    if (!(ed.length > 0.0) || !std::isfinite(ed.length))
      throw std::runtime_error("edges[" + std::to_string(e) +
                               "]: length must be positive and finite");
    const double chord = euclidean(verts_[ed.a], verts_[ed.b]);
    const double tol = 1e-9 * std::max(1.0, ed.length);
    if (ed.length + tol < chord)
      throw std::runtime_error("edges[" + std::to_string(e) +
                               "]: length " + std::to_string(ed.length) +
                               " below ambient chord " + std::to_string(chord));
    if (!ed.geometry.empty()) {
      if (ed.geometry.size() < 2)
        throw std::runtime_error("edges[" + std::to_string(e) +
                                 "]: geometry needs at least two points");
      if (euclidean(ed.geometry.front(), verts_[ed.a]) > tol ||
          euclidean(ed.geometry.back(), verts_[ed.b]) > tol)
        throw std::runtime_error("edges[" + std::to_string(e) +
                                 "]: geometry endpoints do not match vertices");
      if (geom_length_[e] > ed.length * (1.0 + 1e-9))
        throw std::runtime_error("edges[" + std::to_string(e) +
                                 "]: polyline longer than stored length");
    }
  }
  // Connectivity: every vertex reachable from vertex 0.
  std::vector<char> seen(verts_.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int e : incident_[v]) {
      const int w = edges_[e].a == v ? edges_[e].b : edges_[e].a;
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  for (int v = 0; v < vertex_count(); ++v) {
    if (!seen[v])
      throw std::runtime_error("network disconnected: vertex " +
                               std::to_string(v) + " unreachable from vertex 0");
  }
}

NetPoint MetricNetwork::vertex_point(int v) const {
  if (v < 0 || v >= vertex_count())
    throw std::invalid_argument("vertex id out of range");
  if (incident_[v].empty())
    throw std::invalid_argument("isolated vertex has no edge representation");
  const int e = incident_[v][0];
  return {e, edges_[e].a == v ? 0.0 : edges_[e].length};
}

NetPoint MetricNetwork::canonical(NetPoint p) const {
  if (p.edge < 0 || p.edge >= edge_count())
    throw std::invalid_argument("invalid edge id " + std::to_string(p.edge));
  const Edge& ed = edges_[p.edge];
  const double tol = 1e-12 * std::max(1.0, ed.length);
  if (p.offset < -tol || p.offset > ed.length + tol)
    throw std::invalid_argument("offset " + std::to_string(p.offset) +
                                " outside [0, " + std::to_string(ed.length) +
                                "] on edge " + std::to_string(p.edge));
  if (p.offset <= tol) return vertex_point(ed.a);
  if (p.offset >= ed.length - tol) return vertex_point(ed.b);
  return p;
}

bool MetricNetwork::is_vertex(const NetPoint& p, int* v) const {
  const Edge& ed = edges_[p.edge];
  if (p.offset == 0.0) {
    if (v) *v = ed.a;
    return true;
  }
  if (p.offset == ed.length) {
    if (v) *v = ed.b;
    return true;
  }
  return false;
}

AmbientPoint MetricNetwork::position(const NetPoint& q) const {
  const NetPoint p = canonical(q);
  const Edge& ed = edges_[p.edge];
  if (ed.geometry.empty())
    return lerp(verts_[ed.a], verts_[ed.b], p.offset / ed.length);
  // Walk the polyline at the proportional arclength.
  const double target = (p.offset / ed.length) * geom_length_[p.edge];
  double acc = 0.0;
  for (std::size_t i = 1; i < ed.geometry.size(); ++i) {
    const double seg = euclidean(ed.geometry[i - 1], ed.geometry[i]);
    if (acc + seg >= target || i + 1 == ed.geometry.size()) {
      const double t = seg > 0.0 ? (target - acc) / seg : 0.0;
      return lerp(ed.geometry[i - 1], ed.geometry[i], std::clamp(t, 0.0, 1.0));
    }
    acc += seg;
  }
  return verts_[ed.b];
}

void MetricNetwork::seed_labels(const NetPoint& p,
                                std::vector<std::pair<double, int>>& seeds) const {
  int v = -1;
  if (is_vertex(p, &v)) {
    seeds.emplace_back(0.0, v);
    return;
  }
  const Edge& ed = edges_[p.edge];
  seeds.emplace_back(p.offset, ed.a);
  seeds.emplace_back(ed.length - p.offset, ed.b);
}

std::vector<double> MetricNetwork::vertex_distances(NetPoint src) const {
  src = canonical(src);
  std::vector<double> dist(verts_.size(), kInf);
  Heap heap;
  std::vector<std::pair<double, int>> seeds;
  seed_labels(src, seeds);
  for (auto [d, v] : seeds) {
    if (d < dist[v]) {
      dist[v] = d;
      heap.emplace(d, v);
    }
  }
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d != dist[v]) continue;
    for (int e : incident_[v]) {
      const Edge& ed = edges_[e];
      const double nd = d + ed.length;
      if (ed.a == v && nd < dist[ed.b]) {
        dist[ed.b] = nd;
        heap.emplace(nd, ed.b);
      }
      if (ed.b == v && nd < dist[ed.a]) {
        dist[ed.a] = nd;
        heap.emplace(nd, ed.a);
      }
    }
  }
  return dist;
}

double MetricNetwork::distance(NetPoint a, NetPoint b) const {
  a = canonical(a);
  b = canonical(b);
  // Fixed evaluation order makes the metric exactly symmetric.
  if (b.edge < a.edge || (b.edge == a.edge && b.offset < a.offset))
    std::swap(a, b);
  if (same_point(a, b)) return 0.0;

  double best = kInf;
  if (a.edge == b.edge) best = std::abs(b.offset - a.offset);

  int av = -1, bv = -1;
  const bool a_vert = is_vertex(a, &av);
  const bool b_vert = is_vertex(b, &bv);
  if (a_vert && b_vert && av == bv) return 0.0;

  std::vector<double> dist(verts_.size(), kInf);
  Heap heap;
  std::vector<std::pair<double, int>> seeds;
  seed_labels(a, seeds);
  for (auto [d, v] : seeds) {
    if (d < dist[v]) {
      dist[v] = d;
      heap.emplace(d, v);
    }
  }
  const Edge& be = edges_[b.edge];
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d >= best) break;  // no shorter route can appear
    if (d != dist[v]) continue;
    if (b_vert) {
      if (v == bv) return std::min(best, d);
    } else {
      if (v == be.a) best = std::min(best, d + b.offset);
      if (v == be.b) best = std::min(best, d + be.length - b.offset);
    }
    for (int e : incident_[v]) {
      const Edge& ed = edges_[e];
      const double nd = d + ed.length;
      if (ed.a == v && nd < dist[ed.b]) {
        dist[ed.b] = nd;
        heap.emplace(nd, ed.b);
      }
      if (ed.b == v && nd < dist[ed.a]) {
        dist[ed.a] = nd;
        heap.emplace(nd, ed.a);
      }
    }
  }
  if (best == kInf) throw std::runtime_error("corrupt network: query points disconnected");
  return best;
}

namespace {

// Nearest point on segment [A, B] to q in the given metric, as (t, dist).
std::pair<double, double> nearest_on_segment(const AmbientPoint& q,
                                             const AmbientPoint& A,
                                             const AmbientPoint& B,
                                             AmbientMetric metric) {
  const double dx = B.x - A.x, dy = B.y - A.y;
  const double len2 = dx * dx + dy * dy;
  if (metric == AmbientMetric::Euclidean) {
    double t = len2 > 0.0 ? ((q.x - A.x) * dx + (q.y - A.y) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return {t, euclidean(q, lerp(A, B, t))};
  }
  // Manhattan distance along a segment is piecewise linear in t; the minimum
  // sits at an endpoint or where one coordinate difference vanishes.
  double cand[4] = {0.0, 1.0, 0.0, 0.0};
  int nc = 2;
  if (dx != 0.0) cand[nc++] = (q.x - A.x) / dx;
  if (dy != 0.0) cand[nc++] = (q.y - A.y) / dy;
  double bt = 0.0, bd = kInf;
  for (int i = 0; i < nc; ++i) {
    const double t = std::clamp(cand[i], 0.0, 1.0);
    const double d = manhattan(q, lerp(A, B, t));
    if (d < bd || (d == bd && t < bt)) {
      bd = d;
      bt = t;
    }
  }
  return {bt, bd};
}

}  // namespace

NetPoint MetricNetwork::locate(const AmbientPoint& q, AmbientMetric metric) const {
  double best = kInf;
  NetPoint where{0, 0.0};
  for (int e = 0; e < edge_count(); ++e) {
    const Edge& ed = edges_[e];
    if (ed.geometry.empty()) {
      auto [t, d] = nearest_on_segment(q, verts_[ed.a], verts_[ed.b], metric);
      if (d < best) {
        best = d;
        where = {e, t * ed.length};
      }
    } else {
      double acc = 0.0;
      for (std::size_t i = 1; i < ed.geometry.size(); ++i) {
        const double seg = euclidean(ed.geometry[i - 1], ed.geometry[i]);
        auto [t, d] = nearest_on_segment(q, ed.geometry[i - 1], ed.geometry[i], metric);
        if (d < best) {
          best = d;
          const double frac = geom_length_[e] > 0.0 ? (acc + t * seg) / geom_length_[e] : 0.0;
          where = {e, frac * ed.length};
        }
        acc += seg;
      }
    }
  }
  return canonical(where);
}

NetPoint MetricNetwork::random_point(Rng& rng) const {
  if (edges_.empty()) throw std::runtime_error("network has no edges");
  const double s = rng.uniform(0.0, total_length_);
  auto it = std::upper_bound(cum_length_.begin(), cum_length_.end(), s);
  int e = static_cast<int>(it - cum_length_.begin()) - 1;
  e = std::clamp(e, 0, edge_count() - 1);
  return canonical({e, std::min(s - cum_length_[e], edges_[e].length)});
}

// --- JSON I/O ---------------------------------------------------------------

namespace {

MetricNetwork parse_network(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw std::runtime_error("network JSON needs \"vertices\" and \"edges\"");
  std::vector<AmbientPoint> verts;
  for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
    const auto& v = j["vertices"][i];
    if (!v.is_array() || v.size() != 2)
      throw std::runtime_error("vertices[" + std::to_string(i) +
                               "]: expected [x, y]");
    verts.push_back({v[0].get<double>(), v[1].get<double>()});
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < j["edges"].size(); ++i) {
    const auto& e = j["edges"][i];
    if (!e.is_array() || e.size() != 3)
      throw std::runtime_error("edges[" + std::to_string(i) +
                               "]: expected [i, j, length]");
    Edge ed;
    ed.a = e[0].get<int>();
    ed.b = e[1].get<int>();
    ed.length = e[2].get<double>();
    edges.push_back(std::move(ed));
  }
  if (j.contains("geometry") && !j["geometry"].is_null()) {
    const auto& g = j["geometry"];
    if (!g.is_array() || g.size() != edges.size())
      throw std::runtime_error("\"geometry\" must align with \"edges\"");
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i].is_null()) continue;
      for (const auto& p : g[i])
        edges[i].geometry.push_back({p[0].get<double>(), p[1].get<double>()});
    }
  }
  return MetricNetwork(std::move(verts), std::move(edges));
}

}  // namespace

MetricNetwork network_from_json_text(const std::string& text) {
  return parse_network(nlohmann::json::parse(text));
}

MetricNetwork load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;  // parse errors carry byte/line positions
  return parse_network(j);
}

std::string network_to_json_text(const MetricNetwork& net) {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (int v = 0; v < net.vertex_count(); ++v)
    j["vertices"].push_back({net.vertex(v).x, net.vertex(v).y});
  j["edges"] = nlohmann::json::array();
  bool any_geom = false;
  for (int e = 0; e < net.edge_count(); ++e) {
    const Edge& ed = net.edge(e);
    j["edges"].push_back({ed.a, ed.b, ed.length});
    any_geom = any_geom || !ed.geometry.empty();
  }
  if (any_geom) {
    j["geometry"] = nlohmann::json::array();
    for (int e = 0; e < net.edge_count(); ++e) {
      const Edge& ed = net.edge(e);
      if (ed.geometry.empty()) {
        j["geometry"].push_back(nullptr);
      } else {
        nlohmann::json poly = nlohmann::json::array();
        for (const auto& p : ed.geometry) poly.push_back({p.x, p.y});
        j["geometry"].push_back(std::move(poly));
      }
    }
  }
  return j.dump();
}

void save_network(const MetricNetwork& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << network_to_json_text(net) << "\n";
}

MetricNetwork split_edge(const MetricNetwork& net, int e, double offset) {
  if (e < 0 || e >= net.edge_count()) throw std::invalid_argument("bad edge id");
  const Edge& ed = net.edge(e);
  if (!(offset > 0.0) || !(offset < ed.length))
    throw std::invalid_argument("split offset must be interior");
  std::vector<AmbientPoint> verts;
  verts.reserve(net.vertex_count() + 1);
  for (int v = 0; v < net.vertex_count(); ++v) verts.push_back(net.vertex(v));
  const int mid = static_cast<int>(verts.size());
  verts.push_back(net.position({e, offset}));
  std::vector<Edge> edges;
  edges.reserve(net.edge_count() + 1);
  for (int i = 0; i < net.edge_count(); ++i) {
    if (i == e) {
      edges.push_back({ed.a, mid, offset, {}});
      edges.push_back({mid, ed.b, ed.length - offset, {}});
    } else {
      edges.push_back(net.edge(i));
    }
  }
  return MetricNetwork(std::move(verts), std::move(edges));
}

}  // namespace hjnet
