#include "hjnet/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace hjnet {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxDepth = 12;

void check_depth(int n) {
  if (n < 0) throw std::invalid_argument("prefractal depth must be >= 0");
  if (n > kMaxDepth)
    throw std::invalid_argument("prefractal depth " + std::to_string(n) +
                                " beyond supported maximum " +
                                std::to_string(kMaxDepth));
}

// Merges coincident points at the given tolerance via a uniform hash grid.
class PointWelder {
 public:
  explicit PointWelder(double tol) : tol_(std::max(tol, 1e-300)) {}

  int insert(const AmbientPoint& p) {
    const long cx = static_cast<long>(std::floor(p.x / tol_));
    const long cy = static_cast<long>(std::floor(p.y / tol_));
    for (long dx = -1; dx <= 1; ++dx) {
      for (long dy = -1; dy <= 1; ++dy) {
        auto it = cells_.find(key(cx + dx, cy + dy));
        if (it == cells_.end()) continue;
        for (int id : it->second) {
          if (euclidean(points_[id], p) <= tol_) return id;
        }
      }
    }
    const int id = static_cast<int>(points_.size());
    points_.push_back(p);
    cells_[key(cx, cy)].push_back(id);
    return id;
  }

  std::vector<AmbientPoint> take() { return std::move(points_); }
  const std::vector<AmbientPoint>& points() const { return points_; }

 private:
  static std::uint64_t key(long cx, long cy) {
    return static_cast<std::uint64_t>(cx) * 0x9E3779B97F4A7C15ull ^
           static_cast<std::uint64_t>(cy);
  }
  double tol_;
  std::vector<AmbientPoint> points_;
  std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

double bbox_diameter(const MetricNetwork& net) {
  double x0 = net.vertex(0).x, x1 = x0, y0 = net.vertex(0).y, y1 = y0;
  for (int v = 1; v < net.vertex_count(); ++v) {
    x0 = std::min(x0, net.vertex(v).x);
    x1 = std::max(x1, net.vertex(v).x);
    y0 = std::min(y0, net.vertex(v).y);
    y1 = std::max(y1, net.vertex(v).y);
  }
  return euclidean({x0, y0}, {x1, y1});
}

}  // namespace

double AffineMap::similarity_ratio() const {
  const double c0 = std::sqrt(m[0][0] * m[0][0] + m[1][0] * m[1][0]);
  const double c1 = std::sqrt(m[0][1] * m[0][1] + m[1][1] * m[1][1]);
  const double dot = m[0][0] * m[0][1] + m[1][0] * m[1][1];
  const double tol = 1e-9 * std::max(c0, 1e-30);
  if (std::abs(c0 - c1) > tol || std::abs(dot) > tol * std::max(c0, c1))
    throw std::invalid_argument("affine map is not a similarity");
  return c0;
}

MetricNetwork ifs_prefractal(const IfsSystem& ifs, const MetricNetwork& seed, int n) {
  if (n < 0) throw std::invalid_argument("ifs_prefractal: n must be >= 0");
  if (ifs.maps.empty()) throw std::invalid_argument("ifs_prefractal: empty map list");
  std::vector<double> ratio;
  for (const AffineMap& f : ifs.maps) {
    const double r = f.similarity_ratio();
    if (!(r < 1.0))
      throw std::invalid_argument("ifs_prefractal: map is not a contraction");
    ratio.push_back(r);
  }
  const double weld_tol = 1e-9 * std::max(bbox_diameter(seed), 1e-9);

  std::vector<AmbientPoint> verts;
  std::vector<Edge> edges;
  for (int v = 0; v < seed.vertex_count(); ++v) verts.push_back(seed.vertex(v));
  for (int e = 0; e < seed.edge_count(); ++e) edges.push_back(seed.edge(e));

  for (int iter = 0; iter < n; ++iter) {
    PointWelder welder(weld_tol);
    std::vector<Edge> next;
    std::map<std::pair<int, int>, std::vector<double>> seen;
    for (std::size_t k = 0; k < ifs.maps.size(); ++k) {
      const AffineMap& f = ifs.maps[k];
      std::vector<int> vmap(verts.size());
      for (std::size_t v = 0; v < verts.size(); ++v)
        vmap[v] = welder.insert(f.apply(verts[v]));
      for (const Edge& ed : edges) {
        Edge ne;
        ne.a = vmap[ed.a];
        ne.b = vmap[ed.b];
        ne.length = ed.length * ratio[k];
        if (ed.a != ed.b && ne.a == ne.b) {
          if (ne.length <= 10.0 * weld_tol)
            throw std::runtime_error(
                "ifs_prefractal: weld tolerance collapsed a distinct edge");
          // Distinct endpoints landed on one welded vertex with real length
          // left: genuinely a loop in the image, keep it.
        }
        for (const AmbientPoint& p : ed.geometry) ne.geometry.push_back(f.apply(p));
        const auto key = std::minmax(ne.a, ne.b);
        auto& lens = seen[{key.first, key.second}];
        bool dup = false;
        for (double l : lens) {
          if (std::abs(l - ne.length) <= 1e-12 * std::max(1.0, ne.length)) {
            dup = true;
            break;
          }
        }
        if (dup) continue;
        lens.push_back(ne.length);
        next.push_back(std::move(ne));
      }
    }
    verts = welder.take();
    edges = std::move(next);
  }
  return MetricNetwork(std::move(verts), std::move(edges));
}

IfsSystem vicsek_ifs() {
  const double r = 1.0 / 3.0;
  IfsSystem s;
  auto scale = [&](double tx, double ty) {
    AffineMap f;
    f.m[0][0] = r;
    f.m[1][1] = r;
    f.m[0][1] = f.m[1][0] = 0.0;
    f.t = {tx, ty};
    return f;
  };
  s.maps = {scale(0, 0), scale(2, 0), scale(0, 2), scale(-2, 0), scale(0, -2)};
  return s;
}

MetricNetwork vicsek_seed() {
  // Cross [-3,3] x {0} union {0} x [-3,3]: four arms out of the center.
  std::vector<AmbientPoint> v = {{0, 0}, {3, 0}, {-3, 0}, {0, 3}, {0, -3}};
  std::vector<Edge> e = {{0, 1, 3.0, {}}, {0, 2, 3.0, {}}, {0, 3, 3.0, {}}, {0, 4, 3.0, {}}};
  return MetricNetwork(std::move(v), std::move(e));
}

MetricNetwork vicsek(int n) {
  check_depth(n);
  return ifs_prefractal(vicsek_ifs(), vicsek_seed(), n);
}

IfsSystem koch_ifs() {
  const double s3 = std::sqrt(3.0);
  IfsSystem s;
  AffineMap f1;
  f1.m[0][0] = f1.m[1][1] = 1.0 / 3.0;
  f1.m[0][1] = f1.m[1][0] = 0.0;
  f1.t = {0.0, 0.0};
  AffineMap f2;
  f2.m[0][0] = 1.0 / 6.0;
  f2.m[0][1] = -s3 / 6.0;
  f2.m[1][0] = s3 / 6.0;
  f2.m[1][1] = 1.0 / 6.0;
  f2.t = {1.0 / 3.0, 0.0};
  // Rotation by -60 degrees scaled 1/3, sending (0,0) to the peak and (1,0)
  // to (2/3, 0) so the four copies chain end to end.
  AffineMap f3;
  f3.m[0][0] = 1.0 / 6.0;
  f3.m[0][1] = s3 / 6.0;
  f3.m[1][0] = -s3 / 6.0;
  f3.m[1][1] = 1.0 / 6.0;
  f3.t = {0.5, s3 / 6.0};
  AffineMap f4;
  f4.m[0][0] = f4.m[1][1] = 1.0 / 3.0;
  f4.m[0][1] = f4.m[1][0] = 0.0;
  f4.t = {2.0 / 3.0, 0.0};
  s.maps = {f1, f2, f3, f4};
  return s;
}

MetricNetwork koch_seed() { return segment_network({0, 0}, {1, 0}); }

MetricNetwork koch(int n) {
  check_depth(n);
  return ifs_prefractal(koch_ifs(), koch_seed(), n);
}

std::array<AmbientPoint, 3> sierpinski_corners() {
  return {AmbientPoint{-0.5, 0.0}, AmbientPoint{0.5, 0.0},
          AmbientPoint{0.0, std::sqrt(3.0) / 2.0}};
}

IfsSystem sierpinski_ifs() {
  IfsSystem s;
  for (const AmbientPoint& o : sierpinski_corners()) {
    AffineMap f;
    f.m[0][0] = f.m[1][1] = 0.5;
    f.m[0][1] = f.m[1][0] = 0.0;
    f.t = {o.x * 0.5, o.y * 0.5};  // F(y) = (y - O)/2 + O
    s.maps.push_back(f);
  }
  return s;
}

MetricNetwork sierpinski_seed() {
  const auto O = sierpinski_corners();
  std::vector<AmbientPoint> v = {O[0], O[1], O[2]};
  std::vector<Edge> e = {{0, 1, 1.0, {}}, {1, 2, 1.0, {}}, {2, 0, 1.0, {}}};
  return MetricNetwork(std::move(v), std::move(e));
}

MetricNetwork sierpinski_network(int n) {
  check_depth(n);
  return ifs_prefractal(sierpinski_ifs(), sierpinski_seed(), n);
}

MetricNetwork sierpinski_vertices(int n) {
  check_depth(n);
  const auto O = sierpinski_corners();
  const IfsSystem ifs = sierpinski_ifs();
  std::vector<std::array<AmbientPoint, 3>> cells = {{O[0], O[1], O[2]}};
  for (int i = 0; i < n; ++i) {
    std::vector<std::array<AmbientPoint, 3>> next;
    next.reserve(cells.size() * 3);
    for (const auto& c : cells) {
      for (const AffineMap& f : ifs.maps)
        next.push_back({f.apply(c[0]), f.apply(c[1]), f.apply(c[2])});
    }
    cells = std::move(next);
  }
  const double side = std::ldexp(1.0, -n);  // exact 2^-n
  PointWelder welder(1e-9);
  std::vector<Edge> edges;
  std::set<std::pair<int, int>> seen;
  for (const auto& c : cells) {
    int id[3];
    for (int k = 0; k < 3; ++k) id[k] = welder.insert(c[k]);
    const int pairs[3][2] = {{0, 1}, {1, 2}, {2, 0}};
    for (const auto& pr : pairs) {
      auto key = std::minmax(id[pr[0]], id[pr[1]]);
      if (key.first == key.second)
        throw std::runtime_error("sierpinski_vertices: degenerate cell");
      if (seen.insert({key.first, key.second}).second)
        edges.push_back({key.first, key.second, side, {}});
    }
  }
  return MetricNetwork(welder.take(), std::move(edges));
}

MetricNetwork lattice_lines(int n, const Box& window) {
  if (n < 1) throw std::invalid_argument("lattice_lines: n must be >= 1");
  if (window.empty()) throw std::invalid_argument("lattice_lines: empty window");
  const double step = 1.0 / n;
  const double eps = 1e-12 * std::max({1.0, std::abs(window.x0), std::abs(window.x1),
                                       std::abs(window.y0), std::abs(window.y1)});
  const long I0 = static_cast<long>(std::ceil(window.x0 * n - eps * n));
  const long I1 = static_cast<long>(std::floor(window.x1 * n + eps * n));
  const long J0 = static_cast<long>(std::ceil(window.y0 * n - eps * n));
  const long J1 = static_cast<long>(std::floor(window.y1 * n + eps * n));
  const long NX = I1 - I0 + 1;  // vertical lines in window
  const long NY = J1 - J0 + 1;  // horizontal lines in window
  if (NX <= 0 && NY <= 0)
    throw std::runtime_error("lattice_lines: window contains no lattice line");
  if (NX <= 0 || NY <= 0) {
    const long lines = std::max(NX, NY);
    if (lines > 1)
      throw std::runtime_error(
          "lattice_lines: parallel lines without a crossing are disconnected");
  }

  std::vector<AmbientPoint> verts;
  std::vector<Edge> edges;
  auto add_vertex = [&](double x, double y) {
    verts.push_back({x, y});
    return static_cast<int>(verts.size()) - 1;
  };

  // Crossings first: id(i, j) in row-major order.
  std::vector<int> crossing(static_cast<std::size_t>(std::max(NX, 0L)) *
                                static_cast<std::size_t>(std::max(NY, 0L)),
                            -1);
  auto cid = [&](long i, long j) -> int& {
    return crossing[static_cast<std::size_t>(i - I0) * NY +
                    static_cast<std::size_t>(j - J0)];
  };
  for (long i = I0; i <= I1; ++i)
    for (long j = J0; j <= J1; ++j)
      cid(i, j) = add_vertex(static_cast<double>(i) * step,
                             static_cast<double>(j) * step);

  const bool stub_x0 = NX > 0 && static_cast<double>(I0) * step - window.x0 > eps;
  const bool stub_x1 = NX > 0 && window.x1 - static_cast<double>(I1) * step > eps;
  const bool stub_y0 = NY > 0 && static_cast<double>(J0) * step - window.y0 > eps;
  const bool stub_y1 = NY > 0 && window.y1 - static_cast<double>(J1) * step > eps;

  // Vertical lines: interior edges are exact multiples of 1/n, clipped at
  // the window boundary by stub edges.
  for (long i = I0; i <= I1; ++i) {
    const double x = static_cast<double>(i) * step;
    for (long j = J0; j < J1; ++j)
      edges.push_back({cid(i, j), cid(i, j + 1), step, {}});
    if (NY > 0 && stub_y0) {
      const int s = add_vertex(x, window.y0);
      edges.push_back({s, cid(i, J0), static_cast<double>(J0) * step - window.y0, {}});
    }
    if (NY > 0 && stub_y1) {
      const int s = add_vertex(x, window.y1);
      edges.push_back({cid(i, J1), s, window.y1 - static_cast<double>(J1) * step, {}});
    }
  }
  for (long j = J0; j <= J1; ++j) {
    const double y = static_cast<double>(j) * step;
    for (long i = I0; i < I1; ++i)
      edges.push_back({cid(i, j), cid(i + 1, j), step, {}});
    if (NX > 0 && stub_x0) {
      const int s = add_vertex(window.x0, y);
      edges.push_back({s, cid(I0, j), static_cast<double>(I0) * step - window.x0, {}});
    }
    if (NX > 0 && stub_x1) {
      const int s = add_vertex(window.x1, y);
      edges.push_back({cid(I1, j), s, window.x1 - static_cast<double>(I1) * step, {}});
    }
  }
  try {
    return MetricNetwork(std::move(verts), std::move(edges));
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(std::string("lattice_lines: ") + e.what());
  }
}

std::array<AmbientPoint, 3> y_junction_directions() {
  const double s3 = std::sqrt(3.0);
  return {AmbientPoint{1.0, 0.0}, AmbientPoint{-0.5, s3 / 2.0},
          AmbientPoint{-0.5, -s3 / 2.0}};
}

MetricNetwork y_junction(double arm_length) {
  if (!(arm_length > 0.0))
    throw std::invalid_argument("y_junction: arm length must be > 0");
  const auto e = y_junction_directions();
  std::vector<AmbientPoint> v = {{0, 0}};
  std::vector<Edge> ed;
  for (int i = 0; i < 3; ++i) {
    v.push_back({arm_length * e[i].x, arm_length * e[i].y});
    ed.push_back({0, i + 1, arm_length, {}});
  }
  return MetricNetwork(std::move(v), std::move(ed));
}

double distance_to_y_junction(const AmbientPoint& p) {
  const auto e = y_junction_directions();
  double best = euclidean(p, {0, 0});
  for (int i = 0; i < 3; ++i) {
    const double s = std::max(0.0, p.x * e[i].x + p.y * e[i].y);
    best = std::min(best, euclidean(p, {s * e[i].x, s * e[i].y}));
  }
  return best;
}

MetricNetwork segment_network(const AmbientPoint& a, const AmbientPoint& b) {
  std::vector<AmbientPoint> v = {a, b};
  std::vector<Edge> e = {{0, 1, euclidean(a, b), {}}};
  return MetricNetwork(std::move(v), std::move(e));
}

MetricNetwork circle_network(int segments) {
  if (segments < 3) throw std::invalid_argument("circle_network: need >= 3 segments");
  std::vector<AmbientPoint> v;
  std::vector<Edge> e;
  const double arc = 2.0 * kPi / segments;
  for (int k = 0; k < segments; ++k) {
    const double th = arc * k;
    v.push_back({std::cos(th), std::sin(th)});
  }
  for (int k = 0; k < segments; ++k)
    e.push_back({k, (k + 1) % segments, arc, {}});
  return MetricNetwork(std::move(v), std::move(e));
}

MetricNetwork arc_network(double theta_max, int segments) {
  if (!(theta_max > 0.0) || theta_max > 2.0 * kPi)
    throw std::invalid_argument("arc_network: theta_max must be in (0, 2*pi]");
  if (segments < 1) throw std::invalid_argument("arc_network: need >= 1 segment");
  std::vector<AmbientPoint> v;
  std::vector<Edge> e;
  const double arc = theta_max / segments;
  for (int k = 0; k <= segments; ++k) {
    const double th = arc * k;
    v.push_back({std::cos(th), std::sin(th)});
  }
  for (int k = 0; k < segments; ++k) e.push_back({k, k + 1, arc, {}});
  return MetricNetwork(std::move(v), std::move(e));
}

// --- Y-junction tube ---------------------------------------------------------

namespace {

double tri_area2(const AmbientPoint& a, const AmbientPoint& b, const AmbientPoint& c) {
  return std::abs((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
}

}  // namespace

PlanarDomainMesh y_junction_tube(int n, double arm_length, double h_mesh) {
  if (n < 1) throw std::invalid_argument("y_junction_tube: n must be >= 1");
  const double width = 2.0 / n;
  if (!(h_mesh > 0.0) || h_mesh > 1.0 / (2.0 * n))
    throw std::invalid_argument(
        "y_junction_tube: h_mesh too coarse relative to tube width (need <= 1/(2n))");
  const double s3 = std::sqrt(3.0);
  const double s0 = s3 / (3.0 * n);  // inner end of the rectangles
  if (!(arm_length > s0))
    throw std::invalid_argument("y_junction_tube: arm_length must exceed sqrt(3)/(3n)");

  const auto e = y_junction_directions();
  const AmbientPoint yp[3] = {{0.0, 1.0}, {-s3 / 2.0, -0.5}, {s3 / 2.0, -0.5}};
  const double ulen = 2.0 * s3 / (3.0 * n);
  const AmbientPoint u[3] = {{-ulen * e[2].x, -ulen * e[2].y},    // u_1 = -(2*sqrt(3)/3n) e_3
                             {-ulen * e[0].x, -ulen * e[0].y},    // u_2
                             {-ulen * e[1].x, -ulen * e[1].y}};   // u_3

  PlanarDomainMesh mesh;
  mesh.h_mesh = h_mesh;
  mesh.tube_width = width;

  PointWelder welder(1e-9 / n);
  auto tri = [&](int a, int b, int c) {
    if (tri_area2(welder.points()[a], welder.points()[b], welder.points()[c]) <=
        1e-14 / (n * n))
      throw std::runtime_error("y_junction_tube: degenerate triangle");
    mesh.triangles.push_back({a, b, c});
  };

  // Rectangles R_i meshed by a structured grid aligned with the arm: rows at
  // t = -1/n, 0, 1/n (the middle row is the arm centerline), columns at ~1/n.
  for (int i = 0; i < 3; ++i) {
    const int ncols = std::max(1, static_cast<int>(std::lround((arm_length - s0) * n)));
    const double ds = (arm_length - s0) / ncols;
    std::vector<std::array<int, 3>> col_ids(ncols + 1);
    for (int k = 0; k <= ncols; ++k) {
      const double s = s0 + ds * k;
      for (int r = 0; r < 3; ++r) {
        const double t = (r - 1) * (1.0 / n);
        col_ids[k][r] = welder.insert(
            {s * e[i].x + t * yp[i].x, s * e[i].y + t * yp[i].y});
      }
    }
    for (int k = 0; k < ncols; ++k) {
      for (int r = 0; r < 2; ++r) {
        const int A = col_ids[k][r], B = col_ids[k + 1][r];
        const int C = col_ids[k + 1][r + 1], D = col_ids[k][r + 1];
        if ((k + r) % 2 == 0) {
          tri(A, B, C);
          tri(A, C, D);
        } else {
          tri(A, B, D);
          tri(B, C, D);
        }
      }
    }
  }

  // Filled center triangle u_1 u_2 u_3: a fan from the origin to the side
  // points. Side midpoints lie on the arm axes and coincide with the
  // rectangles' inner-column rows, so the triangulation is conforming.
  {
    const int origin = welder.insert({0.0, 0.0});
    std::vector<int> ring;
    for (int i = 0; i < 3; ++i) {
      const AmbientPoint& a = u[i];
      const AmbientPoint& b = u[(i + 1) % 3];
      ring.push_back(welder.insert(a));
      ring.push_back(welder.insert({(a.x + b.x) / 2.0, (a.y + b.y) / 2.0}));
    }
    for (std::size_t k = 0; k < ring.size(); ++k)
      tri(origin, ring[k], ring[(k + 1) % ring.size()]);
  }

  mesh.vertices = welder.take();

  // Derived metric graph: mesh vertices plus Steiner points on every
  // triangle edge at spacing <= h_mesh; inside each triangle all boundary
  // points are joined pairwise (straight chords, so graph lengths are
  // Euclidean and can never undercut the planar metric).
  std::vector<AmbientPoint> gpos = mesh.vertices;
  std::map<std::pair<int, int>, std::vector<int>> steiner;  // mesh edge -> node ids a->b
  std::set<std::pair<int, int>> mesh_edges;
  for (const auto& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      auto key = std::minmax(t[k], t[(k + 1) % 3]);
      mesh_edges.insert({key.first, key.second});
    }
  }
  for (const auto& me : mesh_edges) {
    const AmbientPoint& A = mesh.vertices[me.first];
    const AmbientPoint& B = mesh.vertices[me.second];
    const int k = std::max(1, static_cast<int>(std::ceil(euclidean(A, B) / h_mesh)));
    std::vector<int> ids;
    for (int j = 1; j < k; ++j) {
      ids.push_back(static_cast<int>(gpos.size()));
      gpos.push_back(lerp(A, B, static_cast<double>(j) / k));
    }
    steiner[me] = std::move(ids);
  }

  std::set<std::pair<int, int>> gedges;
  auto link = [&](int a, int b) {
    if (a == b) return;
    auto key = std::minmax(a, b);
    gedges.insert({key.first, key.second});
  };
  // Chains along mesh edges.
  for (const auto& [me, ids] : steiner) {
    int prev = me.first;
    for (int id : ids) {
      link(prev, id);
      prev = id;
    }
    link(prev, me.second);
  }
  // Cross connections inside each triangle (skip collinear same-edge pairs,
  // the chains already cover those).
  for (const auto& t : mesh.triangles) {
    struct BPoint {
      int node;
      int edge_slot;  // 0..2 = lies on that triangle edge, -1 = corner
      int corner;     // corner index 0..2 or -1
    };
    std::vector<BPoint> pts;
    for (int k = 0; k < 3; ++k) pts.push_back({t[k], -1, k});
    for (int k = 0; k < 3; ++k) {
      auto key = std::minmax(t[k], t[(k + 1) % 3]);
      for (int id : steiner[{key.first, key.second}]) pts.push_back({id, k, -1});
    }
    auto corner_on_edge = [&](int corner, int slot) {
      return corner == slot || corner == (slot + 1) % 3;
    };
    for (std::size_t a = 0; a < pts.size(); ++a) {
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        const BPoint& P = pts[a];
        const BPoint& Q = pts[b];
        bool same_edge = false;
        if (P.corner >= 0 && Q.corner >= 0) same_edge = true;  // mesh edge chain
        else if (P.corner >= 0) same_edge = corner_on_edge(P.corner, Q.edge_slot);
        else if (Q.corner >= 0) same_edge = corner_on_edge(Q.corner, P.edge_slot);
        else same_edge = P.edge_slot == Q.edge_slot;
        if (!same_edge) link(P.node, Q.node);
      }
    }
  }

  std::vector<Edge> net_edges;
  net_edges.reserve(gedges.size());
  for (const auto& [a, b] : gedges)
    net_edges.push_back({a, b, euclidean(gpos[a], gpos[b]), {}});
  mesh.graph = std::make_shared<const MetricNetwork>(std::move(gpos), std::move(net_edges));
  mesh.vertex_graph_node.resize(mesh.vertices.size());
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
    mesh.vertex_graph_node[i] = static_cast<int>(i);
  return mesh;
}

}  // namespace hjnet
