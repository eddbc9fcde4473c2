#include "hjnet/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hjnet {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

SampleCloud sample(std::shared_ptr<const MetricNetwork> net, double density) {
  if (!(density > 0.0)) throw std::invalid_argument("sample: density must be > 0");
  SampleCloud cloud;
  cloud.source = net;
  const MetricNetwork& g = *net;
  double realized = 0.0;
  // Vertices first (by id), then edge interiors in edge order.
  for (int v = 0; v < g.vertex_count(); ++v) {
    cloud.net_points.push_back(g.vertex_point(v));
    cloud.positions.push_back(g.vertex(v));
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    const double L = g.edge(e).length;
    const int k = std::max(1, static_cast<int>(std::ceil(L / density)));
    realized = std::max(realized, L / k);
    for (int j = 1; j < k; ++j) {
      const NetPoint p{e, L * j / k};
      cloud.net_points.push_back(p);
      cloud.positions.push_back(g.position(p));
    }
  }
  cloud.density = realized;
  return cloud;
}

SampleCloud sample_box(const Box& window, double density) {
  if (!(density > 0.0)) throw std::invalid_argument("sample_box: density must be > 0");
  if (window.empty()) throw std::invalid_argument("sample_box: empty window");
  SampleCloud cloud;
  const int nx = std::max(1, static_cast<int>(std::ceil(window.width() / density)));
  const int ny = std::max(1, static_cast<int>(std::ceil(window.height() / density)));
  for (int i = 0; i <= nx; ++i) {
    for (int j = 0; j <= ny; ++j) {
      cloud.positions.push_back({window.x0 + window.width() * i / nx,
                                 window.y0 + window.height() * j / ny});
    }
  }
  cloud.density = std::max(window.width() / nx, window.height() / ny);
  return cloud;
}

SampleCloud cloud_from_points(std::vector<AmbientPoint> points) {
  SampleCloud cloud;
  cloud.positions = std::move(points);
  return cloud;
}

PointIndex::PointIndex(const std::vector<AmbientPoint>& points, double cell)
    : pts_(points) {
  if (points.empty()) throw std::invalid_argument("PointIndex: empty point set");
  double x0 = points[0].x, x1 = x0, y0 = points[0].y, y1 = y0;
  for (const auto& p : points) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const double extent = std::max({x1 - x0, y1 - y0, 1e-12});
  cell_ = cell > 0.0 ? cell
                     : std::max(extent / std::max(1.0, std::sqrt(double(points.size()))),
                                1e-9 * extent);
  cx0_ = static_cast<long>(std::floor(x0 / cell_));
  cy0_ = static_cast<long>(std::floor(y0 / cell_));
  nx_ = static_cast<long>(std::floor(x1 / cell_)) - cx0_ + 1;
  ny_ = static_cast<long>(std::floor(y1 / cell_)) - cy0_ + 1;
  cells_.assign(static_cast<std::size_t>(nx_) * ny_, {});
  for (int i = 0; i < static_cast<int>(points.size()); ++i) {
    const long cx = static_cast<long>(std::floor(points[i].x / cell_));
    const long cy = static_cast<long>(std::floor(points[i].y / cell_));
    cells_[static_cast<std::size_t>(cx - cx0_) * ny_ + (cy - cy0_)].push_back(i);
  }
}

const std::vector<int>* PointIndex::cell_at(long cx, long cy) const {
  if (cx < cx0_ || cx >= cx0_ + nx_ || cy < cy0_ || cy >= cy0_ + ny_) return nullptr;
  return &cells_[static_cast<std::size_t>(cx - cx0_) * ny_ + (cy - cy0_)];
}

int PointIndex::nearest(const AmbientPoint& q, AmbientMetric metric,
                        double* dist_out) const {
  const long qx = static_cast<long>(std::floor(q.x / cell_));
  const long qy = static_cast<long>(std::floor(q.y / cell_));
  const long cx1 = cx0_ + nx_ - 1;
  const long cy1 = cy0_ + ny_ - 1;
  int best = -1;
  double best_d = kInf;
  auto scan = [&](long cx, long cy) {
    const auto* cellv = cell_at(cx, cy);
    if (!cellv) return;
    for (int i : *cellv) {
      const double d = ambient_distance(metric, q, pts_[i]);
      if (d < best_d || (d == best_d && i < best)) {
        best_d = d;
        best = i;
      }
    }
  };
  // Ring scan around q's cell, clipped to the grid box; queries far outside
  // the box start at the first ring that touches it.
  const long ox = std::max({0L, cx0_ - qx, qx - cx1});
  const long oy = std::max({0L, cy0_ - qy, qy - cy1});
  const long ring_min = std::max(ox, oy);
  const long ring_max = std::max(std::max(qx - cx0_, cx1 - qx),
                                 std::max(qy - cy0_, cy1 - qy));
  for (long ring = ring_min; ring <= ring_max; ++ring) {
    // Any point in a cell at this ring sits at Euclidean distance
    // >= (ring-1)*cell from q, and both metrics dominate the Euclidean one.
    if (best >= 0 && static_cast<double>(ring - 1) * cell_ > best_d) break;
    if (ring == 0) {
      scan(qx, qy);
      continue;
    }
    const long xa = std::max(qx - ring, cx0_);
    const long xb = std::min(qx + ring, cx1);
    if (qy - ring >= cy0_ && qy - ring <= cy1)
      for (long cx = xa; cx <= xb; ++cx) scan(cx, qy - ring);
    if (qy + ring >= cy0_ && qy + ring <= cy1)
      for (long cx = xa; cx <= xb; ++cx) scan(cx, qy + ring);
    const long ya = std::max(qy - ring + 1, cy0_);
    const long yb = std::min(qy + ring - 1, cy1);
    if (qx - ring >= cx0_ && qx - ring <= cx1)
      for (long cy = ya; cy <= yb; ++cy) scan(qx - ring, cy);
    if (qx + ring >= cx0_ && qx + ring <= cx1)
      for (long cy = ya; cy <= yb; ++cy) scan(qx + ring, cy);
  }
  if (dist_out) *dist_out = best_d;
  return best;
}

std::vector<int> PointIndex::within(const AmbientPoint& q, double r,
                                    AmbientMetric metric) const {
  std::vector<int> out;
  if (!(r >= 0.0)) return out;
  // Manhattan balls fit inside the Euclidean ball of the same radius.
  const long span = static_cast<long>(std::floor(r / cell_)) + 1;
  const long qx = static_cast<long>(std::floor(q.x / cell_));
  const long qy = static_cast<long>(std::floor(q.y / cell_));
  const long xa = std::max(qx - span, cx0_), xb = std::min(qx + span, cx0_ + nx_ - 1);
  const long ya = std::max(qy - span, cy0_), yb = std::min(qy + span, cy0_ + ny_ - 1);
  for (long cx = xa; cx <= xb; ++cx) {
    for (long cy = ya; cy <= yb; ++cy) {
      const auto* cellv = cell_at(cx, cy);
      if (!cellv) continue;
      for (int i : *cellv) {
        if (ambient_distance(metric, q, pts_[i]) <= r) out.push_back(i);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double directed_hausdorff(const SampleCloud& from, const SampleCloud& to,
                          AmbientMetric metric) {
  if (from.size() == 0 || to.size() == 0)
    throw std::invalid_argument("hausdorff: empty cloud");
  PointIndex index(to.positions);
  double sup = 0.0;
  for (const auto& p : from.positions) {
    double d = 0.0;
    index.nearest(p, metric, &d);
    sup = std::max(sup, d);
  }
  return sup;
}

double hausdorff_distance(const SampleCloud& a, const SampleCloud& b,
                          AmbientMetric metric) {
  return std::max(directed_hausdorff(a, b, metric),
                  directed_hausdorff(b, a, metric));
}

}  // namespace hjnet
