#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include "hjnet/network.hpp"
#include "hjnet/rng.hpp"

namespace hjnet::testutil {

inline std::shared_ptr<const MetricNetwork> share(MetricNetwork net) {
  return std::make_shared<const MetricNetwork>(std::move(net));
}

// Unit interval [0,1] embedded on the x-axis as one edge.
inline std::shared_ptr<const MetricNetwork> interval() {
  std::vector<AmbientPoint> v = {{0, 0}, {1, 0}};
  std::vector<Edge> e = {{0, 1, 1.0, {}}};
  return share(MetricNetwork(std::move(v), std::move(e)));
}

// Interval [0, len] on the x-axis split into `pieces` collinear edges.
inline std::shared_ptr<const MetricNetwork> chain(double len, int pieces) {
  std::vector<AmbientPoint> v;
  std::vector<Edge> e;
  for (int i = 0; i <= pieces; ++i) v.push_back({len * i / pieces, 0.0});
  for (int i = 0; i < pieces; ++i) e.push_back({i, i + 1, len / pieces, {}});
  return share(MetricNetwork(std::move(v), std::move(e)));
}

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// Nearest graph vertex (never an edge interior); tube-mesh queries snap to
// nodes, where the Steiner connectivity lives.
inline NetPoint nearest_vertex(const MetricNetwork& net, const AmbientPoint& q) {
  int best = 0;
  double bd = euclidean(net.vertex(0), q);
  for (int v = 1; v < net.vertex_count(); ++v) {
    const double d = euclidean(net.vertex(v), q);
    if (d < bd) {
      bd = d;
      best = v;
    }
  }
  return net.vertex_point(best);
}

inline bool rel_close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace hjnet::testutil
