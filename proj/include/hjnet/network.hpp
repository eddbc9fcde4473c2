#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hjnet/geometry.hpp"
#include "hjnet/rng.hpp"

namespace hjnet {

struct Edge {
  int a = 0;            // vertex id
  int b = 0;            // vertex id
  double length = 0.0;  // intrinsic length, >= ambient chord
  std::vector<AmbientPoint> geometry;  // optional polyline incl. endpoints
};

// A point on the network: edge id plus arclength offset from the edge's
// first vertex. Offsets 0 and length canonicalize to the vertex form on the
// lowest incident edge id, so each geometric point has one representation.
struct NetPoint {
  int edge = -1;
  double offset = 0.0;
};

inline bool same_point(const NetPoint& a, const NetPoint& b) {
  return a.edge == b.edge && a.offset == b.offset;
}

// Compact geodesic network embedded in the plane. Immutable after
// construction; all queries are const and safe to run concurrently.
class MetricNetwork {
 public:
  MetricNetwork(std::vector<AmbientPoint> vertices, std::vector<Edge> edges);

  int vertex_count() const { return static_cast<int>(verts_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const AmbientPoint& vertex(int v) const { return verts_[v]; }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<int>& incident_edges(int v) const { return incident_[v]; }
  double total_length() const { return total_length_; }
  double min_edge_length() const { return min_edge_length_; }

  // Canonical representation; validates the point and snaps endpoint
  // offsets (within 1e-12 * length) to the vertex form.
  NetPoint canonical(NetPoint p) const;
  NetPoint vertex_point(int v) const;
  // True iff (canonical) p sits on a vertex; fills *v when non-null.
  bool is_vertex(const NetPoint& p, int* v = nullptr) const;

  AmbientPoint position(const NetPoint& p) const;

  // Exact intrinsic distance treating both points as virtual edge splits.
  // Label-setting (binary heap), ties broken by smallest vertex id.
  double distance(NetPoint a, NetPoint b) const;

  // Distances from src to every vertex.
  std::vector<double> vertex_distances(NetPoint src) const;

  // Nearest on-network point in the given ambient metric; ties resolved to
  // the smallest edge id, then smallest offset.
  NetPoint locate(const AmbientPoint& q,
                  AmbientMetric metric = AmbientMetric::Euclidean) const;

  // Uniform by arclength.
  NetPoint random_point(Rng& rng) const;

 private:
  void validate() const;
  // Initial vertex labels for a sweep starting at p (virtual edge split).
  void seed_labels(const NetPoint& p,
                   std::vector<std::pair<double, int>>& seeds) const;

  std::vector<AmbientPoint> verts_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
  std::vector<double> cum_length_;  // prefix sums for random_point
  std::vector<double> geom_length_; // polyline arclength per edge (0 = straight)
  double total_length_ = 0.0;
  double min_edge_length_ = 0.0;
};

// JSON file format: {"vertices": [[x,y],...], "edges": [[i,j,length],...],
// "geometry": [null | [[x,y],...], ...] } with "geometry" optional.
// The loader validates every network invariant and rejects on the first
// violation with an element-precise message.
MetricNetwork load_network(const std::string& path);
MetricNetwork network_from_json_text(const std::string& text);
void save_network(const MetricNetwork& net, const std::string& path);
std::string network_to_json_text(const MetricNetwork& net);

// Returns a copy with edge e split at the given interior offset (new vertex
// appended). Vertex-to-vertex distances are unchanged by construction.
MetricNetwork split_edge(const MetricNetwork& net, int e, double offset);

}  // namespace hjnet
