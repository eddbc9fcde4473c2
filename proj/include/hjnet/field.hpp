#pragma once

#include <memory>
#include <ostream>
#include <vector>

#include "hjnet/network.hpp"

namespace hjnet {

// Refined node set used by field construction and the solvers: one node per
// network vertex plus interior nodes on every edge at spacing <= h, plus any
// explicitly required points (boundary data, sources). Nodes along an edge
// form a chain whose gaps are exact sub-lengths, so shortest paths on the
// node graph agree with the intrinsic metric.
class SolverGrid {
 public:
  SolverGrid(std::shared_ptr<const MetricNetwork> net, double spacing,
             const std::vector<NetPoint>& required = {});

  const MetricNetwork& net() const { return *net_; }
  const std::shared_ptr<const MetricNetwork>& net_ptr() const { return net_; }

  int node_count() const { return static_cast<int>(points_.size()); }
  int vertex_node(int v) const { return v; }
  const NetPoint& node_point(int i) const { return points_[i]; }
  const AmbientPoint& node_pos(int i) const { return pos_[i]; }
  double max_gap() const { return max_gap_; }
  double requested_spacing() const { return spacing_; }

  // Node ids / offsets along edge e, endpoints included, offsets ascending.
  const std::vector<int>& edge_node_ids(int e) const { return edge_nodes_[e]; }
  const std::vector<double>& edge_node_offsets(int e) const { return edge_offsets_[e]; }

  struct Link {
    int node;
    double gap;   // intrinsic distance to neighbor
    int edge;     // edge carrying the link
  };
  const std::vector<Link>& neighbors(int i) const { return nbr_[i]; }

  // Node exactly at p (within 1e-12 * edge length), or -1.
  int exact_node(const NetPoint& p) const;

  struct Bracket {
    int lo;
    int hi;
    double t;  // position between lo and hi in [0, 1]
  };
  Bracket bracket(const NetPoint& p) const;

  static double default_spacing(const MetricNetwork& net) {
    return net.min_edge_length() / 4.0;
  }

 private:
  std::shared_ptr<const MetricNetwork> net_;
  double spacing_ = 0.0;
  double max_gap_ = 0.0;
  std::vector<NetPoint> points_;
  std::vector<AmbientPoint> pos_;
  std::vector<std::vector<int>> edge_nodes_;
  std::vector<std::vector<double>> edge_offsets_;
  std::vector<std::vector<Link>> nbr_;
};

// Function values on the grid nodes with linear interpolation in arclength
// along edges. Immutable after construction.
class ScalarField {
 public:
  ScalarField(std::shared_ptr<const SolverGrid> grid, std::vector<double> values);

  const SolverGrid& grid() const { return *grid_; }
  const std::shared_ptr<const SolverGrid>& grid_ptr() const { return grid_; }
  int size() const { return static_cast<int>(values_.size()); }
  double at_node(int i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

  double operator()(const NetPoint& p) const;

  double min_value() const;
  double max_value() const;

 private:
  std::shared_ptr<const SolverGrid> grid_;
  std::vector<double> values_;
};

using FieldSource = std::pair<NetPoint, double>;  // (point, g)

// u(x) = min_i (g_i + d(source_i, x)), f == 1, one multi-source
// label-setting sweep over the grid. Sources need not be grid nodes.
ScalarField distance_field(std::shared_ptr<const SolverGrid> grid,
                           const std::vector<FieldSource>& sources);
ScalarField distance_field(std::shared_ptr<const MetricNetwork> net,
                           const std::vector<FieldSource>& sources,
                           double spacing = 0.0 /* 0 = min edge length / 4 */);

// Discrete local slope at scale h: max over the directions out of p of
// |u(q) - u(p)| / h with q stepped to arclength h along each incident
// branch. Throws if h exceeds the shortest incident edge remainder.
double local_slope(const ScalarField& u, NetPoint p, double h);

// CSV: node id, edge id, offset, ambient x, ambient y, value.
void write_field_csv(std::ostream& os, const ScalarField& u);
ScalarField read_field_csv(std::istream& is, std::shared_ptr<const MetricNetwork> net);

}  // namespace hjnet
