#pragma once

#include <memory>
#include <vector>

#include "hjnet/network.hpp"

namespace hjnet {

// Finite stand-in for a space in Hausdorff / matching computations. For
// network sources, net_points runs parallel to positions; analytic clouds
// (plane windows, explicit point lists) carry positions only.
struct SampleCloud {
  std::vector<AmbientPoint> positions;
  std::vector<NetPoint> net_points;
  std::shared_ptr<const MetricNetwork> source;
  double density = 0.0;  // max gap along any edge

  std::size_t size() const { return positions.size(); }
};

// Deterministic arclength-stratified samples, both endpoints of every edge
// included; gap along each edge <= density.
SampleCloud sample(std::shared_ptr<const MetricNetwork> net, double density);

// Grid samples of a window including its boundary, gap <= density.
SampleCloud sample_box(const Box& window, double density);

SampleCloud cloud_from_points(std::vector<AmbientPoint> points);

// Uniform hash grid over a point set; nearest-neighbor queries in either
// ambient metric, ties resolved to the smallest point index.
class PointIndex {
 public:
  explicit PointIndex(const std::vector<AmbientPoint>& points, double cell = 0.0);

  int nearest(const AmbientPoint& q, AmbientMetric metric,
              double* dist_out = nullptr) const;

  // Indices of points within ambient radius r of q (ascending index order).
  std::vector<int> within(const AmbientPoint& q, double r, AmbientMetric metric) const;

 private:
  const std::vector<AmbientPoint>& pts_;
  double cell_ = 1.0;
  long cx0_ = 0, cy0_ = 0;
  long nx_ = 0, ny_ = 0;
  std::vector<std::vector<int>> cells_;
  std::vector<int>* cell_at(long cx, long cy);
  const std::vector<int>* cell_at(long cx, long cy) const;
};

// sup over `from` of the distance to `to`.
double directed_hausdorff(const SampleCloud& from, const SampleCloud& to,
                          AmbientMetric metric = AmbientMetric::Euclidean);

// max of the two directed sup-inf values over the sampled sets.
double hausdorff_distance(const SampleCloud& a, const SampleCloud& b,
                          AmbientMetric metric = AmbientMetric::Euclidean);

}  // namespace hjnet
