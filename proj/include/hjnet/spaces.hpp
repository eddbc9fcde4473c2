#pragma once

#include <array>
#include <memory>
#include <vector>

#include "hjnet/network.hpp"

namespace hjnet {

struct AffineMap {
  double m[2][2] = {{1, 0}, {0, 1}};
  AmbientPoint t;

  AmbientPoint apply(const AmbientPoint& p) const {
    return {m[0][0] * p.x + m[0][1] * p.y + t.x,
            m[1][0] * p.x + m[1][1] * p.y + t.y};
  }
  // Scale factor when the linear part is r * orthogonal; throws otherwise.
  double similarity_ratio() const;
};

struct IfsSystem {
  std::vector<AffineMap> maps;  // nonempty, all contractions
};

// Applies the Hutchinson operator n times to the seed network. Maps must be
// similarities so image edge lengths are exact scaled lengths; coincident
// vertices weld at tolerance 1e-9 * (seed diameter).
MetricNetwork ifs_prefractal(const IfsSystem& ifs, const MetricNetwork& seed, int n);

// Named prefractal families (n <= 12; edge counts grow geometrically).
MetricNetwork vicsek(int n);
MetricNetwork koch(int n);
MetricNetwork sierpinski_network(int n);
// Graph on the level-n gasket vertex set, edges of length 2^-n between
// cell-adjacent vertices. Built by direct cell enumeration, independently of
// the Hutchinson iteration above.
MetricNetwork sierpinski_vertices(int n);

IfsSystem vicsek_ifs();
IfsSystem koch_ifs();
IfsSystem sierpinski_ifs();
MetricNetwork vicsek_seed();
MetricNetwork koch_seed();
MetricNetwork sierpinski_seed();

std::array<AmbientPoint, 3> sierpinski_corners();  // O_1, O_2, O_3

// All lines x = i/n and y = j/n clipped to the window, welded at crossings.
MetricNetwork lattice_lines(int n, const Box& window);

inline double manhattan_distance(const AmbientPoint& a, const AmbientPoint& b) {
  return manhattan(a, b);
}

// Three straight arms from the origin in the directions e_1, e_2, e_3
// (unit vectors 120 degrees apart, e_1 = (1, 0)).
MetricNetwork y_junction(double arm_length);
std::array<AmbientPoint, 3> y_junction_directions();
// Ambient distance from p to the (untruncated) Y-junction.
double distance_to_y_junction(const AmbientPoint& p);

// Simple builders used by experiments and tests.
MetricNetwork segment_network(const AmbientPoint& a, const AmbientPoint& b);
// Unit circle as a closed loop of `segments` edges carrying exact arc lengths.
MetricNetwork circle_network(int segments);
// Arc {angle in [0, theta_max]} of the unit circle, exact arc lengths.
MetricNetwork arc_network(double theta_max, int segments);

// Triangulated tube around the Y-junction: three rectangles of half-width
// 1/n along the arms plus the filled center triangle, with a derived metric
// graph (mesh vertices + per-triangle-edge Steiner points at spacing h_mesh,
// complete point graph inside every triangle).
struct PlanarDomainMesh {
  std::vector<AmbientPoint> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::shared_ptr<const MetricNetwork> graph;
  std::vector<int> vertex_graph_node;  // mesh vertex -> graph vertex id
  double h_mesh = 0.0;
  double tube_width = 0.0;  // 2/n
  // Graph distance <= (1 + kGraphDetourC * h_mesh / tube_width) * planar
  // distance on straight-arm segments.
  static constexpr double kGraphDetourC = 4.0;
};

PlanarDomainMesh y_junction_tube(int n, double arm_length, double h_mesh);

}  // namespace hjnet
