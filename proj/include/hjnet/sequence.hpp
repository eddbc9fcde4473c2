#pragma once

#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "hjnet/sampling.hpp"

namespace hjnet {

// Handle for one space of a converging family: a metric network, or the
// plane carrying the Manhattan metric (the lattice limit).
struct Space {
  enum class Kind { Network, ManhattanPlane };

  Kind kind = Kind::Network;
  std::shared_ptr<const MetricNetwork> net;
  Box window{};

  static Space network(std::shared_ptr<const MetricNetwork> n) {
    Space s;
    s.kind = Kind::Network;
    s.net = std::move(n);
    return s;
  }
  static Space manhattan_plane(const Box& w) {
    Space s;
    s.kind = Kind::ManhattanPlane;
    s.window = w;
    return s;
  }

  SampleCloud sample(double density) const;

  struct Point {
    AmbientPoint pos;
    NetPoint np;  // valid for network spaces only
  };
  Point random_point(Rng& rng) const;
  double distance(const Point& a, const Point& b) const;
  // Intrinsic distance between two entries of a cloud sampled from this space.
  double cloud_distance(const SampleCloud& cloud, int i, int j) const;
};

// Indexed family n -> space plus the designated limit space; all spaces are
// embedded in the same ambient plane, matched in the chosen ambient metric.
struct SpaceSequence {
  struct Level {
    int n = 0;
    Space space;
  };
  std::vector<Level> levels;
  Space limit;
  AmbientMetric ambient = AmbientMetric::Euclidean;
};

struct H2Row {
  int n = 0;
  double max_gap = 0.0;
  double mean_gap = 0.0;
  AmbientPoint witness_a, witness_b;
  double witness_level_distance = 0.0;  // d_n(a_n, b_n) for the witness pair
};

struct H2Report {
  std::vector<H2Row> rows;
  bool pass = false;
  double tol = 0.0;
  int pairs = 0;
  std::uint64_t seed = 0;

  // Columns: n, max_gap, mean_gap, witness_a, witness_b, verdict.
  void write_csv(std::ostream& os) const;
};

// Empirical checker for the metric-convergence hypothesis: draws `pairs`
// random limit pairs (a, b), matches each into every level as the
// ambient-nearest sample point, and reports the per-level gap
// max |d_n(a_n, b_n) - d_limit(a, b)|. PASS iff the gap at the deepest
// level is below tol; a FAIL carries the witnessing pair. Deterministic for
// a fixed seed. This is a semi-decision: a FAIL is a certificate, a PASS is
// evidence only.
H2Report check_h2(const SpaceSequence& seq, int pairs, std::uint64_t seed,
                  double tol, double density);

}  // namespace hjnet
