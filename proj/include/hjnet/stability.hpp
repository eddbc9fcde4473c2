#pragma once

#include <memory>
#include <optional>
#include <ostream>
#include <vector>

#include "hjnet/sequence.hpp"
#include "hjnet/solvers.hpp"

namespace hjnet {

// For each sample of the limit space: the ambient-nearest sample on the
// approximating space, with its ambient gap. Ties by smallest index.
struct Correspondence {
  std::vector<int> match;
  std::vector<double> gap;

  double max_gap() const;
};

Correspondence correspondence(const SampleCloud& limit, const SampleCloud& approx,
                              AmbientMetric metric = AmbientMetric::Euclidean);

// One level feeding the semilimit proxy: solved field, its level index, the
// matching radius r_n, and the sampled Hausdorff gap (capture condition:
// r_n >= 2 * hausdorff).
struct SemilimitLevel {
  int n = 0;
  const ScalarField* field = nullptr;
  double radius = 0.0;
  double hausdorff = 0.0;
};

// Relaxed semilimit proxies: at each limit sample x, the max (resp. min)
// over the last `window` levels of the field extrema over that level's
// nodes within ambient radius r_n of x.
std::vector<double> upper_semilimit(const std::vector<SemilimitLevel>& levels,
                                    const SampleCloud& limit,
                                    AmbientMetric metric, int window = 3);
std::vector<double> lower_semilimit(const std::vector<SemilimitLevel>& levels,
                                    const SampleCloud& limit,
                                    AmbientMetric metric, int window = 3);

enum class SolverKind { Eikonal, Discounted };
enum class RateAbscissa { Level, Log2N };

struct StabilityLevelRow {
  int n = 0;
  double hausdorff = 0.0;
  double h2_gap = 0.0;
  double sup_error = 0.0;   // e_n = sup_x |u_n(match(x)) - u_limit(x)|
  double upper_gap = 0.0;   // sup |upper semilimit - u_limit| using levels <= n
  double lower_gap = 0.0;
};

struct ConvergenceReport {
  std::vector<StabilityLevelRow> rows;
  double rate = 0.0;  // least-squares slope of log2(sup_error)
  RateAbscissa abscissa = RateAbscissa::Level;
  double proxy_self_error = 0.0;  // sup gap between the two deepest levels
  bool h2_pass = false;
  bool pass = false;
  double tol = 0.0;

  // Columns: n, hausdorff, h2_gap, sup_error, upper_semilimit_gap,
  // lower_semilimit_gap.
  void write_csv(std::ostream& os) const;
  // Two columns: log2(n), log2(sup_error).
  void write_plot_data(std::ostream& os) const;
};

struct StabilityConfig {
  SpaceSequence seq;  // levels plus the limit proxy
  SolverKind solver = SolverKind::Eikonal;
  // Per-level Hamiltonian family (lambda_n, f_n); a single entry broadcasts.
  // The last entry is the limit level's.
  std::vector<double> lambda_per_level = {0.0};
  std::vector<double> f_per_level = {1.0};
  // Ambient boundary anchors with data g; each level solves from its
  // nearest on-network points (the a_n converging to the limit anchors).
  std::vector<std::pair<AmbientPoint, double>> boundary;
  double density = 0.0;
  double h_solver = 0.0;       // 0 = min edge length / 4 per level
  std::vector<double> radii;   // empty = 2 * hausdorff_n + density
  int semilimit_window = 3;
  int h2_pairs = 64;
  std::uint64_t seed = 1;
  double tol = 0.0;            // verdict threshold on the deepest sup_error
  double discounted_tol = 1e-10;
  int discounted_max_sweeps = 200000;
  RateAbscissa abscissa = RateAbscissa::Level;
};

// Solves on every level and the limit proxy, and measures the Corollary's
// uniform convergence numerically: per-level sup matched error, sampled
// Hausdorff distance, H2 gaps, and the semilimit proxies' distance to the
// limit solution.
ConvergenceReport stability_experiment(const StabilityConfig& config);

}  // namespace hjnet
