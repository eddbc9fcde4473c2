#pragma once

#include <functional>
#include <memory>
#include <ostream>
#include <vector>

#include "hjnet/field.hpp"

namespace hjnet {

// Edgewise-constant positive running cost / speed.
struct SpeedField {
  double constant = 1.0;
  std::vector<double> per_edge;  // empty -> constant everywhere

  SpeedField() = default;
  explicit SpeedField(double c) : constant(c) {}

  double on_edge(int e) const {
    return per_edge.empty() ? constant : per_edge[e];
  }
  double min_value(const MetricNetwork& net) const;
  double max_value(const MetricNetwork& net) const;
};

// The Hamiltonian class lambda*u + p - f(x). Solvers accept the Eikonal
// form only; Generic is a black-box evaluation used by the viscosity
// checker and never solved.
struct HamiltonianSpec {
  enum class Form { Eikonal, Generic };

  Form form = Form::Eikonal;
  double lambda = 0.0;  // >= 0; the monotonicity parameter
  SpeedField f;
  std::function<double(const NetPoint&, double, double)> generic;

  static HamiltonianSpec eikonal(double lambda, SpeedField f) {
    HamiltonianSpec h;
    h.form = Form::Eikonal;
    h.lambda = lambda;
    h.f = std::move(f);
    return h;
  }
  static HamiltonianSpec generic_fn(
      std::function<double(const NetPoint&, double, double)> fn) {
    HamiltonianSpec h;
    h.form = Form::Generic;
    h.generic = std::move(fn);
    return h;
  }

  double eval(const NetPoint& x, double u, double p) const {
    if (form == Form::Generic) return generic(x, u, p);
    return lambda * u + p - f.on_edge(x.edge);
  }
};

struct EikonalResult {
  ScalarField u;
  // Boundary pairs (violating point, dominating point) where the
  // compatibility |g_i - g_j| <= weighted distance failed; the field is then
  // the maximal subsolution below the data.
  std::vector<std::pair<NetPoint, NetPoint>> incompatible;
};

// u(x) = min_i [ g_i + inf over paths from boundary point i to x of the
// path integral of f ]; exact on the grid via weighted label-setting.
EikonalResult solve_eikonal(std::shared_ptr<const SolverGrid> grid,
                            const std::vector<FieldSource>& boundary,
                            const SpeedField& f);
EikonalResult solve_eikonal(std::shared_ptr<const MetricNetwork> net,
                            const std::vector<FieldSource>& boundary,
                            const SpeedField& f, double spacing = 0.0);

struct DiscountedResult {
  ScalarField u;
  int sweeps = 0;
  double residual = 0.0;
  bool converged = false;
  std::vector<double> residual_history;  // sup-change after each sweep
};

// Fixed point of the monotone Bellman update for lambda*u + |grad u| = f:
//   u(x) <- min( f(x)/lambda,
//                min over neighbor nodes y of
//                  (1 - e^(-lambda d(x,y))) f_xy / lambda
//                  + e^(-lambda d(x,y)) u(y) )
// iterated in alternating node order until the sup-change drops below tol;
// boundary points are clamped to their data. Starts from u = max f / lambda,
// so every sweep is non-increasing.
DiscountedResult solve_discounted(std::shared_ptr<const SolverGrid> grid,
                                  const HamiltonianSpec& H,
                                  const std::vector<FieldSource>* boundary,
                                  double tol, int max_sweeps);
DiscountedResult solve_discounted(std::shared_ptr<const MetricNetwork> net,
                                  const HamiltonianSpec& H,
                                  const std::vector<FieldSource>* boundary,
                                  double tol, int max_sweeps,
                                  double spacing = 0.0);

// Hopf-Lax evolution for H(p) = speed * p:
//   u(t, x) = inf { u0(y) : d(x, y) <= speed * t }.
// The infimum runs over the piecewise-linear interpolant, including the
// exact ball-boundary cut points, so it is exact for interpolated data.
ScalarField hopf_lax_evolve(const ScalarField& u0, double t, double speed = 1.0);

enum class CheckMode { Sub, Super };

struct Violation {
  NetPoint anchor;
  double k = 0.0;
  NetPoint x;            // the touching point
  double h_value = 0.0;  // H(x, u(x), k d(anchor, x))
  CheckMode mode = CheckMode::Sub;
  double dist_to_anchor = 0.0;
};

// Squared-distance viscosity test: for every anchor a and every k >= 0,
// locate the discrete local maxima of u - (k/2) d(a,.)^2 over the node set
// (Super: minima of u + (k/2) d(a,.)^2), "local" meaning over the
// radius-ball in the intrinsic metric, plateaus reporting their lowest node
// id; at each touching point evaluate H(x, u(x), k d(a, x)) and record a
// violation when the sign condition fails by more than tol. Empty = PASS.
std::vector<Violation> viscosity_check(const ScalarField& u,
                                       const HamiltonianSpec& H, CheckMode mode,
                                       const std::vector<NetPoint>& anchors,
                                       const std::vector<double>& k_grid,
                                       double radius, double tol);

// CSV: anchor, k, x, h_value, mode (points serialized as edge:offset).
void write_violations_csv(std::ostream& os, const std::vector<Violation>& v);

}  // namespace hjnet
