#include "hjnet/sequence.hpp"

#include <algorithm>
#include <stdexcept>

#include "hjnet/csv.hpp"

namespace hjnet {

SampleCloud Space::sample(double density) const {
  if (kind == Kind::Network) return hjnet::sample(net, density);
  return sample_box(window, density);
}

Space::Point Space::random_point(Rng& rng) const {
  if (kind == Kind::Network) {
    Point p;
    p.np = net->random_point(rng);
    p.pos = net->position(p.np);
    return p;
  }
  Point p;
  p.pos = {rng.uniform(window.x0, window.x1), rng.uniform(window.y0, window.y1)};
  return p;
}

double Space::distance(const Point& a, const Point& b) const {
  if (kind == Kind::Network) return net->distance(a.np, b.np);
  return manhattan(a.pos, b.pos);
}

double Space::cloud_distance(const SampleCloud& cloud, int i, int j) const {
  if (kind == Kind::Network) return net->distance(cloud.net_points[i], cloud.net_points[j]);
  return manhattan(cloud.positions[i], cloud.positions[j]);
}

H2Report check_h2(const SpaceSequence& seq, int pairs, std::uint64_t seed,
                  double tol, double density) {
  if (seq.levels.empty()) throw std::invalid_argument("check_h2: no levels");
  if (pairs < 1) throw std::invalid_argument("check_h2: pairs must be >= 1");

  Rng rng(seed);
  std::vector<std::pair<Space::Point, Space::Point>> pts;
  std::vector<double> limit_dist;
  pts.reserve(pairs);
  for (int i = 0; i < pairs; ++i) {
    auto a = seq.limit.random_point(rng);
    auto b = seq.limit.random_point(rng);
    limit_dist.push_back(seq.limit.distance(a, b));
    pts.emplace_back(std::move(a), std::move(b));
  }

  H2Report report;
  report.tol = tol;
  report.pairs = pairs;
  report.seed = seed;
  for (const auto& level : seq.levels) {
    const SampleCloud cloud = level.space.sample(density);
    if (cloud.size() == 0) throw std::runtime_error("check_h2: empty level space");
    PointIndex index(cloud.positions);
    H2Row row;
    row.n = level.n;
    double sum = 0.0;
    for (int i = 0; i < pairs; ++i) {
      const int ia = index.nearest(pts[i].first.pos, seq.ambient);
      const int ib = index.nearest(pts[i].second.pos, seq.ambient);
      const double dn = level.space.cloud_distance(cloud, ia, ib);
      const double gap = std::abs(dn - limit_dist[i]);
      sum += gap;
      if (gap > row.max_gap) {
        row.max_gap = gap;
        row.witness_a = pts[i].first.pos;
        row.witness_b = pts[i].second.pos;
        row.witness_level_distance = dn;
      }
    }
    row.mean_gap = sum / pairs;
    report.rows.push_back(row);
  }
  report.pass = report.rows.back().max_gap <= tol;
  return report;
}

void H2Report::write_csv(std::ostream& os) const {
  os << "n,max_gap,mean_gap,witness_a,witness_b,verdict\n";
  const char* verdict = pass ? "PASS" : "FAIL";
  for (const auto& r : rows) {
    os << r.n << ',' << fmt_double(r.max_gap) << ',' << fmt_double(r.mean_gap)
       << ',' << fmt_double(r.witness_a.x) << ':' << fmt_double(r.witness_a.y)
       << ',' << fmt_double(r.witness_b.x) << ':' << fmt_double(r.witness_b.y)
       << ',' << verdict << "\n";
  }
}

}  // namespace hjnet
