#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "hjnet/spaces.hpp"
#include "test_util.hpp"

using namespace hjnet;
using namespace hjnet::testutil;

namespace {

double total_length(const MetricNetwork& net) {
  return net.total_length();
}

}  // namespace

TEST_CASE("ifs_prefractal level 0 returns the seed unchanged") {
  const MetricNetwork k0 = ifs_prefractal(koch_ifs(), koch_seed(), 0);
  CHECK(k0.vertex_count() == 2);
  CHECK(k0.edge_count() == 1);
  CHECK(k0.edge(0).length == 1.0);
}

TEST_CASE("vicsek K_1 total edge length") {
  // Five scaled copies of the length-12 cross: 5 * (1/3) * 12 = 20,
  // checked by summing the edge lengths directly.
  const MetricNetwork k1 = vicsek(1);
  double sum = 0.0;
  for (int e = 0; e < k1.edge_count(); ++e) sum += k1.edge(e).length;
  CHECK(sum == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(total_length(vicsek(0)) == doctest::Approx(12.0));
}

TEST_CASE("vicsek(0) tip-to-tip distance runs through the center") {
  auto k0 = share(vicsek(0));
  CHECK(k0->distance(k0->locate({-3, 0}), k0->locate({3, 0})) == doctest::Approx(6.0));
}

TEST_CASE("koch K_1 is four segments of length 1/3") {
  const MetricNetwork k1 = koch(1);
  CHECK(k1.edge_count() == 4);
  for (int e = 0; e < 4; ++e)
    CHECK(k1.edge(e).length == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("koch endpoint distance is (4/3)^n") {
  for (int n = 0; n <= 6; ++n) {
    auto k = share(koch(n));
    const double d = k->distance(k->locate({0, 0}), k->locate({1, 0}));
    CHECK(rel_close(d, std::pow(4.0 / 3.0, n), 1e-12));
  }
}

TEST_CASE("non-similarity maps are rejected") {
  AffineMap shear;
  shear.m[0][0] = 0.5;
  shear.m[0][1] = 0.2;
  shear.m[1][0] = 0.0;
  shear.m[1][1] = 0.5;
  CHECK_THROWS_AS(ifs_prefractal({{shear}}, koch_seed(), 1), std::invalid_argument);
  AffineMap expanding;
  expanding.m[0][0] = expanding.m[1][1] = 1.5;
  expanding.m[0][1] = expanding.m[1][0] = 0.0;
  CHECK_THROWS_AS(ifs_prefractal({{expanding}}, koch_seed(), 1), std::invalid_argument);
}

TEST_CASE("weld-tolerance collapse of a distinct edge is an error") {
  // A near-degenerate similarity crushes the whole seed below the weld
  // scale; both endpoints of an edge merge and the construction refuses.
  AffineMap crush;
  crush.m[0][0] = crush.m[1][1] = 1e-10;
  crush.m[0][1] = crush.m[1][0] = 0.0;
  CHECK_THROWS_AS(ifs_prefractal({{crush}}, koch_seed(), 1), std::runtime_error);
}

TEST_CASE("sierpinski_network(0) is the unit triangle boundary") {
  const MetricNetwork g0 = sierpinski_network(0);
  CHECK(g0.vertex_count() == 3);
  CHECK(g0.edge_count() == 3);
  for (int e = 0; e < 3; ++e) CHECK(g0.edge(e).length == 1.0);
}

TEST_CASE("sierpinski counts and nesting") {
  const MetricNetwork g3 = sierpinski_network(3);
  CHECK(g3.edge_count() == 81);  // 3^(n+1)
  const MetricNetwork v3 = sierpinski_vertices(3);
  CHECK(v3.edge_count() == 81);
  CHECK(v3.vertex_count() == g3.vertex_count());
  for (int e = 0; e < v3.edge_count(); ++e)
    CHECK(v3.edge(e).length == std::ldexp(1.0, -3));
}

TEST_CASE("sierpinski restriction: V_n graph vs network vs deeper network") {
  auto v2 = share(sierpinski_vertices(2));
  auto g2 = share(sierpinski_network(2));
  auto g4 = share(sierpinski_network(4));
  Rng rng(19);
  for (int i = 0; i < 60; ++i) {
    const int a = static_cast<int>(rng.index(v2->vertex_count()));
    const int b = static_cast<int>(rng.index(v2->vertex_count()));
    const AmbientPoint pa = v2->vertex(a);
    const AmbientPoint pb = v2->vertex(b);
    const double dv = v2->distance(v2->vertex_point(a), v2->vertex_point(b));
    const double dg = g2->distance(g2->locate(pa), g2->locate(pb));
    const double dd = g4->distance(g4->locate(pa), g4->locate(pb));
    CHECK(close(dv, dg, 1e-9));
    CHECK(close(dv, dd, 1e-9));
  }
}

TEST_CASE("vicsek prefractals embed isometrically") {
  auto k1 = share(vicsek(1));
  auto k3 = share(vicsek(3));
  Rng rng(23);
  for (int i = 0; i < 60; ++i) {
    const int a = static_cast<int>(rng.index(k1->vertex_count()));
    const int b = static_cast<int>(rng.index(k1->vertex_count()));
    const double d1 = k1->distance(k1->vertex_point(a), k1->vertex_point(b));
    const double d3 = k3->distance(k3->locate(k1->vertex(a)), k3->locate(k1->vertex(b)));
    CHECK(close(d1, d3, 1e-9));
  }
}

TEST_CASE("sierpinski metric equivalence d^E <= d_graph <= 8 d^E") {
  auto g4 = share(sierpinski_network(4));
  Rng rng(29);
  for (int i = 0; i < 200; ++i) {
    const NetPoint a = g4->random_point(rng);
    const NetPoint b = g4->random_point(rng);
    const double dg = g4->distance(a, b);
    const double de = euclidean(g4->position(a), g4->position(b));
    CHECK(dg >= de - 1e-12);
    CHECK(dg <= 8.0 * de + 1e-12);
  }
}

TEST_CASE("lattice_lines basics") {
  const Box window{0, 0, 2, 2};
  auto l1 = share(lattice_lines(1, window));
  CHECK(l1->vertex_count() == 9);
  CHECK(l1->edge_count() == 12);
  CHECK(l1->distance(l1->locate({0, 0}), l1->locate({2, 2})) == doctest::Approx(4.0));

  // Off-crossing pair: enumerate the three routing rows by hand.
  const NetPoint a = l1->locate({0.0, 0.3});
  const NetPoint b = l1->locate({1.0, 0.4});
  const double via_y0 = 0.3 + 1.0 + 0.4;
  const double via_y1 = 0.7 + 1.0 + 0.6;
  const double via_y2 = 1.7 + 1.0 + 1.6;
  const double oracle = std::min({via_y0, via_y1, via_y2});
  CHECK(oracle == doctest::Approx(1.7).epsilon(1e-15));
  CHECK(l1->distance(a, b) == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(manhattan_distance({0.0, 0.3}, {1.0, 0.4}) == doctest::Approx(1.1));
}

TEST_CASE("lattice_lines clips at the window and stays connected") {
  auto l2 = share(lattice_lines(2, Box{0.1, 0.1, 0.9, 0.9}));
  // One crossing at (0.5, 0.5) plus four stubs.
  CHECK(l2->vertex_count() == 5);
  CHECK(l2->edge_count() == 4);
  // A window catching two parallel lines and no perpendicular one must fail.
  CHECK_THROWS_AS(lattice_lines(2, Box{0.1, 0.6, 0.9, 0.9}), std::runtime_error);
  // A window with no lattice line at all must fail.
  CHECK_THROWS_AS(lattice_lines(1, Box{0.1, 0.1, 0.4, 0.4}), std::runtime_error);
}

TEST_CASE("manhattan_distance examples") {
  CHECK(manhattan_distance({0, 0}, {2, 3}) == 5.0);
  CHECK(manhattan_distance({1, 1}, {1, 1}) == 0.0);
  CHECK(manhattan_distance({0, 0}, {-1, -1}) == 2.0);
}

TEST_CASE("y_junction geometry") {
  auto j = share(y_junction(1.5));
  const auto e = y_junction_directions();
  for (int i = 0; i < 3; ++i) {
    const NetPoint tip = j->locate({1.5 * e[i].x, 1.5 * e[i].y});
    CHECK(j->distance(j->vertex_point(0), tip) == doctest::Approx(1.5));
  }
  // Tips pairwise at distance 2 * length through the origin.
  const NetPoint t1 = j->locate({1.5 * e[0].x, 1.5 * e[0].y});
  const NetPoint t2 = j->locate({1.5 * e[1].x, 1.5 * e[1].y});
  CHECK(j->distance(t1, t2) == doctest::Approx(3.0));
  // Half-way points meet through the origin.
  const NetPoint h1 = j->locate({0.5 * e[0].x, 0.5 * e[0].y});
  const NetPoint h2 = j->locate({0.5 * e[1].x, 0.5 * e[1].y});
  CHECK(j->distance(h1, h2) == doctest::Approx(1.0));
}

TEST_CASE("y_junction_tube mesh stays inside the 1/n sleeve") {
  for (int n : {2, 4}) {
    const PlanarDomainMesh mesh = y_junction_tube(n, 1.0, 1.0 / (8.0 * n));
    for (const auto& p : mesh.vertices)
      CHECK(distance_to_y_junction(p) <= 1.0 / n + 1e-9);
    // Every graph node too (Steiner points are convex combinations).
    for (int v = 0; v < mesh.graph->vertex_count(); ++v)
      CHECK(distance_to_y_junction(mesh.graph->vertex(v)) <= 1.0 / n + 1e-9);
  }
}

TEST_CASE("y_junction_tube graph dominates the Euclidean metric") {
  const PlanarDomainMesh mesh = y_junction_tube(2, 1.0, 1.0 / 16.0);
  auto g = mesh.graph;
  Rng rng(31);
  for (int i = 0; i < 60; ++i) {
    const int a = static_cast<int>(rng.index(g->vertex_count()));
    const int b = static_cast<int>(rng.index(g->vertex_count()));
    const double dg = g->distance(g->vertex_point(a), g->vertex_point(b));
    CHECK(dg >= euclidean(g->vertex(a), g->vertex(b)) - 1e-12);
  }
}

TEST_CASE("y_junction_tube straight-arm graph distances are near-exact") {
  // On one straight arm the planar intrinsic distance is the Euclidean one;
  // the derived graph must stay within the documented detour factor.
  const int n = 4;
  const double h = 1.0 / (8.0 * n);
  const PlanarDomainMesh mesh = y_junction_tube(n, 1.0, h);
  auto g = mesh.graph;
  const double factor = 1.0 + PlanarDomainMesh::kGraphDetourC * h / mesh.tube_width;
  const auto e = y_junction_directions();
  Rng rng(37);
  for (int i = 0; i < 40; ++i) {
    // Random points on arm 1's centerline strip, well inside the rectangle.
    const double s1 = rng.uniform(0.45, 0.95);
    const double s2 = rng.uniform(0.45, 0.95);
    const double t1 = rng.uniform(-0.9 / n, 0.9 / n);
    const double t2 = rng.uniform(-0.9 / n, 0.9 / n);
    const AmbientPoint p1{s1 * e[0].x - t1 * 0.0, s1 * e[0].y + t1 * 1.0};
    const AmbientPoint p2{s2 * e[0].x - t2 * 0.0, s2 * e[0].y + t2 * 1.0};
    const NetPoint q1 = nearest_vertex(*g, p1);
    const NetPoint q2 = nearest_vertex(*g, p2);
    const double truth = euclidean(g->position(q1), g->position(q2));
    if (truth < 4.0 * h) continue;  // snapping noise dominates tiny pairs
    const double dg = g->distance(q1, q2);
    CHECK(dg >= truth - 1e-12);
    CHECK(dg <= factor * truth + 2.0 * h);
  }
}

TEST_CASE("y_junction_tube junction crossing converges to the junction metric") {
  auto j = share(y_junction(1.0));
  const auto e = y_junction_directions();
  for (int n : {2, 4, 8}) {
    const double h = 1.0 / (8.0 * n);
    const PlanarDomainMesh mesh = y_junction_tube(n, 1.0, h);
    auto g = mesh.graph;
    const AmbientPoint a{1.0 * e[0].x, 1.0 * e[0].y};
    const AmbientPoint b{1.0 * e[1].x, 1.0 * e[1].y};
    const double d_tube = g->distance(nearest_vertex(*g, a), nearest_vertex(*g, b));
    CHECK(close(d_tube, 2.0, 2.0 / n + 2.0 * h));
  }
}

TEST_CASE("y_junction_tube rejects coarse meshes") {
  CHECK_THROWS_AS(y_junction_tube(4, 1.0, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(y_junction_tube(0, 1.0, 0.05), std::invalid_argument);
}

TEST_CASE("prefractal depth cap") {
  CHECK_THROWS_AS(vicsek(13), std::invalid_argument);
  CHECK_THROWS_AS(koch(-1), std::invalid_argument);
}

TEST_CASE("circle and arc networks carry exact arc lengths") {
  auto c = share(circle_network(360));
  CHECK(c->total_length() == doctest::Approx(2.0 * 3.14159265358979323846).epsilon(1e-12));
  // Antipodal points: half the circumference.
  const NetPoint p = c->locate({1, 0});
  const NetPoint q = c->locate({-1, 0});
  CHECK(c->distance(p, q) == doctest::Approx(3.14159265358979323846).epsilon(1e-6));
  auto a = share(arc_network(3.0, 300));
  CHECK(a->total_length() == doctest::Approx(3.0).epsilon(1e-12));
}
