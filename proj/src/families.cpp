#include "hjnet/families.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace hjnet {

namespace {

using nlohmann::json;

Box parse_window(const json& j) {
  if (!j.is_array() || j.size() != 4)
    throw std::invalid_argument("\"window\" must be [x0, y0, x1, y1]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
          j[3].get<double>()};
}

MetricNetwork build_space_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "vicsek") return vicsek(j.at("n").get<int>());
  if (kind == "koch") return koch(j.at("n").get<int>());
  if (kind == "sierpinski_network") return sierpinski_network(j.at("n").get<int>());
  if (kind == "sierpinski_vertices") return sierpinski_vertices(j.at("n").get<int>());
  if (kind == "lattice")
    return lattice_lines(j.at("n").get<int>(), parse_window(j.at("window")));
  if (kind == "yjunction") return y_junction(j.value("length", 1.0));
  if (kind == "yjunction_tube") {
    const int n = j.at("n").get<int>();
    const double arm = j.value("arm_length", 1.0);
    const double h = j.value("h_mesh", 1.0 / (8.0 * n));
    PlanarDomainMesh mesh = y_junction_tube(n, arm, h);
    return MetricNetwork(*mesh.graph);
  }
  if (kind == "circle") return circle_network(j.value("segments", 720));
  if (kind == "arc")
    return arc_network(j.at("theta_max").get<double>(), j.value("segments", 720));
  if (kind == "interval") {
    const double a = j.value("from", 0.0);
    const double b = j.value("to", 1.0);
    return segment_network({a, 0.0}, {b, 0.0});
  }
  throw std::invalid_argument("unknown space kind \"" + kind + "\"");
}

}  // namespace

std::shared_ptr<const MetricNetwork> build_space(const std::string& descriptor_json) {
  return std::make_shared<const MetricNetwork>(
      build_space_json(json::parse(descriptor_json)));
}

SpaceSequence build_sequence(const std::string& family_json) {
  const json j = json::parse(family_json);
  const std::string family = j.at("family").get<std::string>();
  std::vector<int> levels = j.at("levels").get<std::vector<int>>();
  if (levels.empty()) throw std::invalid_argument("family needs nonempty \"levels\"");

  SpaceSequence seq;
  auto add_network_levels = [&](auto&& make) {
    for (int n : levels)
      seq.levels.push_back({n, Space::network(
                                   std::make_shared<const MetricNetwork>(make(n)))});
  };

  if (family == "sierpinski") {
    const int proxy = j.value("limit_level", 10);
    add_network_levels([](int n) { return sierpinski_network(n); });
    seq.limit = Space::network(
        std::make_shared<const MetricNetwork>(sierpinski_network(proxy)));
    seq.ambient = AmbientMetric::Euclidean;
  } else if (family == "vicsek") {
    const int proxy = j.value("limit_level", 6);
    add_network_levels([](int n) { return vicsek(n); });
    seq.limit = Space::network(std::make_shared<const MetricNetwork>(vicsek(proxy)));
    seq.ambient = AmbientMetric::Euclidean;
  } else if (family == "koch") {
    const int proxy = j.value("limit_level", 8);
    add_network_levels([](int n) { return koch(n); });
    seq.limit = Space::network(std::make_shared<const MetricNetwork>(koch(proxy)));
    seq.ambient = AmbientMetric::Euclidean;
  } else if (family == "lattice") {
    const Box window = parse_window(j.at("window"));
    add_network_levels([&](int n) { return lattice_lines(n, window); });
    seq.limit = Space::manhattan_plane(window);
    seq.ambient = AmbientMetric::Manhattan;
  } else if (family == "arc") {
    const int segments = j.value("segments", 720);
    const double two_pi = 2.0 * 3.14159265358979323846;
    add_network_levels([&](int n) {
      return arc_network(two_pi - 1.0 / n, segments);
    });
    seq.limit =
        Space::network(std::make_shared<const MetricNetwork>(circle_network(segments)));
    seq.ambient = AmbientMetric::Euclidean;
  } else {
    throw std::invalid_argument("unknown family \"" + family + "\"");
  }
  return seq;
}

}  // namespace hjnet
