// Batch front-end: build spaces, run metric and Hausdorff queries, solve the
// equations, and run convergence experiments. Every output file carries one
// JSON comment line with the fully resolved configuration, and all
// randomness flows from the configured seed (mt19937_64).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hjnet/csv.hpp"
#include "hjnet/families.hpp"
#include "hjnet/field.hpp"
#include "hjnet/solvers.hpp"
#include "hjnet/stability.hpp"

namespace {

using nlohmann::json;
using namespace hjnet;

std::shared_ptr<const MetricNetwork> load_space_arg(const std::string& arg) {
  // Either an inline JSON descriptor or a path to a network JSON file.
  if (!arg.empty() && arg.front() == '{') return build_space(arg);
  return std::make_shared<const MetricNetwork>(load_network(arg));
}

// Point syntax: "EDGE:OFFSET" on the network, or "@X,Y" for the nearest
// on-network point to an ambient location.
NetPoint parse_point(const MetricNetwork& net, const std::string& s) {
  if (!s.empty() && s.front() == '@') {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
      throw CLI::ValidationError("point", "expected @X,Y");
    return net.locate({std::stod(s.substr(1, comma - 1)), std::stod(s.substr(comma + 1))});
  }
  const auto colon = s.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError("point", "expected EDGE:OFFSET or @X,Y");
  return net.canonical({std::stoi(s.substr(0, colon)), std::stod(s.substr(colon + 1))});
}

std::ofstream open_out(const std::string& path) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  json j;
  in >> j;
  return j;
}

json header_base(const std::string& cmd, const json& config) {
  json h;
  h["cmd"] = cmd;
  h["config"] = config;
  h["rng"] = Rng::name();
  return h;
}

std::vector<std::pair<AmbientPoint, double>> parse_boundary(const json& j) {
  std::vector<std::pair<AmbientPoint, double>> out;
  for (const auto& b : j) {
    // [[x, y], g]
    out.push_back({{b.at(0).at(0).get<double>(), b.at(0).at(1).get<double>()},
                   b.at(1).get<double>()});
  }
  if (out.empty()) throw std::runtime_error("config: empty boundary");
  return out;
}

int cmd_build(const std::string& desc, const std::string& out_path) {
  auto net = build_space(desc);
  save_network(*net, out_path);
  json cfg{{"desc", json::parse(desc)}, {"out", out_path}};
  std::cout << "# " << header_base("build", cfg).dump() << "\n";
  std::cout << "wrote " << out_path << " (" << net->vertex_count() << " vertices, "
            << net->edge_count() << " edges)\n";
  return 0;
}

int cmd_dist(const std::string& space, const std::string& a, const std::string& b) {
  auto net = load_space_arg(space);
  const NetPoint pa = parse_point(*net, a);
  const NetPoint pb = parse_point(*net, b);
  json cfg{{"space", space}, {"a", a}, {"b", b}};
  std::cout << "# " << header_base("dist", cfg).dump() << "\n";
  std::cout << fmt_double(net->distance(pa, pb)) << "\n";
  return 0;
}

int cmd_hausdorff(const std::string& desc_a, const std::string& desc_b,
                  double density, const std::string& metric_name) {
  const AmbientMetric metric =
      metric_name == "manhattan" ? AmbientMetric::Manhattan : AmbientMetric::Euclidean;
  auto make_cloud = [&](const std::string& d) {
    const json j = json::parse(d);
    if (j.at("kind") == "plane") {
      Box w{j.at("window").at(0).get<double>(), j.at("window").at(1).get<double>(),
            j.at("window").at(2).get<double>(), j.at("window").at(3).get<double>()};
      return sample_box(w, density);
    }
    return sample(build_space(d), density);
  };
  const SampleCloud ca = make_cloud(desc_a);
  const SampleCloud cb = make_cloud(desc_b);
  json cfg{{"a", json::parse(desc_a)}, {"b", json::parse(desc_b)},
           {"density", density}, {"metric", metric_name}};
  std::cout << "# " << header_base("hausdorff", cfg).dump() << "\n";
  std::cout << fmt_double(hausdorff_distance(ca, cb, metric)) << "\n";
  return 0;
}

int cmd_solve(const json& cfg, const std::string& out_path) {
  auto net = cfg.contains("space_file")
                 ? std::make_shared<const MetricNetwork>(
                       load_network(cfg.at("space_file").get<std::string>()))
                 : build_space(cfg.at("space").dump());
  const std::string solver = cfg.value("solver", "eikonal");
  const double f = cfg.value("f", 1.0);
  const double h = cfg.value("h_solver", 0.0);
  std::vector<FieldSource> boundary;
  for (const auto& [pos, g] : parse_boundary(cfg.at("boundary")))
    boundary.emplace_back(net->locate(pos), g);

  std::optional<ScalarField> u;
  json hdr_extra;
  if (solver == "eikonal") {
    auto res = solve_eikonal(net, boundary, SpeedField{f}, h);
    u = res.u;
    hdr_extra["incompatible_pairs"] = res.incompatible.size();
    for (const auto& [p, q] : res.incompatible)
      std::cerr << "warning: incompatible boundary data near edge " << p.edge
                << ":" << fmt_double(p.offset) << "\n";
  } else if (solver == "discounted") {
    const double lambda = cfg.at("lambda").get<double>();
    auto res = solve_discounted(net, HamiltonianSpec::eikonal(lambda, SpeedField{f}),
                                &boundary, cfg.value("tol", 1e-10),
                                cfg.value("max_sweeps", 200000), h);
    if (!res.converged) {
      std::cerr << "error: discounted solver stopped at residual "
                << fmt_double(res.residual) << " after " << res.sweeps << " sweeps\n";
      return 1;
    }
    u = res.u;
    hdr_extra["sweeps"] = res.sweeps;
  } else {
    throw std::runtime_error("unknown solver \"" + solver + "\"");
  }

  auto out = open_out(out_path);
  json hdr = header_base("solve", cfg);
  for (auto& [k, v] : hdr_extra.items()) hdr[k] = v;
  write_header_comment(out, hdr.dump());
  write_field_csv(out, *u);
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

StabilityConfig stability_from_json(const json& cfg) {
  StabilityConfig sc;
  sc.seq = build_sequence(cfg.at("sequence").dump());
  sc.solver = cfg.value("solver", "eikonal") == std::string("discounted")
                  ? SolverKind::Discounted
                  : SolverKind::Eikonal;
  if (cfg.contains("lambda")) {
    if (cfg["lambda"].is_array())
      sc.lambda_per_level = cfg["lambda"].get<std::vector<double>>();
    else
      sc.lambda_per_level = {cfg["lambda"].get<double>()};
  }
  if (cfg.contains("f")) {
    if (cfg["f"].is_array())
      sc.f_per_level = cfg["f"].get<std::vector<double>>();
    else
      sc.f_per_level = {cfg["f"].get<double>()};
  }
  sc.boundary = parse_boundary(cfg.at("boundary"));
  sc.density = cfg.at("density").get<double>();
  sc.h_solver = cfg.value("h_solver", 0.0);
  sc.h2_pairs = cfg.value("pairs", 64);
  sc.seed = cfg.value("seed", 1);
  sc.tol = cfg.value("tol", 0.0);
  sc.semilimit_window = cfg.value("semilimit_window", 3);
  sc.abscissa = cfg.value("rate_abscissa", "level") == std::string("log2n")
                    ? RateAbscissa::Log2N
                    : RateAbscissa::Level;
  return sc;
}

int cmd_stability(const json& cfg, const std::string& out_dir) {
  const StabilityConfig sc = stability_from_json(cfg);
  const ConvergenceReport report = stability_experiment(sc);
  std::filesystem::create_directories(out_dir);
  {
    auto out = open_out(out_dir + "/report.csv");
    json hdr = header_base("stability", cfg);
    hdr["rate"] = report.rate;
    hdr["proxy_self_error"] = report.proxy_self_error;
    hdr["verdict"] = report.pass ? "PASS" : "FAIL";
    write_header_comment(out, hdr.dump());
    report.write_csv(out);
  }
  {
    auto out = open_out(out_dir + "/plot.dat");
    write_header_comment(out, header_base("stability-plot", cfg).dump());
    report.write_plot_data(out);
  }
  std::cout << "rate " << fmt_double(report.rate) << ", deepest sup error "
            << fmt_double(report.rows.back().sup_error) << ", verdict "
            << (report.pass ? "PASS" : "FAIL") << "\n";
  return report.pass ? 0 : 1;
}

int cmd_check_h2(const json& cfg, const std::string& out_path) {
  const SpaceSequence seq = build_sequence(cfg.at("sequence").dump());
  const H2Report report =
      check_h2(seq, cfg.value("pairs", 256), cfg.value("seed", 1),
               cfg.at("tol").get<double>(), cfg.at("density").get<double>());
  auto out = open_out(out_path);
  json hdr = header_base("check-h2", cfg);
  hdr["verdict"] = report.pass ? "PASS" : "FAIL";
  write_header_comment(out, hdr.dump());
  report.write_csv(out);
  std::cout << (report.pass ? "PASS" : "FAIL") << ", deepest max gap "
            << fmt_double(report.rows.back().max_gap) << "\n";
  return report.pass ? 0 : 1;
}

int cmd_viscosity_check(const std::string& net_path, const std::string& field_path,
                        double lambda, double f, const std::string& mode_name,
                        const std::string& anchors_arg, const std::string& ks_arg,
                        double radius, double tol, const std::string& out_path) {
  auto net = load_space_arg(net_path);
  std::ifstream fin(field_path);
  if (!fin) throw std::runtime_error("cannot open field " + field_path);
  const ScalarField u = read_field_csv(fin, net);

  std::vector<NetPoint> anchors;
  {
    std::istringstream ss(anchors_arg);
    std::string tok;
    while (std::getline(ss, tok, ';'))
      if (!tok.empty()) anchors.push_back(parse_point(*net, tok));
  }
  std::vector<double> ks;
  {
    std::istringstream ss(ks_arg);
    std::string tok;
    while (std::getline(ss, tok, ';'))
      if (!tok.empty()) ks.push_back(std::stod(tok));
  }
  const CheckMode mode = mode_name == "super" ? CheckMode::Super : CheckMode::Sub;
  const auto violations =
      viscosity_check(u, HamiltonianSpec::eikonal(lambda, SpeedField{f}), mode,
                      anchors, ks, radius, tol);
  auto out = open_out(out_path);
  json cfg{{"net", net_path},   {"field", field_path}, {"lambda", lambda},
           {"f", f},            {"mode", mode_name},   {"anchors", anchors_arg},
           {"k_grid", ks_arg},  {"radius", radius},    {"tol", tol}};
  json hdr = header_base("viscosity-check", cfg);
  hdr["violations"] = violations.size();
  write_header_comment(out, hdr.dump());
  write_violations_csv(out, violations);
  std::cout << violations.size() << " violation(s)\n";
  return violations.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geodesic network spaces, their intrinsic metrics, and "
               "Hamilton-Jacobi equations on them"};
  app.require_subcommand(1);

  std::string desc, out_path = "out.csv", out_dir = "out";
  std::string space_arg, point_a, point_b, desc_b, metric_name = "euclidean";
  std::string config_path, field_path, mode_name = "sub";
  std::string anchors_arg, ks_arg = "0;0.5;1;2;4";
  double density = 0.01, lambda = 0.0, f = 1.0, radius = 0.125, tol = 1e-6;
  std::optional<std::uint64_t> seed_override;
  std::optional<double> density_override;
  std::optional<std::vector<int>> levels_override;

  auto* build = app.add_subcommand("build", "build a space and write its network JSON");
  build->add_option("--desc", desc, "space descriptor JSON")->required();
  build->add_option("--out", out_path, "output network file")->required();

  auto* dist = app.add_subcommand("dist", "intrinsic distance between two points");
  dist->add_option("--space", space_arg, "network file or descriptor JSON")->required();
  dist->add_option("--a", point_a, "point EDGE:OFFSET or @X,Y")->required();
  dist->add_option("--b", point_b, "point EDGE:OFFSET or @X,Y")->required();

  auto* hd = app.add_subcommand("hausdorff", "sampled Hausdorff distance");
  hd->add_option("--a", desc, "space descriptor JSON (or {\"kind\":\"plane\",...})")
      ->required();
  hd->add_option("--b", desc_b, "space descriptor JSON")->required();
  hd->add_option("--density", density, "sampling density")->required();
  hd->add_option("--metric", metric_name, "euclidean|manhattan");

  auto* solve = app.add_subcommand("solve", "solve an equation, write the field CSV");
  solve->add_option("--config", config_path, "config JSON file")->required();
  solve->add_option("--out", out_path, "output CSV");

  auto* stab = app.add_subcommand("stability", "run a convergence experiment");
  stab->add_option("--config", config_path, "config JSON file")->required();
  stab->add_option("--out", out_dir, "output directory");
  stab->add_option("--seed", seed_override, "override config seed");
  stab->add_option("--density", density_override, "override config density");
  stab->add_option("--levels", levels_override, "override config levels")
      ->delimiter(',');

  auto* h2 = app.add_subcommand("check-h2", "empirical metric-convergence check");
  h2->add_option("--config", config_path, "config JSON file")->required();
  h2->add_option("--out", out_path, "output CSV");
  h2->add_option("--seed", seed_override, "override config seed");
  h2->add_option("--density", density_override, "override config density");
  h2->add_option("--levels", levels_override, "override config levels")
      ->delimiter(',');

  auto* vc = app.add_subcommand("viscosity-check",
                                "squared-distance sub/supersolution test");
  vc->add_option("--net", space_arg, "network file or descriptor")->required();
  vc->add_option("--field", field_path, "field CSV")->required();
  vc->add_option("--lambda", lambda, "Hamiltonian lambda");
  vc->add_option("--f", f, "Hamiltonian f (constant)");
  vc->add_option("--mode", mode_name, "sub|super");
  vc->add_option("--anchors", anchors_arg, "semicolon-separated points")->required();
  vc->add_option("--k-grid", ks_arg, "semicolon-separated k values");
  vc->add_option("--radius", radius, "locality radius");
  vc->add_option("--tol", tol, "sign tolerance");
  vc->add_option("--out", out_path, "output CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) return cmd_build(desc, out_path);
    if (dist->parsed()) return cmd_dist(space_arg, point_a, point_b);
    if (hd->parsed()) return cmd_hausdorff(desc, desc_b, density, metric_name);
    if (solve->parsed()) return cmd_solve(read_config(config_path), out_path);
    if (stab->parsed() || h2->parsed()) {
      json cfg = read_config(config_path);
      if (seed_override) cfg["seed"] = *seed_override;
      if (density_override) cfg["density"] = *density_override;
      if (levels_override) cfg["sequence"]["levels"] = *levels_override;
      return stab->parsed() ? cmd_stability(cfg, out_dir)
                            : cmd_check_h2(cfg, out_path);
    }
    if (vc->parsed())
      return cmd_viscosity_check(space_arg, field_path, lambda, f, mode_name,
                                 anchors_arg, ks_arg, radius, tol, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
