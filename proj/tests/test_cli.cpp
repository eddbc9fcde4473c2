#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hjnet/network.hpp"

#ifndef HJNET_CLI
#error "HJNET_CLI must point at the built binary"
#endif

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const fs::path dir = fs::temp_directory_path() / "hjnet_cli_test";
  fs::create_directories(dir);
  const fs::path out_file = dir / "stdout.txt";
  const std::string cmd =
      std::string(HJNET_CLI) + " " + args + " > " + out_file.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WEXITSTATUS(rc), ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const fs::path kDir = fs::temp_directory_path() / "hjnet_cli_test";

}  // namespace

TEST_CASE("cmd_build writes a loadable network with the right shape") {
  fs::create_directories(kDir);
  const auto koch = run("build --desc '{\"kind\":\"koch\",\"n\":3}' --out " +
                        (kDir / "koch3.json").string());
  CHECK(koch.exit_code == 0);
  const hjnet::MetricNetwork net = hjnet::load_network((kDir / "koch3.json").string());
  CHECK(net.edge_count() == 64);  // 4^3 edges of length 1/27
  for (int e = 0; e < net.edge_count(); ++e)
    CHECK(net.edge(e).length == doctest::Approx(1.0 / 27.0).epsilon(1e-12));

  const auto cross = run("build --desc '{\"kind\":\"vicsek\",\"n\":0}' --out " +
                         (kDir / "v0.json").string());
  CHECK(cross.exit_code == 0);
  const hjnet::MetricNetwork v0 = hjnet::load_network((kDir / "v0.json").string());
  CHECK(v0.vertex_count() == 5);
  CHECK(v0.edge_count() == 4);

  const auto lat = run(
      "build --desc '{\"kind\":\"lattice\",\"n\":2,\"window\":[0,0,1,1]}' --out " +
      (kDir / "lat2.json").string());
  CHECK(lat.exit_code == 0);
  const hjnet::MetricNetwork l2 = hjnet::load_network((kDir / "lat2.json").string());
  CHECK(l2.vertex_count() == 9);  // connected 3x3 crossings (validated on load)

  CHECK(run("build --desc '{\"kind\":\"nope\"}' --out /tmp/x.json").exit_code != 0);
}

TEST_CASE("cmd_dist prints the Koch endpoint distance with a config header") {
  const auto res = run("dist --space '{\"kind\":\"koch\",\"n\":4}' --a @0,0 --b @1,0");
  CHECK(res.exit_code == 0);
  CHECK(res.out.rfind("# {", 0) == 0);
  std::istringstream ss(res.out);
  std::string header, value;
  std::getline(ss, header);
  std::getline(ss, value);
  CHECK(std::stod(value) == doctest::Approx(std::pow(4.0 / 3.0, 4)).epsilon(1e-12));
}

TEST_CASE("cmd_hausdorff lattice vs plane") {
  const auto res = run(
      "hausdorff --a '{\"kind\":\"lattice\",\"n\":4,\"window\":[0,0,1,1]}' "
      "--b '{\"kind\":\"plane\",\"window\":[0,0,1,1]}' --density 0.01");
  CHECK(res.exit_code == 0);
  std::istringstream ss(res.out);
  std::string header, value;
  std::getline(ss, header);
  std::getline(ss, value);
  // Cell centers sit at distance 1/(2n) from the lattice lines.
  CHECK(std::stod(value) == doctest::Approx(0.125).epsilon(0.1));
}

TEST_CASE("cmd_solve writes the field CSV; interval eikonal equals the offset") {
  fs::create_directories(kDir);
  {
    std::ofstream cfg(kDir / "solve.json");
    cfg << R"({"space": {"kind":"interval","from":0,"to":1},
               "solver": "eikonal", "f": 1.0, "h_solver": 0.125,
               "boundary": [[[0, 0], 0.0]]})";
  }
  const auto res = run("solve --config " + (kDir / "solve.json").string() + " --out " +
                       (kDir / "field.csv").string());
  CHECK(res.exit_code == 0);
  const std::string csv = slurp(kDir / "field.csv");
  CHECK(csv.rfind("# {", 0) == 0);
  CHECK(csv.find("node,edge,offset,x,y,value") != std::string::npos);
  // value column equals offset column on every row.
  std::istringstream lines(csv);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'n') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 6);
    CHECK(std::stod(cells[5]) == doctest::Approx(std::stod(cells[2])).epsilon(1e-12));
    ++rows;
  }
  CHECK(rows == 9);
}

TEST_CASE("cmd_check_h2 exit code tracks the verdict; reruns are byte-identical") {
  fs::create_directories(kDir);
  {
    std::ofstream cfg(kDir / "h2_pass.json");
    cfg << R"({"sequence": {"family":"sierpinski","levels":[2,3,4],"limit_level":6},
               "pairs": 32, "seed": 17, "tol": 0.15, "density": 0.015625})";
  }
  const auto pass1 = run("check-h2 --config " + (kDir / "h2_pass.json").string() +
                         " --out " + (kDir / "h2a.csv").string());
  const auto pass2 = run("check-h2 --config " + (kDir / "h2_pass.json").string() +
                         " --out " + (kDir / "h2b.csv").string());
  CHECK(pass1.exit_code == 0);
  CHECK(slurp(kDir / "h2a.csv") == slurp(kDir / "h2b.csv"));

  {
    std::ofstream cfg(kDir / "h2_fail.json");
    cfg << R"({"sequence": {"family":"arc","levels":[5,25],"segments":180},
               "pairs": 4000, "seed": 2, "tol": 0.05, "density": 0.05})";
  }
  const auto fail = run("check-h2 --config " + (kDir / "h2_fail.json").string() +
                        " --out " + (kDir / "h2f.csv").string());
  CHECK(fail.exit_code == 1);
  CHECK(slurp(kDir / "h2f.csv").find("FAIL") != std::string::npos);
}

TEST_CASE("cmd_stability emits report and plot data") {
  fs::create_directories(kDir);
  {
    std::ofstream cfg(kDir / "stab.json");
    cfg << R"({"sequence": {"family":"sierpinski","levels":[2,3],"limit_level":5},
               "solver": "eikonal", "boundary": [[[-0.5, 0], 0.0]],
               "density": 0.03125, "pairs": 16, "seed": 9, "tol": 0.3})";
  }
  const auto res = run("stability --config " + (kDir / "stab.json").string() +
                       " --out " + (kDir / "stab_out").string());
  CHECK(res.exit_code == 0);
  const std::string report = slurp(kDir / "stab_out/report.csv");
  CHECK(report.find("n,hausdorff,h2_gap,sup_error") != std::string::npos);
  const std::string plot = slurp(kDir / "stab_out/plot.dat");
  CHECK(!plot.empty());
}

TEST_CASE("cmd_viscosity_check round trips a solved field") {
  fs::create_directories(kDir);
  {
    std::ofstream cfg(kDir / "vsolve.json");
    cfg << R"({"space": {"kind":"sierpinski_network","n":2},
               "solver": "eikonal", "f": 1.0, "h_solver": 0.03125,
               "boundary": [[[-0.5, 0], 0.0]]})";
  }
  REQUIRE(run("solve --config " + (kDir / "vsolve.json").string() + " --out " +
              (kDir / "vfield.csv").string())
              .exit_code == 0);
  REQUIRE(run("build --desc '{\"kind\":\"sierpinski_network\",\"n\":2}' --out " +
              (kDir / "g2.json").string())
              .exit_code == 0);
  // The solved field passes the subsolution test away from the source.
  const auto ok = run("viscosity-check --net " + (kDir / "g2.json").string() +
                      " --field " + (kDir / "vfield.csv").string() +
                      " --lambda 0 --f 1 --mode sub --anchors '@0.5,0;@0,0.87' "
                      "--k-grid '0;1;2' --radius 0.2 --tol 0.4 --out " +
                      (kDir / "viol.csv").string());
  CHECK(ok.exit_code == 0);
  CHECK(slurp(kDir / "viol.csv").find("anchor,k,x,h_value,mode") != std::string::npos);
}
