#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct run_result {
  int code;
  std::string out; // stdout + stderr
};

run_result run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + WUNKLAB_CLI_PATH + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("wunklab_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

json p0_json() {
  return json{{"delta", 0.108}, {"sigma", 0.0}, {"epsilon", 6.0},
              {"kappa", 1.0},   {"gamma", 500.0}, {"a", 1.0},
              {"mu_w", 0.15},   {"eta", 0.0},   {"phi", 1.5}};
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << j.dump(2);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("run writes a deterministic trajectory CSV") {
  const auto dir = fresh_dir("run");
  const auto cfg = dir / "config.json";
  write_json(cfg, json{{"schema_version", 1},
                       {"params", p0_json()},
                       {"scenario", {{"kind", "zlb_episode"}, {"T", 2.0}}},
                       {"numerics", {{"step", 0.01}}},
                       {"output", {{"directory", (dir / "out").string()}}}});
  auto r = run_cli("run --config " + cfg.string());
  CHECK(r.code == 0);
  const auto csv_path = dir / "out" / "trajectory.csv";
  CHECK(r.out.find("trajectory.csv") != std::string::npos);
  REQUIRE(fs::exists(csv_path));
  const std::string csv1 = slurp(csv_path);
  CHECK(csv1.rfind("t,x,pi,regime\n", 0) == 0);
  // 201 samples + header
  size_t lines = 0;
  for (char c : csv1)
    if (c == '\n') ++lines;
  CHECK(lines == 202);

  auto r2 = run_cli("run --config " + cfg.string());
  CHECK(r2.code == 0);
  CHECK(slurp(csv_path) == csv1); // byte-identical rerun

  auto r3 = run_cli("run --config " + cfg.string() + " --emit-plot-script");
  CHECK(r3.code == 0);
  CHECK(fs::exists(dir / "out" / "plot_trajectory.py"));
}

TEST_CASE("config errors exit with status 2 and name the problem") {
  SUBCASE("missing file") {
    auto r = run_cli("run --config /nonexistent/nope.json");
    CHECK(r.code == 2);
    CHECK(r.out.find("nope.json") != std::string::npos);
  }
  SUBCASE("unknown top-level key") {
    const auto dir = fresh_dir("badkey");
    const auto cfg = dir / "config.json";
    write_json(cfg, json{{"schema_version", 1}, {"params", p0_json()}, {"extras", 1}});
    auto r = run_cli("check-wunk --config " + cfg.string());
    CHECK(r.code == 2);
    CHECK(r.out.find("extras") != std::string::npos);
  }
  SUBCASE("wrong schema version") {
    const auto dir = fresh_dir("schema");
    const auto cfg = dir / "config.json";
    write_json(cfg, json{{"schema_version", 2}, {"params", p0_json()}});
    auto r = run_cli("check-wunk --config " + cfg.string());
    CHECK(r.code == 2);
    CHECK(r.out.find("schema_version") != std::string::npos);
  }
  SUBCASE("bad parameter value") {
    const auto dir = fresh_dir("badparam");
    const auto cfg = dir / "config.json";
    auto params = p0_json();
    params["epsilon"] = 0.5;
    write_json(cfg, json{{"schema_version", 1}, {"params", params}});
    auto r = run_cli("check-wunk --config " + cfg.string());
    CHECK(r.code == 2);
    CHECK(r.out.find("epsilon") != std::string::npos);
  }
}

TEST_CASE("numeric failures exit with status 3 and a diagnostic") {
  const auto dir = fresh_dir("numeric");
  const auto cfg = dir / "config.json";
  auto params = p0_json();
  params["mu_w"] = 0.0;
  write_json(cfg, json{{"schema_version", 1},
                       {"params", params},
                       {"scenario",
                        {{"kind", "zlb_episode"}, {"T", 300.0}, {"sigma_zlb", 0.13}}},
                       {"output", {{"directory", (dir / "out").string()}}}});
  auto r = run_cli("run --config " + cfg.string());
  CHECK(r.code == 3);
  const auto pos = r.out.find('{');
  REQUIRE(pos != std::string::npos);
  auto diag = json::parse(r.out.substr(pos, r.out.find('\n', pos) - pos));
  CHECK(diag.at("error").get<std::string>() == "positivity");
  CHECK(!diag.at("message").get<std::string>().empty());
}

TEST_CASE("sweep assembles results in input order") {
  const auto dir = fresh_dir("sweep");
  const auto cfg = dir / "config.json";
  write_json(cfg, json{{"schema_version", 1},
                       {"params", p0_json()},
                       {"scenario", {{"kind", "zlb_episode"}, {"T", 1.0}}},
                       {"numerics", {{"step", 0.01}}},
                       {"output", {{"directory", (dir / "out").string()}}}});
  auto r = run_cli("sweep --config " + cfg.string() + " --param T --values 4,1,2");
  CHECK(r.code == 0);
  const std::string summary = slurp(dir / "out" / "sweep.csv");
  std::istringstream is(summary);
  std::string line;
  REQUIRE(std::getline(is, line));
  CHECK(line == "T,x0,pi0");
  double last_x0 = 0.0;
  std::vector<double> Ts, x0s;
  while (std::getline(is, line)) {
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    Ts.push_back(std::stod(cell));
    std::getline(row, cell, ',');
    x0s.push_back(std::stod(cell));
  }
  REQUIRE(Ts.size() == 3);
  CHECK(Ts[0] == 4.0);
  CHECK(Ts[1] == 1.0);
  CHECK(Ts[2] == 2.0);
  // a longer wealth-economy trap starts deeper
  CHECK(x0s[0] < x0s[2]);
  CHECK(x0s[2] < x0s[1]);
  for (const char* f : {"trajectory_000.csv", "trajectory_001.csv", "trajectory_002.csv"})
    CHECK(fs::exists(dir / "out" / f));
  (void)last_x0;

  auto bad = run_cli("sweep --config " + cfg.string() + " --param beta --values 1,2");
  CHECK(bad.code == 2);
}

TEST_CASE("classify, nullclines, statics, and check-wunk emit JSON") {
  const auto dir = fresh_dir("json_cmds");
  const auto cfg = dir / "config.json";
  write_json(cfg,
             json{{"schema_version", 1},
                  {"params", p0_json()},
                  {"statistics", {{"delta", 0.108}, {"r_n", 0.005}, {"lambda", 0.004}}}});

  auto rc = run_cli("classify --config " + cfg.string() + " --regime zlb");
  CHECK(rc.code == 0);
  auto jc = json::parse(rc.out);
  CHECK(jc.at("kind").get<std::string>() == "nodal_source");
  CHECK(jc.at("steady_state")[0].get<double>() == doctest::Approx(0.396190).epsilon(1e-6));

  auto rn = run_cli("nullclines --config " + cfg.string() + " --regime zlb");
  CHECK(rn.code == 0);
  auto jn = json::parse(rn.out);
  CHECK(jn.at("euler").at("slope").get<double>() == doctest::Approx(0.15));

  auto rs = run_cli("statics --config " + cfg.string() + " --shock mu_w");
  CHECK(rs.code == 0);
  auto js = json::parse(rs.out);
  CHECK(js.at("paradox").get<std::string>() == "thrift");
  CHECK(js.at("verdict").get<std::string>() == "pass");

  auto rw = run_cli("check-wunk --config " + cfg.string());
  CHECK(rw.code == 0);
  auto jw = json::parse(rw.out);
  CHECK(jw.at("holds").get<bool>());
  CHECK(jw.at("statistics").at("holds").get<bool>());
}

TEST_CASE("phase-field writes a CSV grid") {
  const auto dir = fresh_dir("field");
  const auto cfg = dir / "config.json";
  write_json(cfg, json{{"schema_version", 1},
                       {"params", p0_json()},
                       {"output", {{"directory", (dir / "out").string()}}}});
  auto r = run_cli("phase-field --config " + cfg.string() +
                   " --regime zlb --x-min 0.5 --x-max 1.0 --nx 4 --pi-min -0.05"
                   " --pi-max 0.05 --npi 4");
  CHECK(r.code == 0);
  const std::string csv = slurp(dir / "out" / "phase_field.csv");
  CHECK(csv.rfind("x,pi,dx,dpi\n", 0) == 0);
  size_t lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == 17); // header + 4x4
}

TEST_CASE("thresholds subcommand") {
  const auto dir = fresh_dir("thresh");
  const auto cfg = dir / "config.json";
  auto params = p0_json();
  params["mu_w"] = 0.0;
  write_json(cfg, json{{"schema_version", 1},
                       {"params", params},
                       {"scenario",
                        {{"kind", "forward_guidance"},
                         {"T", 8.0},
                         {"sigma_zlb", 0.13}}},
                       {"numerics", {{"tol", 1e-6}, {"step", 1e-3}}}});
  auto r = run_cli("thresholds --config " + cfg.string() + " --which delta-star");
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j.at("value").get<double>() == doctest::Approx(2.8137).epsilon(1e-2));
  CHECK(j.at("residual").get<double>() < 1e-6);

  auto bad = run_cli("thresholds --config " + cfg.string() + " --which q-star");
  CHECK(bad.code == 2);
}

TEST_CASE("discrete-check reports coefficients and the forward solution") {
  const auto dir = fresh_dir("disc");
  const auto cfg = dir / "config.json";
  write_json(cfg, json{{"schema_version", 1},
                       {"params", p0_json()},
                       {"discrete",
                        {{"i", {-0.017, -0.017}},
                         {"pi_next", {0.0, 0.01}},
                         {"r_n", -0.017}}}});
  auto r = run_cli("discrete-check --config " + cfg.string());
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  const double alpha = j.at("alpha").get<double>();
  CHECK(alpha == doctest::Approx(0.887892).epsilon(1e-6));
  CHECK(j.at("phillips_coeff").get<double>() == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(j.at("forward_solve").at("y_hat0").get<double>() ==
        doctest::Approx(alpha * alpha * 0.01).epsilon(1e-9));

  // mismatched sequence lengths are a config error
  write_json(cfg, json{{"schema_version", 1},
                       {"params", p0_json()},
                       {"discrete",
                        {{"i", {-0.017}}, {"pi_next", {0.0, 0.01}}, {"r_n", -0.017}}}});
  auto bad = run_cli("discrete-check --config " + cfg.string());
  CHECK(bad.code == 2);
}
