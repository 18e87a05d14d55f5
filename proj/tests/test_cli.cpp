#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

std::string g_cli;
std::filesystem::path g_tmp;

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const auto out_file = g_tmp / "stdout.txt";
  const std::string cmd = g_cli + " " + args + " > " + out_file.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WEXITSTATUS(raw), ss.str()};
}

std::filesystem::path write_file(const std::string& name, const std::string& text) {
  const auto path = g_tmp / name;
  std::ofstream(path) << text;
  return path;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("verify theorem suite passes") {
  const auto r = run_cli("verify --suite theorem --N 3 --kappa 1 --seed 11 --sample 50");
  INFO(r.out);
  CHECK(r.exit_code == 0);
}

TEST_CASE("verify higgs suite passes and reports residuals") {
  const auto out = (g_tmp / "higgs.json").string();
  const auto r =
      run_cli("verify --suite higgs --N 2 --kappa -1 --seed 5 --sample 50 --output " + out);
  INFO(r.out);
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(slurp(out));
  CHECK(doc.at("schema_version") == "1");
  REQUIRE(!doc.at("suites").at("higgs").empty());
  for (const auto& rep : doc.at("suites").at("higgs")) {
    CHECK(rep.at("pass").get<bool>());
    CHECK(rep.at("max_residual").get<double>() <= rep.at("tolerance").get<double>());
  }
}

TEST_CASE("malformed config exits with code 2") {
  const auto cfg = write_file("bad.json", "{\"model\": {\"N\": 3, \"kappa\": ");
  const auto r = run_cli("verify --suite theorem --config " + cfg.string());
  CHECK(r.exit_code == 2);
}

TEST_CASE("unknown config key is rejected by name") {
  const auto cfg = write_file("extra.json", R"({"model": {"N": 3, "kappa": 1.0, "kapa": 2.0}})");
  const auto r = run_cli("verify --suite theorem --config " + cfg.string());
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("kapa") != std::string::npos);
}

TEST_CASE("rank matches and mismatches the expectation") {
  const auto cfg = write_file(
      "gen3.json", R"({"model": {"N": 3, "kappa": 1.0, "K": 1.0, "b": [0.3, 0.5, 0.7]}})");
  auto r = run_cli("rank --config " + cfg.string() + " --seed 3 --points 20");
  INFO(r.out);
  CHECK(r.exit_code == 0);
  r = run_cli("rank --config " + cfg.string() + " --seed 3 --points 20 --expect 6");
  CHECK(r.exit_code == 1);
  r = run_cli("rank --config " + cfg.string() + " --seed 3 --points 20 --no-quartic --expect 4");
  CHECK(r.exit_code == 0);
}

TEST_CASE("simulate emits consistent json and csv") {
  const auto cfg = write_file("sim.json", R"({
    "model": {"N": 2, "kappa": 0.0, "K": 1.0, "b": [0.0, 0.0]},
    "simulate": {
      "start": {"chart": "beltrami", "q": [1.0, 0.0], "p": [0.0, 1.0]},
      "step": 1e-3, "steps": 200}})");
  const auto base = (g_tmp / "orbit").string();
  const auto r = run_cli("simulate --config " + cfg.string() + " --output " + base);
  INFO(r.out);
  REQUIRE(r.exit_code == 0);

  const auto doc = nlohmann::json::parse(slurp(base + ".json"));
  CHECK(doc.at("schema_version") == "1");
  REQUIRE(!doc.at("drift").empty());
  for (const auto& entry : doc.at("drift")) {
    INFO(entry.dump());
    CHECK(entry.at("max_drift").get<double>() <= 1e-8);
  }

  std::ifstream csv(base + ".csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header.rfind("t,q_1,q_2,p_1,p_2", 0) == 0);
  std::size_t rows = 0;
  for (std::string line; std::getline(csv, line);)
    if (!line.empty()) ++rows;
  CHECK(rows == doc.at("times").size());
}

TEST_CASE("transform round trip through the other chart") {
  const auto state = write_file("state.json", R"({
    "chart": "poincare", "q": [0.2, 0.1], "p": [0.3, -0.4]})");
  const auto mid = (g_tmp / "mid.json").string();
  auto r = run_cli("transform --N 2 --kappa 1 --input " + state.string() +
                   " --to beltrami --output " + mid);
  INFO(r.out);
  REQUIRE(r.exit_code == 0);
  const auto back = (g_tmp / "back.json").string();
  r = run_cli("transform --N 2 --kappa 1 --input " + mid + " --to poincare --output " + back);
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(slurp(back));
  CHECK(doc.at("chart") == "poincare");
  CHECK(std::abs(doc.at("q")[0].get<double>() - 0.2) <= 1e-12);
  CHECK(std::abs(doc.at("q")[1].get<double>() - 0.1) <= 1e-12);
  CHECK(std::abs(doc.at("p")[0].get<double>() - 0.3) <= 1e-12);
  CHECK(std::abs(doc.at("p")[1].get<double>() + 0.4) <= 1e-12);
}

TEST_CASE("deterministic runs are byte-identical") {
  const auto out1 = (g_tmp / "d1.json").string();
  const auto out2 = (g_tmp / "d2.json").string();
  const std::string args =
      "verify --suite so_n --N 3 --kappa -1 --seed 42 --sample 30 --deterministic --output ";
  REQUIRE(run_cli(args + out1).exit_code == 0);
  REQUIRE(run_cli(args + out2).exit_code == 0);
  CHECK(slurp(out1) == slurp(out2));
  CHECK(!slurp(out1).empty());
}

TEST_CASE("limits subcommand passes") {
  const auto r = run_cli("limits --N 3 --kappa 1 --seed 9");
  INFO(r.out);
  CHECK(r.exit_code == 0);
}

int main(int argc, char** argv) {
  doctest::Context context;
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-cli>\n");
    return 1;
  }
  g_cli = argv[1];
  g_tmp = std::filesystem::temp_directory_path() / "ckepler-cli-tests";
  std::filesystem::create_directories(g_tmp);
  return context.run();
}
