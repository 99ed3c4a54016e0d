#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "commands.hpp"
#include "doctest.h"
#include "jdlab/cost.hpp"
#include "jdlab/io.hpp"

using namespace jdlab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "jdlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("jdlab_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("generate writes the ensembles") {
  const fs::path dir = scratch("generate");
  const Outcome r = run_cli({"generate", "--n", "4", "--m", "5", "--seed", "1", "--lambda", "1e-3", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("separation condition: satisfied") != std::string::npos);
  for (const char* f : {"setup.json", "M0.json", "M_lambda.json", "M_a_lambda.json", "N_a_lambda.json"})
    CHECK(fs::exists(dir / f));

  const PerturbationSetup s = io::setup_from_json(io::read_json_file(dir / "setup.json"));
  const Ensemble M0 = io::ensemble_from_json(io::read_json_file(dir / "M0.json"));
  const Ensemble Ml = io::ensemble_from_json(io::read_json_file(dir / "M_lambda.json"));
  for (std::size_t k = 0; k < 5; ++k)
    CHECK(fro_dist(Ml[k], M0[k]) == doctest::Approx(1e-3 * fro_norm(s.R[k])).epsilon(1e-9));
}

TEST_CASE("generate with lambda = a = 0 gives identical ensembles") {
  const fs::path dir = scratch("generate0");
  REQUIRE(run_cli({"generate", "--lambda", "0", "--a", "0", "--out", dir.string()}).code == 0);
  const Ensemble M0 = io::ensemble_from_json(io::read_json_file(dir / "M0.json"));
  CHECK(io::ensemble_from_json(io::read_json_file(dir / "M_lambda.json")) == M0);
  const Ensemble Mal = io::ensemble_from_json(io::read_json_file(dir / "M_a_lambda.json"));
  for (std::size_t k = 0; k < M0.m(); ++k) CHECK(fro_dist(Mal[k], M0[k]) < 1e-14);
}

TEST_CASE("generate reports the gap variant") {
  const fs::path dir = scratch("gap");
  const Outcome r = run_cli({"generate", "--gap", "1000", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("(threshold 1000): violated") != std::string::npos);
}

TEST_CASE("sweep writes CSV and summary and passes the slope gate") {
  const fs::path dir = scratch("sweep");
  const Outcome r = run_cli({"sweep", "--seed", "2", "--real", "--out", dir.string()});
  CHECK(r.code == 0);
  const std::string csv = slurp(dir / "sweep.csv");
  CHECK(csv.rfind("lambda,d,y_min,y_pred,r_pred,converged\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  const auto summary = io::read_json_file(dir / "sweep_summary.json");
  CHECK(summary["slope_d"].get<double>() >= 1.7);
  CHECK(summary["all_converged"] == true);
}

TEST_CASE("sweep output does not depend on --jobs") {
  const fs::path a = scratch("jobs1"), b = scratch("jobs4");
  REQUIRE(run_cli({"sweep", "--seed", "4", "--jobs", "1", "--out", a.string()}).code == 0);
  REQUIRE(run_cli({"sweep", "--seed", "4", "--jobs", "4", "--out", b.string()}).code == 0);
  CHECK(slurp(a / "sweep.csv") == slurp(b / "sweep.csv"));
}

TEST_CASE("sweep of an unperturbed setup skips the slope") {
  const fs::path dir = scratch("zero");
  PerturbationSetup s = random_setup(4, 5, RngSeed{3}, 0.0, 0.0, false);
  s.R.assign(s.m(), Mat::zeros(4, 4));
  io::write_json_file(dir / "setup.json", io::to_json(s));
  const Outcome r = run_cli({"sweep", "--setup", (dir / "setup.json").string(), "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(io::read_json_file(dir / "sweep_summary.json")["slope_skipped"] == true);
}

TEST_CASE("sweep exit codes") {
  const fs::path dir = scratch("codes");
  PerturbationSetup s = random_setup(3, 2, RngSeed{3}, 0.0, 0.0, false);
  s.diag = DiagonalSet({{1.0, 1.0, 2.0}, {0.0, 0.0, 1.0}});
  io::write_json_file(dir / "degenerate.json", io::to_json(s));
  CHECK(run_cli({"sweep", "--setup", (dir / "degenerate.json").string(), "--out", dir.string()}).code ==
        cli::kDegenerate);

  CHECK(run_cli({"sweep", "--n", "8", "--max-sweeps", "1", "--lambda-grid", "0.5,0.1", "--out", dir.string()}).code ==
        cli::kNonConvergence);
  CHECK(run_cli({"sweep", "--lambda-grid", "0", "--out", dir.string()}).code == cli::kUsage);
}

TEST_CASE("stationarity report") {
  const fs::path dir = scratch("stationarity");
  const Outcome r = run_cli({"stationarity", "--trials", "20", "--seed", "3", "--out", (dir / "s.csv").string()});
  REQUIRE(r.code == 0);
  const std::string csv = slurp(dir / "s.csv");
  CHECK(csv.rfind("trial,r_random,r_minimizer,remainder,remainder_half,halving_ratio\n", 0) == 0);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    std::vector<double> v;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) v.push_back(std::stod(cell));
    REQUIRE(v.size() == 6);
    CHECK(v[2] <= 1e-8);
    ++rows;
  }
  CHECK(rows == 20);
  CHECK(r.out.find("median halving ratio: 4") != std::string::npos);
}

TEST_CASE("stationarity on diagonal ensembles") {
  const fs::path dir = scratch("diag");
  REQUIRE(run_cli({"stationarity", "--trials", "4", "--diagonal", "--out", (dir / "d.csv").string()}).code == 0);
  std::istringstream lines(slurp(dir / "d.csv"));
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    std::stringstream ls(line);
    std::string trial, r_random, r_min;
    std::getline(ls, trial, ',');
    std::getline(ls, r_random, ',');
    std::getline(ls, r_min, ',');
    CHECK(std::stod(r_random) == 0.0);
    CHECK(std::stod(r_min) == 0.0);
  }
}

TEST_CASE("transvect") {
  const fs::path dir = scratch("transvect");
  io::write_json_file(dir / "b.json", io::to_json(Mat::from_rows({{0, 1}, {-1, 0}})));
  const Outcome r = run_cli({"transvect", "--in", (dir / "b.json").string(), "--out", (dir / "f.json").string()});
  REQUIRE(r.code == 0);
  const auto j = io::read_json_file(dir / "f.json");
  const auto f = io::factors_from_json(j);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == Transvection{0, 1, 1.0});
  CHECK(f[1] == Transvection{1, 0, -1.0});
  CHECK(j["reconstruction_error"] == 0.0);

  const Outcome rnd = run_cli({"transvect", "--random-sl", "5", "11", "--real"});
  CHECK(rnd.code == 0);
  CHECK(rnd.out.find("relative reconstruction error") != std::string::npos);

  io::write_json_file(dir / "det2.json", io::to_json(Mat::from_rows({{2, 0}, {0, 1}})));
  CHECK(run_cli({"transvect", "--in", (dir / "det2.json").string()}).code == cli::kDeterminant);
  CHECK(run_cli({"transvect"}).code == cli::kUsage);
}

TEST_CASE("config files mirror flags") {
  const fs::path dir = scratch("config");
  {
    std::ofstream cfg(dir / "run.json");
    cfg << R"({"generate": {"n": 3, "m": 2, "seed": 7, "real": true, "out": ")" << dir.string() << R"("}})";
  }
  REQUIRE(run_cli({"--config", (dir / "run.json").string(), "generate"}).code == 0);
  const PerturbationSetup s = io::setup_from_json(io::read_json_file(dir / "setup.json"));
  CHECK(s.n() == 3);
  CHECK(s.m() == 2);
  CHECK(s.seed == 7u);
  CHECK(s.real_only);
}

TEST_CASE("JD_SEED supplies the default seed") {
  const fs::path a = scratch("env_a"), b = scratch("env_b");
  ::setenv("JD_SEED", "42", 1);
  REQUIRE(run_cli({"generate", "--out", a.string()}).code == 0);
  ::unsetenv("JD_SEED");
  REQUIRE(run_cli({"generate", "--seed", "42", "--out", b.string()}).code == 0);
  CHECK(slurp(a / "setup.json") == slurp(b / "setup.json"));
}

TEST_CASE("usage errors") {
  CHECK(run_cli({}).code == cli::kUsage);
  CHECK(run_cli({"nonsense"}).code == cli::kUsage);
  CHECK(run_cli({"generate", "--n", "abc"}).code == cli::kUsage);
  CHECK(run_cli({"generate", "--tpos", "0,1"}).code == cli::kUsage);
  CHECK(run_cli({"generate", "--a", "1,2,3"}).code == cli::kUsage);
  CHECK(run_cli({"--help"}).code == cli::kOk);
  CHECK(cli::parse_complex("1.5,-2") == cplx(1.5, -2));
  CHECK(cli::parse_complex("3") == cplx(3.0));
  CHECK(cli::parse_index_pair("2,4") == std::pair<std::size_t, std::size_t>{2, 4});
}

TEST_CASE("the installed binary reports exit codes") {
  const fs::path dir = scratch("binary");
  io::write_json_file(dir / "det2.json", io::to_json(Mat::from_rows({{2, 0}, {0, 1}})));
  const std::string cmd =
      std::string(JDLAB_CLI_PATH) + " transvect --in " + (dir / "det2.json").string() + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 4);
}
