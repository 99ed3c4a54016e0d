#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "jdlab/errors.hpp"
#include "jdlab/io.hpp"
#include "jdlab/solver.hpp"

using namespace jdlab;
using io::json;

TEST_CASE("matrices round-trip exactly") {
  Rng rng(RngSeed{81});
  const Mat a = random_gaussian(3, 4, rng, false);
  CHECK(io::mat_from_json(io::to_json(a)) == a);
  CHECK(io::mat_from_json(json::parse(io::to_json(a).dump())) == a);

  const json j = io::to_json(Mat::from_rows({{1, cplx(0, 2)}}));
  CHECK(j["rows"] == 1);
  CHECK(j["cols"] == 2);
  CHECK(j["entries"] == json::parse("[[1.0, 0.0], [0.0, 2.0]]"));
}

TEST_CASE("ensembles, diagonal sets and setups round-trip") {
  const PerturbationSetup s = random_setup(4, 3, RngSeed{82}, 1e-3, cplx(0.1, 0.2), false, {2, 0});
  const Ensemble M = build_M_lambda(s);
  CHECK(io::ensemble_from_json(json::parse(io::to_json(M).dump())) == M);
  CHECK(io::diagonal_set_from_json(json::parse(io::to_json(s.diag).dump())) == s.diag);

  const json js = json::parse(io::to_json(s).dump());
  CHECK(js["tpos"] == json::array({3, 1}));
  CHECK(js["seed"] == 82);
  const PerturbationSetup back = io::setup_from_json(js);
  CHECK(back.U == s.U);
  CHECK(back.diag == s.diag);
  CHECK(back.R == s.R);
  CHECK(back.lambda == s.lambda);
  CHECK(back.a == s.a);
  CHECK(back.tpos == s.tpos);
  CHECK(back.seed == s.seed);
  CHECK(back.real_only == s.real_only);

  json anon = js;
  anon["seed"] = nullptr;
  CHECK_FALSE(io::setup_from_json(anon).seed.has_value());
}

TEST_CASE("factor lists are 1-based") {
  const std::vector<Transvection> f{{0, 1, 1.0}, {1, 0, -1.0}};
  const json j = io::factors_to_json(2, f);
  CHECK(j["factors"][0]["i"] == 1);
  CHECK(j["factors"][0]["j"] == 2);
  CHECK(j["factors"][1]["a"] == json::parse("[-1.0, 0.0]"));
  CHECK(io::factors_from_json(j) == f);
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(io::mat_from_json(json::parse(R"({"rows": 2, "cols": 2, "entries": [[1, 0]]})")), FormatError);
  CHECK_THROWS_AS(io::mat_from_json(json::parse(R"({"rows": 1, "cols": 1})")), FormatError);
  CHECK_THROWS_AS(io::mat_from_json(json::parse(R"({"rows": 1, "cols": 1, "entries": [[1]]})")), FormatError);
  CHECK_THROWS_AS(io::mat_from_json(json::parse(R"({"rows": -1, "cols": 1, "entries": []})")), FormatError);
  CHECK_THROWS_AS(io::ensemble_from_json(json::parse(R"({"m": 2, "n": 1, "mats": []})")), FormatError);
  CHECK_THROWS_AS(io::factors_from_json(json::parse(R"({"n": 2, "factors": [{"i": 1, "j": 1, "a": [1, 0]}]})")),
                  FormatError);
  CHECK_THROWS_AS(io::factors_from_json(json::parse(R"({"n": 2, "factors": [{"i": 0, "j": 1, "a": [1, 0]}]})")),
                  FormatError);
  CHECK_THROWS_AS(io::read_json_file("/nonexistent/file.json"), Error);
}

TEST_CASE("sweep CSV and summary") {
  SweepReport rep;
  rep.rows.push_back({1e-2, 0.5, 1.0, 2.0, 0.25, true, 3});
  rep.rows.push_back({1e-3, 0.1, 0.1, 0.2, 0.125, false, 100});
  rep.slope_d = 2.5;
  rep.setup_seed = 9;
  std::ostringstream os;
  io::write_sweep_csv(os, rep);
  CHECK(os.str() ==
        "lambda,d,y_min,y_pred,r_pred,converged\n"
        "0.01,0.5,1,2,0.25,true\n"
        "0.001,0.10000000000000001,0.10000000000000001,0.20000000000000001,0.125,false\n");

  const json sum = io::sweep_summary(rep);
  CHECK(sum["slope_d"] == 2.5);
  CHECK(sum["all_converged"] == false);
  CHECK(sum["setup_seed"] == 9);
  rep.slope_d = std::nan("");
  CHECK(io::sweep_summary(rep)["slope_d"].is_null());
  CHECK(io::sweep_summary(rep)["slope_skipped"] == true);
}

TEST_CASE("file helpers") {
  const auto path = std::filesystem::temp_directory_path() / "jdlab_test_io.json";
  io::write_json_file(path, io::to_json(Mat::identity(2)));
  CHECK(io::mat_from_json(io::read_json_file(path)) == Mat::identity(2));
  std::ifstream in(path);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.back() == '\n');
  std::filesystem::remove(path);
}
