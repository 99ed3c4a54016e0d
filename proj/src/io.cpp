#include "jdlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

#include "jdlab/errors.hpp"

namespace jdlab::io {

namespace {

json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw FormatError("expected a [re, im] pair");
  const cplx z(j[0].get<double>(), j[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw FormatError("non-finite complex entry");
  return z;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t size_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw FormatError(std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

json to_json(const Mat& a) {
  json entries = json::array();
  for (const auto& z : a.entries()) entries.push_back(complex_to_json(z));
  return {{"rows", a.rows()}, {"cols", a.cols()}, {"entries", std::move(entries)}};
}

Mat mat_from_json(const json& j) {
  const std::size_t rows = size_field(j, "rows");
  const std::size_t cols = size_field(j, "cols");
  const json& entries = field(j, "entries");
  if (rows == 0 || cols == 0) throw FormatError("matrix dimensions must be positive");
  if (!entries.is_array() || entries.size() != rows * cols)
    throw FormatError("matrix entry count does not match rows * cols");
  std::vector<cplx> data;
  data.reserve(entries.size());
  for (const auto& e : entries) data.push_back(complex_from_json(e));
  return Mat(rows, cols, std::move(data));
}

json to_json(const Ensemble& e) {
  json mats = json::array();
  for (const auto& mk : e) mats.push_back(to_json(mk));
  return {{"m", e.m()}, {"n", e.n()}, {"mats", std::move(mats)}};
}

Ensemble ensemble_from_json(const json& j) {
  const std::size_t m = size_field(j, "m");
  const std::size_t n = size_field(j, "n");
  const json& mats = field(j, "mats");
  if (!mats.is_array() || mats.size() != m) throw FormatError("ensemble member count does not match m");
  std::vector<Mat> out;
  out.reserve(m);
  for (const auto& mj : mats) out.push_back(mat_from_json(mj));
  Ensemble e(std::move(out));
  if (e.n() != n) throw FormatError("ensemble member dimension does not match n");
  return e;
}

json to_json(const DiagonalSet& d) {
  json table = json::array();
  for (std::size_t k = 0; k < d.m(); ++k) {
    json row = json::array();
    for (const auto& z : d.row(k)) row.push_back(complex_to_json(z));
    table.push_back(std::move(row));
  }
  return {{"m", d.m()}, {"n", d.n()}, {"d", std::move(table)}};
}

DiagonalSet diagonal_set_from_json(const json& j) {
  const std::size_t m = size_field(j, "m");
  const std::size_t n = size_field(j, "n");
  const json& table = field(j, "d");
  if (!table.is_array() || table.size() != m) throw FormatError("diagonal table row count does not match m");
  std::vector<std::vector<cplx>> rows;
  for (const auto& rj : table) {
    if (!rj.is_array() || rj.size() != n) throw FormatError("diagonal table row length does not match n");
    std::vector<cplx> row;
    for (const auto& z : rj) row.push_back(complex_from_json(z));
    rows.push_back(std::move(row));
  }
  return DiagonalSet(std::move(rows));
}

json to_json(const PerturbationSetup& s) {
  json r = json::array();
  for (const auto& rk : s.R) r.push_back(to_json(rk));
  return {{"n", s.n()},
          {"m", s.m()},
          {"seed", s.seed ? json(*s.seed) : json(nullptr)},
          {"lambda", s.lambda},
          {"a", complex_to_json(s.a)},
          {"tpos", json::array({s.tpos.first + 1, s.tpos.second + 1})},
          {"real_only", s.real_only},
          {"U", to_json(s.U)},
          {"diag", to_json(s.diag)},
          {"R", std::move(r)}};
}

PerturbationSetup setup_from_json(const json& j) {
  PerturbationSetup s;
  s.U = mat_from_json(field(j, "U"));
  s.diag = diagonal_set_from_json(field(j, "diag"));
  const json& r = field(j, "R");
  if (!r.is_array()) throw FormatError("field 'R' must be an array");
  for (const auto& rj : r) s.R.push_back(mat_from_json(rj));
  const json& lam = field(j, "lambda");
  if (!lam.is_number()) throw FormatError("field 'lambda' must be a number");
  s.lambda = lam.get<double>();
  s.a = complex_from_json(field(j, "a"));
  const json& tpos = field(j, "tpos");
  if (!tpos.is_array() || tpos.size() != 2 || !tpos[0].is_number_integer() || !tpos[1].is_number_integer() ||
      tpos[0].get<long long>() < 1 || tpos[1].get<long long>() < 1)
    throw FormatError("field 'tpos' must be a pair of 1-based indices");
  s.tpos = {tpos[0].get<std::size_t>() - 1, tpos[1].get<std::size_t>() - 1};
  if (j.contains("real_only")) s.real_only = j.at("real_only").get<bool>();
  if (j.contains("seed") && !j.at("seed").is_null()) s.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("n") && size_field(j, "n") != s.n()) throw FormatError("setup field 'n' disagrees with U");
  if (j.contains("m") && size_field(j, "m") != s.m()) throw FormatError("setup field 'm' disagrees with diag");
  s.validate();
  return s;
}

json factors_to_json(std::size_t n, std::span<const Transvection> factors) {
  json list = json::array();
  for (const auto& t : factors) list.push_back({{"i", t.i + 1}, {"j", t.j + 1}, {"a", complex_to_json(t.a)}});
  return {{"n", n}, {"factors", std::move(list)}};
}

std::vector<Transvection> factors_from_json(const json& j) {
  const std::size_t n = size_field(j, "n");
  const json& list = field(j, "factors");
  if (!list.is_array()) throw FormatError("field 'factors' must be an array");
  std::vector<Transvection> out;
  for (const auto& fj : list) {
    const std::size_t i = size_field(fj, "i");
    const std::size_t jj = size_field(fj, "j");
    if (i < 1 || jj < 1 || i > n || jj > n || i == jj) throw FormatError("transvection position out of range");
    out.push_back({i - 1, jj - 1, complex_from_json(field(fj, "a"))});
  }
  return out;
}

void write_sweep_csv(std::ostream& os, const SweepReport& report) {
  os << "lambda,d,y_min,y_pred,r_pred,converged\n";
  for (const auto& r : report.rows) {
    os << fmt17(r.lambda) << ',' << fmt17(r.d) << ',' << fmt17(r.y_min) << ',' << fmt17(r.y_pred) << ','
       << fmt17(r.r_pred) << ',' << (r.converged ? "true" : "false") << '\n';
  }
}

json sweep_summary(const SweepReport& report) {
  json lambdas = json::array();
  for (const auto& r : report.rows) lambdas.push_back(r.lambda);
  return {{"slope_d", report.slope_skipped() ? json(nullptr) : json(report.slope_d)},
          {"slope_skipped", report.slope_skipped()},
          {"setup_seed", report.setup_seed ? json(*report.setup_seed) : json(nullptr)},
          {"all_converged", report.all_converged()},
          {"lambdas", std::move(lambdas)}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw Error("error while writing " + path.string());
}

}  // namespace jdlab::io
