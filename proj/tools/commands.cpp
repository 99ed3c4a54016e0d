#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "jdlab/cost.hpp"
#include "jdlab/ensemble.hpp"
#include "jdlab/errors.hpp"
#include "jdlab/io.hpp"
#include "jdlab/perturbation.hpp"
#include "jdlab/random.hpp"
#include "jdlab/solver.hpp"
#include "jdlab/stationarity.hpp"

namespace jdlab::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

PerturbationSetup setup_from_flags(const SetupFlags& f) {
  if (f.tpos.first < 1 || f.tpos.second < 1) throw IndexError("--tpos indices are 1-based");
  return random_setup(f.n, f.m, RngSeed{f.seed}, f.lambda, f.a, f.real, {f.tpos.first - 1, f.tpos.second - 1});
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Error("cannot create output directory " + dir.string());
}

double median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

// Runs f(0..count-1) on up to `jobs` threads; results keep input order.
template <typename F>
auto run_indexed(std::size_t count, unsigned jobs, F f) {
  using R = decltype(f(std::size_t{0}));
  std::vector<R> out(count);
  if (jobs <= 1) {
    for (std::size_t k = 0; k < count; ++k) out[k] = f(k);
    return out;
  }
  for (std::size_t start = 0; start < count; start += jobs) {
    std::vector<std::future<R>> batch;
    for (std::size_t k = start; k < std::min<std::size_t>(count, start + jobs); ++k)
      batch.push_back(std::async(std::launch::async, f, k));
    for (std::size_t b = 0; b < batch.size(); ++b) out[start + b] = batch[b].get();
  }
  return out;
}

}  // namespace

cplx parse_complex(const std::string& text) {
  std::stringstream ss(text);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(ss >> re)) throw CLI::ValidationError("complex value", "cannot parse '" + text + "'");
  if (ss >> comma) {
    if (comma != ',' || !(ss >> im)) throw CLI::ValidationError("complex value", "expected 're,im', got '" + text + "'");
  }
  std::string rest;
  if (ss >> rest) throw CLI::ValidationError("complex value", "trailing characters in '" + text + "'");
  return {re, im};
}

std::pair<std::size_t, std::size_t> parse_index_pair(const std::string& text) {
  std::stringstream ss(text);
  long long i = 0, j = 0;
  char comma = 0;
  if (!(ss >> i >> comma >> j) || comma != ',' || i < 1 || j < 1)
    throw CLI::ValidationError("index pair", "expected 'i,j' with 1-based indices, got '" + text + "'");
  return {static_cast<std::size_t>(i), static_cast<std::size_t>(j)};
}

int cmd_generate(const GenerateOptions& opt, std::ostream& log) {
  const PerturbationSetup s = setup_from_flags(opt.setup);
  ensure_dir(opt.out);

  const Ensemble m0 = build_M0(s.U, s.diag);
  const Ensemble ml = build_M_lambda(s);
  const Ensemble mal = build_M_a_lambda(s);
  const Ensemble nal = build_N_a_lambda(s);
  io::write_json_file(opt.out / "setup.json", io::to_json(s));
  io::write_json_file(opt.out / "M0.json", io::to_json(m0));
  io::write_json_file(opt.out / "M_lambda.json", io::to_json(ml));
  io::write_json_file(opt.out / "M_a_lambda.json", io::to_json(mal));
  io::write_json_file(opt.out / "N_a_lambda.json", io::to_json(nal));

  double worst = 0.0;
  for (std::size_t k = 0; k < s.m(); ++k)
    worst = std::max(worst, std::abs(fro_dist(ml[k], m0[k]) - std::abs(s.lambda) * fro_norm(s.R[k])));

  log << "n = " << s.n() << ", m = " << s.m() << ", seed = " << opt.setup.seed << "\n";
  log << "separation condition: " << (separation_condition(s.diag) ? "satisfied" : "violated") << "\n";
  if (opt.gap) {
    log << "separation gap: " << num(separation_gap(s.diag)) << " (threshold " << num(*opt.gap) << "): "
        << (separation_condition(s.diag, *opt.gap) ? "satisfied" : "violated") << "\n";
  }
  log << "max_k | ||M_lambda,k - M0,k|| - |lambda| ||R_k|| | = " << num(worst) << "\n";
  log << "wrote setup.json, M0.json, M_lambda.json, M_a_lambda.json, N_a_lambda.json to " << opt.out.string()
      << "\n";
  return kOk;
}

int cmd_sweep(const SweepOptions& opt, std::ostream& log) {
  const PerturbationSetup s =
      opt.setup_file ? io::setup_from_json(io::read_json_file(*opt.setup_file)) : setup_from_flags(opt.setup);
  std::vector<double> grid = opt.grid;
  std::sort(grid.begin(), grid.end(), std::greater<>());
  SolverConfig cfg;
  cfg.rel_tol = opt.tol;
  cfg.max_sweeps = opt.max_sweeps;
  const SweepReport report = lambda_sweep(s, grid, cfg, opt.jobs);

  ensure_dir(opt.out);
  {
    std::ofstream csv(opt.out / "sweep.csv");
    if (!csv) throw Error("cannot write " + (opt.out / "sweep.csv").string());
    io::write_sweep_csv(csv, report);
  }
  json summary = io::sweep_summary(report);
  summary["slope_gate"] = kSlopeGate;
  io::write_json_file(opt.out / "sweep_summary.json", summary);

  io::write_sweep_csv(log, report);
  if (report.slope_skipped())
    log << "slope_d: skipped (every d <= " << num(kSweepExactDistance) << ")\n";
  else
    log << "slope_d: " << num(report.slope_d) << "\n";

  if (!report.all_converged()) {
    log << "solver did not converge on every row\n";
    return kNonConvergence;
  }
  if (!report.slope_skipped() && !(report.slope_d >= kSlopeGate)) {
    log << "slope below gate " << kSlopeGate << "\n";
    return kSlopeGateFailed;
  }
  return kOk;
}

namespace {

struct StationarityTrial {
  double r_random = 0.0;
  double r_minimizer = 0.0;
  double remainder = 0.0;
  double remainder_half = 0.0;
  double ratio = 0.0;
  bool converged = false;
};

Mat random_signed_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(i));
    std::swap(perm[i - 1], perm[std::min(j, i - 1)]);
  }
  Mat P(n, n);
  for (std::size_t c = 0; c < n; ++c) P(perm[c], c) = rng.uniform() < 0.5 ? -1.0 : 1.0;
  return P;
}

StationarityTrial stationarity_trial(const StationarityOptions& opt, RngSeed seed) {
  Rng rng(seed);
  std::vector<Mat> mats;
  for (std::size_t k = 0; k < opt.m; ++k) {
    Mat g = random_gaussian(opt.n, opt.n, rng, true);
    if (opt.diagonal) g = diag_part(g);
    if (opt.symmetric) g = 0.5 * (g + transpose(g));
    mats.push_back(std::move(g));
  }
  const Ensemble M(std::move(mats));

  StationarityTrial t;
  // A diagonal ensemble stays diagonal only under signed permutations, so
  // that is where its "random" point is drawn from.
  const Mat V0 = opt.diagonal ? random_signed_permutation(opt.n, rng) : random_unitary(opt.n, rng, true);
  t.r_random = stationarity_residual(V0, M);
  const SolveResult sol = jacobi_minimize(M);
  t.r_minimizer = stationarity_residual(sol.V, M);
  t.converged = sol.converged;

  PerturbationSetup s = random_setup(opt.n, opt.m, rng.split(), opt.lambda, opt.a, true);
  const Mat L = random_antihermitian(opt.n, rng, true);
  auto remainder = [&](double lambda) {
    s.lambda = lambda;
    const Mat V = Mat::identity(opt.n) + lambda * L;
    return fro_dist(S_map(V, build_N_a_lambda(s)), S_first_order(L, s));
  };
  t.remainder = remainder(opt.lambda);
  t.remainder_half = remainder(0.5 * opt.lambda);
  t.ratio = t.remainder / t.remainder_half;
  return t;
}

}  // namespace

int cmd_stationarity(const StationarityOptions& opt, std::ostream& log) {
  if (opt.trials < 1) throw Error("--trials must be positive");
  if (!(opt.lambda > 0.0)) throw Error("--lambda must be positive");
  Rng master(RngSeed{opt.seed});
  std::vector<RngSeed> seeds;
  for (int t = 0; t < opt.trials; ++t) seeds.push_back(master.split());
  const auto trials = run_indexed(seeds.size(), opt.jobs, [&](std::size_t k) { return stationarity_trial(opt, seeds[k]); });

  std::ostringstream table;
  table << "trial,r_random,r_minimizer,remainder,remainder_half,halving_ratio\n";
  std::vector<double> ratios;
  double worst_min = 0.0;
  for (std::size_t k = 0; k < trials.size(); ++k) {
    const auto& t = trials[k];
    table << k + 1 << ',' << num(t.r_random) << ',' << num(t.r_minimizer) << ',' << num(t.remainder) << ','
          << num(t.remainder_half) << ',' << num(t.ratio) << '\n';
    ratios.push_back(t.ratio);
    worst_min = std::max(worst_min, t.r_minimizer);
  }
  log << table.str();
  log << "ensembles: " << (opt.diagonal ? "diagonal" : opt.symmetric ? "real symmetric" : "real non-symmetric")
      << "\n";
  log << "max residual at minimizers: " << num(worst_min) << "\n";
  log << "median halving ratio: " << num(median(ratios)) << "\n";
  if (opt.out) {
    std::ofstream f(*opt.out);
    if (!f) throw Error("cannot write " + opt.out->string());
    f << table.str();
  }
  return kOk;
}

int cmd_transvect(const TransvectOptions& opt, std::ostream& log) {
  if (opt.in.has_value() == opt.random_sl.has_value()) throw Error("give exactly one of --in and --random-sl");
  Mat B;
  if (opt.in) {
    B = io::mat_from_json(io::read_json_file(*opt.in));
  } else {
    Rng rng(RngSeed{opt.random_sl->second});
    B = random_special_linear(opt.random_sl->first, rng, opt.real);
  }
  const auto factors = decompose_transvections(B, opt.tol);
  const Mat rebuilt = multiply_transvections(B.rows(), factors);
  const double err = fro_dist(rebuilt, B) / fro_norm(B);

  if (opt.out) {
    json j = io::factors_to_json(B.rows(), factors);
    j["reconstruction_error"] = err;
    io::write_json_file(*opt.out, j);
  }
  log << "factors: " << factors.size() << "\n";
  for (const auto& t : factors)
    log << "  K(" << t.i + 1 << "," << t.j + 1 << ", " << num(t.a.real()) << (t.a.imag() < 0.0 ? "-" : "+")
        << num(std::abs(t.a.imag())) << "i)\n";
  log << "relative reconstruction error: " << num(err) << "\n";
  return kOk;
}

namespace {

// JSON config files: {"sweep": {"n": 4, "lambda-grid": [0.01, 0.001]}, ...}.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}\n"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    try {
      j = json::parse(input);
    } catch (const json::parse_error& e) {
      throw CLI::ConversionError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config: top level must be an object");
    std::vector<CLI::ConfigItem> items;
    collect(j, {}, items);
    return items;
  }

 private:
  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    throw CLI::ConversionError("config: unsupported value " + v.dump());
  }

  static void collect(const json& obj, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& out) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (it->is_object()) {
        auto sub = parents;
        sub.push_back(it.key());
        collect(*it, sub, out);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = it.key();
      if (it->is_array()) {
        for (const auto& v : *it) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(*it));
      }
      out.push_back(std::move(item));
    }
  }
};

void add_setup_flags(CLI::App* app, SetupFlags& f, std::string& a_text, std::string& tpos_text) {
  app->add_option("--n", f.n, "matrix dimension")->check(CLI::Range(2, 64));
  app->add_option("--m", f.m, "number of matrices")->check(CLI::PositiveNumber);
  app->add_option("--seed", f.seed, "random seed")->envname("JD_SEED");
  app->add_option("--lambda", f.lambda, "perturbation size");
  app->add_option("--a", a_text, "transvection entry, 're' or 're,im'");
  app->add_option("--tpos", tpos_text, "transvection position 'i,j' (1-based)");
  app->add_flag("--real", f.real, "real orthogonal U and real data");
}

void finish_setup_flags(SetupFlags& f, const std::string& a_text, const std::string& tpos_text) {
  if (!a_text.empty()) f.a = parse_complex(a_text);
  if (!tpos_text.empty()) f.tpos = parse_index_pair(tpos_text);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"jdlab: joint diagonalization perturbation experiments"};
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file mirroring the command line flags");
  app.require_subcommand(1);

  GenerateOptions gen;
  std::string gen_a, gen_tpos, gen_out = ".";
  double gen_gap = -1.0;
  auto* g = app.add_subcommand("generate", "write a random setup and its ensembles as JSON");
  add_setup_flags(g, gen.setup, gen_a, gen_tpos);
  g->add_option("--out", gen_out, "output directory");
  g->add_option("--gap", gen_gap, "also test separation with this gap threshold")->check(CLI::NonNegativeNumber);

  SweepOptions sw;
  std::string sw_a, sw_tpos, sw_out = ".", sw_setup;
  auto* s = app.add_subcommand("sweep", "lambda sweep of solver minimizers against the first-order prediction");
  s->add_option("--setup", sw_setup, "setup JSON (otherwise generated from the flags)");
  add_setup_flags(s, sw.setup, sw_a, sw_tpos);
  s->add_option("--lambda-grid", sw.grid, "comma-separated lambdas")->delimiter(',');
  s->add_option("--tol", sw.tol, "solver relative tolerance")->check(CLI::NonNegativeNumber);
  s->add_option("--max-sweeps", sw.max_sweeps, "solver sweep limit")->check(CLI::PositiveNumber);
  s->add_option("--out", sw_out, "output directory");
  s->add_option("--jobs", sw.jobs, "parallel lambda rows")->check(CLI::PositiveNumber);

  StationarityOptions st;
  std::string st_a, st_out;
  auto* t = app.add_subcommand("stationarity", "stationarity residuals and first-order remainder ratios");
  t->add_option("--trials", st.trials, "number of trials")->check(CLI::PositiveNumber);
  t->add_option("--seed", st.seed, "random seed")->envname("JD_SEED");
  t->add_option("--n", st.n, "matrix dimension")->check(CLI::Range(2, 64));
  t->add_option("--m", st.m, "number of matrices")->check(CLI::PositiveNumber);
  t->add_option("--symmetric", st.symmetric, "symmetric ensembles (on/off)");
  t->add_flag("--diagonal", st.diagonal, "diagonal ensembles");
  t->add_option("--lambda", st.lambda, "lambda for the remainder test")->check(CLI::PositiveNumber);
  t->add_option("--a", st_a, "transvection entry, 're' or 're,im'");
  t->add_option("--out", st_out, "CSV output file");
  t->add_option("--jobs", st.jobs, "parallel trials")->check(CLI::PositiveNumber);

  TransvectOptions tv;
  std::string tv_in, tv_out;
  std::vector<std::uint64_t> tv_random;
  auto* v = app.add_subcommand("transvect", "factor an SL(n) matrix into transvections");
  auto* in_opt = v->add_option("--in", tv_in, "matrix JSON file");
  v->add_option("--random-sl", tv_random, "random SL(n) input: n seed")->expected(2)->excludes(in_opt);
  v->add_flag("--real", tv.real, "real random input");
  v->add_option("--tol", tv.tol, "determinant tolerance")->check(CLI::PositiveNumber);
  v->add_option("--out", tv_out, "factor list JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (g->parsed()) {
      finish_setup_flags(gen.setup, gen_a, gen_tpos);
      gen.out = gen_out;
      if (gen_gap >= 0.0) gen.gap = gen_gap;
      return cmd_generate(gen, out);
    }
    if (s->parsed()) {
      finish_setup_flags(sw.setup, sw_a, sw_tpos);
      if (!sw_setup.empty()) sw.setup_file = sw_setup;
      sw.out = sw_out;
      return cmd_sweep(sw, out);
    }
    if (t->parsed()) {
      if (!st_a.empty()) st.a = parse_complex(st_a);
      if (!st_out.empty()) st.out = st_out;
      return cmd_stationarity(st, out);
    }
    if (v->parsed()) {
      if (!tv_in.empty()) tv.in = tv_in;
      if (!tv_random.empty()) {
        if (tv_random[0] < 1) throw Error("--random-sl n must be positive");
        tv.random_sl = std::make_pair(static_cast<std::size_t>(tv_random[0]), tv_random[1]);
      }
      if (!tv_out.empty()) tv.out = tv_out;
      return cmd_transvect(tv, out);
    }
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DegenerateSpectraError& e) {
    err << "degenerate spectra: " << e.what() << "\n";
    return kDegenerate;
  } catch (const DeterminantError& e) {
    err << "determinant gate: " << e.what() << "\n";
    return kDeterminant;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace jdlab::cli
