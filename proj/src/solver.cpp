#include "jdlab/solver.hpp"

#include <array>
#include <cmath>
#include <future>
#include <limits>
#include <string>

#include "jdlab/cost.hpp"
#include "jdlab/errors.hpp"
#include "jdlab/perturbation.hpp"
#include "jdlab/stationarity.hpp"

namespace jdlab {

namespace {

using Sym3 = std::array<std::array<double, 3>, 3>;

// Dominant eigenvector of a real symmetric 3x3 matrix by cyclic Jacobi.
// Ties go to the lowest index, so the zero matrix yields (1, 0, 0).
std::array<double, 3> dominant_eigenvector(Sym3 a) {
  Sym3 v{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  for (int sweep = 0; sweep < 50; ++sweep) {
    const double offd = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    const double scale = a[0][0] * a[0][0] + a[1][1] * a[1][1] + a[2][2] * a[2][2] + 2.0 * offd;
    if (offd <= 1e-32 * scale || offd == 0.0) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = 0.5 * std::atan2(2.0 * a[p][q], a[q][q] - a[p][p]);
        const double c = std::cos(theta), s = std::sin(theta);
        for (int k = 0; k < 3; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 3; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (int k = 0; k < 3; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  int best = 0;
  for (int k = 1; k < 3; ++k)
    if (a[k][k] > a[best][best]) best = k;
  return {v[0][best], v[1][best], v[2][best]};
}

struct Rotation {
  double c = 1.0;
  cplx s = 0.0;
};

Rotation optimal_rotation(const std::vector<Mat>& A, std::size_t p, std::size_t q, bool real_only) {
  Sym3 g{};
  for (const auto& a : A) {
    const std::array<cplx, 3> h{a(p, p) - a(q, q), a(p, q) + a(q, p), cplx(0.0, 1.0) * (a(p, q) - a(q, p))};
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) g[r][c] += (h[r] * std::conj(h[c])).real();
  }
  std::array<double, 3> v;
  if (real_only) {
    const double phi = 0.5 * std::atan2(2.0 * g[0][1], g[0][0] - g[1][1]);
    v = {std::cos(phi), std::sin(phi), 0.0};
  } else {
    v = dominant_eigenvector(g);
  }
  if (v[0] < 0.0) v = {-v[0], -v[1], -v[2]};
  Rotation rot;
  rot.c = std::sqrt(0.5 * (1.0 + v[0]));
  rot.s = cplx(v[1], v[2]) / (2.0 * rot.c);
  return rot;
}

// X <- X R on columns p, q.
void rotate_columns(Mat& x, std::size_t p, std::size_t q, const Rotation& r) {
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const cplx xp = x(i, p), xq = x(i, q);
    x(i, p) = r.c * xp + r.s * xq;
    x(i, q) = -std::conj(r.s) * xp + r.c * xq;
  }
}

// X <- R^H X on rows p, q.
void rotate_rows(Mat& x, std::size_t p, std::size_t q, const Rotation& r) {
  for (std::size_t j = 0; j < x.cols(); ++j) {
    const cplx xp = x(p, j), xq = x(q, j);
    x(p, j) = r.c * xp + std::conj(r.s) * xq;
    x(q, j) = -r.s * xp + r.c * xq;
  }
}

std::vector<Mat> transformed(const Mat& V, const Ensemble& M) {
  const Mat vh = adjoint(V);
  std::vector<Mat> out;
  out.reserve(M.m());
  for (const auto& mk : M) out.push_back(vh * mk * V);
  return out;
}

double total_off(const std::vector<Mat>& A) {
  double s = 0.0;
  for (const auto& a : A) s += off(a);
  return s;
}

}  // namespace

double descent_allowance(std::size_t n, double scale) {
  return 64.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * scale;
}

SolveResult jacobi_minimize(const Ensemble& M, const SolverConfig& cfg) {
  if (M.m() == 0) throw DimensionError("jacobi_minimize: empty ensemble");
  if (cfg.max_sweeps < 1) throw Error("jacobi_minimize: max_sweeps must be positive");
  if (!(cfg.rel_tol >= 0.0) || !(cfg.rotation_threshold >= 0.0))
    throw Error("jacobi_minimize: tolerances must be non-negative");
  const std::size_t n = M.n();

  Mat V = cfg.init ? *cfg.init : Mat::identity(n);
  require_square(V, "jacobi_minimize");
  if (V.rows() != n) throw DimensionError("jacobi_minimize: init dimension differs from ensemble");
  if (!is_unitary(V, kStructTol)) throw NotUnitaryError("jacobi_minimize: init is not unitary");
  const bool real_only = M.is_real() && V.is_real();

  SolveResult res;
  std::vector<Mat> A = transformed(V, M);
  res.initial_cost = total_off(A);
  double scale = 0.0;
  for (const auto& mk : M) scale += fro_norm(mk) * fro_norm(mk);
  const double allowance = descent_allowance(n, scale);
  double prev = res.initial_cost;
  bool tol_met = false;

  for (int sweep = 1; sweep <= cfg.max_sweeps; ++sweep) {
    const Mat V_before = V;
    int rotations = 0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Rotation r = optimal_rotation(A, p, q, real_only);
        if (std::abs(r.s) <= cfg.rotation_threshold) continue;
        ++rotations;
        rotate_columns(V, p, q, r);
        for (auto& a : A) {
          rotate_columns(a, p, q, r);
          rotate_rows(a, p, q, r);
        }
      }
    }
    res.sweeps_used = sweep;
    // Resynchronize from V so rounding in the incremental updates never accumulates.
    A = transformed(V, M);
    const double cur = total_off(A);
    if (cur > prev + allowance) {
      V = V_before;
      res.cost_trace.push_back(prev);
      tol_met = true;
      break;
    }
    res.cost_trace.push_back(cur);
    if (rotations == 0) {
      tol_met = true;
      break;
    }
    // Once the cost has stalled, keep polishing until a sweep applies no
    // rotation: the cost cannot resolve the last digits of the stationary point.
    if (prev - cur <= cfg.rel_tol * res.initial_cost) tol_met = true;
    prev = cur;
  }
  res.converged = tol_met;
  res.V = std::move(V);
  return res;
}

bool SweepReport::all_converged() const {
  for (const auto& r : rows)
    if (!r.converged) return false;
  return true;
}

bool SweepReport::slope_skipped() const { return std::isnan(slope_d); }

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("fit_loglog_slope: length mismatch");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0)) continue;
    const double lx = std::log(x[k]), ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count < 2) return std::numeric_limits<double>::quiet_NaN();
  const double cnt = static_cast<double>(count);
  const double denom = cnt * sxx - sx * sx;
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (cnt * sxy - sx * sy) / denom;
}

SweepReport lambda_sweep(const PerturbationSetup& setup, std::span<const double> lambdas, const SolverConfig& cfg,
                         unsigned jobs) {
  setup.validate();
  if (lambdas.empty()) throw Error("lambda_sweep: empty lambda grid");
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    if (!(lambdas[k] > 0.0)) throw Error("lambda_sweep: lambdas must be positive");
    if (k > 0 && !(lambdas[k] < lambdas[k - 1])) throw Error("lambda_sweep: lambdas must be strictly descending");
  }
  const Mat G = build_G(setup);

  auto run_row = [&](double lambda) {
    PerturbationSetup s = setup;
    s.lambda = lambda;
    const Ensemble M = build_M_lambda(s);
    SolverConfig local = cfg;
    local.init = s.U;
    const SolveResult sol = jacobi_minimize(M, local);
    const Alignment al = align(sol.V, s.U);
    const Mat pred_unitary = predicted_diagonalizer_unitary(s, G);

    SweepRow row;
    row.lambda = lambda;
    row.d = fro_dist(al.aligned, predicted_diagonalizer(s, G));
    row.y_min = cost_Y(sol.V, M);
    row.y_pred = cost_Y(pred_unitary, M);
    row.r_pred = stationarity_residual(pred_unitary, M);
    row.converged = sol.converged;
    row.sweeps = sol.sweeps_used;
    return row;
  };

  SweepReport report;
  report.setup_seed = setup.seed;
  report.rows.resize(lambdas.size());
  if (jobs <= 1) {
    for (std::size_t k = 0; k < lambdas.size(); ++k) report.rows[k] = run_row(lambdas[k]);
  } else {
    std::size_t next = 0;
    while (next < lambdas.size()) {
      std::vector<std::future<SweepRow>> batch;
      const std::size_t start = next;
      for (; next < lambdas.size() && next - start < jobs; ++next)
        batch.push_back(std::async(std::launch::async, run_row, lambdas[next]));
      for (std::size_t b = 0; b < batch.size(); ++b) report.rows[start + b] = batch[b].get();
    }
  }

  std::vector<double> xs, ys;
  for (const auto& r : report.rows) {
    if (r.d > kSweepExactDistance) {
      xs.push_back(r.lambda);
      ys.push_back(r.d);
    }
  }
  report.slope_d = fit_loglog_slope(xs, ys);
  return report;
}

}  // namespace jdlab
