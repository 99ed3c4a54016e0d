#pragma once

// Jacobi-rotation joint diagonalizer. Each sweep visits the index pairs
// (p, q), p < q, in lexicographic order and applies the plane rotation that
// exactly minimizes the joint off-norm restricted to that pair. For a complex
// rotation
//
//   R = I on all but rows/cols p, q;  [R_pp R_pq; R_qp R_qq] = [c, -conj(s); s, c]
//
// the difference of the rotated diagonal entries is v . h(A) with
// v = (cos 2t, sin 2t cos f, sin 2t sin f) and
// h(A) = (a_pp - a_qq, a_pq + a_qp, i (a_pq - a_qp)). Because the pair block
// keeps its trace and Frobenius norm, minimizing the off-norm is maximizing
// sum_k |v . h(A_k)|^2 = v^T Re(sum_k h h^H) v, so v is the dominant
// eigenvector of a 3x3 real symmetric matrix. Real ensembles use the real
// 2x2 sub-problem (f = 0) and keep V orthogonal. The closed form holds for
// arbitrary square members, hermitian or not.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "jdlab/ensemble.hpp"
#include "jdlab/matrix.hpp"

namespace jdlab {

struct SolverConfig {
  int max_sweeps = 100;
  /// Stop once a sweep lowers the cost by less than rel_tol * initial cost.
  double rel_tol = 1e-12;
  /// Rotations with sin(angle) at or below this are skipped.
  double rotation_threshold = 1e-14;
  /// Starting point; identity when empty. Must be unitary.
  std::optional<Mat> init;
};

struct SolveResult {
  Mat V;
  double initial_cost = 0.0;
  /// Cost after each completed sweep.
  std::vector<double> cost_trace;
  int sweeps_used = 0;
  bool converged = false;

  double final_cost() const { return cost_trace.empty() ? initial_cost : cost_trace.back(); }
};

/// Once a sweep improves the cost by less than rel_tol * initial cost the run
/// counts as converged, and sweeping continues until a sweep applies no
/// rotation (or max_sweeps is reached). cost_trace is non-increasing up to
/// descent_allowance(n, sum_k ||M_k||_F^2); a larger increase, which exact
/// arithmetic rules out, restores the previous iterate and stops.
SolveResult jacobi_minimize(const Ensemble& M, const SolverConfig& cfg = {});

/// Rounding slack on the sweep-to-sweep descent check.
double descent_allowance(std::size_t n, double scale);

struct SweepRow {
  double lambda = 0.0;
  double d = 0.0;       ///< ||aligned V* - U (I + lambda G)||_F
  double y_min = 0.0;   ///< cost at the numerical minimizer
  double y_pred = 0.0;  ///< cost at the predicted diagonalizer
  double r_pred = 0.0;  ///< stationarity residual at the predicted diagonalizer
  bool converged = false;
  int sweeps = 0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  /// Least-squares slope of log d against log lambda; NaN when skipped
  /// (fewer than two rows with d > 1e-10).
  double slope_d = 0.0;
  std::optional<std::uint64_t> setup_seed;

  bool all_converged() const;
  bool slope_skipped() const;
};

/// Distances at or below this are treated as exact and excluded from the slope fit.
inline constexpr double kSweepExactDistance = 1e-10;

/// For each lambda (positive, strictly descending): build M_lambda, minimize
/// warm-started at U, align onto U and compare with U (I + lambda G). Cost and
/// stationarity residual of the prediction are evaluated at U exp(lambda G).
/// Rows are computed on up to `jobs` threads and returned in input order.
SweepReport lambda_sweep(const PerturbationSetup& setup, std::span<const double> lambdas,
                         const SolverConfig& cfg = {}, unsigned jobs = 1);

/// Least-squares slope of log(y) against log(x); NaN with fewer than two points.
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace jdlab
