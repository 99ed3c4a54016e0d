#pragma once

// Matrix families for joint diagonalization experiments: the diagonal tables
// D_1..D_m, exact and perturbed ensembles, generalized transvections, and
// factorization of SL(n) matrices into transvections.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "jdlab/matrix.hpp"
#include "jdlab/random.hpp"

namespace jdlab {

/// The m x n table d_i(k) of diagonal entries; row k holds the diagonal of D_k.
class DiagonalSet {
 public:
  DiagonalSet() = default;
  explicit DiagonalSet(std::vector<std::vector<cplx>> table);

  std::size_t m() const { return table_.size(); }
  std::size_t n() const { return table_.empty() ? 0 : table_.front().size(); }

  /// d_i(k), 0-based.
  const cplx& operator()(std::size_t k, std::size_t i) const { return table_[k][i]; }
  std::span<const cplx> row(std::size_t k) const { return table_[k]; }
  Mat diagonal_matrix(std::size_t k) const { return Mat::diagonal(table_[k]); }
  bool is_real() const;

  friend bool operator==(const DiagonalSet&, const DiagonalSet&) = default;

 private:
  std::vector<std::vector<cplx>> table_;
};

/// Ordered m-tuple of n x n matrices, m >= 1.
class Ensemble {
 public:
  Ensemble() = default;
  explicit Ensemble(std::vector<Mat> mats);

  std::size_t m() const { return mats_.size(); }
  std::size_t n() const { return mats_.empty() ? 0 : mats_.front().rows(); }
  const Mat& operator[](std::size_t k) const { return mats_[k]; }
  const std::vector<Mat>& mats() const { return mats_; }
  auto begin() const { return mats_.begin(); }
  auto end() const { return mats_.end(); }
  bool is_real() const;

  friend bool operator==(const Ensemble&, const Ensemble&) = default;

 private:
  std::vector<Mat> mats_;
};

/// K = I + a E_ij with i != j (0-based).
struct Transvection {
  std::size_t i = 0;
  std::size_t j = 1;
  cplx a = 0.0;

  friend bool operator==(const Transvection&, const Transvection&) = default;
};

/// Everything that generates one perturbation experiment.
struct PerturbationSetup {
  Mat U;
  DiagonalSet diag;
  std::vector<Mat> R;
  double lambda = 0.0;
  cplx a = 0.0;
  /// Transvection position shared by all k, 0-based.
  std::pair<std::size_t, std::size_t> tpos{0, 1};
  bool real_only = false;
  /// Seed the setup was generated from, when it came from random_setup.
  std::optional<std::uint64_t> seed;

  std::size_t n() const { return U.rows(); }
  std::size_t m() const { return diag.m(); }

  /// Throws on inconsistent dimensions, non-unitary U (1e-10) or a bad position.
  void validate() const;
  /// U^H R_k U for every k.
  std::vector<Mat> conjugated_R() const;
};

/// Diagonal from diag_row (all ones when absent) plus t.a at (t.i, t.j).
Mat transvection_matrix(std::size_t n, const Transvection& t,
                        std::optional<std::span<const cplx>> diag_row = std::nullopt);

/// M_k = U D_k U^H.
Ensemble build_M0(const Mat& U, const DiagonalSet& diag);
/// M_k = U D_k U^H + lambda R_k.
Ensemble build_M_lambda(const PerturbationSetup& setup);
/// M_k = U K(d(k), a) U^H + lambda R_k, the transvection at setup.tpos.
Ensemble build_M_a_lambda(const PerturbationSetup& setup);
/// N_k = K(d(k), a) + lambda U^H R_k U.
Ensemble build_N_a_lambda(const PerturbationSetup& setup);
/// The tuple (K(d(1), a), ..., K(d(m), a)).
Ensemble build_C_a(const DiagonalSet& diag, cplx a, std::pair<std::size_t, std::size_t> tpos);

/// True iff every pair i != j has some k with d_i(k) != d_j(k) (exact comparison).
bool separation_condition(const DiagonalSet& diag);
/// Gap variant: a pair counts as equal when |d_i(k) - d_j(k)| <= gap for all k.
bool separation_condition(const DiagonalSet& diag, double gap);
/// Minimum over pairs of max_k |d_i(k) - d_j(k)|; +inf when n < 2.
double separation_gap(const DiagonalSet& diag);

/// Factor B in SL(n) as K(t_1) K(t_2) ... K(t_r) by elimination with
/// transvection row operations. Throws DeterminantError when
/// |det(B) - 1| > tol and PivotError when a column has no usable pivot.
std::vector<Transvection> decompose_transvections(const Mat& B, double tol = 1e-8);
/// K(t_1) K(t_2) ... K(t_r); identity for an empty list.
Mat multiply_transvections(std::size_t n, std::span<const Transvection> factors);

/// One factor C + lambda D of a slot-wise ensemble product.
struct EnsembleFactor {
  Ensemble C;
  Ensemble D;
  double lambda = 0.0;
};

/// result_k = prod_r (C_{r,k} + lambda_r D_{r,k}), factors multiplied left to right.
Ensemble product_ensemble(std::span<const EnsembleFactor> factors);

/// Deterministic random experiment: random unitary U, Gaussian diagonal
/// table satisfying the separation condition, R_k Gaussian with unit
/// Frobenius norm.
PerturbationSetup random_setup(std::size_t n, std::size_t m, RngSeed seed, double lambda, cplx a,
                               bool real_only,
                               std::pair<std::size_t, std::size_t> tpos = {0, 1});

/// Gaussian matrix rescaled to unit determinant.
Mat random_special_linear(std::size_t n, Rng& rng, bool real_only);

}  // namespace jdlab
