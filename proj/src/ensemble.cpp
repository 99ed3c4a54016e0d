#include "jdlab/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "jdlab/errors.hpp"

namespace jdlab {

DiagonalSet::DiagonalSet(std::vector<std::vector<cplx>> table) : table_(std::move(table)) {
  if (table_.empty()) throw DimensionError("DiagonalSet: m must be at least 1");
  const std::size_t n = table_.front().size();
  if (n == 0) throw DimensionError("DiagonalSet: n must be at least 1");
  for (const auto& row : table_) {
    if (row.size() != n) throw DimensionError("DiagonalSet: rows of unequal length");
    for (const auto& z : row)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw FormatError("DiagonalSet: non-finite entry");
  }
}

bool DiagonalSet::is_real() const {
  return std::all_of(table_.begin(), table_.end(), [](const auto& row) {
    return std::all_of(row.begin(), row.end(), [](const cplx& z) { return z.imag() == 0.0; });
  });
}

Ensemble::Ensemble(std::vector<Mat> mats) : mats_(std::move(mats)) {
  if (mats_.empty()) throw DimensionError("Ensemble: m must be at least 1");
  const std::size_t n = mats_.front().rows();
  for (const auto& mk : mats_) {
    require_square(mk, "Ensemble");
    if (mk.rows() != n) throw DimensionError("Ensemble: members of unequal dimension");
  }
}

bool Ensemble::is_real() const {
  return std::all_of(mats_.begin(), mats_.end(), [](const Mat& mk) { return mk.is_real(); });
}

void PerturbationSetup::validate() const {
  require_square(U, "PerturbationSetup.U");
  const std::size_t n = U.rows();
  if (diag.n() != n) throw DimensionError("PerturbationSetup: diagonal table width differs from n");
  if (R.size() != diag.m()) throw DimensionError("PerturbationSetup: R count differs from m");
  for (const auto& rk : R) {
    require_square(rk, "PerturbationSetup.R");
    if (rk.rows() != n) throw DimensionError("PerturbationSetup: R_k dimension differs from n");
  }
  if (!is_unitary(U, kStructTol)) throw NotUnitaryError("PerturbationSetup: U is not unitary");
  if (tpos.first >= n || tpos.second >= n || tpos.first == tpos.second)
    throw IndexError("PerturbationSetup: transvection position must be an off-diagonal index pair");
}

std::vector<Mat> PerturbationSetup::conjugated_R() const {
  const Mat uh = adjoint(U);
  std::vector<Mat> out;
  out.reserve(R.size());
  for (const auto& rk : R) out.push_back(uh * rk * U);
  return out;
}

Mat transvection_matrix(std::size_t n, const Transvection& t,
                        std::optional<std::span<const cplx>> diag_row) {
  if (t.i >= n || t.j >= n || t.i == t.j)
    throw IndexError("transvection_matrix: position (" + std::to_string(t.i) + ", " +
                     std::to_string(t.j) + ") invalid for n = " + std::to_string(n));
  if (diag_row && diag_row->size() != n)
    throw DimensionError("transvection_matrix: diagonal row length differs from n");
  Mat k = diag_row ? Mat::diagonal(*diag_row) : Mat::identity(n);
  k(t.i, t.j) = t.a;
  return k;
}

namespace {

void require_match(const Mat& U, const DiagonalSet& diag) {
  require_square(U, "ensemble builder");
  if (diag.n() != U.rows()) throw DimensionError("ensemble builder: diagonal width differs from n");
}

}  // namespace

Ensemble build_M0(const Mat& U, const DiagonalSet& diag) {
  require_match(U, diag);
  const Mat uh = adjoint(U);
  std::vector<Mat> mats;
  mats.reserve(diag.m());
  for (std::size_t k = 0; k < diag.m(); ++k) mats.push_back(U * diag.diagonal_matrix(k) * uh);
  return Ensemble(std::move(mats));
}

Ensemble build_M_lambda(const PerturbationSetup& setup) {
  setup.validate();
  const Ensemble m0 = build_M0(setup.U, setup.diag);
  std::vector<Mat> mats;
  mats.reserve(setup.m());
  for (std::size_t k = 0; k < setup.m(); ++k) mats.push_back(m0[k] + setup.lambda * setup.R[k]);
  return Ensemble(std::move(mats));
}

Ensemble build_C_a(const DiagonalSet& diag, cplx a, std::pair<std::size_t, std::size_t> tpos) {
  std::vector<Mat> mats;
  mats.reserve(diag.m());
  const Transvection t{tpos.first, tpos.second, a};
  for (std::size_t k = 0; k < diag.m(); ++k) mats.push_back(transvection_matrix(diag.n(), t, diag.row(k)));
  return Ensemble(std::move(mats));
}

Ensemble build_M_a_lambda(const PerturbationSetup& setup) {
  setup.validate();
  const Ensemble c = build_C_a(setup.diag, setup.a, setup.tpos);
  const Mat uh = adjoint(setup.U);
  std::vector<Mat> mats;
  mats.reserve(setup.m());
  for (std::size_t k = 0; k < setup.m(); ++k) mats.push_back(setup.U * c[k] * uh + setup.lambda * setup.R[k]);
  return Ensemble(std::move(mats));
}

Ensemble build_N_a_lambda(const PerturbationSetup& setup) {
  setup.validate();
  const Ensemble c = build_C_a(setup.diag, setup.a, setup.tpos);
  const std::vector<Mat> rc = setup.conjugated_R();
  std::vector<Mat> mats;
  mats.reserve(setup.m());
  for (std::size_t k = 0; k < setup.m(); ++k) mats.push_back(c[k] + setup.lambda * rc[k]);
  return Ensemble(std::move(mats));
}

double separation_gap(const DiagonalSet& diag) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < diag.n(); ++i) {
    for (std::size_t j = i + 1; j < diag.n(); ++j) {
      double widest = 0.0;
      for (std::size_t k = 0; k < diag.m(); ++k) widest = std::max(widest, std::abs(diag(k, i) - diag(k, j)));
      gap = std::min(gap, widest);
    }
  }
  return gap;
}

bool separation_condition(const DiagonalSet& diag) {
  for (std::size_t i = 0; i < diag.n(); ++i) {
    for (std::size_t j = i + 1; j < diag.n(); ++j) {
      bool separated = false;
      for (std::size_t k = 0; k < diag.m() && !separated; ++k) separated = diag(k, i) != diag(k, j);
      if (!separated) return false;
    }
  }
  return true;
}

bool separation_condition(const DiagonalSet& diag, double gap) { return separation_gap(diag) > gap; }

Ensemble product_ensemble(std::span<const EnsembleFactor> factors) {
  if (factors.empty()) throw DimensionError("product_ensemble: empty factor list");
  const std::size_t m = factors.front().C.m();
  const std::size_t n = factors.front().C.n();
  for (const auto& f : factors) {
    if (f.C.m() != m || f.D.m() != m || f.C.n() != n || f.D.n() != n)
      throw DimensionError("product_ensemble: factors differ in (n, m)");
  }
  std::vector<Mat> mats;
  mats.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    Mat acc = factors.front().C[k] + factors.front().lambda * factors.front().D[k];
    for (std::size_t r = 1; r < factors.size(); ++r)
      acc = acc * (factors[r].C[k] + factors[r].lambda * factors[r].D[k]);
    mats.push_back(std::move(acc));
  }
  return Ensemble(std::move(mats));
}

PerturbationSetup random_setup(std::size_t n, std::size_t m, RngSeed seed, double lambda, cplx a,
                               bool real_only, std::pair<std::size_t, std::size_t> tpos) {
  if (n < 2) throw DimensionError("random_setup: n must be at least 2");
  if (m < 1) throw DimensionError("random_setup: m must be at least 1");
  Rng rng(seed);
  PerturbationSetup s;
  s.U = random_unitary(n, rng, real_only);

  do {
    std::vector<std::vector<cplx>> table(m, std::vector<cplx>(n));
    for (auto& row : table)
      for (auto& z : row) z = real_only ? cplx(rng.normal(), 0.0) : rng.complex_normal();
    s.diag = DiagonalSet(std::move(table));
  } while (!separation_condition(s.diag));

  s.R.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    Mat rk = random_gaussian(n, n, rng, real_only);
    rk *= 1.0 / fro_norm(rk);
    s.R.push_back(std::move(rk));
  }
  s.lambda = lambda;
  s.a = a;
  s.tpos = tpos;
  s.real_only = real_only;
  s.seed = seed.value;
  s.validate();
  return s;
}

Mat random_special_linear(std::size_t n, Rng& rng, bool real_only) {
  Mat b = random_gaussian(n, n, rng, real_only);
  cplx det = determinant(b);
  if (real_only && det.real() < 0.0 && n % 2 == 0) {
    for (std::size_t j = 0; j < n; ++j) b(0, j) = -b(0, j);
    det = -det;
  }
  cplx root;
  if (real_only) {
    const double d = det.real();
    root = std::copysign(std::pow(std::abs(d), 1.0 / static_cast<double>(n)), d);
  } else {
    root = std::pow(det, 1.0 / static_cast<double>(n));
  }
  b *= 1.0 / root;
  return b;
}

}  // namespace jdlab
