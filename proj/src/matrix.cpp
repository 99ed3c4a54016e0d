#include "jdlab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "jdlab/errors.hpp"

namespace jdlab {

Mat::Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Mat::Mat(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("Mat: entry count " + std::to_string(data_.size()) + " does not match " +
                         std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::diagonal(std::span<const cplx> d) {
  Mat m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Mat Mat::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<cplx> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("Mat::from_rows: ragged rows");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return Mat(r, c, std::move(entries));
}

bool Mat::is_real() const {
  return std::all_of(data_.begin(), data_.end(), [](const cplx& z) { return z.imag() == 0.0; });
}

bool Mat::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

Mat& Mat::operator+=(const Mat& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Mat& Mat::operator-=(const Mat& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Mat& Mat::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }
Mat operator-(Mat a) { return a *= -1.0; }
Mat operator*(cplx s, Mat a) { return a *= s; }
Mat operator*(Mat a, cplx s) { return a *= s; }

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("operator*: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  Mat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Mat adjoint(const Mat& a) {
  Mat r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = std::conj(a(i, j));
  return r;
}

Mat transpose(const Mat& a) {
  Mat r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
  return r;
}

Mat unit_basis(std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n) {
    throw IndexError("unit_basis: index (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") out of range for n = " + std::to_string(n));
  }
  Mat e(n, n);
  e(i, j) = 1.0;
  return e;
}

void require_square(const Mat& a, const char* what) {
  if (!a.square() || a.empty()) {
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

void require_same_shape(const Mat& a, const Mat& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

double unitarity_defect(const Mat& a) {
  require_square(a, "unitarity_defect");
  const std::size_t n = a.rows();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += a(i, k) * std::conj(a(j, k));
      if (i == j) s -= 1.0;
      worst = std::max(worst, std::abs(s));
    }
  }
  return worst;
}

bool is_unitary(const Mat& a, double tol) { return unitarity_defect(a) <= tol; }

bool is_antihermitian(const Mat& a, double tol) {
  require_square(a, "is_antihermitian");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      if (std::abs(std::conj(a(j, i)) + a(i, j)) > tol) return false;
  return true;
}

bool is_hermitian(const Mat& a, double tol) {
  require_square(a, "is_hermitian");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      if (std::abs(std::conj(a(j, i)) - a(i, j)) > tol) return false;
  return true;
}

double fro_norm(const Mat& a) {
  double s = 0.0;
  for (const auto& z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

double fro_dist(const Mat& a, const Mat& b) {
  require_same_shape(a, b, "fro_dist");
  double s = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k) s += std::norm(a.entries()[k] - b.entries()[k]);
  return std::sqrt(s);
}

double max_abs(const Mat& a) {
  double m = 0.0;
  for (const auto& z : a.entries()) m = std::max(m, std::abs(z));
  return m;
}

cplx trace(const Mat& a) {
  require_square(a, "trace");
  cplx t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

cplx determinant(const Mat& a) {
  require_square(a, "determinant");
  Mat lu = a;
  const std::size_t n = lu.rows();
  cplx det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(lu(r, c)) > std::abs(lu(piv, c))) piv = r;
    if (lu(piv, c) == 0.0) return 0.0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(c, j), lu(piv, j));
      det = -det;
    }
    det *= lu(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const cplx f = lu(r, c) / lu(c, c);
      if (f == 0.0) continue;
      for (std::size_t j = c; j < n; ++j) lu(r, j) -= f * lu(c, j);
    }
  }
  return det;
}

Mat diag_part(const Mat& a) {
  require_square(a, "diag_part");
  Mat d(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) d(i, i) = a(i, i);
  return d;
}

Mat column(const Mat& a, std::size_t j) {
  if (j >= a.cols()) throw IndexError("column: index out of range");
  Mat c(a.rows(), 1);
  for (std::size_t i = 0; i < a.rows(); ++i) c(i, 0) = a(i, j);
  return c;
}

Mat expm(const Mat& a) {
  require_square(a, "expm");
  const std::size_t n = a.rows();
  const double norm = fro_norm(a);
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Mat scaled = a * cplx(std::ldexp(1.0, -squarings));

  Mat result = Mat::identity(n);
  Mat term = Mat::identity(n);
  for (int k = 1; k <= 30; ++k) {
    term = term * scaled;
    term *= 1.0 / k;
    result += term;
    if (fro_norm(term) <= 1e-18 * fro_norm(result)) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

}  // namespace jdlab
