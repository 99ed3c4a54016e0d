#pragma once

// Dense complex matrices and the structural predicates used throughout the
// library. Indices are 0-based in the C++ API; the CLI and the JSON formats
// that carry indices (transvection factors, transvection positions) are
// 1-based.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace jdlab {

using cplx = std::complex<double>;

/// Default tolerance for structural predicates (unitary, antihermitian).
inline constexpr double kStructTol = 1e-10;

/// Row-major dense complex matrix.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols);
  Mat(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static Mat zeros(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }
  static Mat identity(std::size_t n);
  static Mat diagonal(std::span<const cplx> d);
  /// Nested-list construction, mainly for tests: Mat::from_rows({{1, 2}, {3, 4}}).
  static Mat from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const cplx> entries() const { return data_; }
  std::span<cplx> entries() { return data_; }

  /// True when every imaginary part is exactly zero.
  bool is_real() const;
  bool all_finite() const;

  Mat& operator+=(const Mat& other);
  Mat& operator-=(const Mat& other);
  Mat& operator*=(cplx s);

  friend bool operator==(const Mat&, const Mat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator-(Mat a);
Mat operator*(const Mat& a, const Mat& b);
Mat operator*(cplx s, Mat a);
Mat operator*(Mat a, cplx s);

Mat adjoint(const Mat& a);
Mat transpose(const Mat& a);

/// E_ij: 1 at (i, j), 0 elsewhere. Throws IndexError when i or j >= n.
Mat unit_basis(std::size_t n, std::size_t i, std::size_t j);

/// max |(A A^H - I)_ij| <= tol.
bool is_unitary(const Mat& a, double tol = kStructTol);
/// max |(A^H + A)_ij| <= tol.
bool is_antihermitian(const Mat& a, double tol = kStructTol);
bool is_hermitian(const Mat& a, double tol = kStructTol);

/// Largest entry modulus of A A^H - I.
double unitarity_defect(const Mat& a);

double fro_norm(const Mat& a);
double fro_dist(const Mat& a, const Mat& b);
double max_abs(const Mat& a);

cplx trace(const Mat& a);
/// LU with partial pivoting.
cplx determinant(const Mat& a);

Mat diag_part(const Mat& a);
Mat column(const Mat& a, std::size_t j);

/// exp(A) by scaling and squaring of a truncated Taylor series. Intended for
/// small-norm arguments such as lambda * G with G antihermitian.
Mat expm(const Mat& a);

/// Throws DimensionError unless a is square.
void require_square(const Mat& a, const char* what);
/// Throws DimensionError unless a and b have the same shape.
void require_same_shape(const Mat& a, const Mat& b, const char* what);

}  // namespace jdlab
