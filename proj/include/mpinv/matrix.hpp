#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpinv {

using Complex = std::complex<double>;

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NonFinite,
  NoConvergence,
  Precondition,
  Parse,
};

/// Base error for everything the library throws.  The C API maps `code()`
/// onto its status enumeration.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Comparison thresholds shared by every predicate in the library.
///
/// `rank_tol_factor` scales the rank cut-off sigma_max * max(m, n) * eps;
/// `eq_tol` is the relative Frobenius threshold used by approx_eq and by all
/// identity checks.
struct Tolerance {
  double rank_tol_factor = 1.0;
  double eq_tol = 1e-9;

  void validate() const;
};

/// Dense complex matrix stored row-major.  Zero-sized dimensions are allowed
/// internally (an empty basis is an n x 0 matrix); the JSON reader rejects
/// them.  Every constructor rejects NaN and Inf.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static Matrix diagonal(std::span<const Complex> diag);
  static Matrix diagonal(std::initializer_list<Complex> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }

  Matrix adjoint() const;
  double frobenius_norm() const;
  bool all_finite() const;

  /// Columns [first, first + count) as a rows x count matrix.
  Matrix columns(std::size_t first, std::size_t count) const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(Complex s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix operator*(Complex s, Matrix m);
Matrix operator*(Matrix m, Complex s);

/// Conjugate transpose.
inline Matrix adjoint(const Matrix& m) { return m.adjoint(); }

/// Product of an arbitrary chain, left to right.
Matrix product(std::initializer_list<const Matrix*> factors);

/// [lhs | rhs]; row counts must agree.
Matrix hstack(const Matrix& lhs, const Matrix& rhs);

/// Relative Frobenius distance ||x - y|| / max(1, ||x||, ||y||).
double relative_diff(const Matrix& x, const Matrix& y);

/// True iff ||x - y||_F <= eq_tol * max(1, ||x||_F, ||y||_F).
bool approx_eq(const Matrix& x, const Matrix& y, const Tolerance& t);

void require_same_shape(const Matrix& x, const Matrix& y, const char* what);
void require_square(const Matrix& m, const char* what);

}  // namespace mpinv
