#include "mpinv/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mpinv {

void Tolerance::validate() const {
  if (!(rank_tol_factor > 0.0) || !std::isfinite(rank_tol_factor)) {
    throw Error(ErrorCode::InvalidArgument, "rank_tol_factor must be positive");
  }
  if (!(eq_tol >= std::numeric_limits<double>::epsilon()) || !std::isfinite(eq_tol)) {
    throw Error(ErrorCode::InvalidArgument, "eq_tol must be finite and >= machine epsilon");
  }
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorCode::DimensionMismatch,
                "matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                    std::to_string(rows_ * cols_));
  }
  if (!all_finite()) {
    throw Error(ErrorCode::NonFinite, "matrix contains a non-finite entry");
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
  if (!all_finite()) {
    throw Error(ErrorCode::NonFinite, "matrix contains a non-finite entry");
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const Complex> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  if (!m.all_finite()) throw Error(ErrorCode::NonFinite, "matrix contains a non-finite entry");
  return m;
}

Matrix Matrix::diagonal(std::initializer_list<Complex> diag) {
  return diagonal(std::span<const Complex>(diag.begin(), diag.size()));
}

Matrix Matrix::adjoint() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

double Matrix::frobenius_norm() const {
  // Scaled accumulation so huge or tiny entries do not overflow/underflow.
  double scale = 0.0;
  double ssq = 1.0;
  for (const Complex& z : data_) {
    for (double v : {z.real(), z.imag()}) {
      if (v == 0.0) continue;
      const double a = std::abs(v);
      if (scale < a) {
        ssq = 1.0 + ssq * (scale / a) * (scale / a);
        scale = a;
      } else {
        ssq += (a / scale) * (a / scale);
      }
    }
  }
  return scale * std::sqrt(ssq);
}

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

Matrix Matrix::columns(std::size_t first, std::size_t count) const {
  if (first + count > cols_) {
    throw Error(ErrorCode::DimensionMismatch, "column range out of bounds");
  }
  Matrix out(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
  return out;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require_same_shape(*this, rhs, "matrix addition");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  require_same_shape(*this, rhs, "matrix subtraction");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(Complex s) {
  for (Complex& z : data_) z *= s;
  return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator*(Complex s, Matrix m) { return m *= s; }
Matrix operator*(Matrix m, Complex s) { return m *= s; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "cannot multiply " + std::to_string(lhs.rows()) + "x" +
                    std::to_string(lhs.cols()) + " by " + std::to_string(rhs.rows()) + "x" +
                    std::to_string(rhs.cols()));
  }
  const std::size_t m = lhs.rows(), k = lhs.cols(), n = rhs.cols();
  Matrix out(m, n);
  const Complex* a = lhs.data().data();
  const Complex* b = rhs.data().data();
  Complex* c = out.data().data();
  for (std::size_t i = 0; i < m; ++i) {
    Complex* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const Complex aip = a[i * k + p];
      if (aip == Complex{}) continue;
      const Complex* brow = b + p * n;
      const double ar = aip.real(), ai = aip.imag();
      for (std::size_t j = 0; j < n; ++j) {
        const double br = brow[j].real(), bi = brow[j].imag();
        crow[j] += Complex(ar * br - ai * bi, ar * bi + ai * br);
      }
    }
  }
  return out;
}

Matrix product(std::initializer_list<const Matrix*> factors) {
  if (factors.size() == 0) throw Error(ErrorCode::InvalidArgument, "empty product");
  auto it = factors.begin();
  Matrix acc = **it;
  for (++it; it != factors.end(); ++it) acc = acc * **it;
  return acc;
}

Matrix hstack(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.rows() != rhs.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "hstack: row counts differ");
  }
  Matrix out(lhs.rows(), lhs.cols() + rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t j = 0; j < lhs.cols(); ++j) out(i, j) = lhs(i, j);
    for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, lhs.cols() + j) = rhs(i, j);
  }
  return out;
}

double relative_diff(const Matrix& x, const Matrix& y) {
  require_same_shape(x, y, "relative_diff");
  const double scale = std::max({1.0, x.frobenius_norm(), y.frobenius_norm()});
  return (x - y).frobenius_norm() / scale;
}

bool approx_eq(const Matrix& x, const Matrix& y, const Tolerance& t) {
  return relative_diff(x, y) <= t.eq_tol;
}

void require_same_shape(const Matrix& x, const Matrix& y, const char* what) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": shapes " + std::to_string(x.rows()) + "x" +
                    std::to_string(x.cols()) + " and " + std::to_string(y.rows()) + "x" +
                    std::to_string(y.cols()) + " differ");
  }
}

void require_square(const Matrix& m, const char* what) {
  if (!m.is_square()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " requires a square matrix, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace mpinv
