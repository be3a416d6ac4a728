#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dirlap {

/// Dense row-major real matrix. All operator matrices in the canonical
/// orthonormal basis are real, so this is the only storage type needed.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> data() const noexcept { return data_; }

  Matrix transposed() const;
  double frobenius_norm() const;
  double trace() const;

  /// Principal or general submatrix picking the given rows and columns in order.
  Matrix select(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;

  std::vector<double> apply(std::span<const double> x) const;

  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(double s, const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double max_abs_difference(const Matrix& a, const Matrix& b);

}  // namespace dirlap
