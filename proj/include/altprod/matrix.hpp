#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace altprod {

using Vector = std::vector<double>;

/// Small dense real matrix with inline row-major storage.
///
/// Every search in this library multiplies millions of tiny matrices, so the
/// storage is a fixed 8x8 block and copies never touch the heap. Shapes above
/// kMaxDim in either direction are rejected with ShapeError. All entries must
/// be finite.
class Matrix {
 public:
  static constexpr std::size_t kMaxDim = 8;

  /// Empty 0x0 matrix; only useful as a placeholder in containers.
  Matrix() = default;

  /// Zero matrix of the given shape.
  Matrix(std::size_t rows, std::size_t cols);

  Matrix(std::size_t rows, std::size_t cols, std::span<const double> row_major);

  /// Row-by-row literal, e.g. `Matrix{{0.5, 0.0}, {0.0, 2.0}}`.
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  /// Builds from nested rows; all rows must have equal length.
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return rows_ == 0; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) noexcept {
    return data_[i * cols_ + j];
  }

  /// Largest absolute entry (0 for the zero matrix).
  double max_abs() const noexcept;

  std::vector<double> entries() const;
  std::vector<std::vector<double>> to_rows() const;

  Matrix transpose() const;

  friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);
  friend Matrix operator*(double scale, const Matrix& m);

  /// Exact entrywise equality on matching shapes.
  friend bool operator==(const Matrix& lhs, const Matrix& rhs) noexcept;

 private:
  void check_shape(std::size_t rows, std::size_t cols) const;
  void check_finite() const;

  std::uint8_t rows_ = 0;
  std::uint8_t cols_ = 0;
  std::array<double, kMaxDim * kMaxDim> data_{};
};

/// Matrix-vector product M x.
Vector mat_vec(const Matrix& m, std::span<const double> x);

/// Largest absolute difference between entries of equally shaped matrices.
double max_entry_difference(const Matrix& lhs, const Matrix& rhs);

enum class NormKind {
  MaxRow,     ///< operator norm induced by max |x_i|: the largest absolute row sum
  Euclidean,  ///< spectral norm: the largest singular value
};

std::string_view to_string(NormKind kind);
NormKind parse_norm_kind(std::string_view text);

/// Vector norm matching the operator norm of the same kind.
double vector_norm(std::span<const double> x, NormKind kind);

double op_norm(const Matrix& m, NormKind kind = NormKind::MaxRow);

/// Threshold below which |det M| counts as singular: 1e-12 * max|m_ij|^N.
double singularity_tolerance(const Matrix& m);

double determinant(const Matrix& m);

Matrix inverse(const Matrix& m);

double spectral_radius(const Matrix& m);

/// M e with e the all-ones vector of length M.cols().
Vector apply_to_ones(const Matrix& m);

/// The all-ones vector e of the given length.
Vector ones(std::size_t dim);

bool is_nonnegative(const Matrix& m) noexcept;

/// Smallest row sum (signed, no absolute values).
double min_row_sum(const Matrix& m) noexcept;

std::string to_string(const Matrix& m);

}  // namespace altprod
