#include "altprod/matrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "altprod/errors.hpp"

namespace altprod {

namespace {

using DynMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

DynMatrix to_eigen(const Matrix& m) {
  DynMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  }
  return out;
}

void require_square(const Matrix& m, std::string_view what) {
  if (!m.is_square()) {
    throw Error(ErrorCode::NonSquare,
                std::string(what) + ": matrix is " + std::to_string(m.rows()) +
                    "x" + std::to_string(m.cols()));
  }
}

// Largest singular value of a 2x2 matrix, split into its conformal and
// anticonformal parts; free of the cancellation in the s^2 - 4 det^2 form.
double spectral_norm_2x2(double a, double b, double c, double d) {
  return 0.5 * (std::hypot(a + d, b - c) + std::hypot(a - d, b + c));
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) {
  check_shape(rows, cols);
  rows_ = static_cast<std::uint8_t>(rows);
  cols_ = static_cast<std::uint8_t>(cols);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::span<const double> row_major)
    : Matrix(rows, cols) {
  if (row_major.size() != rows * cols) {
    throw Error(ErrorCode::ShapeError,
                "expected " + std::to_string(rows * cols) + " entries, got " +
                    std::to_string(row_major.size()));
  }
  std::copy(row_major.begin(), row_major.end(), data_.begin());
  check_finite();
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> nested;
  nested.reserve(rows.size());
  for (const auto& row : rows) nested.emplace_back(row);
  *this = from_rows(nested);
}

Matrix Matrix::identity(std::size_t n) {
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw Error(ErrorCode::ShapeError, "matrix must have at least one row and column");
  }
  const std::size_t cols = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * cols);
  for (const auto& row : rows) {
    if (row.size() != cols) {
      throw Error(ErrorCode::ShapeError, "ragged matrix rows");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return Matrix(rows.size(), cols, flat);
}

void Matrix::check_shape(std::size_t rows, std::size_t cols) const {
  if (rows == 0 || cols == 0 || rows > kMaxDim || cols > kMaxDim) {
    throw Error(ErrorCode::ShapeError,
                "unsupported matrix shape " + std::to_string(rows) + "x" +
                    std::to_string(cols) + " (1..8 per side)");
  }
}

void Matrix::check_finite() const {
  for (std::size_t k = 0; k < std::size_t{rows_} * cols_; ++k) {
    if (!std::isfinite(data_[k])) {
      throw Error(ErrorCode::InvalidArgument, "matrix entries must be finite");
    }
  }
}

double Matrix::max_abs() const noexcept {
  double out = 0.0;
  for (std::size_t k = 0; k < std::size_t{rows_} * cols_; ++k) {
    out = std::max(out, std::abs(data_[k]));
  }
  return out;
}

std::vector<double> Matrix::entries() const {
  return {data_.begin(), data_.begin() + std::size_t{rows_} * cols_};
}

std::vector<std::vector<double>> Matrix::to_rows() const {
  std::vector<std::vector<double>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    out[i].assign(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    throw Error(ErrorCode::ShapeError,
                "cannot multiply " + std::to_string(lhs.rows()) + "x" +
                    std::to_string(lhs.cols()) + " by " + std::to_string(rhs.rows()) +
                    "x" + std::to_string(rhs.cols()));
  }
  Matrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const double l = lhs(i, k);
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += l * rhs(k, j);
    }
  }
  return out;
}

Matrix operator*(double scale, const Matrix& m) {
  Matrix out = m;
  for (std::size_t k = 0; k < m.rows() * m.cols(); ++k) out.data_[k] *= scale;
  out.check_finite();
  return out;
}

bool operator==(const Matrix& lhs, const Matrix& rhs) noexcept {
  if (lhs.rows_ != rhs.rows_ || lhs.cols_ != rhs.cols_) return false;
  return std::equal(lhs.data_.begin(), lhs.data_.begin() + std::size_t{lhs.rows_} * lhs.cols_,
                    rhs.data_.begin());
}

Vector mat_vec(const Matrix& m, std::span<const double> x) {
  if (x.size() != m.cols()) {
    throw Error(ErrorCode::ShapeError, "vector length does not match matrix columns");
  }
  Vector out(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * x[j];
  }
  return out;
}

double max_entry_difference(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
    throw Error(ErrorCode::ShapeError, "shape mismatch in entrywise comparison");
  }
  double out = 0.0;
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t j = 0; j < lhs.cols(); ++j) {
      out = std::max(out, std::abs(lhs(i, j) - rhs(i, j)));
    }
  }
  return out;
}

std::string_view to_string(NormKind kind) {
  return kind == NormKind::MaxRow ? "maxrow" : "euclidean";
}

NormKind parse_norm_kind(std::string_view text) {
  if (text == "maxrow") return NormKind::MaxRow;
  if (text == "euclidean") return NormKind::Euclidean;
  throw Error(ErrorCode::ParseError, "unknown norm \"" + std::string(text) + "\"");
}

double vector_norm(std::span<const double> x, NormKind kind) {
  double out = 0.0;
  if (kind == NormKind::MaxRow) {
    for (double v : x) out = std::max(out, std::abs(v));
    return out;
  }
  for (double v : x) out += v * v;
  return std::sqrt(out);
}

double op_norm(const Matrix& m, NormKind kind) {
  if (kind == NormKind::MaxRow) {
    double out = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < m.cols(); ++j) row += std::abs(m(i, j));
      out = std::max(out, row);
    }
    return out;
  }
  if (m.rows() == 1 || m.cols() == 1) {
    double out = 0.0;
    for (double v : m.entries()) out += v * v;
    return std::sqrt(out);
  }
  if (m.rows() == 2 && m.cols() == 2) {
    return spectral_norm_2x2(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
  }
  Eigen::JacobiSVD<DynMatrix> svd(to_eigen(m));
  return svd.singularValues()(0);
}

double singularity_tolerance(const Matrix& m) {
  return 1e-12 * std::pow(m.max_abs(), static_cast<double>(m.rows()));
}

double determinant(const Matrix& m) {
  require_square(m, "determinant");
  switch (m.rows()) {
    case 1:
      return m(0, 0);
    case 2:
      return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    default:
      return to_eigen(m).partialPivLu().determinant();
  }
}

Matrix inverse(const Matrix& m) {
  require_square(m, "inverse");
  const double det = determinant(m);
  if (!(std::abs(det) > singularity_tolerance(m))) {
    throw Error(ErrorCode::Singular, "matrix is singular: det = " + std::to_string(det));
  }
  if (m.rows() == 1) return Matrix{{1.0 / m(0, 0)}};
  if (m.rows() == 2) {
    return Matrix{{m(1, 1) / det, -m(0, 1) / det}, {-m(1, 0) / det, m(0, 0) / det}};
  }
  const DynMatrix inv = to_eigen(m).partialPivLu().inverse();
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = inv(i, j);
  }
  return out;
}

double spectral_radius(const Matrix& m) {
  require_square(m, "spectral_radius");
  if (m.rows() == 1) return std::abs(m(0, 0));
  if (m.rows() == 2) {
    // Roots of l^2 - tr l + det; a complex pair has modulus sqrt(det).
    const double half_trace = 0.5 * (m(0, 0) + m(1, 1));
    const double det = determinant(m);
    const double disc = half_trace * half_trace - det;
    if (disc < 0.0) return std::sqrt(det);
    const double root = std::sqrt(disc);
    return std::max(std::abs(half_trace + root), std::abs(half_trace - root));
  }
  Eigen::EigenSolver<DynMatrix> solver(to_eigen(m), /*computeEigenvectors=*/false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

Vector apply_to_ones(const Matrix& m) { return mat_vec(m, ones(m.cols())); }

Vector ones(std::size_t dim) { return Vector(dim, 1.0); }

bool is_nonnegative(const Matrix& m) noexcept {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) < 0.0) return false;
    }
  }
  return true;
}

double min_row_sum(const Matrix& m) noexcept {
  double out = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) row += m(i, j);
    out = i == 0 ? row : std::min(out, row);
  }
  return out;
}

std::string to_string(const Matrix& m) {
  std::ostringstream os;
  os.precision(17);
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace altprod
