#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "altprod/matrix.hpp"
#include "altprod/system.hpp"

namespace testing_support {

using altprod::AlternatingSystem;
using altprod::Matrix;
using altprod::NormKind;

inline const double kRoot3Half = std::sqrt(3.0) / 2.0;

inline Matrix h1(double alpha = 1.0) { return alpha * Matrix{{0.5, 0.0}, {0.0, 2.0}}; }
inline Matrix h2(double alpha = 1.0) {
  return alpha * Matrix{{kRoot3Half, 0.5}, {-0.5, kRoot3Half}};
}
inline Matrix eye(std::size_t n = 2) { return Matrix::identity(n); }
inline Matrix shear() { return Matrix{{1.0, 1.0}, {0.0, 1.0}}; }

inline AlternatingSystem make_system(std::vector<Matrix> a, std::vector<Matrix> b,
                                     NormKind norm = NormKind::MaxRow,
                                     altprod::Orientation orientation =
                                         altprod::Orientation::RightProducts) {
  const std::size_t n = a.front().rows();
  const std::size_t m = a.front().cols();
  return AlternatingSystem(n, m, std::move(a), std::move(b), norm, orientation);
}

// Entries from {0, +-0.5, +-1}. Alphabets with a repeated matrix are redrawn.
class RandomSystems {
 public:
  explicit RandomSystems(std::uint64_t seed) : rng_(seed) {}

  Matrix matrix(std::size_t rows, std::size_t cols) {
    static constexpr std::array<double, 5> kValues{0.0, 0.5, -0.5, 1.0, -1.0};
    std::uniform_int_distribution<std::size_t> pick(0, kValues.size() - 1);
    Matrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) out(i, j) = kValues[pick(rng_)];
    }
    return out;
  }

  std::vector<Matrix> alphabet(std::size_t count, std::size_t rows, std::size_t cols) {
    for (;;) {
      std::vector<Matrix> out;
      for (std::size_t i = 0; i < count; ++i) out.push_back(matrix(rows, cols));
      bool distinct = true;
      for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = i + 1; j < count; ++j) distinct = distinct && !(out[i] == out[j]);
      }
      if (distinct) return out;
    }
  }

  AlternatingSystem system(std::size_t dim = 2, std::size_t na = 2, std::size_t nb = 2,
                           NormKind norm = NormKind::MaxRow) {
    return make_system(alphabet(na, dim, dim), alphabet(nb, dim, dim), norm);
  }

  Matrix nonnegative(std::size_t dim) {
    std::uniform_real_distribution<double> u(0.0, 2.0);
    Matrix out(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) out(i, j) = u(rng_);
    }
    return out;
  }

  Matrix gaussian(std::size_t dim) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix out(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) out(i, j) = g(rng_);
    }
    return out;
  }

  std::vector<double> unit_vector2() {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    const double t = angle(rng_);
    return {std::cos(t), std::sin(t)};
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testing_support
