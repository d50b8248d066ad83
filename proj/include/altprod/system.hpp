#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "altprod/matrix.hpp"

namespace altprod {

using IndexSequence = std::vector<std::size_t>;

/// Which way the two alphabets interleave in a product.
enum class Orientation {
  RightProducts,  ///< A_n B_n ... A_1 B_1
  LeftProducts,   ///< B_n A_n ... B_1 A_1
};

std::string_view to_string(Orientation orientation);
Orientation parse_orientation(std::string_view text);

/// A pair of finite matrix alphabets A (N x M) and B (M x N) together with the
/// norm and the product orientation every analysis should use.
///
/// Construction validates shapes, rejects empty alphabets and entrywise
/// duplicates, and precomputes the one-step factors (A_a B_b for right
/// products, B_b A_a for left products). All search code multiplies by those
/// cached factors, so two routes that visit the same index sequence produce
/// bitwise identical products.
class AlternatingSystem {
 public:
  AlternatingSystem(std::size_t n, std::size_t m, std::vector<Matrix> a_set,
                    std::vector<Matrix> b_set, NormKind norm = NormKind::MaxRow,
                    Orientation orientation = Orientation::RightProducts);

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return m_; }
  const std::vector<Matrix>& a_set() const noexcept { return a_set_; }
  const std::vector<Matrix>& b_set() const noexcept { return b_set_; }
  NormKind norm() const noexcept { return norm_; }
  Orientation orientation() const noexcept { return orientation_; }

  /// Side length of the square products: N for right products, M for left.
  std::size_t product_dim() const noexcept {
    return orientation_ == Orientation::RightProducts ? n_ : m_;
  }

  /// Factor contributed by one (A, B) round.
  const Matrix& step(std::size_t a, std::size_t b) const noexcept {
    return steps_[a * b_set_.size() + b];
  }

  double norm_of(const Matrix& m) const { return op_norm(m, norm_); }

  /// Copy with a different norm; alphabets and orientation unchanged.
  AlternatingSystem with_norm(NormKind norm) const;

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<Matrix> a_set_;
  std::vector<Matrix> b_set_;
  NormKind norm_;
  Orientation orientation_;
  std::vector<Matrix> steps_;
};

/// Parses the JSON system document:
/// `{"N":int, "M":int, "A":[[[..]..]..], "B":[...], "norm":"maxrow"|"euclidean",
///   "orientation":"right"|"left"}` with the last two keys optional.
AlternatingSystem load_system(std::string_view document);
AlternatingSystem load_system_file(const std::filesystem::path& path);

/// Serializes with round-trip precision; `load_system(save_system(s))` is
/// entrywise identical to `s`.
std::string save_system(const AlternatingSystem& system);

/// Same alphabets, orientation flipped. Applying it twice is the identity.
AlternatingSystem flip_orientation(const AlternatingSystem& system);

inline constexpr double kInvertibilityCutoff = 1e-12;

struct HypothesisReport {
  /// det(AB) (or det(BA) for left products) is nonzero for every pair.
  bool invertible = false;
  double gamma_inv = 0.0;  ///< min |det| over all pairs; 0 when not square
  std::string invertible_reason;

  bool nonnegative = false;

  /// Every row of every A, B and every F = AB has a positive sum.
  bool nonzero_rows = false;
  double gamma = 0.0;      ///< min row sum over all of A, B and F
  double gamma_ab = 0.0;   ///< min row sum over A and B only
  double gamma_f = 0.0;    ///< min row sum over the one-step factors F

  double a_bound = 0.0;  ///< max ||A|| in the system norm
  double b_bound = 0.0;  ///< max ||B|| in the system norm
};

HypothesisReport check_hypotheses(const AlternatingSystem& system);

}  // namespace altprod
