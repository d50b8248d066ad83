#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "altprod/matrix.hpp"
#include "altprod/minimax.hpp"
#include "altprod/system.hpp"

namespace altprod {

/// Two sectors about the abscissa axis: S = [-h, h] and S~ = [pi - h, pi + h].
struct SectorConfig {
  double half_angle = std::numbers::pi / 12.0;

  /// Throws InvalidArgument unless 0 < half_angle < pi/4.
  void validate() const;

  /// Boundary directions count as inside. The zero vector is never inside.
  bool contains(double x, double y) const;
};

/// Upper bound on ||H1 v|| / ||v|| over v in S: sqrt(1/4 + 4 tan^2 h).
double sector_contraction_bound(double half_angle);

struct StanfordParams {
  double alpha = 1.0;
  double q = 0.0;  ///< certified per-block Euclidean contraction factor
  SectorConfig sector;
};

/// alpha H1 = alpha diag(1/2, 2) and alpha H2 = alpha * rotation by -30 degrees.
struct StanfordPair {
  Matrix h1;
  Matrix h2;
  StanfordParams params;
};

/// Certifies q = alpha^7 sqrt(1/4 + 4 tan^2 h) (six rotations plus one
/// contraction per block) and refuses alpha when q >= 1.
StanfordPair make_stanford(double alpha, SectorConfig sector = {});

struct StabilizerStep {
  std::size_t matrix = 0;  ///< 0 for alpha H1, 1 for alpha H2
  Vector vector;           ///< state after the step
  double norm = 0.0;       ///< Euclidean norm of `vector`
};

struct StabilizationRun {
  std::vector<StabilizerStep> steps;
  std::vector<double> block_factors;  ///< ||x_after H1|| / ||x_block_start||
  std::size_t max_consecutive_rotations = 0;
  Vector final_vector;

  IndexSequence h_indices() const;
};

/// Rotates x with alpha H2 until it lies in S or S~, then applies alpha H1;
/// repeats until ||x|| <= target.
StabilizationRun stabilize_pointwise(const StanfordPair& pair, std::span<const double> x,
                                     double target, std::size_t max_steps);

/// Euclidean norm of every product of exactly k factors, k = 1..n, minimized
/// over all |factors|^k orderings. Entry k-1 of the result is that minimum.
/// 2x2 factors only.
std::vector<double> min_product_norms(std::span<const Matrix> factors, std::size_t n,
                                      SearchBudget budget = {});

/// Smallest Euclidean norm over all 2^n products of alpha H1, alpha H2.
double check_products_lower_bound(const StanfordPair& pair, std::size_t n,
                                  SearchBudget budget = {});

/// The alternating system A = a_set, B = {A^{-1} (alpha H_i)} in which each
/// round A_n B_n can be made to equal any chosen alpha H_i.
struct Counterexample {
  AlternatingSystem system;
  StanfordPair pair;
  /// b_index[a][i]: position in B of A_a^{-1} (alpha H_{i+1}).
  std::vector<std::array<std::size_t, 2>> b_index;
};

/// Requires every A to be 2x2 with det A = 1 (within 1e-9). Duplicate B
/// matrices are merged. The resulting system uses the Euclidean norm.
Counterexample build_counterexample(const std::vector<Matrix>& a_set, double alpha);

struct CounterexampleRun {
  ProductTrace trace;  ///< Euclidean prefix norms of the matrix products
  std::vector<double> vector_norms;  ///< ||A_k B_k ... A_1 B_1 x||
  IndexSequence h_indices;
  Vector final_vector;
  double cancellation_error = 0.0;  ///< max entry |product - H_{i_n} ... H_{i_1}|
  double cancellation_scale = 1.0;  ///< max(1, max entry of the H product)
};

/// Drives x to ||x|| <= target against the A-sequence obtained by repeating
/// `a_pattern`: the stabilizer picks H_{i_n} and B_n = A_n^{-1} H_{i_n}.
CounterexampleRun counterexample_pointwise_run(const Counterexample& ce,
                                               std::span<const std::size_t> a_pattern,
                                               std::span<const double> x, double target,
                                               std::size_t max_steps = 10'000);

/// H1 = rotation by `alpha_angle`, H2 = [[cos b, -g sin b], [sin b / g, cos b]].
std::array<Matrix, 2> make_incommensurable(double alpha_angle, double beta_angle, double gamma);

/// Greedy one-step norm maximization of x under the given factors. Heuristic
/// probe for divergent orbits; returns ||x_k|| for k = 0..steps.
std::vector<double> divergence_probe(std::span<const Matrix> factors, std::span<const double> x,
                                     std::size_t steps);

}  // namespace altprod
