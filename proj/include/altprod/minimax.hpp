#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "altprod/system.hpp"

namespace altprod {

/// Upper limit on search nodes (one node = one matrix product evaluated).
struct SearchBudget {
  std::uint64_t node_limit = 10'000'000;
};

/// Chosen index sequences with the norm of every prefix product.
struct ProductTrace {
  IndexSequence a_indices;
  IndexSequence b_indices;
  std::vector<double> prefix_norms;  ///< prefix_norms[k-1] = ||P_k||
  double nu = 0.0;                   ///< max of prefix_norms
};

/// Evaluates the alternating product step by step in the system orientation.
ProductTrace eval_trace(const AlternatingSystem& system, std::span<const std::size_t> a_indices,
                        std::span<const std::size_t> b_indices);

/// Product of the first `a_indices.size()` rounds (identity for an empty sequence).
Matrix product_of(const AlternatingSystem& system, std::span<const std::size_t> a_indices,
                  std::span<const std::size_t> b_indices);

struct BestResponse {
  IndexSequence b_indices;
  double value = 0.0;
  std::uint64_t nodes = 0;
  bool certified = true;  ///< false when the node budget cut the search short
};

/// Minimizes nu_n over all B-sequences against a committed A-sequence.
///
/// Depth-first over B choices in index order, carrying the prefix product and
/// the running maximum of its norms. A branch is cut as soon as its running
/// maximum reaches the incumbent: nu only grows along a path, and a tie found
/// later in lexicographic order can never replace the incumbent. The result is
/// therefore the lexicographically smallest minimizer.
BestResponse best_response(const AlternatingSystem& system, std::span<const std::size_t> a_indices,
                           SearchBudget budget = {});

struct MuRecord {
  std::size_t n = 0;
  double mu = 0.0;
  IndexSequence witness_a;
  IndexSequence best_b;
  std::uint64_t nodes = 0;
  bool certified = true;
};

/// max over A-sequences of min over B-sequences of nu_n. The maximizer commits
/// to the whole A-tuple first. Ties go to the lexicographically smallest
/// A-sequence, and within it to the smallest B-sequence.
MuRecord mu_n(const AlternatingSystem& system, std::size_t n, SearchBudget budget = {});

inline constexpr std::uint64_t kBruteForceLimit = 10'000'000;

/// Unpruned enumeration of all |A|^n * |B|^n sequence pairs. Oracle for mu_n.
/// Throws BudgetExceeded when that count exceeds kBruteForceLimit.
MuRecord brute_force_mu(const AlternatingSystem& system, std::size_t n);

struct GrowthVerdict {
  enum class Kind { BoundedUpToHorizon, Growing };
  Kind kind = Kind::BoundedUpToHorizon;
  double constant = 0.0;  ///< max mu over the table (bounded case)
  double slope = 0.0;     ///< least-squares slope of log mu_n over the tail
};

std::string_view to_string(GrowthVerdict::Kind kind);

struct MuTable {
  std::vector<MuRecord> records;
  GrowthVerdict verdict;
};

/// Rows n = 1..n_max, each with its own budget. A row that ran out of budget
/// is kept and flagged `certified = false`.
MuTable mu_table(const AlternatingSystem& system, std::size_t n_max, SearchBudget budget = {});

/// Heuristic growth classification of a sequence of mu values.
GrowthVerdict classify_growth(std::span<const double> mus);

/// Numerical check of the left/right conversion bound for a right-product
/// system and fixed index sequences of length n >= 2:
/// ||B_n A_n ... B_1 A_1|| <= ||B_n|| * ||A_n B_{n-1} ... A_2 B_1|| * ||A_1||.
struct ShiftBound {
  double left_norm = 0.0;
  double shifted_right_norm = 0.0;
  double bound = 0.0;  ///< b * C * a with a, b the alphabet norm bounds
};

ShiftBound left_shift_bound(const AlternatingSystem& system, std::span<const std::size_t> a_indices,
                            std::span<const std::size_t> b_indices);

}  // namespace altprod
