#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "altprod/minimax.hpp"
#include "altprod/system.hpp"

namespace altprod {

/// Strictness margin: a product norm counts as contracting only below 1 - 1e-12.
inline constexpr double kContractionMargin = 1e-12;

struct ContractivityVerdict {
  enum class Result { CertifiedYes, NoWithinHorizon, Inconclusive };

  Result result = Result::Inconclusive;
  std::size_t horizon = 0;
  std::size_t depth_used = 0;  ///< deepest k at which a prefix was resolved
  IndexSequence witness;       ///< A-path of length K with no contracting prefix
  std::uint64_t nodes = 0;
};

std::string_view to_string(ContractivityVerdict::Result result);

/// Finite-horizon check that every A-sequence admits some k <= K and B_1..B_k
/// with ||A_k B_k ... A_1 B_1|| < 1.
///
/// An A-prefix is resolved when the smallest product norm over all B-sequences
/// of its length is below 1, or when it is shorter than K and every one-step
/// extension is resolved. The empty prefix being resolved gives CertifiedYes;
/// otherwise the first unresolved branch is followed down to depth K and
/// returned as the witness. Running out of budget gives Inconclusive.
ContractivityVerdict certify_contractivity(const AlternatingSystem& system, std::size_t horizon,
                                           SearchBudget budget = {});

/// min over all B-sequences of ||A_k B_k ... A_1 B_1|| for the given A-prefix.
double min_product_norm(const AlternatingSystem& system, std::span<const std::size_t> a_prefix,
                        SearchBudget budget = {});

struct ProbeResult {
  IndexSequence a_indices;
  IndexSequence b_indices;
  std::vector<double> norms;  ///< ||A_k B_k ... A_1 B_1 x|| for k = 1..steps
  bool exceeded = false;
  std::size_t exceeded_at = 0;  ///< 1-based step of the first cap violation
};

/// Heuristic pointwise game on a single vector. The adversary picks the A
/// with the largest one-step best-response norm; the controller picks B by a
/// depth-`lookahead` minimax over future rounds (worst-case A, leaf value the
/// final vector norm). Stops at the first step where ||P x|| > cap ||x||.
ProbeResult pointwise_probe(const AlternatingSystem& system, std::span<const double> x,
                            std::size_t horizon, double cap, std::size_t lookahead = 7,
                            SearchBudget budget = {});

}  // namespace altprod
