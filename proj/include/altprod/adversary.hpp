#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "altprod/minimax.hpp"
#include "altprod/system.hpp"

namespace altprod {

/// Which lower-bound machinery chains consecutive blocks together.
enum class AdversaryMode {
  Invertible,   ///< ||PQ|| >= ||P|| / ||Q^{-1}||, constants eta_m
  Nonnegative,  ///< Q e >= omega e coordinatewise, constants omega_m
};

std::string_view to_string(AdversaryMode mode);
AdversaryMode parse_adversary_mode(std::string_view text);

struct AdversaryBlock {
  std::size_t length = 0;
  IndexSequence a_block;
  double kappa = 0.0;        ///< threshold mu_{n_m} had to reach
  double block_mu = 0.0;     ///< mu_{n_m} actually attained
  double bound_const = 0.0;  ///< eta_m or omega_m over the whole prefix so far
};

/// A finite prefix of an adversarial A-sequence: against every B-sequence the
/// running maximum of product norms reaches m by the end of block m.
struct AdversaryCertificate {
  AdversaryMode mode = AdversaryMode::Invertible;
  NormKind norm = NormKind::MaxRow;
  std::vector<AdversaryBlock> blocks;
  std::size_t total_len = 0;
  /// verified_lower_bounds[m-1] = min over B of the running max up to the end
  /// of block m, found by exhaustive enumeration.
  std::vector<double> verified_lower_bounds;

  IndexSequence a_sequence() const;
  std::vector<std::size_t> block_ends() const;
};

/// max over all B-sequences of ||(product of the prefix)^{-1}||.
double eta_bound(const AlternatingSystem& system, std::span<const std::size_t> a_prefix,
                 SearchBudget budget = {});

/// min over all B-sequences of the smallest coordinate of (product of the prefix) e.
double omega_bound(const AlternatingSystem& system, std::span<const std::size_t> a_prefix,
                   SearchBudget budget = {});

struct BlockChoice {
  std::size_t length = 0;
  IndexSequence a_block;
  double mu = 0.0;
};

/// Smallest n <= n_cap with mu_n >= kappa, together with the mu_n witness.
BlockChoice find_block(const AlternatingSystem& system, double kappa, std::size_t n_cap,
                       SearchBudget budget = {});

/// Invertible when that hypothesis holds, else Nonnegative when it holds.
std::optional<AdversaryMode> preferred_mode(const HypothesisReport& report);

AdversaryCertificate build_adversary(const AlternatingSystem& system, std::size_t m_target,
                                     std::size_t n_cap = 8,
                                     std::optional<AdversaryMode> mode = std::nullopt,
                                     SearchBudget budget = {});

/// For each boundary, the minimum over every B-sequence of the running max of
/// product norms up to that boundary. Unpruned.
std::vector<double> boundary_minima(const AlternatingSystem& system,
                                    std::span<const std::size_t> a_sequence,
                                    std::span<const std::size_t> boundaries,
                                    SearchBudget budget = {});

/// Re-enumerates every B-sequence and checks that the running max reaches
/// m - 1e-9 at the end of block m, for every m.
bool verify_certificate(const AlternatingSystem& system, const AdversaryCertificate& cert,
                        SearchBudget budget = {});

}  // namespace altprod
