#include "altprod/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "altprod/errors.hpp"

namespace altprod {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBoundTolerance = 1e-9;

void check_prefix(const AlternatingSystem& system, std::span<const std::size_t> a_prefix) {
  for (std::size_t a : a_prefix) {
    if (a >= system.a_set().size()) {
      throw Error(ErrorCode::IndexOutOfRange, "A index " + std::to_string(a) + " out of range");
    }
  }
}

// Calls `leaf(product)` for the full product of every B-sequence.
template <typename Leaf>
void for_each_product(const AlternatingSystem& system, std::span<const std::size_t> a_prefix,
                      SearchBudget budget, Leaf&& leaf) {
  std::uint64_t nodes = 0;
  auto descend = [&](auto&& self, std::size_t depth, const Matrix& product) -> void {
    if (depth == a_prefix.size()) {
      leaf(product);
      return;
    }
    for (std::size_t b = 0; b < system.b_set().size(); ++b) {
      if (++nodes > budget.node_limit) {
        throw Error(ErrorCode::BudgetExceeded, "B-sequence enumeration exceeded the node budget");
      }
      self(self, depth + 1, system.step(a_prefix[depth], b) * product);
    }
  };
  descend(descend, 0, Matrix::identity(system.product_dim()));
}

double threshold_for(AdversaryMode mode, std::size_t m, double previous_bound) {
  if (m == 1) return 1.0;
  const double scale = static_cast<double>(m);
  return mode == AdversaryMode::Invertible ? scale * previous_bound : scale / previous_bound;
}

}  // namespace

std::string_view to_string(AdversaryMode mode) {
  return mode == AdversaryMode::Invertible ? "invertible" : "nonnegative";
}

AdversaryMode parse_adversary_mode(std::string_view text) {
  if (text == "invertible") return AdversaryMode::Invertible;
  if (text == "nonnegative") return AdversaryMode::Nonnegative;
  throw Error(ErrorCode::ParseError, "unknown adversary mode \"" + std::string(text) + "\"");
}

IndexSequence AdversaryCertificate::a_sequence() const {
  IndexSequence out;
  for (const auto& block : blocks) out.insert(out.end(), block.a_block.begin(), block.a_block.end());
  return out;
}

std::vector<std::size_t> AdversaryCertificate::block_ends() const {
  std::vector<std::size_t> out;
  std::size_t end = 0;
  for (const auto& block : blocks) {
    end += block.a_block.size();
    out.push_back(end);
  }
  return out;
}

double eta_bound(const AlternatingSystem& system, std::span<const std::size_t> a_prefix,
                 SearchBudget budget) {
  check_prefix(system, a_prefix);
  if (!check_hypotheses(system).invertible) {
    throw Error(ErrorCode::HypothesisViolated, "eta bound needs invertible one-step products");
  }
  double eta = 0.0;
  for_each_product(system, a_prefix, budget, [&](const Matrix& product) {
    eta = std::max(eta, system.norm_of(inverse(product)));
  });
  return eta;
}

double omega_bound(const AlternatingSystem& system, std::span<const std::size_t> a_prefix,
                   SearchBudget budget) {
  check_prefix(system, a_prefix);
  const HypothesisReport report = check_hypotheses(system);
  if (!report.nonnegative || !report.nonzero_rows) {
    throw Error(ErrorCode::HypothesisViolated,
                "omega bound needs nonnegative matrices without zero rows");
  }
  double omega = kInf;
  for_each_product(system, a_prefix, budget, [&](const Matrix& product) {
    const Vector fe = apply_to_ones(product);
    omega = std::min(omega, *std::min_element(fe.begin(), fe.end()));
  });
  return omega;
}

BlockChoice find_block(const AlternatingSystem& system, double kappa, std::size_t n_cap,
                       SearchBudget budget) {
  if (!(kappa > 0.0)) throw Error(ErrorCode::InvalidArgument, "kappa must be positive");
  for (std::size_t n = 1; n <= n_cap; ++n) {
    const MuRecord record = mu_n(system, n, budget);
    if (!record.certified) {
      throw Error(ErrorCode::BudgetExceeded,
                  "mu_" + std::to_string(n) + " did not finish within the node budget");
    }
    if (record.mu >= kappa - 1e-12) return BlockChoice{n, record.witness_a, record.mu};
  }
  throw Error(ErrorCode::NotFoundWithinCap,
              "mu_n stays below kappa = " + std::to_string(kappa) + " for n <= " +
                  std::to_string(n_cap));
}

std::optional<AdversaryMode> preferred_mode(const HypothesisReport& report) {
  if (report.invertible) return AdversaryMode::Invertible;
  if (report.nonnegative && report.nonzero_rows) return AdversaryMode::Nonnegative;
  return std::nullopt;
}

AdversaryCertificate build_adversary(const AlternatingSystem& system, std::size_t m_target,
                                     std::size_t n_cap, std::optional<AdversaryMode> mode,
                                     SearchBudget budget) {
  if (m_target == 0) throw Error(ErrorCode::InvalidArgument, "m_target must be at least 1");
  const HypothesisReport report = check_hypotheses(system);
  if (!mode) mode = preferred_mode(report);
  if (!mode) {
    throw Error(ErrorCode::HypothesisViolated,
                "system is neither invertible nor nonnegative with nonzero rows");
  }
  if (*mode == AdversaryMode::Invertible && !report.invertible) {
    throw Error(ErrorCode::HypothesisViolated, "invertible mode: " + report.invertible_reason);
  }
  if (*mode == AdversaryMode::Nonnegative) {
    if (!report.nonnegative || !report.nonzero_rows) {
      throw Error(ErrorCode::HypothesisViolated,
                  "nonnegative mode needs nonnegative matrices without zero rows");
    }
    if (system.norm() != NormKind::MaxRow) {
      throw Error(ErrorCode::HypothesisViolated, "nonnegative mode requires the maxrow norm");
    }
  }

  AdversaryCertificate cert;
  cert.mode = *mode;
  cert.norm = system.norm();
  IndexSequence prefix;
  double previous_bound = 0.0;
  for (std::size_t m = 1; m <= m_target; ++m) {
    const double kappa = threshold_for(*mode, m, previous_bound);
    const BlockChoice choice = find_block(system, kappa, n_cap, budget);
    prefix.insert(prefix.end(), choice.a_block.begin(), choice.a_block.end());
    const double bound = *mode == AdversaryMode::Invertible ? eta_bound(system, prefix, budget)
                                                            : omega_bound(system, prefix, budget);
    cert.blocks.push_back(AdversaryBlock{choice.length, choice.a_block, kappa, choice.mu, bound});
    previous_bound = bound;
  }
  cert.total_len = prefix.size();

  const auto ends = cert.block_ends();
  cert.verified_lower_bounds = boundary_minima(system, prefix, ends, budget);
  for (std::size_t m = 1; m <= m_target; ++m) {
    if (cert.verified_lower_bounds[m - 1] < static_cast<double>(m) - kBoundTolerance) {
      throw Error(ErrorCode::VerificationFailed,
                  "block " + std::to_string(m) + " lower bound " +
                      std::to_string(cert.verified_lower_bounds[m - 1]) + " is below " +
                      std::to_string(m));
    }
  }
  return cert;
}

std::vector<double> boundary_minima(const AlternatingSystem& system,
                                    std::span<const std::size_t> a_sequence,
                                    std::span<const std::size_t> boundaries, SearchBudget budget) {
  check_prefix(system, a_sequence);
  for (std::size_t end : boundaries) {
    if (end == 0 || end > a_sequence.size()) {
      throw Error(ErrorCode::IndexOutOfRange, "block boundary outside the A-sequence");
    }
  }
  std::vector<double> minima(boundaries.size(), kInf);
  std::uint64_t nodes = 0;
  auto descend = [&](auto&& self, std::size_t depth, const Matrix& product,
                     double running_max) -> void {
    for (std::size_t i = 0; i < boundaries.size(); ++i) {
      if (boundaries[i] == depth) minima[i] = std::min(minima[i], running_max);
    }
    if (depth == a_sequence.size()) return;
    for (std::size_t b = 0; b < system.b_set().size(); ++b) {
      if (++nodes > budget.node_limit) {
        throw Error(ErrorCode::BudgetExceeded, "B-sequence enumeration exceeded the node budget");
      }
      const Matrix next = system.step(a_sequence[depth], b) * product;
      self(self, depth + 1, next, std::max(running_max, system.norm_of(next)));
    }
  };
  descend(descend, 0, Matrix::identity(system.product_dim()), 0.0);
  return minima;
}

bool verify_certificate(const AlternatingSystem& system, const AdversaryCertificate& cert,
                        SearchBudget budget) {
  const IndexSequence a_seq = cert.a_sequence();
  if (a_seq.empty()) return false;
  check_prefix(system, a_seq);
  const auto ends = cert.block_ends();
  const double goal = static_cast<double>(ends.size());

  // required[d] = value the running max must have reached after d rounds.
  std::vector<double> required(a_seq.size() + 1, -kInf);
  for (std::size_t m = 0; m < ends.size(); ++m) {
    required[ends[m]] = std::max(required[ends[m]], static_cast<double>(m + 1) - kBoundTolerance);
  }

  std::uint64_t nodes = 0;
  auto holds = [&](auto&& self, std::size_t depth, const Matrix& product,
                   double running_max) -> bool {
    if (running_max < required[depth]) return false;
    // Once the running max clears the last threshold every later check passes.
    if (running_max >= goal || depth == a_seq.size()) return true;
    for (std::size_t b = 0; b < system.b_set().size(); ++b) {
      if (++nodes > budget.node_limit) {
        throw Error(ErrorCode::BudgetExceeded, "certificate check exceeded the node budget");
      }
      const Matrix next = system.step(a_seq[depth], b) * product;
      if (!self(self, depth + 1, next, std::max(running_max, system.norm_of(next)))) return false;
    }
    return true;
  };
  return holds(holds, 0, Matrix::identity(system.product_dim()), 0.0);
}

}  // namespace altprod
