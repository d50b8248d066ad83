#include "altprod/certifiers.hpp"

#include <algorithm>
#include <limits>

#include "altprod/errors.hpp"

namespace altprod {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct BudgetHit {};

class ContractivitySearch {
 public:
  ContractivitySearch(const AlternatingSystem& system, std::size_t horizon, SearchBudget budget)
      : system_(system), horizon_(horizon), limit_(budget.node_limit) {}

  bool run() {
    const std::vector<Matrix> root{Matrix::identity(system_.product_dim())};
    return all_children_resolved(0, root);
  }

  std::size_t depth_used() const { return depth_used_; }
  const IndexSequence& witness() const { return witness_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  bool all_children_resolved(std::size_t depth, const std::vector<Matrix>& products) {
    for (std::size_t a = 0; a < system_.a_set().size(); ++a) {
      path_.push_back(a);
      const bool ok = resolved(depth + 1, extend(products, a));
      if (!ok) return false;
      path_.pop_back();
    }
    return true;
  }

  bool resolved(std::size_t depth, const std::vector<Matrix>& products) {
    double smallest = kInf;
    for (const Matrix& p : products) smallest = std::min(smallest, system_.norm_of(p));
    if (smallest < 1.0 - kContractionMargin) {
      depth_used_ = std::max(depth_used_, depth);
      return true;
    }
    if (depth == horizon_) {
      if (witness_.empty()) witness_ = path_;
      return false;
    }
    return all_children_resolved(depth, products);
  }

  std::vector<Matrix> extend(const std::vector<Matrix>& products, std::size_t a) {
    std::vector<Matrix> out;
    out.reserve(products.size() * system_.b_set().size());
    for (const Matrix& p : products) {
      for (std::size_t b = 0; b < system_.b_set().size(); ++b) {
        if (++nodes_ > limit_) throw BudgetHit{};
        out.push_back(system_.step(a, b) * p);
      }
    }
    return out;
  }

  const AlternatingSystem& system_;
  std::size_t horizon_;
  std::uint64_t limit_;
  std::uint64_t nodes_ = 0;
  std::size_t depth_used_ = 0;
  IndexSequence path_;
  IndexSequence witness_;
};

class Lookahead {
 public:
  Lookahead(const AlternatingSystem& system, std::uint64_t& nodes, std::uint64_t limit)
      : system_(system), nodes_(nodes), limit_(limit) {}

  Vector advance(std::size_t a, std::size_t b, const Vector& y) {
    if (++nodes_ > limit_) {
      throw Error(ErrorCode::BudgetExceeded, "probe lookahead exceeded the node budget");
    }
    return mat_vec(system_.step(a, b), y);
  }

  // Worst-case A, best B, `depth` rounds ahead; leaf value is the vector norm.
  double value(const Vector& y, std::size_t depth) {
    if (depth == 0) return vector_norm(y, system_.norm());
    double worst = -kInf;
    for (std::size_t a = 0; a < system_.a_set().size(); ++a) {
      double best = kInf;
      for (std::size_t b = 0; b < system_.b_set().size(); ++b) {
        best = std::min(best, value(advance(a, b, y), depth - 1));
      }
      worst = std::max(worst, best);
    }
    return worst;
  }

 private:
  const AlternatingSystem& system_;
  std::uint64_t& nodes_;
  std::uint64_t limit_;
};

}  // namespace

std::string_view to_string(ContractivityVerdict::Result result) {
  switch (result) {
    case ContractivityVerdict::Result::CertifiedYes: return "CertifiedYes";
    case ContractivityVerdict::Result::NoWithinHorizon: return "NoWithinHorizon";
    case ContractivityVerdict::Result::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

ContractivityVerdict certify_contractivity(const AlternatingSystem& system, std::size_t horizon,
                                           SearchBudget budget) {
  if (horizon == 0) throw Error(ErrorCode::InvalidArgument, "horizon K must be at least 1");
  ContractivityVerdict verdict;
  verdict.horizon = horizon;
  ContractivitySearch search(system, horizon, budget);
  try {
    const bool yes = search.run();
    verdict.result = yes ? ContractivityVerdict::Result::CertifiedYes
                         : ContractivityVerdict::Result::NoWithinHorizon;
    if (yes) verdict.depth_used = search.depth_used();
    else verdict.witness = search.witness();
  } catch (const BudgetHit&) {
    verdict.result = ContractivityVerdict::Result::Inconclusive;
  }
  verdict.nodes = search.nodes();
  return verdict;
}

double min_product_norm(const AlternatingSystem& system, std::span<const std::size_t> a_prefix,
                        SearchBudget budget) {
  for (std::size_t a : a_prefix) {
    if (a >= system.a_set().size()) {
      throw Error(ErrorCode::IndexOutOfRange, "A index " + std::to_string(a) + " out of range");
    }
  }
  std::uint64_t nodes = 0;
  double smallest = kInf;
  auto descend = [&](auto&& self, std::size_t depth, const Matrix& product) -> void {
    if (depth == a_prefix.size()) {
      smallest = std::min(smallest, system.norm_of(product));
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
  return smallest;
}

ProbeResult pointwise_probe(const AlternatingSystem& system, std::span<const double> x,
                            std::size_t horizon, double cap, std::size_t lookahead,
                            SearchBudget budget) {
  if (x.size() != system.product_dim()) {
    throw Error(ErrorCode::ShapeError, "probe vector length must equal the product dimension");
  }
  const double x_norm = vector_norm(x, system.norm());
  if (x_norm == 0.0) throw Error(ErrorCode::ZeroVector, "x must be nonzero");
  if (lookahead == 0) throw Error(ErrorCode::InvalidArgument, "lookahead must be at least 1");

  std::uint64_t nodes = 0;
  Lookahead search(system, nodes, budget.node_limit);
  ProbeResult result;
  Vector state(x.begin(), x.end());
  for (std::size_t step = 1; step <= horizon; ++step) {
    std::size_t chosen_a = 0;
    double worst = -kInf;
    for (std::size_t a = 0; a < system.a_set().size(); ++a) {
      double best = kInf;
      for (std::size_t b = 0; b < system.b_set().size(); ++b) {
        best = std::min(best, search.value(search.advance(a, b, state), 0));
      }
      if (best > worst) {
        worst = best;
        chosen_a = a;
      }
    }

    std::size_t chosen_b = 0;
    double best = kInf;
    for (std::size_t b = 0; b < system.b_set().size(); ++b) {
      const double v = search.value(search.advance(chosen_a, b, state), lookahead - 1);
      if (v < best) {
        best = v;
        chosen_b = b;
      }
    }

    state = mat_vec(system.step(chosen_a, chosen_b), state);
    const double norm = vector_norm(state, system.norm());
    result.a_indices.push_back(chosen_a);
    result.b_indices.push_back(chosen_b);
    result.norms.push_back(norm);
    if (norm > cap * x_norm) {
      result.exceeded = true;
      result.exceeded_at = step;
      break;
    }
  }
  return result;
}

}  // namespace altprod
