#include "altprod/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "altprod/errors.hpp"

namespace altprod {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_indices(const AlternatingSystem& system, std::span<const std::size_t> a_indices,
                   std::span<const std::size_t> b_indices) {
  if (a_indices.size() != b_indices.size()) {
    throw Error(ErrorCode::LengthMismatch, "A and B index sequences differ in length");
  }
  for (std::size_t a : a_indices) {
    if (a >= system.a_set().size()) {
      throw Error(ErrorCode::IndexOutOfRange, "A index " + std::to_string(a) + " out of range");
    }
  }
  for (std::size_t b : b_indices) {
    if (b >= system.b_set().size()) {
      throw Error(ErrorCode::IndexOutOfRange, "B index " + std::to_string(b) + " out of range");
    }
  }
}

void check_a_indices(const AlternatingSystem& system, std::span<const std::size_t> a_indices) {
  for (std::size_t a : a_indices) {
    if (a >= system.a_set().size()) {
      throw Error(ErrorCode::IndexOutOfRange, "A index " + std::to_string(a) + " out of range");
    }
  }
}

// Advances a base-`radix` odometer in lexicographic order; false on wrap-around.
bool next_sequence(IndexSequence& seq, std::size_t radix) {
  for (std::size_t i = seq.size(); i-- > 0;) {
    if (++seq[i] < radix) return true;
    seq[i] = 0;
  }
  return false;
}

// Inner minimization over B-sequences. A leaf whose value is <= `cutoff` marks
// the A-sequence as dominated and stops the search early.
class ResponseSearch {
 public:
  ResponseSearch(const AlternatingSystem& system, std::span<const std::size_t> a_indices,
                 std::uint64_t& nodes, std::uint64_t node_limit, double cutoff)
      : system_(system),
        a_(a_indices),
        nodes_(nodes),
        limit_(node_limit),
        cutoff_(cutoff),
        path_(a_indices.size(), 0) {}

  void run() { descend(0, Matrix::identity(system_.product_dim()), 0.0); }

  double best() const { return best_; }
  const IndexSequence& best_path() const { return best_path_; }
  bool exhausted() const { return exhausted_; }
  bool dominated() const { return dominated_; }

 private:
  void descend(std::size_t depth, const Matrix& product, double running_max) {
    if (depth == a_.size()) {
      if (running_max < best_) {
        best_ = running_max;
        best_path_ = path_;
        if (best_ <= cutoff_) dominated_ = true;
      }
      return;
    }
    for (std::size_t b = 0; b < system_.b_set().size(); ++b) {
      if (exhausted_ || dominated_) return;
      if (nodes_ >= limit_ && best_ < kInf) {
        exhausted_ = true;
        return;
      }
      ++nodes_;
      const Matrix next = system_.step(a_[depth], b) * product;
      const double value = std::max(running_max, system_.norm_of(next));
      if (value >= best_) continue;
      path_[depth] = b;
      descend(depth + 1, next, value);
    }
  }

  const AlternatingSystem& system_;
  std::span<const std::size_t> a_;
  std::uint64_t& nodes_;
  std::uint64_t limit_;
  double cutoff_;
  IndexSequence path_;
  IndexSequence best_path_;
  double best_ = kInf;
  bool exhausted_ = false;
  bool dominated_ = false;
};

// |base|^exponent, saturating at `cap + 1`.
std::uint64_t bounded_power(std::uint64_t base, std::size_t exponent, std::uint64_t cap) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (out > cap / std::max<std::uint64_t>(base, 1)) return cap + 1;
    out *= base;
  }
  return out;
}

}  // namespace

ProductTrace eval_trace(const AlternatingSystem& system, std::span<const std::size_t> a_indices,
                        std::span<const std::size_t> b_indices) {
  check_indices(system, a_indices, b_indices);
  ProductTrace trace;
  trace.a_indices.assign(a_indices.begin(), a_indices.end());
  trace.b_indices.assign(b_indices.begin(), b_indices.end());
  Matrix product = Matrix::identity(system.product_dim());
  double running_max = 0.0;
  for (std::size_t k = 0; k < a_indices.size(); ++k) {
    product = system.step(a_indices[k], b_indices[k]) * product;
    const double norm = system.norm_of(product);
    trace.prefix_norms.push_back(norm);
    running_max = std::max(running_max, norm);
  }
  trace.nu = running_max;
  return trace;
}

Matrix product_of(const AlternatingSystem& system, std::span<const std::size_t> a_indices,
                  std::span<const std::size_t> b_indices) {
  check_indices(system, a_indices, b_indices);
  Matrix product = Matrix::identity(system.product_dim());
  for (std::size_t k = 0; k < a_indices.size(); ++k) {
    product = system.step(a_indices[k], b_indices[k]) * product;
  }
  return product;
}

BestResponse best_response(const AlternatingSystem& system, std::span<const std::size_t> a_indices,
                           SearchBudget budget) {
  if (a_indices.empty()) {
    throw Error(ErrorCode::InvalidArgument, "best_response needs a nonempty A-sequence");
  }
  check_a_indices(system, a_indices);
  std::uint64_t nodes = 0;
  ResponseSearch search(system, a_indices, nodes, budget.node_limit, -kInf);
  search.run();
  return BestResponse{search.best_path(), search.best(), nodes, !search.exhausted()};
}

MuRecord mu_n(const AlternatingSystem& system, std::size_t n, SearchBudget budget) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "horizon n must be at least 1");
  MuRecord record;
  record.n = n;
  record.mu = -kInf;

  IndexSequence a_seq(n, 0);
  bool have_witness = false;
  do {
    if (record.nodes >= budget.node_limit && have_witness) {
      record.certified = false;
      break;
    }
    ++record.nodes;
    ResponseSearch search(system, a_seq, record.nodes, budget.node_limit,
                          have_witness ? record.mu : -kInf);
    search.run();
    if (search.exhausted()) {
      record.certified = false;
      if (!have_witness) {
        record.mu = search.best();
        record.witness_a = a_seq;
        record.best_b = search.best_path();
      }
      break;
    }
    if (!search.dominated() && search.best() > record.mu) {
      record.mu = search.best();
      record.witness_a = a_seq;
      record.best_b = search.best_path();
      have_witness = true;
    }
  } while (next_sequence(a_seq, system.a_set().size()));
  return record;
}

MuRecord brute_force_mu(const AlternatingSystem& system, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "horizon n must be at least 1");
  const std::uint64_t count =
      bounded_power(system.a_set().size() * system.b_set().size(), n, kBruteForceLimit);
  if (count > kBruteForceLimit) {
    throw Error(ErrorCode::BudgetExceeded, "brute force needs more than 1e7 sequence pairs");
  }

  MuRecord record;
  record.n = n;
  record.mu = -kInf;
  IndexSequence a_seq(n, 0);
  do {
    double inner_best = kInf;
    IndexSequence inner_path;
    IndexSequence b_seq(n, 0);
    do {
      Matrix product = Matrix::identity(system.product_dim());
      double running_max = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        product = system.step(a_seq[k], b_seq[k]) * product;
        running_max = std::max(running_max, system.norm_of(product));
        ++record.nodes;
      }
      if (running_max < inner_best) {
        inner_best = running_max;
        inner_path = b_seq;
      }
    } while (next_sequence(b_seq, system.b_set().size()));
    if (inner_best > record.mu) {
      record.mu = inner_best;
      record.witness_a = a_seq;
      record.best_b = inner_path;
    }
  } while (next_sequence(a_seq, system.a_set().size()));
  return record;
}

std::string_view to_string(GrowthVerdict::Kind kind) {
  return kind == GrowthVerdict::Kind::BoundedUpToHorizon ? "BoundedUpToHorizon" : "Growing";
}

GrowthVerdict classify_growth(std::span<const double> mus) {
  GrowthVerdict verdict;
  if (mus.empty()) return verdict;

  const std::size_t tail = std::min<std::size_t>(3, mus.size());
  const auto last = mus.subspan(mus.size() - tail);
  const auto [lo, hi] = std::minmax_element(last.begin(), last.end());
  const double scale = std::max(std::abs(*lo), std::abs(*hi));
  if (*hi - *lo <= 1e-6 * scale) {
    verdict.kind = GrowthVerdict::Kind::BoundedUpToHorizon;
    verdict.constant = *std::max_element(mus.begin(), mus.end());
    return verdict;
  }

  verdict.kind = GrowthVerdict::Kind::Growing;
  std::size_t start = mus.size() / 2;
  if (mus.size() - start < 2) start = mus.size() - 2;
  const double count = static_cast<double>(mus.size() - start);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = start; i < mus.size(); ++i) {
    const double x = static_cast<double>(i + 1);
    const double y = std::log(std::max(mus[i], std::numeric_limits<double>::min()));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  verdict.slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  verdict.constant = *std::max_element(mus.begin(), mus.end());
  return verdict;
}

MuTable mu_table(const AlternatingSystem& system, std::size_t n_max, SearchBudget budget) {
  if (n_max == 0) throw Error(ErrorCode::InvalidArgument, "n_max must be at least 1");
  MuTable table;
  std::vector<double> mus;
  for (std::size_t n = 1; n <= n_max; ++n) {
    table.records.push_back(mu_n(system, n, budget));
    mus.push_back(table.records.back().mu);
  }
  table.verdict = classify_growth(mus);
  return table;
}

ShiftBound left_shift_bound(const AlternatingSystem& system, std::span<const std::size_t> a_indices,
                            std::span<const std::size_t> b_indices) {
  check_indices(system, a_indices, b_indices);
  const std::size_t n = a_indices.size();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "shift bound needs n >= 2");
  const auto& as = system.a_set();
  const auto& bs = system.b_set();

  Matrix left = Matrix::identity(system.m());
  for (std::size_t k = 0; k < n; ++k) left = bs[b_indices[k]] * (as[a_indices[k]] * left);

  // Shifted right product with A~_k = A_{k+1}: A_n B_{n-1} ... A_2 B_1.
  Matrix shifted = Matrix::identity(system.n());
  for (std::size_t k = 0; k + 1 < n; ++k) {
    shifted = as[a_indices[k + 1]] * (bs[b_indices[k]] * shifted);
  }

  double a_bound = 0.0;
  double b_bound = 0.0;
  for (const Matrix& a : as) a_bound = std::max(a_bound, system.norm_of(a));
  for (const Matrix& b : bs) b_bound = std::max(b_bound, system.norm_of(b));

  ShiftBound out;
  out.left_norm = system.norm_of(left);
  out.shifted_right_norm = system.norm_of(shifted);
  out.bound = b_bound * out.shifted_right_norm * a_bound;
  return out;
}

}  // namespace altprod
