#include "altprod/stanford.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "altprod/errors.hpp"

namespace altprod {

namespace {

constexpr double kAngleSlack = 1e-12;

// Plain 2x2 block for the large product enumerations.
struct Mat2 {
  double a, b, c, d;

  friend Mat2 operator*(const Mat2& l, const Mat2& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c,
            l.c * r.b + l.d * r.d};
  }

  double spectral_norm() const {
    const double p = a + d, q = b - c, r = a - d, t = b + c;
    return 0.5 * (std::sqrt(p * p + q * q) + std::sqrt(r * r + t * t));
  }
};

Mat2 to_mat2(const Matrix& m) { return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)}; }

void require_plane_vector(std::span<const double> x) {
  if (x.size() != 2) throw Error(ErrorCode::ShapeError, "expected a vector in R^2");
  if (x[0] == 0.0 && x[1] == 0.0) throw Error(ErrorCode::ZeroVector, "x must be nonzero");
}

}  // namespace

void SectorConfig::validate() const {
  if (!(half_angle > 0.0 && half_angle < std::numbers::pi / 4.0)) {
    throw Error(ErrorCode::InvalidArgument, "sector half angle must lie in (0, pi/4)");
  }
}

bool SectorConfig::contains(double x, double y) const {
  if (x == 0.0 && y == 0.0) return false;
  const double angle = std::abs(std::atan2(y, x));  // in [0, pi]
  return angle <= half_angle + kAngleSlack || angle >= std::numbers::pi - half_angle - kAngleSlack;
}

double sector_contraction_bound(double half_angle) {
  const double t = std::tan(half_angle);
  return std::sqrt(0.25 + 4.0 * t * t);
}

StanfordPair make_stanford(double alpha, SectorConfig sector) {
  sector.validate();
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::InvalidArgument, "alpha must be >= 1");
  }
  const double q = std::pow(alpha, 7) * sector_contraction_bound(sector.half_angle);
  if (!(q < 1.0)) {
    throw Error(ErrorCode::AlphaTooLarge,
                "contraction factor " + std::to_string(q) + " is not below 1");
  }
  const double c = std::sqrt(3.0) / 2.0;
  StanfordPair pair{alpha * Matrix{{0.5, 0.0}, {0.0, 2.0}},
                    alpha * Matrix{{c, 0.5}, {-0.5, c}},
                    StanfordParams{alpha, q, sector}};
  return pair;
}

IndexSequence StabilizationRun::h_indices() const {
  IndexSequence out;
  out.reserve(steps.size());
  for (const auto& step : steps) out.push_back(step.matrix);
  return out;
}

StabilizationRun stabilize_pointwise(const StanfordPair& pair, std::span<const double> x,
                                     double target, std::size_t max_steps) {
  require_plane_vector(x);
  if (!(pair.params.q < 1.0)) throw Error(ErrorCode::AlphaTooLarge, "q must be below 1");

  StabilizationRun run;
  Vector state(x.begin(), x.end());
  double norm = vector_norm(state, NormKind::Euclidean);
  double block_start = norm;
  std::size_t rotations = 0;
  while (norm > target) {
    if (run.steps.size() >= max_steps) {
      throw Error(ErrorCode::MaxStepsExceeded,
                  "stabilizer did not reach the target within " + std::to_string(max_steps) +
                      " steps");
    }
    const bool in_sector = pair.params.sector.contains(state[0], state[1]);
    const std::size_t which = in_sector ? 0 : 1;
    state = mat_vec(which == 0 ? pair.h1 : pair.h2, state);
    norm = vector_norm(state, NormKind::Euclidean);
    run.steps.push_back(StabilizerStep{which, state, norm});
    if (which == 1) {
      ++rotations;
      run.max_consecutive_rotations = std::max(run.max_consecutive_rotations, rotations);
    } else {
      run.block_factors.push_back(norm / block_start);
      block_start = norm;
      rotations = 0;
    }
  }
  run.final_vector = std::move(state);
  return run;
}

std::vector<double> min_product_norms(std::span<const Matrix> factors, std::size_t n,
                                      SearchBudget budget) {
  if (factors.empty()) throw Error(ErrorCode::EmptyAlphabet, "no factors to multiply");
  std::vector<Mat2> fs;
  for (const Matrix& f : factors) {
    if (f.rows() != 2 || f.cols() != 2) {
      throw Error(ErrorCode::ShapeError, "product enumeration supports 2x2 factors only");
    }
    fs.push_back(to_mat2(f));
  }
  std::vector<double> minima(n, std::numeric_limits<double>::infinity());
  std::uint64_t nodes = 0;
  auto descend = [&](auto&& self, std::size_t depth, const Mat2& product) -> void {
    if (depth == n) return;
    for (const Mat2& f : fs) {
      if (++nodes > budget.node_limit) {
        throw Error(ErrorCode::BudgetExceeded, "product enumeration exceeded the node budget");
      }
      const Mat2 next = f * product;
      minima[depth] = std::min(minima[depth], next.spectral_norm());
      self(self, depth + 1, next);
    }
  };
  descend(descend, 0, Mat2{1.0, 0.0, 0.0, 1.0});
  return minima;
}

double check_products_lower_bound(const StanfordPair& pair, std::size_t n, SearchBudget budget) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "product length must be at least 1");
  const std::array<Matrix, 2> factors{pair.h1, pair.h2};
  return min_product_norms(factors, n, budget).back();
}

Counterexample build_counterexample(const std::vector<Matrix>& a_set, double alpha) {
  if (a_set.empty()) throw Error(ErrorCode::EmptyAlphabet, "A alphabet is empty");
  for (std::size_t i = 0; i < a_set.size(); ++i) {
    if (a_set[i].rows() != 2 || a_set[i].cols() != 2) {
      throw Error(ErrorCode::ShapeError, "counterexample needs 2x2 A matrices");
    }
    const double det = determinant(a_set[i]);
    if (std::abs(det - 1.0) > 1e-9) {
      throw Error(ErrorCode::DeterminantNotOne,
                  "det A[" + std::to_string(i) + "] = " + std::to_string(det));
    }
  }
  StanfordPair pair = make_stanford(alpha);

  std::vector<Matrix> b_set;
  std::vector<std::array<std::size_t, 2>> b_index;
  for (const Matrix& a : a_set) {
    const Matrix a_inv = inverse(a);
    std::array<std::size_t, 2> slots{};
    for (std::size_t i = 0; i < 2; ++i) {
      const Matrix b = a_inv * (i == 0 ? pair.h1 : pair.h2);
      const auto found = std::find(b_set.begin(), b_set.end(), b);
      slots[i] = static_cast<std::size_t>(found - b_set.begin());
      if (found == b_set.end()) b_set.push_back(b);
    }
    b_index.push_back(slots);
  }
  AlternatingSystem system(2, 2, a_set, std::move(b_set), NormKind::Euclidean,
                           Orientation::RightProducts);
  return Counterexample{std::move(system), std::move(pair), std::move(b_index)};
}

CounterexampleRun counterexample_pointwise_run(const Counterexample& ce,
                                               std::span<const std::size_t> a_pattern,
                                               std::span<const double> x, double target,
                                               std::size_t max_steps) {
  require_plane_vector(x);
  if (a_pattern.empty()) throw Error(ErrorCode::InvalidArgument, "A pattern is empty");
  for (std::size_t a : a_pattern) {
    if (a >= ce.system.a_set().size()) {
      throw Error(ErrorCode::IndexOutOfRange, "A index " + std::to_string(a) + " out of range");
    }
  }

  const StabilizationRun plan = stabilize_pointwise(ce.pair, x, target, max_steps);

  CounterexampleRun run;
  run.h_indices = plan.h_indices();
  Matrix product = Matrix::identity(2);
  Matrix h_product = Matrix::identity(2);
  double running_max = 0.0;
  for (std::size_t k = 0; k < run.h_indices.size(); ++k) {
    const std::size_t a = a_pattern[k % a_pattern.size()];
    const std::size_t h = run.h_indices[k];
    const std::size_t b = ce.b_index[a][h];
    product = ce.system.step(a, b) * product;
    h_product = (h == 0 ? ce.pair.h1 : ce.pair.h2) * h_product;

    run.trace.a_indices.push_back(a);
    run.trace.b_indices.push_back(b);
    const double norm = ce.system.norm_of(product);
    run.trace.prefix_norms.push_back(norm);
    running_max = std::max(running_max, norm);
    run.vector_norms.push_back(vector_norm(mat_vec(product, x), NormKind::Euclidean));
    run.cancellation_error =
        std::max(run.cancellation_error, max_entry_difference(product, h_product));
    run.cancellation_scale = std::max(run.cancellation_scale, h_product.max_abs());
  }
  run.trace.nu = running_max;
  run.final_vector = mat_vec(product, x);
  return run;
}

std::array<Matrix, 2> make_incommensurable(double alpha_angle, double beta_angle, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::InvalidArgument, "gamma must be positive");
  }
  if (gamma == 1.0) throw Error(ErrorCode::GammaIsOne, "gamma must differ from 1");
  const double ca = std::cos(alpha_angle), sa = std::sin(alpha_angle);
  const double cb = std::cos(beta_angle), sb = std::sin(beta_angle);
  return {Matrix{{ca, -sa}, {sa, ca}}, Matrix{{cb, -gamma * sb}, {sb / gamma, cb}}};
}

std::vector<double> divergence_probe(std::span<const Matrix> factors, std::span<const double> x,
                                     std::size_t steps) {
  if (factors.empty()) throw Error(ErrorCode::EmptyAlphabet, "no factors to apply");
  Vector state(x.begin(), x.end());
  std::vector<double> norms{vector_norm(state, NormKind::Euclidean)};
  for (std::size_t k = 0; k < steps; ++k) {
    Vector best;
    double best_norm = -1.0;
    for (const Matrix& f : factors) {
      Vector next = mat_vec(f, state);
      const double norm = vector_norm(next, NormKind::Euclidean);
      if (norm > best_norm) {
        best_norm = norm;
        best = std::move(next);
      }
    }
    state = std::move(best);
    norms.push_back(best_norm);
  }
  return norms;
}

}  // namespace altprod
