// Command-line front end: runs the analyses on JSON system files and prints
// reports (JSON by default) to stdout or --out.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "altprod/adversary.hpp"
#include "altprod/certifiers.hpp"
#include "altprod/errors.hpp"
#include "altprod/minimax.hpp"
#include "altprod/report.hpp"
#include "altprod/stanford.hpp"
#include "altprod/system.hpp"

namespace {

using nlohmann::json;
using namespace altprod;

enum ExitCode { kOk = 0, kNegative = 1, kInputError = 2, kBudget = 3 };

struct RunConfig {
  std::string input;
  std::string out;
  std::string format = "json";
  std::uint64_t node_budget = 10'000'000;
  std::uint64_t seed = 42;

  std::size_t n_max = 6;
  std::string a_indices;
  std::size_t m_target = 3;
  std::size_t n_cap = 8;
  std::string mode = "auto";
  std::size_t horizon_k = 8;
  double alpha = 1.0;
  std::size_t n = 10;
  std::string x;
  double target = 1e-6;
  std::size_t max_steps = 200;
  std::string pattern;
  double ce_alpha = 1.02;
  double ce_target = 1e-3;
  std::size_t ce_max_steps = 10000;
  std::size_t horizon = 200;
  double cap = 10.0;
  std::size_t lookahead = 7;
};

struct Outcome {
  Outcome() = default;
  Outcome(json r, int code = kOk) : report(std::move(r)), exit_code(code) {}

  json report;
  int exit_code = kOk;
  std::string text;  // preformatted output for csv / human / jsonl
};

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "not a number: \"" + item + "\"");
    }
  }
  return out;
}

IndexSequence parse_indices(const std::string& text) {
  IndexSequence out;
  for (double v : parse_doubles(text)) {
    if (v < 0 || v != std::floor(v)) {
      throw Error(ErrorCode::ParseError, "indices must be nonnegative integers");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

Vector vector_or_random(const std::string& text, std::size_t dim, std::uint64_t seed) {
  if (!text.empty()) return parse_doubles(text);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (double& c : v) c = gauss(rng);
  const double norm = vector_norm(v, NormKind::Euclidean);
  for (double& c : v) c /= norm;
  return v;
}

json header(const std::string& command, const RunConfig& cfg,
            const std::optional<AlternatingSystem>& system) {
  json h{{"command", command},
         {"node_budget", cfg.node_budget},
         {"seed", cfg.seed},
         {"tolerances",
          {{"bound", 1e-9},
           {"contraction_margin", kContractionMargin},
           {"invertibility_cutoff", kInvertibilityCutoff},
           {"verdict_relative", 1e-6}}}};
  if (system) {
    h["norm"] = to_string(system->norm());
    h["orientation"] = to_string(system->orientation());
  }
  return h;
}

AlternatingSystem require_system(const RunConfig& cfg) {
  if (cfg.input.empty()) throw Error(ErrorCode::ParseError, "this command needs an input file");
  return load_system_file(cfg.input);
}

Outcome cmd_validate(const RunConfig& cfg) {
  const AlternatingSystem system = require_system(cfg);
  json report = header("validate", cfg, system);
  report["result"] = to_json(check_hypotheses(system));
  return {report};
}

Outcome cmd_mu_table(const RunConfig& cfg) {
  const AlternatingSystem system = require_system(cfg);
  const MuTable table = mu_table(system, cfg.n_max, SearchBudget{cfg.node_budget});
  json report = header("mu-table", cfg, system);
  report["n_max"] = cfg.n_max;
  report["result"] = to_json(table);
  Outcome outcome{report};
  for (const auto& r : table.records) {
    if (!r.certified) outcome.exit_code = kBudget;
  }
  if (cfg.format == "csv") outcome.text = mu_table_csv(table);
  if (cfg.format == "human") {
    std::ostringstream os;
    os << "norm=" << to_string(system.norm()) << " orientation=" << to_string(system.orientation())
       << "\n";
    char line[256];
    std::snprintf(line, sizeof line, "%4s  %22s  %10s  %s\n", "n", "mu_n", "nodes", "witness_a");
    os << line;
    for (const auto& r : table.records) {
      std::snprintf(line, sizeof line, "%4zu  %22.15g  %10llu  %s%s\n", r.n, r.mu,
                    static_cast<unsigned long long>(r.nodes), join_indices(r.witness_a).c_str(),
                    r.certified ? "" : "  (budget hit)");
      os << line;
    }
    if (table.verdict.kind == GrowthVerdict::Kind::BoundedUpToHorizon) {
      std::snprintf(line, sizeof line, "verdict: bounded up to horizon, C = %.15g\n",
                    table.verdict.constant);
    } else {
      std::snprintf(line, sizeof line,
                    "verdict: growing, slope of log mu_n = %.6g (rate %.6g per step)\n",
                    table.verdict.slope, std::exp(table.verdict.slope));
    }
    os << line;
    outcome.text = os.str();
  }
  return outcome;
}

Outcome cmd_best_response(const RunConfig& cfg) {
  const AlternatingSystem system = require_system(cfg);
  const IndexSequence a = parse_indices(cfg.a_indices);
  const BestResponse response = best_response(system, a, SearchBudget{cfg.node_budget});
  json report = header("best-response", cfg, system);
  report["a_indices"] = a;
  report["result"] = to_json(response);
  return {report, response.certified ? kOk : kBudget};
}

Outcome cmd_adversary(const RunConfig& cfg) {
  const AlternatingSystem system = require_system(cfg);
  std::optional<AdversaryMode> mode;
  if (cfg.mode != "auto") mode = parse_adversary_mode(cfg.mode);
  json report = header("adversary", cfg, system);
  report["m_target"] = cfg.m_target;
  report["n_cap"] = cfg.n_cap;
  try {
    const SearchBudget budget{cfg.node_budget};
    const AdversaryCertificate cert = build_adversary(system, cfg.m_target, cfg.n_cap, mode, budget);
    const bool verified = verify_certificate(system, cert, budget);
    report["result"] = to_json(cert);
    report["verified"] = verified;
    return {report, verified ? kOk : kNegative};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotFoundWithinCap) throw;
    report["result"] = {{"outcome", "NotFoundWithinCap"}, {"message", e.what()}};
    return {report, kNegative};
  }
}

Outcome cmd_contractivity(const RunConfig& cfg) {
  const AlternatingSystem system = require_system(cfg);
  const ContractivityVerdict verdict =
      certify_contractivity(system, cfg.horizon_k, SearchBudget{cfg.node_budget});
  json report = header("contractivity", cfg, system);
  report["result"] = to_json(verdict);
  switch (verdict.result) {
    case ContractivityVerdict::Result::CertifiedYes: return {report, kOk};
    case ContractivityVerdict::Result::NoWithinHorizon: return {report, kNegative};
    case ContractivityVerdict::Result::Inconclusive: return {report, kBudget};
  }
  return {report, kBudget};
}

Outcome cmd_stanford(const RunConfig& cfg) {
  const StanfordPair pair = make_stanford(cfg.alpha);
  const Vector x = vector_or_random(cfg.x, 2, cfg.seed);
  const StabilizationRun run = stabilize_pointwise(pair, x, cfg.target, cfg.max_steps);
  const double floor = check_products_lower_bound(pair, cfg.n, SearchBudget{cfg.node_budget});
  const double bound = std::pow(cfg.alpha, static_cast<double>(cfg.n));
  const bool holds = floor >= bound - 1e-9;

  json report = header("stanford", cfg, std::nullopt);
  report["norm"] = "euclidean";
  report["orientation"] = "right";
  report["params"] = to_json(pair.params);
  report["x"] = x;
  report["target"] = cfg.target;
  report["stabilization"] = to_json(run);
  report["lower_bound"] = {{"n", cfg.n}, {"min_norm", floor}, {"alpha_pow_n", bound},
                           {"holds", holds}};
  Outcome outcome{report, holds ? kOk : kNegative};
  if (cfg.format == "jsonl") {
    std::string text;
    for (std::size_t i = 0; i < run.steps.size(); ++i) {
      text += to_json(run.steps[i], i + 1).dump() + "\n";
    }
    json summary = report;
    summary.erase("stabilization");
    text += summary.dump() + "\n";
    outcome.text = text;
  }
  return outcome;
}

Outcome cmd_counterexample(const RunConfig& cfg) {
  std::vector<Matrix> a_set{Matrix::identity(2)};
  if (!cfg.input.empty()) a_set = load_system_file(cfg.input).a_set();
  const Counterexample ce = build_counterexample(a_set, cfg.ce_alpha);

  std::vector<Matrix> steps;
  for (std::size_t a = 0; a < ce.system.a_set().size(); ++a) {
    for (std::size_t b = 0; b < ce.system.b_set().size(); ++b) steps.push_back(ce.system.step(a, b));
  }
  const double floor =
      min_product_norms(steps, cfg.n, SearchBudget{cfg.node_budget}).back();
  const double bound = std::pow(cfg.ce_alpha, static_cast<double>(cfg.n));

  IndexSequence pattern;
  if (cfg.pattern.empty()) {
    for (std::size_t a = 0; a < ce.system.a_set().size(); ++a) pattern.push_back(a);
  } else {
    pattern = parse_indices(cfg.pattern);
  }
  const Vector x = cfg.x.empty() ? Vector{0.0, 1.0} : parse_doubles(cfg.x);
  const CounterexampleRun run = counterexample_pointwise_run(ce, pattern, x, cfg.ce_target,
                                                             cfg.ce_max_steps);

  bool growth_ok = true;
  for (std::size_t k = 0; k < run.trace.prefix_norms.size(); ++k) {
    if (run.trace.prefix_norms[k] < std::pow(cfg.ce_alpha, static_cast<double>(k + 1)) - 1e-9) {
      growth_ok = false;
    }
  }
  const bool floor_ok = floor >= bound - 1e-9;
  const double final_norm = vector_norm(run.final_vector, NormKind::Euclidean);

  json report = header("counterexample", cfg, ce.system);
  report["alpha"] = cfg.ce_alpha;
  report["system"] = to_json(ce.system);
  report["pattern"] = pattern;
  report["x"] = x;
  report["norm_floor"] = {{"n", cfg.n}, {"min_product_norm", floor}, {"alpha_pow_n", bound},
                          {"holds", floor_ok}};
  report["pointwise"] = {{"steps", run.h_indices.size()},
                         {"final_norm", final_norm},
                         {"target", cfg.ce_target},
                         {"reached", final_norm <= cfg.ce_target},
                         {"cancellation_error", run.cancellation_error},
                         {"cancellation_scale", run.cancellation_scale},
                         {"matrix_norm_growth_holds", growth_ok},
                         {"final_matrix_norm", run.trace.prefix_norms.empty()
                                                   ? 1.0
                                                   : run.trace.prefix_norms.back()}};
  report["run"] = to_json(run);
  const bool ok = floor_ok && growth_ok && final_norm <= cfg.ce_target;
  return {report, ok ? kOk : kNegative};
}

Outcome cmd_probe(const RunConfig& cfg) {
  const AlternatingSystem system = require_system(cfg);
  const Vector x = vector_or_random(cfg.x, system.product_dim(), cfg.seed);
  const ProbeResult probe = pointwise_probe(system, x, cfg.horizon, cfg.cap, cfg.lookahead,
                                            SearchBudget{cfg.node_budget});
  json report = header("probe", cfg, system);
  report["x"] = x;
  report["cap"] = cfg.cap;
  report["horizon"] = cfg.horizon;
  report["lookahead"] = cfg.lookahead;
  report["result"] = to_json(probe);
  return {report, probe.exceeded ? kNegative : kOk};
}

Outcome cmd_convert(const RunConfig& cfg) {
  const AlternatingSystem flipped = flip_orientation(require_system(cfg));
  Outcome outcome{to_json(flipped)};
  return outcome;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::BudgetExceeded: return kBudget;
    case ErrorCode::NotFoundWithinCap:
    case ErrorCode::MaxStepsExceeded:
    case ErrorCode::VerificationFailed: return kNegative;
    default: return kInputError;
  }
}

void emit(const RunConfig& cfg, const Outcome& outcome) {
  const std::string text = outcome.text.empty() ? outcome.report.dump(2) + "\n" : outcome.text;
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(cfg.out);
  if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + cfg.out);
  file << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundedness analysis of alternating matrix products A_n B_n ... A_1 B_1"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&cfg](CLI::App* sub, bool needs_input) {
    if (needs_input) {
      sub->add_option("input", cfg.input, "system JSON file")->required()->check(CLI::ExistingFile);
    }
    sub->add_option("--out", cfg.out, "write the report to this file");
    sub->add_option("--format", cfg.format, "json, csv, human or jsonl")
        ->check(CLI::IsMember({"json", "csv", "human", "jsonl"}));
    sub->add_option("--budget", cfg.node_budget, "search node budget")
        ->check(CLI::Range(std::uint64_t{1000}, std::uint64_t{1} << 62));
    sub->add_option("--seed", cfg.seed, "seed for randomized inputs");
  };

  auto* validate = app.add_subcommand("validate", "hypothesis report for a system");
  common(validate, true);

  auto* table = app.add_subcommand("mu-table", "mu_n for n = 1..n-max with growth verdict");
  common(table, true);
  table->add_option("--n-max", cfg.n_max)->check(CLI::PositiveNumber);

  auto* response = app.add_subcommand("best-response", "best B-sequence against fixed A indices");
  common(response, true);
  response->add_option("--a", cfg.a_indices, "comma-separated A indices")->required();

  auto* adversary = app.add_subcommand("adversary", "build and verify an adversary certificate");
  common(adversary, true);
  adversary->add_option("--m-target", cfg.m_target)->check(CLI::PositiveNumber);
  adversary->add_option("--n-cap", cfg.n_cap)->check(CLI::PositiveNumber);
  adversary->add_option("--mode", cfg.mode)
      ->check(CLI::IsMember({"auto", "invertible", "nonnegative"}));

  auto* contract = app.add_subcommand("contractivity", "finite-horizon contractivity check");
  common(contract, true);
  contract->add_option("--k", cfg.horizon_k, "horizon K")->check(CLI::PositiveNumber);

  auto* stanford = app.add_subcommand("stanford", "sector stabilizer demo and norm floor check");
  common(stanford, false);
  stanford->add_option("--alpha", cfg.alpha);
  stanford->add_option("--n", cfg.n, "product length for the norm floor")->check(CLI::PositiveNumber);
  stanford->add_option("--x", cfg.x, "start vector, e.g. 0,1 (random unit vector if omitted)");
  stanford->add_option("--target", cfg.target);
  stanford->add_option("--max-steps", cfg.max_steps);

  auto* counter = app.add_subcommand("counterexample",
                                     "pointwise-bounded but unbounded system from an A alphabet");
  common(counter, false);
  counter->add_option("input", cfg.input, "system JSON whose A alphabet is used (default {I})")
      ->check(CLI::ExistingFile);
  counter->add_option("--alpha", cfg.ce_alpha);
  counter->add_option("--n", cfg.n, "product length for the norm floor")->check(CLI::PositiveNumber);
  counter->add_option("--x", cfg.x, "start vector (default 0,1)");
  counter->add_option("--target", cfg.ce_target);
  counter->add_option("--pattern", cfg.pattern, "A indices repeated cyclically");
  counter->add_option("--max-steps", cfg.ce_max_steps);

  auto* probe = app.add_subcommand("probe", "heuristic pointwise boundedness probe");
  common(probe, true);
  probe->add_option("--x", cfg.x, "start vector (random unit vector if omitted)");
  probe->add_option("--horizon", cfg.horizon)->check(CLI::PositiveNumber);
  probe->add_option("--cap", cfg.cap);
  probe->add_option("--lookahead", cfg.lookahead)->check(CLI::PositiveNumber);

  auto* convert = app.add_subcommand("convert", "flip between right and left products");
  common(convert, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    Outcome outcome;
    if (*validate) outcome = cmd_validate(cfg);
    else if (*table) outcome = cmd_mu_table(cfg);
    else if (*response) outcome = cmd_best_response(cfg);
    else if (*adversary) outcome = cmd_adversary(cfg);
    else if (*contract) outcome = cmd_contractivity(cfg);
    else if (*stanford) outcome = cmd_stanford(cfg);
    else if (*counter) outcome = cmd_counterexample(cfg);
    else if (*probe) outcome = cmd_probe(cfg);
    else outcome = cmd_convert(cfg);
    emit(cfg, outcome);
    return outcome.exit_code;
  } catch (const Error& e) {
    std::cerr << json{{"error", to_string(e.code())}, {"message", e.what()}}.dump() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
    return kInputError;
  }
}
