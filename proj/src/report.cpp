#include "altprod/report.hpp"

#include <cstdio>
#include <sstream>

namespace altprod {

using nlohmann::json;

json to_json(const Matrix& m) { return m.to_rows(); }

json to_json(const AlternatingSystem& system) { return json::parse(save_system(system)); }

json to_json(const HypothesisReport& r) {
  return {
      {"invertible", r.invertible},
      {"gamma_inv", r.gamma_inv},
      {"invertible_reason", r.invertible_reason},
      {"nonnegative", r.nonnegative},
      {"nonzero_rows", r.nonzero_rows},
      {"gamma", r.gamma},
      {"gamma_ab", r.gamma_ab},
      {"gamma_f", r.gamma_f},
      {"a_bound", r.a_bound},
      {"b_bound", r.b_bound},
  };
}

json to_json(const ProductTrace& t) {
  return {{"a_indices", t.a_indices},
          {"b_indices", t.b_indices},
          {"prefix_norms", t.prefix_norms},
          {"nu", t.nu}};
}

json to_json(const BestResponse& r) {
  return {{"b_indices", r.b_indices},
          {"value", r.value},
          {"nodes", r.nodes},
          {"certified", r.certified}};
}

json to_json(const MuRecord& r) {
  return {{"n", r.n},
          {"mu", r.mu},
          {"witness_a", r.witness_a},
          {"best_b", r.best_b},
          {"nodes", r.nodes},
          {"certified", r.certified}};
}

json to_json(const GrowthVerdict& v) {
  json out{{"kind", to_string(v.kind)}, {"label", "up to horizon, not a proof"}};
  if (v.kind == GrowthVerdict::Kind::BoundedUpToHorizon) {
    out["constant"] = v.constant;
  } else {
    out["slope"] = v.slope;
  }
  return out;
}

json to_json(const MuTable& table) {
  json rows = json::array();
  for (const auto& r : table.records) rows.push_back(to_json(r));
  return {{"records", rows}, {"verdict", to_json(table.verdict)}};
}

json to_json(const AdversaryCertificate& cert) {
  json blocks = json::array();
  for (const auto& b : cert.blocks) {
    blocks.push_back({{"length", b.length},
                      {"a_block", b.a_block},
                      {"kappa", b.kappa},
                      {"block_mu", b.block_mu},
                      {cert.mode == AdversaryMode::Invertible ? "eta" : "omega", b.bound_const}});
  }
  return {{"mode", to_string(cert.mode)},
          {"norm", to_string(cert.norm)},
          {"blocks", blocks},
          {"total_len", cert.total_len},
          {"verified_lower_bounds", cert.verified_lower_bounds}};
}

json to_json(const ContractivityVerdict& v) {
  json out{{"result", to_string(v.result)}, {"horizon", v.horizon}, {"nodes", v.nodes}};
  if (v.result == ContractivityVerdict::Result::CertifiedYes) out["depth_used"] = v.depth_used;
  if (v.result == ContractivityVerdict::Result::NoWithinHorizon) out["witness"] = v.witness;
  return out;
}

json to_json(const ProbeResult& p) {
  json out{{"a_indices", p.a_indices},
           {"b_indices", p.b_indices},
           {"norms", p.norms},
           {"verdict", p.exceeded ? "ExceededCap" : "StayedBelowCap"},
           {"label", "heuristic"}};
  if (p.exceeded) out["exceeded_at"] = p.exceeded_at;
  return out;
}

json to_json(const StanfordParams& p) {
  return {{"alpha", p.alpha}, {"q", p.q}, {"half_angle", p.sector.half_angle}};
}

json to_json(const StabilizerStep& s, std::size_t index) {
  return {{"step", index},
          {"matrix_applied", s.matrix == 0 ? "H1" : "H2"},
          {"vector", s.vector},
          {"norm", s.norm}};
}

json to_json(const StabilizationRun& run) {
  json steps = json::array();
  for (std::size_t i = 0; i < run.steps.size(); ++i) steps.push_back(to_json(run.steps[i], i + 1));
  return {{"steps", steps},
          {"block_factors", run.block_factors},
          {"max_consecutive_rotations", run.max_consecutive_rotations},
          {"final_vector", run.final_vector}};
}

json to_json(const CounterexampleRun& run) {
  return {{"trace", to_json(run.trace)},
          {"vector_norms", run.vector_norms},
          {"h_indices", run.h_indices},
          {"final_vector", run.final_vector},
          {"cancellation_error", run.cancellation_error},
          {"cancellation_scale", run.cancellation_scale}};
}

std::string join_indices(const IndexSequence& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(seq[i]);
  }
  return out;
}

std::string mu_table_csv(const MuTable& table) {
  std::ostringstream os;
  os << "n,mu,witness_a,best_b,nodes,certified\n";
  for (const auto& r : table.records) {
    char mu[40];
    std::snprintf(mu, sizeof mu, "%.17g", r.mu);
    os << r.n << ',' << mu << ',' << join_indices(r.witness_a) << ','
       << join_indices(r.best_b) << ',' << r.nodes << ',' << (r.certified ? "true" : "false")
       << '\n';
  }
  return os.str();
}

}  // namespace altprod
