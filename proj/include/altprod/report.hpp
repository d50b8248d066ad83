#pragma once

#include <string>

#include <json.hpp>

#include "altprod/adversary.hpp"
#include "altprod/certifiers.hpp"
#include "altprod/minimax.hpp"
#include "altprod/stanford.hpp"
#include "altprod/system.hpp"

namespace altprod {

// JSON views of result objects. Key order is fixed (nlohmann sorts object
// keys), so equal inputs always serialize to equal bytes.

nlohmann::json to_json(const Matrix& m);
nlohmann::json to_json(const AlternatingSystem& system);
nlohmann::json to_json(const HypothesisReport& report);
nlohmann::json to_json(const ProductTrace& trace);
nlohmann::json to_json(const BestResponse& response);
nlohmann::json to_json(const MuRecord& record);
nlohmann::json to_json(const GrowthVerdict& verdict);
nlohmann::json to_json(const MuTable& table);
nlohmann::json to_json(const AdversaryCertificate& cert);
nlohmann::json to_json(const ContractivityVerdict& verdict);
nlohmann::json to_json(const ProbeResult& probe);
nlohmann::json to_json(const StanfordParams& params);
nlohmann::json to_json(const StabilizerStep& step, std::size_t index);
nlohmann::json to_json(const StabilizationRun& run);
nlohmann::json to_json(const CounterexampleRun& run);

/// "0 1 0" style rendering of an index sequence.
std::string join_indices(const IndexSequence& seq);

/// CSV with header `n,mu,witness_a,best_b,nodes,certified`; index sequences are
/// space separated and mu is printed with 17 significant digits.
std::string mu_table_csv(const MuTable& table);

}  // namespace altprod
