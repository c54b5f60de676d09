#pragma once

#include <json.hpp>

#include "gtrec/gene_tree.hpp"
#include "gtrec/history.hpp"
#include "gtrec/oracle.hpp"
#include "gtrec/reconcile.hpp"
#include "gtrec/time_consistency.hpp"
#include "gtrec/triples.hpp"

namespace gtrec::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kTool = "gtrec";
inline constexpr const char* kVersion = "0.1.0";

Json header(const char* command);
Json verdict(const AxiomVerdict& v);
Json observability(const ObservabilityReport& r);
Json triples(const TripleSet& set);
Json species_vertices(const PlantedSpeciesTree& s);
Json map(const GeneTree& g, const PlantedSpeciesTree& s, const ReconciliationMap& mu);
Json validation(const ValidationReport& r);
Json reconciliation(const GeneTree& g, const ReconcResult& r, bool restricted);
Json time_check(const GeneTree& g, const PlantedSpeciesTree& s, const TimeCheckResult& r);

}  // namespace gtrec::report
