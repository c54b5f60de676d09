#pragma once

#include <string>
#include <vector>

#include "gtrec/gene_tree.hpp"
#include "gtrec/reconcile.hpp"

namespace gtrec {

/// τ_T and τ_S. Times grow toward the leaves: x ≺ y implies τ(x) > τ(y).
struct TimeAssignment {
  std::vector<double> gene;
  std::vector<double> species;
};

/// A node of the constraint graph, either a gene or a species vertex.
struct TimeNode {
  bool species = false;
  VertexId id = kNoVertex;
  friend bool operator==(const TimeNode&, const TimeNode&) = default;
};

/// One step of a certified cycle. `strict` steps assert τ(from) < τ(to);
/// the others assert τ(from) = τ(to).
struct TimeStep {
  TimeNode from;
  TimeNode to;
  bool strict = true;
  std::string reason;  // "gene-edge", "species-edge", "T2-upper", "T2-lower", "T1"
};

struct TimeCheckResult {
  bool feasible = false;
  TimeAssignment witness;
  /// Closed walk through the constraint graph with at least one strict step.
  std::vector<TimeStep> cycle;
};

/// Builds the constraint graph from both tree orders, T1 and T2, and decides
/// acyclicity. Domain error unless μ passes validate_map.
TimeCheckResult check_time_consistency(const GeneTree& g, const PlantedSpeciesTree& s,
                                       const ReconciliationMap& mu);

/// Direct evaluation of the time-map conditions, T1 and T2. Returns an empty
/// string on success, otherwise a description of the first failure.
std::string check_time_witness(const GeneTree& g, const PlantedSpeciesTree& s,
                               const ReconciliationMap& mu, const TimeAssignment& tau);

}  // namespace gtrec
