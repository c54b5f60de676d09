#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gtrec/gene_tree.hpp"
#include "gtrec/tree.hpp"
#include "gtrec/triples.hpp"

namespace gtrec {

/// Species tree with the extra root ρ_S above lca_S(𝕊). The root of `tree()`
/// is ρ_S and has exactly one child.
class PlantedSpeciesTree {
 public:
  PlantedSpeciesTree() = default;
  /// Accepts a tree that already carries the planted root.
  static PlantedSpeciesTree from_planted(RootedTree tree);

  const RootedTree& tree() const { return tree_; }
  VertexId planted_root() const { return tree_.root(); }
  VertexId core_root() const { return tree_.children(tree_.root()).front(); }
  /// Species names, sorted.
  const std::vector<std::string>& species() const { return species_; }
  std::optional<VertexId> species_vertex(std::string_view name) const;
  /// The tree without ρ_S.
  RootedTree unplanted() const;

 private:
  RootedTree tree_;
  std::vector<std::string> species_;
};

/// Appends ρ_S as the last vertex id. A root of out-degree 1 means the input
/// is planted already, which is a domain error.
PlantedSpeciesTree plant(const RootedTree& species_tree);

/// μ, indexed by gene-tree vertex.
using ReconciliationMap = std::vector<Locus>;

/// Species vertex for each species id of g. Domain error if a species of g
/// is missing from S.
std::vector<VertexId> species_vertices(const GeneTree& g, const PlantedSpeciesTree& s);

/// lca_S(σ_T̄Ē(x)) for every gene vertex; kNoVertex where σ_T̄Ē(x) is empty.
std::vector<VertexId> sigma_bar_lcas(const GeneTree& g, const PlantedSpeciesTree& s);

ReconciliationMap construct_map(const GeneTree& g, const PlantedSpeciesTree& s);

struct ValidationReport {
  AxiomVerdict m1{"M1"};
  AxiomVerdict m2i{"M2.i"};
  AxiomVerdict m2ii{"M2.ii"};
  AxiomVerdict m2iii{"M2.iii"};
  AxiomVerdict m2iv{"M2.iv", false};
  AxiomVerdict m3i{"M3.i"};
  AxiomVerdict m3ii{"M3.ii"};

  bool all_pass() const;
  std::vector<const AxiomVerdict*> verdicts() const {
    return {&m1, &m2i, &m2ii, &m2iii, &m2iv, &m3i, &m3ii};
  }
  /// Ids of failing axioms in report order.
  std::vector<std::string> failed() const;
};

/// Checks M1-M3, and M2.iv when `restricted`. M2.iii lists offending transfer
/// edges; M2.iv lists the speciation vertex and the offending child pairs; M3
/// lists pairs (x, y) with x ≺ y in T_Ē. Domain error when μ is not total or
/// names a locus outside S.
ValidationReport validate_map(const GeneTree& g, const PlantedSpeciesTree& s,
                              const ReconciliationMap& mu, bool restricted);

struct ReconcResult {
  enum class Status { kOk, kUnobservable, kNoSpeciesTree };

  Status status = Status::kOk;
  ObservabilityReport observability;
  TripleSet species_triples;
  /// Label set with a connected Aho graph, for kNoSpeciesTree.
  std::vector<std::string> witness;
  std::optional<PlantedSpeciesTree> species_tree;
  ReconciliationMap map;
  ValidationReport validation;
};

/// species_triples, BUILD, plant, construct_map, then validate_map.
ReconcResult reconc_t(const GeneTree& g, bool restricted);

}  // namespace gtrec
