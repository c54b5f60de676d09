#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gtrec/gene_tree.hpp"
#include "gtrec/reconcile.hpp"
#include "gtrec/tree.hpp"
#include "gtrec/triples.hpp"

namespace gtrec {

inline constexpr std::size_t kMaxEnumerationLabels = 8;
inline constexpr std::size_t kMaxOracleSpecies = 6;

/// Streams every rooted phylogenetic tree on `labels`, binary only or with
/// multifurcations, each exactly once. The callback returns false to stop.
/// Domain error on an empty label set or more than 8 labels.
void enumerate_species_trees(const std::vector<std::string>& labels, bool binary_only,
                             const std::function<bool(const RootedTree&)>& visit);

std::size_t count_species_trees(const std::vector<std::string>& labels, bool binary_only);

struct OracleResult {
  bool exists = false;
  std::optional<RootedTree> witness;
  std::size_t trees_checked = 0;
};

/// Tries every binary species tree on σ(𝔾): plant, construct_map and
/// validate_map. Domain error when there are more than six species, when g
/// fails O1-O3 (or O3.A if restricted), or for a non-binary g in plain mode.
OracleResult exists_map_bruteforce(const GeneTree& g, bool restricted);

/// Exhaustive search over every map that satisfies M1 and M2.i on a fixed
/// planted species tree; d/t images range over all edges. Intended for gene
/// trees with a handful of vertices.
std::optional<ReconciliationMap> find_any_map(const GeneTree& g, const PlantedSpeciesTree& s,
                                              bool restricted);

struct EquivalenceResult {
  bool consistent = false;
  OracleResult oracle;
  bool holds() const { return consistent == oracle.exists; }
};

/// is_consistent(species_triples(g)) against exists_map_bruteforce(g).
EquivalenceResult theorem_equivalence(const GeneTree& g, bool restricted);
bool check_theorem_equivalence(const GeneTree& g, bool restricted);

}  // namespace gtrec
