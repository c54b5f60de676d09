#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gtrec/gene_tree.hpp"
#include "gtrec/history.hpp"
#include "gtrec/reconcile.hpp"
#include "gtrec/tree.hpp"

namespace gtrec {

/// gene -> species, from a two-column tab-separated sidecar.
std::map<std::string, std::string> parse_sidecar(std::string_view text);

/// Event-annotated Newick. Interior vertices carry `[&ev=s|d|t]` after the
/// closing parenthesis, `#T` before a child marks its edge as a transfer edge
/// and leaves are written `gene@SPECIES` or `gene` with a sidecar entry. Ids
/// follow the order in which vertices open in the text.
GeneTree parse_gene_tree(std::string_view text,
                         const std::map<std::string, std::string>* sidecar = nullptr);
std::string serialize_gene_tree(const GeneTree& g);
/// Export with NHX tags in place of the dialect's annotations.
std::string serialize_gene_tree_nhx(const GeneTree& g);

struct SpeciesTreeDocument {
  RootedTree tree;
  /// Branch length above each vertex; 1 where the text gives none.
  std::vector<double> length;
  /// The root has a single child.
  bool planted() const { return tree.size() > 1 && tree.out_degree(tree.root()) == 1; }
};

SpeciesTreeDocument parse_species_tree(std::string_view text);
/// Planted input is taken as is, anything else gets a new root.
PlantedSpeciesTree to_planted(const SpeciesTreeDocument& doc);
/// Vertex times from branch lengths, starting at 0 above the root.
TimedSpeciesTree to_timed(const SpeciesTreeDocument& doc);

std::string serialize_species_tree(const RootedTree& s);
/// With `planted`, ρ_S appears as an explicit unary root.
std::string serialize_species_tree(const PlantedSpeciesTree& s, bool planted);

/// One line per gene vertex: `<gene-ref> <vertex|edge> <species-ref>`. A
/// reference is a leaf name or `@<id>`; an edge is named by its lower end.
ReconciliationMap parse_map(std::string_view text, const GeneTree& g, const PlantedSpeciesTree& s);
std::string serialize_map(const GeneTree& g, const PlantedSpeciesTree& s,
                          const ReconciliationMap& mu);

/// Gene tree of a full history with events s, d, t, o (extant) and x (loss);
/// losses are written `x<id>` leaves.
std::string serialize_history(const TrueHistory& h);

}  // namespace gtrec
