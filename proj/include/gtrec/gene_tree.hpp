#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gtrec/tree.hpp"

namespace gtrec {

/// Event at an interior gene-tree vertex. Leaves carry kNone.
enum class Event : std::uint8_t { kNone, kSpeciation, kDuplication, kTransfer };

char event_code(Event e);  // 's', 'd', 't', '-' for kNone
Event event_from_code(char c);

using SpeciesId = std::uint32_t;

/// An event-labeled gene tree (T;t,σ). Construction enforces the structural
/// invariants: interior vertices carry an event and leaves do not, the tail of
/// every transfer edge is a transfer vertex, every leaf has a species and a
/// unique gene name.
class GeneTree {
 public:
  GeneTree() = default;
  /// `transfer_in[v]` flags the edge (parent(v), v); `species[v]` is σ(v) for
  /// leaves and ignored for interior vertices.
  GeneTree(RootedTree topology, std::vector<Event> events, std::vector<bool> transfer_in,
           std::vector<std::string> species);

  const RootedTree& tree() const { return tree_; }
  std::size_t size() const { return tree_.size(); }
  Event event(VertexId v) const { return events_.at(v); }
  const std::vector<Event>& events() const { return events_; }
  bool is_transfer_edge(VertexId child) const { return transfer_in_.at(child); }
  const std::vector<bool>& transfer_flags() const { return transfer_in_; }
  /// ℰ as e_1..e_h, ordered by the id of the edge's child (input order).
  const std::vector<Edge>& transfer_edges() const { return transfer_edges_; }

  const std::string& gene_name(VertexId leaf) const { return tree_.label(leaf); }
  /// σ(x) for a leaf x.
  const std::string& species_of(VertexId leaf) const;
  SpeciesId species_id_of(VertexId leaf) const;
  /// 𝕊 = σ(𝔾), sorted.
  const std::vector<std::string>& species() const { return species_; }
  const std::string& species_name(SpeciesId s) const { return species_.at(s); }
  const std::vector<std::string>& leaf_species() const { return leaf_species_; }

  /// T_Ē, the forest without transfer edges.
  const Forest& forest() const { return forest_; }

  /// σ_T̄Ē(x) as sorted species ids.
  const std::vector<SpeciesId>& sigma_bar_ids(VertexId x) const { return sigma_bar_.at(x); }
  /// σ_T̄Ē(x) as sorted species names.
  std::vector<std::string> sigma_bar(VertexId x) const;

  bool is_binary() const { return tree_.is_binary(); }

 private:
  RootedTree tree_;
  std::vector<Event> events_;
  std::vector<bool> transfer_in_;
  std::vector<std::string> leaf_species_;
  std::vector<std::string> species_;
  std::vector<SpeciesId> species_index_;
  std::vector<Edge> transfer_edges_;
  Forest forest_;
  std::vector<std::vector<SpeciesId>> sigma_bar_;
};

struct AxiomVerdict {
  AxiomVerdict() = default;
  explicit AxiomVerdict(std::string id, bool is_checked = true)
      : axiom(std::move(id)), checked(is_checked) {}

  std::string axiom;
  bool checked = true;
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  /// Offending vertex pairs, for axioms that quantify over pairs.
  std::vector<std::pair<VertexId, VertexId>> pairs;
  bool pass() const { return vertices.empty() && edges.empty() && pairs.empty(); }
};

struct ObservabilityReport {
  AxiomVerdict o1{"O1"};
  AxiomVerdict o2{"O2"};
  AxiomVerdict o3a{"O3a"};
  AxiomVerdict o3b{"O3b"};
  AxiomVerdict o3A{"O3A", false};
  /// Transfer vertices with more than one flagged out-edge. Informational.
  std::vector<VertexId> multi_transfer;

  bool all_pass() const {
    return o1.pass() && o2.pass() && o3a.pass() && o3b.pass() && (!o3A.checked || o3A.pass());
  }
  std::vector<const AxiomVerdict*> verdicts() const { return {&o1, &o2, &o3a, &o3b, &o3A}; }
};

ObservabilityReport check_observability(const GeneTree& g, bool restricted);

struct ComponentPartition {
  /// L_T̄Ē(ρ_i) for every component root, in component order.
  std::vector<std::vector<VertexId>> blocks;
  bool is_partition = false;
  std::string failure;
};

/// Leaf sets of the components of T_Ē. `is_partition` is false, with a
/// reason, when a block is empty (possible only when O2 fails).
ComponentPartition component_partition(const GeneTree& g);

bool disjoint_sorted(const std::vector<SpeciesId>& a, const std::vector<SpeciesId>& b);

}  // namespace gtrec
