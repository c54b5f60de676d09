#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gtrec {

using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

/// Rooted tree over vertices 0..size()-1. The parent relation is fixed at
/// construction; every query is const. Leaves carry labels, interior labels
/// are optional.
class RootedTree {
 public:
  RootedTree() = default;
  /// `parents[v]` is the parent of v, or kNoVertex for the unique root.
  /// Children keep the order in which they appear in `parents`.
  RootedTree(std::vector<VertexId> parents, std::vector<std::string> labels);

  std::size_t size() const { return parents_.size(); }
  bool empty() const { return parents_.empty(); }
  bool contains(VertexId v) const { return v < parents_.size(); }

  VertexId root() const { return root_; }
  VertexId parent(VertexId v) const { return parents_.at(v); }
  std::span<const VertexId> children(VertexId v) const;
  std::size_t out_degree(VertexId v) const { return children(v).size(); }
  bool is_leaf(VertexId v) const { return children(v).empty(); }

  const std::string& label(VertexId v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<VertexId> find_label(std::string_view name) const;

  /// Leaves in increasing id order.
  const std::vector<VertexId>& leaves() const { return leaves_; }
  const std::vector<VertexId>& preorder() const { return preorder_; }
  std::vector<VertexId> postorder() const;
  std::size_t depth(VertexId v) const { return depth_.at(v); }

  /// u ⪯ v: u lies in the subtree rooted at v.
  bool is_descendant(VertexId u, VertexId v) const;
  bool is_strict_descendant(VertexId u, VertexId v) const {
    return u != v && is_descendant(u, v);
  }
  bool comparable(VertexId u, VertexId v) const {
    return is_descendant(u, v) || is_descendant(v, u);
  }

  VertexId lca(VertexId a, VertexId b) const;
  /// Throws a domain error on an empty set or a foreign vertex.
  VertexId lca(std::span<const VertexId> nodes) const;

  /// L_T(x), sorted by id.
  std::vector<VertexId> leaves_below(VertexId x) const;

  /// No interior vertex other than the root has out-degree 1.
  bool is_phylogenetic() const;
  /// Every interior vertex has exactly two children.
  bool is_binary() const;

  const std::vector<VertexId>& parents() const { return parents_; }

 private:
  void check(VertexId v) const;

  std::vector<VertexId> parents_;
  std::vector<std::string> labels_;
  std::vector<std::uint32_t> child_offset_;
  std::vector<VertexId> child_list_;
  std::vector<VertexId> leaves_;
  std::vector<VertexId> preorder_;
  std::vector<std::uint32_t> pre_index_;
  std::vector<std::uint32_t> subtree_end_;
  std::vector<std::uint32_t> depth_;
  VertexId root_ = kNoVertex;
};

struct Edge {
  VertexId parent = kNoVertex;
  VertexId child = kNoVertex;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// The forest T_Ē obtained by deleting a set of edges from a tree. Vertex ids
/// are shared with the originating tree; nothing is suppressed.
class Forest {
 public:
  Forest() = default;
  Forest(RootedTree tree, std::span<const Edge> removed);

  const RootedTree& tree() const { return tree_; }
  std::size_t component_count() const { return roots_.size(); }
  /// Component roots ρ_1..ρ_k in increasing id order.
  const std::vector<VertexId>& component_roots() const { return roots_; }
  std::size_t component(VertexId v) const { return component_.at(v); }
  bool same_component(VertexId u, VertexId v) const {
    return component(u) == component(v);
  }

  VertexId parent(VertexId v) const { return parents_.at(v); }
  std::vector<VertexId> children(VertexId v) const;

  /// u ⪯ v in the forest order: same component and u ⪯_T v.
  bool is_descendant(VertexId u, VertexId v) const {
    return same_component(u, v) && tree_.is_descendant(u, v);
  }
  bool is_strict_descendant(VertexId u, VertexId v) const {
    return u != v && is_descendant(u, v);
  }
  /// Within one component; domain error otherwise.
  VertexId lca(VertexId a, VertexId b) const;
  VertexId lca(std::span<const VertexId> nodes) const;

  /// Leaves of the tree reachable from x without crossing a removed edge.
  std::vector<VertexId> leaves_below(VertexId x) const;
  /// Whether the edge into v was removed.
  bool removed_above(VertexId v) const { return removed_.at(v); }

 private:
  RootedTree tree_;
  std::vector<VertexId> parents_;
  std::vector<std::size_t> component_;
  std::vector<VertexId> roots_;
  std::vector<bool> removed_;
};

Forest remove_edges(const RootedTree& tree, std::span<const Edge> edges);

/// A vertex, or an edge stored as (parent, child).
struct Locus {
  enum class Kind : std::uint8_t { kVertex, kEdge };

  Kind kind = Kind::kVertex;
  VertexId upper = kNoVertex;  // edge parent; kNoVertex for vertex loci
  VertexId lower = kNoVertex;  // the vertex itself or the edge's child

  static Locus vertex(VertexId v) { return {Kind::kVertex, kNoVertex, v}; }
  static Locus edge(VertexId u, VertexId v) { return {Kind::kEdge, u, v}; }
  bool is_vertex() const { return kind == Kind::kVertex; }
  bool is_edge() const { return kind == Kind::kEdge; }

  friend bool operator==(const Locus&, const Locus&) = default;
  friend auto operator<=>(const Locus&, const Locus&) = default;
};

enum class LocusOrder { kEqual, kBelow, kAbove, kIncomparable };

const char* to_string(LocusOrder order);

bool is_valid_locus(const RootedTree& tree, Locus locus);

/// Order of `a` relative to `b` under the mixed vertex/edge order:
/// x ≺ (u,v) iff x ⪯ v, (u,v) ≺ x iff u ⪯ x, (u,v) ⪯ (a,b) iff v ⪯ b.
LocusOrder compare_loci(const RootedTree& tree, Locus a, Locus b);

inline bool loci_comparable(const RootedTree& tree, Locus a, Locus b) {
  return compare_loci(tree, a, b) != LocusOrder::kIncomparable;
}

struct Restriction {
  RootedTree tree;
  /// origin[v] is the vertex of the source tree that result vertex v came from.
  std::vector<VertexId> origin;
};

/// T|_L': minimal spanning subtree of `leaves` with out-degree-1 vertices
/// suppressed. With `planted`, the source root is kept as a unary root above
/// lca(L') when the two differ.
Restriction restrict_with_origin(const RootedTree& tree,
                                 std::span<const VertexId> leaves,
                                 bool planted = false);

inline RootedTree restrict(const RootedTree& tree, std::span<const VertexId> leaves,
                           bool planted = false) {
  return restrict_with_origin(tree, leaves, planted).tree;
}

/// Rooted-tree isomorphism preserving leaf labels (interior labels ignored).
bool isomorphic(const RootedTree& a, const RootedTree& b);

}  // namespace gtrec
