#include "gtrec/tree.hpp"

#include <algorithm>
#include <functional>

#include "gtrec/error.hpp"

namespace gtrec {

RootedTree::RootedTree(std::vector<VertexId> parents, std::vector<std::string> labels)
    : parents_(std::move(parents)), labels_(std::move(labels)) {
  const std::size_t n = parents_.size();
  if (n == 0) DomainError("a rooted tree needs at least one vertex");
  if (labels_.size() != n) labels_.resize(n);

  std::vector<std::uint32_t> count(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    const VertexId p = parents_[v];
    if (p == kNoVertex) {
      if (root_ != kNoVertex) DomainError("rooted tree has more than one root");
      root_ = v;
    } else {
      if (p >= n || p == v) DomainError("invalid parent for vertex " + std::to_string(v));
      ++count[p];
    }
  }
  if (root_ == kNoVertex) DomainError("rooted tree has no root");

  child_offset_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) child_offset_[v + 1] = child_offset_[v] + count[v];
  child_list_.resize(n - 1);
  std::vector<std::uint32_t> fill(child_offset_.begin(), child_offset_.end() - 1);
  for (VertexId v = 0; v < n; ++v) {
    if (parents_[v] != kNoVertex) child_list_[fill[parents_[v]]++] = v;
  }

  pre_index_.assign(n, 0);
  subtree_end_.assign(n, 0);
  depth_.assign(n, 0);
  preorder_.reserve(n);
  std::vector<bool> seen(n, false);
  // iterative preorder; end index is filled on the way back up
  std::vector<std::pair<VertexId, std::size_t>> stack{{root_, 0}};
  seen[root_] = true;
  pre_index_[root_] = 0;
  preorder_.push_back(root_);
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    auto kids = children(v);
    if (next < kids.size()) {
      const VertexId c = kids[next++];
      if (seen[c]) DomainError("parent relation contains a cycle");
      seen[c] = true;
      pre_index_[c] = static_cast<std::uint32_t>(preorder_.size());
      depth_[c] = depth_[v] + 1;
      preorder_.push_back(c);
      stack.emplace_back(c, 0);
    } else {
      subtree_end_[v] = static_cast<std::uint32_t>(preorder_.size());
      stack.pop_back();
    }
  }
  if (preorder_.size() != n) DomainError("parent relation is not connected (cycle present)");

  for (VertexId v = 0; v < n; ++v) {
    if (count[v] == 0) leaves_.push_back(v);
  }
}

std::span<const VertexId> RootedTree::children(VertexId v) const {
  check(v);
  return {child_list_.data() + child_offset_[v], child_offset_[v + 1] - child_offset_[v]};
}

void RootedTree::check(VertexId v) const {
  if (v >= parents_.size()) DomainError("vertex " + std::to_string(v) + " is not in the tree");
}

std::optional<VertexId> RootedTree::find_label(std::string_view name) const {
  for (VertexId v = 0; v < labels_.size(); ++v) {
    if (labels_[v] == name) return v;
  }
  return std::nullopt;
}

std::vector<VertexId> RootedTree::postorder() const {
  std::vector<VertexId> out;
  out.reserve(size());
  std::vector<std::pair<VertexId, std::size_t>> stack{{root_, 0}};
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    auto kids = children(v);
    if (next < kids.size()) {
      stack.emplace_back(kids[next++], 0);
    } else {
      out.push_back(v);
      stack.pop_back();
    }
  }
  return out;
}

bool RootedTree::is_descendant(VertexId u, VertexId v) const {
  check(u);
  check(v);
  return pre_index_[v] <= pre_index_[u] && pre_index_[u] < subtree_end_[v];
}

VertexId RootedTree::lca(VertexId a, VertexId b) const {
  check(b);
  VertexId x = a;
  while (!is_descendant(b, x)) x = parents_[x];
  return x;
}

VertexId RootedTree::lca(std::span<const VertexId> nodes) const {
  if (nodes.empty()) DomainError("lca of an empty vertex set");
  VertexId x = nodes.front();
  check(x);
  for (VertexId v : nodes.subspan(1)) x = lca(x, v);
  return x;
}

std::vector<VertexId> RootedTree::leaves_below(VertexId x) const {
  check(x);
  std::vector<VertexId> out;
  for (std::uint32_t i = pre_index_[x]; i < subtree_end_[x]; ++i) {
    if (is_leaf(preorder_[i])) out.push_back(preorder_[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool RootedTree::is_phylogenetic() const {
  for (VertexId v = 0; v < size(); ++v) {
    if (v != root_ && out_degree(v) == 1) return false;
  }
  return true;
}

bool RootedTree::is_binary() const {
  for (VertexId v = 0; v < size(); ++v) {
    if (!is_leaf(v) && out_degree(v) != 2) return false;
  }
  return true;
}

// ---- Forest ----

Forest::Forest(RootedTree tree, std::span<const Edge> removed) : tree_(std::move(tree)) {
  const std::size_t n = tree_.size();
  removed_.assign(n, false);
  for (const Edge& e : removed) {
    if (!tree_.contains(e.child) || !tree_.contains(e.parent) ||
        tree_.parent(e.child) != e.parent) {
      DomainError("(" + std::to_string(e.parent) + "," + std::to_string(e.child) +
                  ") is not an edge of the tree");
    }
    removed_[e.child] = true;
  }
  parents_.assign(n, kNoVertex);
  component_.assign(n, 0);
  for (VertexId v : tree_.preorder()) {
    const VertexId p = tree_.parent(v);
    if (p == kNoVertex || removed_[v]) {
      component_[v] = roots_.size();
      roots_.push_back(v);
    } else {
      parents_[v] = p;
      component_[v] = component_[p];
    }
  }
  // renumber components so that roots are in increasing id order
  std::vector<VertexId> sorted = roots_;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> remap(roots_.size());
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    remap[i] = static_cast<std::size_t>(
        std::lower_bound(sorted.begin(), sorted.end(), roots_[i]) - sorted.begin());
  }
  for (auto& c : component_) c = remap[c];
  roots_ = std::move(sorted);
}

std::vector<VertexId> Forest::children(VertexId v) const {
  std::vector<VertexId> out;
  for (VertexId c : tree_.children(v)) {
    if (!removed_[c]) out.push_back(c);
  }
  return out;
}

VertexId Forest::lca(VertexId a, VertexId b) const {
  if (!same_component(a, b)) DomainError("forest lca across components");
  return tree_.lca(a, b);
}

VertexId Forest::lca(std::span<const VertexId> nodes) const {
  if (nodes.empty()) DomainError("lca of an empty vertex set");
  VertexId x = nodes.front();
  for (VertexId v : nodes.subspan(1)) x = lca(x, v);
  return x;
}

std::vector<VertexId> Forest::leaves_below(VertexId x) const {
  std::vector<VertexId> out;
  std::vector<VertexId> stack{x};
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    if (tree_.is_leaf(v)) out.push_back(v);
    for (VertexId c : tree_.children(v)) {
      if (!removed_[c]) stack.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Forest remove_edges(const RootedTree& tree, std::span<const Edge> edges) {
  return Forest(tree, edges);
}

// ---- Loci ----

const char* to_string(LocusOrder order) {
  switch (order) {
    case LocusOrder::kEqual: return "equal";
    case LocusOrder::kBelow: return "strictly-below";
    case LocusOrder::kAbove: return "strictly-above";
    case LocusOrder::kIncomparable: return "incomparable";
  }
  return "?";
}

bool is_valid_locus(const RootedTree& tree, Locus locus) {
  if (!tree.contains(locus.lower)) return false;
  if (locus.is_vertex()) return locus.upper == kNoVertex;
  return tree.contains(locus.upper) && tree.parent(locus.lower) == locus.upper;
}

LocusOrder compare_loci(const RootedTree& tree, Locus a, Locus b) {
  if (!is_valid_locus(tree, a) || !is_valid_locus(tree, b)) {
    DomainError("locus is not part of the tree");
  }
  if (a == b) return LocusOrder::kEqual;
  if (a.is_vertex() && b.is_vertex()) {
    if (tree.is_descendant(a.lower, b.lower)) return LocusOrder::kBelow;
    if (tree.is_descendant(b.lower, a.lower)) return LocusOrder::kAbove;
    return LocusOrder::kIncomparable;
  }
  if (a.is_vertex() && b.is_edge()) {
    if (tree.is_descendant(a.lower, b.lower)) return LocusOrder::kBelow;
    if (tree.is_descendant(b.upper, a.lower)) return LocusOrder::kAbove;
    return LocusOrder::kIncomparable;
  }
  if (a.is_edge() && b.is_vertex()) {
    if (tree.is_descendant(b.lower, a.lower)) return LocusOrder::kAbove;
    if (tree.is_descendant(a.upper, b.lower)) return LocusOrder::kBelow;
    return LocusOrder::kIncomparable;
  }
  // two distinct edges
  if (tree.is_descendant(a.lower, b.lower)) return LocusOrder::kBelow;
  if (tree.is_descendant(b.lower, a.lower)) return LocusOrder::kAbove;
  return LocusOrder::kIncomparable;
}

// ---- Restriction ----

Restriction restrict_with_origin(const RootedTree& tree, std::span<const VertexId> leaves,
                                 bool planted) {
  if (leaves.empty()) DomainError("restriction to an empty leaf set");
  const std::size_t n = tree.size();
  std::vector<bool> wanted(n, false);
  for (VertexId v : leaves) {
    if (!tree.contains(v) || !tree.is_leaf(v)) {
      DomainError("restriction set contains a non-leaf vertex " + std::to_string(v));
    }
    wanted[v] = true;
  }
  const VertexId top = tree.lca(leaves);

  // marked = union of paths from wanted leaves up to top
  std::vector<bool> marked(n, false);
  std::vector<std::uint32_t> marked_children(n, 0);
  for (VertexId v : leaves) {
    VertexId x = v;
    while (!marked[x]) {
      marked[x] = true;
      if (x == top) break;
      ++marked_children[tree.parent(x)];
      x = tree.parent(x);
    }
  }

  auto kept = [&](VertexId v) {
    return marked[v] && (wanted[v] || v == top || marked_children[v] >= 2);
  };

  Restriction out;
  std::vector<VertexId> parents;
  std::vector<std::string> labels;
  auto add = [&](VertexId origin, VertexId parent) {
    const auto id = static_cast<VertexId>(out.origin.size());
    out.origin.push_back(origin);
    parents.push_back(parent);
    labels.push_back(tree.label(origin));
    return id;
  };

  VertexId attach = kNoVertex;
  if (planted && top != tree.root()) attach = add(tree.root(), kNoVertex);

  // DFS over the marked subtree, emitting kept vertices in preorder
  std::vector<std::pair<VertexId, VertexId>> stack{{top, attach}};
  while (!stack.empty()) {
    auto [v, new_parent] = stack.back();
    stack.pop_back();
    VertexId here = new_parent;
    if (kept(v)) here = add(v, new_parent);
    auto kids = tree.children(v);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      if (marked[*it]) stack.emplace_back(*it, here);
    }
  }
  out.tree = RootedTree(std::move(parents), std::move(labels));
  return out;
}

namespace {

std::string canonical_form(const RootedTree& t, VertexId v) {
  if (t.is_leaf(v)) return t.label(v);
  std::vector<std::string> parts;
  for (VertexId c : t.children(v)) parts.push_back(canonical_form(t, c));
  std::sort(parts.begin(), parts.end());
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ',';
    s += parts[i];
  }
  return s + ")";
}

}  // namespace

bool isomorphic(const RootedTree& a, const RootedTree& b) {
  if (a.size() != b.size()) return false;
  return canonical_form(a, a.root()) == canonical_form(b, b.root());
}

}  // namespace gtrec
