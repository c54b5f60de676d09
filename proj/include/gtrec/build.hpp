#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gtrec/tree.hpp"
#include "gtrec/triples.hpp"

namespace gtrec {

struct BuildResult {
  /// Least resolved tree displaying R, when R is consistent. Interior
  /// vertices are unlabeled; ids follow preorder.
  std::optional<RootedTree> tree;
  /// For an inconsistent R: the label set whose Aho graph is connected.
  std::vector<std::string> witness;

  bool consistent() const { return tree.has_value(); }
};

/// Aho et al. BUILD on the label set L. Children are ordered by their
/// smallest label. Throws a domain error if L is empty or a triple uses a
/// label outside L.
BuildResult build(const TripleSet& triples, std::vector<std::string> labels);
/// BUILD on L_R.
BuildResult build(const TripleSet& triples);

bool is_consistent(const TripleSet& triples);

/// Whether BUILD returns a binary tree, which makes it the only tree on L_R
/// that displays R. Domain error when R is inconsistent.
bool is_unique_display_tree(const TripleSet& triples);

}  // namespace gtrec
