#pragma once

#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gtrec/gene_tree.hpp"
#include "gtrec/tree.hpp"

namespace gtrec {

/// Rooted triple ab|c. The pair is stored with a < b.
struct Triple {
  std::string a;
  std::string b;
  std::string c;

  /// Canonicalizes the pair; throws a domain error unless x, y, z are distinct.
  static Triple make(std::string x, std::string y, std::string z);

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

std::string to_string(const Triple& t);  // "a b | c"

class TripleSet {
 public:
  using const_iterator = std::set<Triple>::const_iterator;

  TripleSet() = default;
  TripleSet(std::initializer_list<Triple> triples) : triples_(triples) {}

  bool insert(const Triple& t) { return triples_.insert(t).second; }
  void merge(const TripleSet& other) { triples_.insert(other.begin(), other.end()); }
  bool contains(const Triple& t) const { return triples_.count(t) != 0; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  const_iterator begin() const { return triples_.begin(); }
  const_iterator end() const { return triples_.end(); }

  /// L_R, the union of all member labels, sorted.
  std::vector<std::string> labels() const;

  friend bool operator==(const TripleSet&, const TripleSet&) = default;

 private:
  std::set<Triple> triples_;
};

/// One triple per line, `a b | c`, in canonical order.
std::string to_text(const TripleSet& set);
TripleSet parse_triples(std::string_view text);

/// lca(a,b) ≺ lca(a,b,c). Labels absent from the tree give false.
bool displays(const RootedTree& tree, const Triple& t);
/// Displayed by a single component of the forest.
bool displays(const Forest& forest, const Triple& t);

TripleSet displayed_triples(const RootedTree& tree);
TripleSet displayed_triples(const Forest& forest);

/// Gene-level informative triples: ℛ_0(T_Ē), one set per transfer edge
/// e_1..e_h, and their union ℛ(T;t,σ).
struct InformativeTriples {
  TripleSet r0;
  std::vector<TripleSet> per_transfer;
  TripleSet all;
};

InformativeTriples informative_triples(const GeneTree& g);

/// Streams ℛ_0(T_Ē) without materializing it.
void for_each_speciation_triple(const GeneTree& g, const std::function<void(const Triple&)>& fn);
/// Streams ℛ_i for the transfer edge g.transfer_edges()[index]. Duplicates
/// are not produced.
void for_each_transfer_triple(const GeneTree& g, std::size_t index,
                              const std::function<void(const Triple&)>& fn);

/// 𝒮(T;t,σ), computed at the species level.
TripleSet species_triples(const GeneTree& g);

}  // namespace gtrec
