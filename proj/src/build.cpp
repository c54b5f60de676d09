#include "gtrec/build.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "gtrec/error.hpp"

namespace gtrec {
namespace {

struct IndexedTriple {
  std::uint32_t a, b, c;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::uint32_t x, std::uint32_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (y < x) std::swap(x, y);
    parent_[y] = x;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

class Builder {
 public:
  Builder(std::size_t n, std::vector<IndexedTriple> triples)
      : triples_(std::move(triples)), slot_(n, 0), stamp_(n, 0) {}

  // Appends the subtree on `subset` (sorted) below `parent`. Returns false
  // and fills `witness_` on inconsistency.
  bool run(const std::vector<std::uint32_t>& subset, const std::vector<std::size_t>& active,
           VertexId parent) {
    const VertexId self = static_cast<VertexId>(parents_.size());
    parents_.push_back(parent);
    leaf_of_.push_back(subset.size() == 1 ? static_cast<int>(subset[0]) : -1);
    if (subset.size() == 1) return true;

    ++generation_;
    for (std::uint32_t i = 0; i < subset.size(); ++i) {
      stamp_[subset[i]] = generation_;
      slot_[subset[i]] = i;
    }
    auto inside = [&](std::uint32_t x) { return stamp_[x] == generation_; };

    UnionFind uf(subset.size());
    std::vector<std::size_t> here;
    for (std::size_t t : active) {
      const auto& r = triples_[t];
      if (inside(r.a) && inside(r.b) && inside(r.c)) {
        here.push_back(t);
        uf.unite(slot_[r.a], slot_[r.b]);
      }
    }

    // Components keyed by their representative, which is the minimum slot,
    // so iterating the map yields them ordered by smallest label.
    std::map<std::uint32_t, std::vector<std::uint32_t>> blocks;
    for (std::uint32_t i = 0; i < subset.size(); ++i) blocks[uf.find(i)].push_back(subset[i]);
    if (blocks.size() == 1) {
      witness_ = subset;
      return false;
    }

    // Component membership is the slot's representative; capture before recursing.
    std::vector<std::uint32_t> comp(subset.size());
    for (std::uint32_t i = 0; i < subset.size(); ++i) comp[i] = uf.find(i);
    std::map<std::uint32_t, std::vector<std::size_t>> routed;
    for (std::size_t t : here) routed[comp[slot_[triples_[t].a]]].push_back(t);

    for (auto& [rep, members] : blocks) {
      if (!run(members, routed[rep], self)) return false;
    }
    return true;
  }

  std::vector<VertexId> parents_;
  std::vector<int> leaf_of_;
  std::vector<std::uint32_t> witness_;

 private:
  std::vector<IndexedTriple> triples_;
  std::vector<std::uint32_t> slot_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
};

}  // namespace

BuildResult build(const TripleSet& triples, std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  if (labels.empty()) DomainError("BUILD needs at least one label");

  auto index_of = [&](const std::string& s) {
    auto it = std::lower_bound(labels.begin(), labels.end(), s);
    if (it == labels.end() || *it != s) DomainError("triple label '" + s + "' is not in L");
    return static_cast<std::uint32_t>(it - labels.begin());
  };
  std::vector<IndexedTriple> indexed;
  for (const Triple& t : triples) indexed.push_back({index_of(t.a), index_of(t.b), index_of(t.c)});

  std::vector<std::uint32_t> all(labels.size());
  std::iota(all.begin(), all.end(), 0u);
  std::vector<std::size_t> active(indexed.size());
  std::iota(active.begin(), active.end(), std::size_t{0});

  Builder b(labels.size(), std::move(indexed));
  BuildResult out;
  if (!b.run(all, active, kNoVertex)) {
    for (std::uint32_t i : b.witness_) out.witness.push_back(labels[i]);
    return out;
  }
  std::vector<std::string> names(b.parents_.size());
  for (std::size_t v = 0; v < names.size(); ++v) {
    if (b.leaf_of_[v] >= 0) names[v] = labels[static_cast<std::size_t>(b.leaf_of_[v])];
  }
  out.tree = RootedTree(std::move(b.parents_), std::move(names));
  return out;
}

BuildResult build(const TripleSet& triples) {
  return build(triples, triples.labels());
}

bool is_consistent(const TripleSet& triples) {
  if (triples.empty()) return true;
  return build(triples).consistent();
}

bool is_unique_display_tree(const TripleSet& triples) {
  if (triples.empty()) DomainError("the empty triple set has no label set");
  const BuildResult r = build(triples);
  if (!r.consistent()) DomainError("triple set is inconsistent");
  return r.tree->is_binary();
}

}  // namespace gtrec
