#include "gtrec/triples.hpp"

#include <algorithm>
#include <sstream>

#include "gtrec/error.hpp"

namespace gtrec {

Triple Triple::make(std::string x, std::string y, std::string z) {
  if (x == y || x == z || y == z) {
    DomainError("triple labels must be pairwise distinct: " + x + " " + y + " | " + z);
  }
  if (y < x) std::swap(x, y);
  return Triple{std::move(x), std::move(y), std::move(z)};
}

std::string to_string(const Triple& t) { return t.a + " " + t.b + " | " + t.c; }

std::vector<std::string> TripleSet::labels() const {
  std::set<std::string> all;
  for (const Triple& t : triples_) {
    all.insert(t.a);
    all.insert(t.b);
    all.insert(t.c);
  }
  return {all.begin(), all.end()};
}

std::string to_text(const TripleSet& set) {
  std::string out;
  for (const Triple& t : set) {
    out += to_string(t);
    out += '\n';
  }
  return out;
}

TripleSet parse_triples(std::string_view text) {
  TripleSet out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto bar = line.find('|');
    std::istringstream left(line.substr(0, bar == std::string::npos ? line.size() : bar));
    std::vector<std::string> pair;
    for (std::string tok; left >> tok;) pair.push_back(tok);
    if (bar == std::string::npos) {
      if (pair.empty()) continue;
      throw ParseError("expected `a b | c`", line_no, 1);
    }
    std::istringstream right(line.substr(bar + 1));
    std::vector<std::string> out_group;
    for (std::string tok; right >> tok;) out_group.push_back(tok);
    if (pair.size() != 2 || out_group.size() != 1) {
      throw ParseError("expected `a b | c`", line_no, static_cast<int>(bar) + 1);
    }
    if (pair[0] == pair[1] || pair[0] == out_group[0] || pair[1] == out_group[0]) {
      throw ParseError("triple labels must be pairwise distinct", line_no, 1);
    }
    out.insert(Triple::make(pair[0], pair[1], out_group[0]));
  }
  return out;
}

namespace {

bool displays_ids(const RootedTree& tree, VertexId a, VertexId b, VertexId c) {
  const VertexId ab = tree.lca(a, b);
  return !tree.is_descendant(c, ab);
}

}  // namespace

bool displays(const RootedTree& tree, const Triple& t) {
  auto a = tree.find_label(t.a);
  auto b = tree.find_label(t.b);
  auto c = tree.find_label(t.c);
  if (!a || !b || !c) return false;
  return displays_ids(tree, *a, *b, *c);
}

bool displays(const Forest& forest, const Triple& t) {
  const RootedTree& tree = forest.tree();
  auto a = tree.find_label(t.a);
  auto b = tree.find_label(t.b);
  auto c = tree.find_label(t.c);
  if (!a || !b || !c) return false;
  if (!forest.same_component(*a, *b) || !forest.same_component(*a, *c)) return false;
  return displays_ids(tree, *a, *b, *c);
}

namespace {

template <class Pred>
TripleSet displayed_over_leaves(const RootedTree& tree, Pred same_block) {
  TripleSet out;
  const auto& leaves = tree.leaves();
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    for (std::size_t j = i + 1; j < leaves.size(); ++j) {
      for (std::size_t k = j + 1; k < leaves.size(); ++k) {
        const VertexId x = leaves[i], y = leaves[j], z = leaves[k];
        if (!same_block(x, y) || !same_block(x, z)) continue;
        const auto& lx = tree.label(x);
        const auto& ly = tree.label(y);
        const auto& lz = tree.label(z);
        if (displays_ids(tree, x, y, z)) out.insert(Triple::make(lx, ly, lz));
        if (displays_ids(tree, x, z, y)) out.insert(Triple::make(lx, lz, ly));
        if (displays_ids(tree, y, z, x)) out.insert(Triple::make(ly, lz, lx));
      }
    }
  }
  return out;
}

}  // namespace

TripleSet displayed_triples(const RootedTree& tree) {
  return displayed_over_leaves(tree, [](VertexId, VertexId) { return true; });
}

TripleSet displayed_triples(const Forest& forest) {
  return displayed_over_leaves(forest.tree(), [&](VertexId u, VertexId v) {
    return forest.same_component(u, v);
  });
}

namespace {

// Pairs from `pair_side` with distinct species, outgroup from `out_side` with
// a third species.
void cross_triples(const GeneTree& g, const std::vector<VertexId>& pair_side,
                   const std::vector<VertexId>& out_side,
                   const std::function<void(const Triple&)>& fn) {
  for (std::size_t i = 0; i < pair_side.size(); ++i) {
    for (std::size_t j = i + 1; j < pair_side.size(); ++j) {
      const SpeciesId sa = g.species_id_of(pair_side[i]);
      const SpeciesId sb = g.species_id_of(pair_side[j]);
      if (sa == sb) continue;
      for (VertexId c : out_side) {
        const SpeciesId sc = g.species_id_of(c);
        if (sc == sa || sc == sb) continue;
        fn(Triple::make(g.gene_name(pair_side[i]), g.gene_name(pair_side[j]), g.gene_name(c)));
      }
    }
  }
}

void cross_species(const std::vector<SpeciesId>& pair_side,
                   const std::vector<SpeciesId>& out_side, const GeneTree& g,
                   TripleSet& out) {
  for (std::size_t i = 0; i < pair_side.size(); ++i) {
    for (std::size_t j = i + 1; j < pair_side.size(); ++j) {
      for (SpeciesId c : out_side) {
        if (c == pair_side[i] || c == pair_side[j]) continue;
        out.insert(Triple::make(g.species_name(pair_side[i]), g.species_name(pair_side[j]),
                                g.species_name(c)));
      }
    }
  }
}

}  // namespace

void for_each_speciation_triple(const GeneTree& g,
                                const std::function<void(const Triple&)>& fn) {
  const Forest& f = g.forest();
  for (VertexId u = 0; u < g.size(); ++u) {
    if (g.event(u) != Event::kSpeciation) continue;
    const auto kids = f.children(u);
    std::vector<std::vector<VertexId>> below;
    for (VertexId k : kids) below.push_back(f.leaves_below(k));
    for (std::size_t i = 0; i < kids.size(); ++i) {
      for (std::size_t j = 0; j < kids.size(); ++j) {
        if (i != j) cross_triples(g, below[i], below[j], fn);
      }
    }
  }
}

void for_each_transfer_triple(const GeneTree& g, std::size_t index,
                              const std::function<void(const Triple&)>& fn) {
  const Edge e = g.transfer_edges().at(index);
  const auto lx = g.forest().leaves_below(e.parent);
  const auto ly = g.forest().leaves_below(e.child);
  cross_triples(g, lx, ly, fn);
  cross_triples(g, ly, lx, fn);
}

InformativeTriples informative_triples(const GeneTree& g) {
  InformativeTriples out;
  for_each_speciation_triple(g, [&](const Triple& t) { out.r0.insert(t); });
  out.all = out.r0;
  for (std::size_t i = 0; i < g.transfer_edges().size(); ++i) {
    TripleSet ri;
    for_each_transfer_triple(g, i, [&](const Triple& t) { ri.insert(t); });
    out.all.merge(ri);
    out.per_transfer.push_back(std::move(ri));
  }
  return out;
}

TripleSet species_triples(const GeneTree& g) {
  TripleSet out;
  const Forest& f = g.forest();
  for (VertexId u = 0; u < g.size(); ++u) {
    if (g.event(u) != Event::kSpeciation) continue;
    const auto kids = f.children(u);
    for (std::size_t i = 0; i < kids.size(); ++i) {
      for (std::size_t j = 0; j < kids.size(); ++j) {
        if (i != j) cross_species(g.sigma_bar_ids(kids[i]), g.sigma_bar_ids(kids[j]), g, out);
      }
    }
  }
  for (const Edge& e : g.transfer_edges()) {
    cross_species(g.sigma_bar_ids(e.parent), g.sigma_bar_ids(e.child), g, out);
    cross_species(g.sigma_bar_ids(e.child), g.sigma_bar_ids(e.parent), g, out);
  }
  return out;
}

}  // namespace gtrec
