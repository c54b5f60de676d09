#include "gtrec/oracle.hpp"

#include <algorithm>

#include "gtrec/build.hpp"
#include "gtrec/error.hpp"

namespace gtrec {
namespace {

// Leaves keep ids 0..n-1 while interior vertices are appended behind them.
// Leaves not yet inserted have no parent.
struct Enumerator {
  const std::vector<std::string>& labels;
  bool binary_only;
  const std::function<bool(const RootedTree&)>& visit;
  std::vector<VertexId> parents;
  bool stopped = false;

  void emit() {
    std::vector<std::string> names(parents.size());
    for (std::size_t i = 0; i < labels.size(); ++i) names[i] = labels[i];
    if (!visit(RootedTree(parents, std::move(names)))) stopped = true;
  }

  void grow(std::size_t next) {
    if (stopped) return;
    if (next == labels.size()) {
      emit();
      return;
    }
    const VertexId leaf = static_cast<VertexId>(next);
    // Attach on the edge above each existing vertex, or above the root.
    const std::size_t existing = parents.size();
    for (VertexId v = 0; v < existing && !stopped; ++v) {
      if (v < next || v >= labels.size()) subdivide(v, leaf, next);
    }
    if (binary_only || stopped) return;
    // Attach directly below an existing interior vertex.
    for (VertexId v = static_cast<VertexId>(labels.size()); v < existing && !stopped; ++v) {
      parents[leaf] = v;
      grow(next + 1);
      parents[leaf] = kNoVertex;
    }
  }

  void subdivide(VertexId v, VertexId leaf, std::size_t next) {
    const VertexId w = static_cast<VertexId>(parents.size());
    const VertexId old = parents[v];
    parents.push_back(old);
    parents[v] = w;
    parents[leaf] = w;
    grow(next + 1);
    parents[leaf] = kNoVertex;
    parents[v] = old;
    parents.pop_back();
  }
};

}  // namespace

void enumerate_species_trees(const std::vector<std::string>& labels, bool binary_only,
                             const std::function<bool(const RootedTree&)>& visit) {
  if (labels.empty()) DomainError("cannot enumerate trees on an empty label set");
  if (labels.size() > kMaxEnumerationLabels) {
    DomainError("tree enumeration is capped at " + std::to_string(kMaxEnumerationLabels) + " labels");
  }
  std::vector<std::string> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    DomainError("duplicate label in tree enumeration");
  }
  Enumerator e{sorted, binary_only, visit, std::vector<VertexId>(sorted.size(), kNoVertex)};
  // A single leaf is its own root; further leaves attach from there.
  e.grow(1);
}

std::size_t count_species_trees(const std::vector<std::string>& labels, bool binary_only) {
  std::size_t n = 0;
  enumerate_species_trees(labels, binary_only, [&](const RootedTree&) {
    ++n;
    return true;
  });
  return n;
}

namespace {

void require_admissible(const GeneTree& g, bool restricted) {
  if (g.species().size() > kMaxOracleSpecies) {
    DomainError("the oracle is capped at " + std::to_string(kMaxOracleSpecies) + " species");
  }
  if (!check_observability(g, restricted).all_pass()) {
    DomainError("gene tree fails the observability axioms");
  }
  if (!restricted && !g.is_binary()) {
    DomainError("plain-mode equivalence holds for binary gene trees only; use restricted mode");
  }
}

}  // namespace

OracleResult exists_map_bruteforce(const GeneTree& g, bool restricted) {
  require_admissible(g, restricted);
  OracleResult out;
  enumerate_species_trees(g.species(), true, [&](const RootedTree& s) {
    ++out.trees_checked;
    const PlantedSpeciesTree planted = plant(s);
    const ReconciliationMap mu = construct_map(g, planted);
    if (validate_map(g, planted, mu, restricted).all_pass()) {
      out.exists = true;
      out.witness = s;
      return false;
    }
    return true;
  });
  return out;
}

std::optional<ReconciliationMap> find_any_map(const GeneTree& g, const PlantedSpeciesTree& s,
                                              bool restricted) {
  const RootedTree& st = s.tree();
  const auto sv = species_vertices(g, s);
  const auto lcas = sigma_bar_lcas(g, s);
  ReconciliationMap mu(g.size());
  std::vector<VertexId> free;
  for (VertexId x = 0; x < g.size(); ++x) {
    switch (g.event(x)) {
      case Event::kNone: mu[x] = Locus::vertex(sv[g.species_id_of(x)]); break;
      case Event::kSpeciation:
        if (lcas[x] == kNoVertex) return std::nullopt;
        mu[x] = Locus::vertex(lcas[x]);
        break;
      default: free.push_back(x);
    }
  }
  std::vector<Locus> edges;
  for (VertexId v = 0; v < st.size(); ++v) {
    if (st.parent(v) != kNoVertex) edges.push_back(Locus::edge(st.parent(v), v));
  }
  std::optional<ReconciliationMap> found;
  std::function<void(std::size_t)> assign = [&](std::size_t i) {
    if (found) return;
    if (i == free.size()) {
      if (validate_map(g, s, mu, restricted).all_pass()) found = mu;
      return;
    }
    for (const Locus& e : edges) {
      mu[free[i]] = e;
      assign(i + 1);
      if (found) return;
    }
  };
  assign(0);
  return found;
}

EquivalenceResult theorem_equivalence(const GeneTree& g, bool restricted) {
  EquivalenceResult r;
  r.oracle = exists_map_bruteforce(g, restricted);
  r.consistent = is_consistent(species_triples(g));
  return r;
}

bool check_theorem_equivalence(const GeneTree& g, bool restricted) {
  return theorem_equivalence(g, restricted).holds();
}

}  // namespace gtrec
