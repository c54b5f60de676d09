#include "gtrec/reconcile.hpp"

#include <algorithm>
#include <set>

#include "gtrec/build.hpp"
#include "gtrec/error.hpp"

namespace gtrec {
namespace {

std::vector<std::string> checked_species(const RootedTree& t) {
  std::vector<std::string> names;
  for (VertexId leaf : t.leaves()) {
    if (t.label(leaf).empty()) DomainError("species tree leaf " + std::to_string(leaf) + " is unlabeled");
    names.push_back(t.label(leaf));
  }
  std::sort(names.begin(), names.end());
  auto dup = std::adjacent_find(names.begin(), names.end());
  if (dup != names.end()) DomainError("duplicate species '" + *dup + "'");
  return names;
}

}  // namespace

PlantedSpeciesTree PlantedSpeciesTree::from_planted(RootedTree tree) {
  if (tree.empty()) DomainError("empty species tree");
  if (tree.out_degree(tree.root()) != 1) DomainError("species tree is not planted");
  if (!tree.is_phylogenetic()) DomainError("species tree has an inner vertex of out-degree 1");
  PlantedSpeciesTree out;
  out.species_ = checked_species(tree);
  out.tree_ = std::move(tree);
  return out;
}

std::optional<VertexId> PlantedSpeciesTree::species_vertex(std::string_view name) const {
  auto it = std::lower_bound(species_.begin(), species_.end(), name);
  if (it == species_.end() || *it != name) return std::nullopt;
  return tree_.find_label(name);
}

RootedTree PlantedSpeciesTree::unplanted() const {
  const auto& leaves = tree_.leaves();
  return restrict(tree_, leaves);
}

PlantedSpeciesTree plant(const RootedTree& species_tree) {
  if (species_tree.empty()) DomainError("empty species tree");
  if (species_tree.size() > 1 && species_tree.out_degree(species_tree.root()) == 1) {
    DomainError("species tree is already planted");
  }
  if (!species_tree.is_phylogenetic()) DomainError("species tree is not phylogenetic");
  std::vector<VertexId> parents = species_tree.parents();
  std::vector<std::string> labels = species_tree.labels();
  const VertexId rho = static_cast<VertexId>(parents.size());
  parents[species_tree.root()] = rho;
  parents.push_back(kNoVertex);
  labels.emplace_back();
  return PlantedSpeciesTree::from_planted(RootedTree(std::move(parents), std::move(labels)));
}

std::vector<VertexId> species_vertices(const GeneTree& g, const PlantedSpeciesTree& s) {
  std::vector<VertexId> out;
  for (const std::string& name : g.species()) {
    auto v = s.species_vertex(name);
    if (!v) DomainError("species '" + name + "' does not occur in the species tree");
    out.push_back(*v);
  }
  return out;
}

std::vector<VertexId> sigma_bar_lcas(const GeneTree& g, const PlantedSpeciesTree& s) {
  const auto sv = species_vertices(g, s);
  std::vector<VertexId> out(g.size(), kNoVertex);
  std::vector<VertexId> buf;
  for (VertexId x = 0; x < g.size(); ++x) {
    const auto& ids = g.sigma_bar_ids(x);
    if (ids.empty()) continue;
    buf.clear();
    for (SpeciesId id : ids) buf.push_back(sv[id]);
    out[x] = s.tree().lca(buf);
  }
  return out;
}

ReconciliationMap construct_map(const GeneTree& g, const PlantedSpeciesTree& s) {
  const auto lcas = sigma_bar_lcas(g, s);
  const RootedTree& st = s.tree();
  ReconciliationMap mu(g.size());
  for (VertexId x = 0; x < g.size(); ++x) {
    const VertexId l = lcas[x];
    if (l == kNoVertex) DomainError("σ_T̄Ē is empty at gene vertex " + std::to_string(x));
    switch (g.event(x)) {
      case Event::kNone:
      case Event::kSpeciation:
        mu[x] = Locus::vertex(l);
        break;
      case Event::kDuplication:
      case Event::kTransfer:
        mu[x] = Locus::edge(st.parent(l), l);
        break;
    }
  }
  return mu;
}

bool ValidationReport::all_pass() const {
  for (const AxiomVerdict* v : verdicts()) {
    if (v->checked && !v->pass()) return false;
  }
  return true;
}

std::vector<std::string> ValidationReport::failed() const {
  std::vector<std::string> out;
  for (const AxiomVerdict* v : verdicts()) {
    if (v->checked && !v->pass()) out.push_back(v->axiom);
  }
  return out;
}

ValidationReport validate_map(const GeneTree& g, const PlantedSpeciesTree& s,
                              const ReconciliationMap& mu, bool restricted) {
  const RootedTree& st = s.tree();
  if (mu.size() != g.size()) DomainError("reconciliation map is not total on V(T)");
  for (VertexId x = 0; x < g.size(); ++x) {
    if (!is_valid_locus(st, mu[x])) {
      DomainError("image of gene vertex " + std::to_string(x) + " is not a vertex or edge of S");
    }
  }
  const auto sv = species_vertices(g, s);
  const auto lcas = sigma_bar_lcas(g, s);

  ValidationReport r;
  r.m2iv.checked = restricted;
  const RootedTree& gt = g.tree();
  for (VertexId x = 0; x < g.size(); ++x) {
    switch (g.event(x)) {
      case Event::kNone:
        if (mu[x] != Locus::vertex(sv[g.species_id_of(x)])) r.m1.vertices.push_back(x);
        break;
      case Event::kSpeciation: {
        if (lcas[x] == kNoVertex || mu[x] != Locus::vertex(lcas[x])) r.m2i.vertices.push_back(x);
        if (!restricted) break;
        const auto kids = gt.children(x);
        bool bad = false;
        for (std::size_t i = 0; i < kids.size(); ++i) {
          for (std::size_t j = i + 1; j < kids.size(); ++j) {
            if (loci_comparable(st, mu[kids[i]], mu[kids[j]])) {
              r.m2iv.pairs.emplace_back(kids[i], kids[j]);
              bad = true;
            }
          }
        }
        if (bad) r.m2iv.vertices.push_back(x);
        break;
      }
      case Event::kDuplication:
      case Event::kTransfer:
        if (!mu[x].is_edge()) r.m2ii.vertices.push_back(x);
        break;
    }
  }
  for (const Edge& e : g.transfer_edges()) {
    if (loci_comparable(st, mu[e.parent], mu[e.child])) r.m2iii.edges.push_back(e);
  }

  auto dt = [&](VertexId v) {
    return g.event(v) == Event::kDuplication || g.event(v) == Event::kTransfer;
  };
  const Forest& f = g.forest();
  for (VertexId x = 0; x < g.size(); ++x) {
    for (VertexId y = f.parent(x); y != kNoVertex; y = f.parent(y)) {
      const LocusOrder o = compare_loci(st, mu[x], mu[y]);
      if (dt(x) && dt(y)) {
        if (o != LocusOrder::kBelow && o != LocusOrder::kEqual) r.m3i.pairs.emplace_back(x, y);
      } else if (o != LocusOrder::kBelow) {
        r.m3ii.pairs.emplace_back(x, y);
      }
    }
  }
  std::sort(r.m3i.pairs.begin(), r.m3i.pairs.end());
  std::sort(r.m3ii.pairs.begin(), r.m3ii.pairs.end());
  return r;
}

ReconcResult reconc_t(const GeneTree& g, bool restricted) {
  ReconcResult out;
  out.observability = check_observability(g, restricted);
  if (!out.observability.all_pass()) {
    out.status = ReconcResult::Status::kUnobservable;
    return out;
  }
  out.species_triples = species_triples(g);
  BuildResult b = build(out.species_triples, g.species());
  if (!b.consistent()) {
    out.status = ReconcResult::Status::kNoSpeciesTree;
    out.witness = std::move(b.witness);
    return out;
  }
  out.species_tree = plant(*b.tree);
  out.map = construct_map(g, *out.species_tree);
  out.validation = validate_map(g, *out.species_tree, out.map, restricted);
  return out;
}

}  // namespace gtrec
