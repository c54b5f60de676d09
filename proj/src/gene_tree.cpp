#include "gtrec/gene_tree.hpp"

#include <algorithm>
#include <set>

#include "gtrec/error.hpp"

namespace gtrec {

char event_code(Event e) {
  switch (e) {
    case Event::kSpeciation: return 's';
    case Event::kDuplication: return 'd';
    case Event::kTransfer: return 't';
    case Event::kNone: break;
  }
  return '-';
}

Event event_from_code(char c) {
  switch (c) {
    case 's': return Event::kSpeciation;
    case 'd': return Event::kDuplication;
    case 't': return Event::kTransfer;
    default: DomainError(std::string("unknown event code '") + c + "'");
  }
}

GeneTree::GeneTree(RootedTree topology, std::vector<Event> events,
                   std::vector<bool> transfer_in, std::vector<std::string> species)
    : tree_(std::move(topology)), events_(std::move(events)), transfer_in_(std::move(transfer_in)) {
  const std::size_t n = tree_.size();
  if (events_.size() != n || transfer_in_.size() != n || species.size() != n) {
    DomainError("gene tree field sizes do not match the topology");
  }
  std::set<std::string> names;
  std::set<std::string> species_set;
  leaf_species_.assign(n, {});
  for (VertexId v = 0; v < n; ++v) {
    if (tree_.is_leaf(v)) {
      if (events_[v] != Event::kNone) {
        DomainError("leaf '" + tree_.label(v) + "' carries an event label");
      }
      if (tree_.label(v).empty()) DomainError("leaf " + std::to_string(v) + " has no gene name");
      if (!names.insert(tree_.label(v)).second) {
        DomainError("duplicate gene name '" + tree_.label(v) + "'");
      }
      if (species[v].empty()) DomainError("gene '" + tree_.label(v) + "' has no species");
      leaf_species_[v] = species[v];
      species_set.insert(species[v]);
    } else if (events_[v] == Event::kNone) {
      DomainError("interior vertex " + std::to_string(v) + " has no event label");
    }
    if (transfer_in_[v]) {
      const VertexId p = tree_.parent(v);
      if (p == kNoVertex) DomainError("the root cannot be the head of a transfer edge");
      if (events_[p] != Event::kTransfer) {
        DomainError("transfer edge into vertex " + std::to_string(v) +
                    " leaves a vertex not labeled t");
      }
      transfer_edges_.push_back({p, v});
    }
  }
  species_.assign(species_set.begin(), species_set.end());
  species_index_.assign(n, 0);
  for (VertexId v : tree_.leaves()) {
    species_index_[v] = static_cast<SpeciesId>(
        std::lower_bound(species_.begin(), species_.end(), leaf_species_[v]) - species_.begin());
  }

  forest_ = Forest(tree_, transfer_edges_);
  sigma_bar_.assign(n, {});
  for (VertexId v : tree_.postorder()) {
    auto& s = sigma_bar_[v];
    if (tree_.is_leaf(v)) {
      s.push_back(species_index_[v]);
      continue;
    }
    for (VertexId c : tree_.children(v)) {
      if (transfer_in_[c]) continue;
      s.insert(s.end(), sigma_bar_[c].begin(), sigma_bar_[c].end());
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
}

const std::string& GeneTree::species_of(VertexId leaf) const {
  if (!tree_.is_leaf(leaf)) DomainError("σ is defined on leaves only");
  return leaf_species_[leaf];
}

SpeciesId GeneTree::species_id_of(VertexId leaf) const {
  if (!tree_.is_leaf(leaf)) DomainError("σ is defined on leaves only");
  return species_index_[leaf];
}

std::vector<std::string> GeneTree::sigma_bar(VertexId x) const {
  std::vector<std::string> out;
  for (SpeciesId s : sigma_bar_.at(x)) out.push_back(species_[s]);
  return out;
}

bool disjoint_sorted(const std::vector<SpeciesId>& a, const std::vector<SpeciesId>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) ++i; else ++j;
  }
  return true;
}

ObservabilityReport check_observability(const GeneTree& g, bool restricted) {
  ObservabilityReport r;
  r.o3A.checked = restricted;
  const RootedTree& t = g.tree();
  for (VertexId v = 0; v < t.size(); ++v) {
    if (t.is_leaf(v)) continue;
    auto kids = t.children(v);
    if (kids.size() < 2) r.o1.vertices.push_back(v);

    if (g.event(v) == Event::kTransfer) {
      std::size_t flagged = 0;
      for (VertexId c : kids) flagged += g.is_transfer_edge(c) ? 1 : 0;
      if (flagged == 0 || flagged == kids.size()) r.o2.vertices.push_back(v);
      if (flagged > 1) r.multi_transfer.push_back(v);
    }

    if (g.event(v) == Event::kSpeciation) {
      bool some_pair = false;
      bool all_pairs = true;
      for (std::size_t i = 0; i < kids.size(); ++i) {
        for (std::size_t j = i + 1; j < kids.size(); ++j) {
          const bool d = disjoint_sorted(g.sigma_bar_ids(kids[i]), g.sigma_bar_ids(kids[j]));
          some_pair = some_pair || d;
          all_pairs = all_pairs && d;
        }
      }
      if (!some_pair) r.o3a.vertices.push_back(v);
      if (restricted && !all_pairs) r.o3A.vertices.push_back(v);
    }
  }
  for (const Edge& e : g.transfer_edges()) {
    if (!disjoint_sorted(g.sigma_bar_ids(e.parent), g.sigma_bar_ids(e.child))) {
      r.o3b.edges.push_back(e);
    }
  }
  return r;
}

ComponentPartition component_partition(const GeneTree& g) {
  ComponentPartition p;
  const Forest& f = g.forest();
  std::vector<int> seen(g.size(), 0);
  for (VertexId root : f.component_roots()) {
    p.blocks.push_back(f.leaves_below(root));
    for (VertexId leaf : p.blocks.back()) ++seen[leaf];
  }
  p.is_partition = true;
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    if (p.blocks[i].empty()) {
      p.is_partition = false;
      p.failure = "component rooted at vertex " + std::to_string(f.component_roots()[i]) +
                  " contains no gene (O2 precondition does not hold)";
      return p;
    }
  }
  for (VertexId leaf : g.tree().leaves()) {
    if (seen[leaf] != 1) {
      p.is_partition = false;
      p.failure = "gene '" + g.gene_name(leaf) + "' is not covered exactly once";
      return p;
    }
  }
  return p;
}

}  // namespace gtrec
