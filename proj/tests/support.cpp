#include "support.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace testing_support {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RootedTree random_binary_tree(std::size_t n, std::mt19937_64& rng) {
  std::vector<VertexId> parents{kNoVertex};
  std::vector<std::string> labels{"A"};
  for (std::size_t k = 1; k < n; ++k) {
    const VertexId target = static_cast<VertexId>(uniform_below(rng, parents.size()));
    const VertexId w = static_cast<VertexId>(parents.size());
    parents.push_back(parents[target]);
    labels.emplace_back();
    parents[target] = w;
    parents.push_back(w);
    labels.emplace_back(1, static_cast<char>('A' + k));
  }
  return RootedTree(std::move(parents), std::move(labels));
}

TimedSpeciesTree random_timed_species(std::size_t n, std::mt19937_64& rng) {
  TimedSpeciesTree s{random_binary_tree(n, rng), {}};
  s.time.assign(s.tree.size(), 0.0);
  double last = 0;
  for (VertexId v : s.tree.preorder()) {
    if (s.tree.is_leaf(v)) continue;
    s.time[v] = s.branch_start(v) + 0.3 + 0.7 * uniform01(rng);
    last = std::max(last, s.time[v]);
  }
  for (VertexId v : s.tree.leaves()) s.time[v] = last + 0.5;
  return s;
}

Instance next_instance(std::uint64_t& seed, const InstanceOptions& opt) {
  while (true) {
    const std::uint64_t my_seed = seed++;
    std::mt19937_64 rng(my_seed);
    const std::size_t n = opt.min_species + uniform_below(rng, opt.max_species - opt.min_species + 1);
    const TimedSpeciesTree s = random_timed_species(n, rng);
    ScenarioConfig cfg;
    cfg.duplication_rate = opt.max_dup * uniform01(rng);
    cfg.transfer_rate = opt.max_hgt * uniform01(rng);
    cfg.loss_rate = opt.max_loss * uniform01(rng);
    cfg.max_genes = 4 * opt.max_genes + 8;
    auto h = simulate_once(s, cfg, rng);
    if (!h) continue;
    const auto extant = h->extant().size();
    if (extant < 3 || extant > opt.max_genes) continue;
    ObservableResult o = observable_part(*h, opt.restricted);
    if (!o.observable()) continue;
    return Instance{std::move(*h), std::move(*o.tree), my_seed};
  }
}

GeneTree contract_edge(const GeneTree& g, VertexId v) {
  const RootedTree& t = g.tree();
  const VertexId p = t.parent(v);
  std::vector<VertexId> parents;
  std::vector<std::string> labels;
  std::vector<Event> events;
  std::vector<bool> transfer;
  std::vector<std::string> species;
  std::vector<VertexId> renumber(t.size(), kNoVertex);
  // Preorder keeps parents ahead of children and preserves sibling order,
  // with v's children taking v's place among p's children.
  for (VertexId x : t.preorder()) {
    if (x == v) continue;
    renumber[x] = static_cast<VertexId>(parents.size());
    VertexId up = t.parent(x);
    if (up == v) up = p;
    parents.push_back(up == kNoVertex ? kNoVertex : renumber[up]);
    labels.push_back(t.label(x));
    events.push_back(g.event(x));
    transfer.push_back(g.is_transfer_edge(x));
    species.push_back(t.is_leaf(x) ? g.species_of(x) : std::string());
  }
  return GeneTree(RootedTree(std::move(parents), std::move(labels)), std::move(events), std::move(transfer),
                  std::move(species));
}

namespace {

// Ancestor sets including the vertex itself.
std::vector<std::set<VertexId>> ancestor_sets(const RootedTree& s) {
  std::vector<std::set<VertexId>> anc(s.size());
  for (VertexId v = 0; v < s.size(); ++v) {
    for (VertexId u = v; u != kNoVertex; u = s.parent(u)) anc[v].insert(u);
  }
  return anc;
}

struct Order {
  const std::vector<std::set<VertexId>>& anc;
  bool below_eq(VertexId a, VertexId b) const { return anc[a].count(b) != 0; }
  bool leq(const Locus& a, const Locus& b) const {
    if (a == b) return true;
    if (a.is_vertex() && b.is_vertex()) return below_eq(a.lower, b.lower);
    if (a.is_vertex()) return below_eq(a.lower, b.lower);
    if (b.is_vertex()) return below_eq(a.upper, b.lower);
    return below_eq(a.lower, b.lower);
  }
  bool less(const Locus& a, const Locus& b) const { return a != b && leq(a, b); }
  bool comparable(const Locus& a, const Locus& b) const { return leq(a, b) || leq(b, a); }
};

}  // namespace

std::set<std::string> independent_sigma_bar(const GeneTree& g, VertexId x) {
  std::set<std::string> out;
  std::vector<VertexId> todo{x};
  while (!todo.empty()) {
    const VertexId v = todo.back();
    todo.pop_back();
    if (g.tree().is_leaf(v)) out.insert(g.species_of(v));
    for (VertexId c : g.tree().children(v)) {
      if (!g.is_transfer_edge(c)) todo.push_back(c);
    }
  }
  return out;
}

std::vector<std::string> independent_failures(const GeneTree& g, const RootedTree& s,
                                              const std::vector<Locus>& mu, bool restricted) {
  const auto anc = ancestor_sets(s);
  const Order ord{anc};
  const RootedTree& t = g.tree();
  auto leaf_of = [&](const std::string& name) {
    for (VertexId v : s.leaves()) {
      if (s.label(v) == name) return v;
    }
    return kNoVertex;
  };
  auto lca = [&](const std::set<std::string>& names) {
    std::set<VertexId> common;
    bool first = true;
    for (const auto& n : names) {
      const auto& a = anc[leaf_of(n)];
      if (first) {
        common = a;
        first = false;
      } else {
        std::set<VertexId> keep;
        for (VertexId u : common) {
          if (a.count(u)) keep.insert(u);
        }
        common = keep;
      }
    }
    VertexId best = kNoVertex;
    for (VertexId u : common) {
      if (best == kNoVertex || anc[u].size() > anc[best].size()) best = u;
    }
    return best;
  };
  auto is_dt = [&](VertexId v) { return g.event(v) == Event::kDuplication || g.event(v) == Event::kTransfer; };

  bool m1 = true, m2i = true, m2ii = true, m2iii = true, m2iv = true, m3i = true, m3ii = true;
  for (VertexId x = 0; x < t.size(); ++x) {
    if (t.is_leaf(x)) {
      m1 = m1 && mu[x] == Locus::vertex(leaf_of(g.species_of(x)));
    } else if (g.event(x) == Event::kSpeciation) {
      m2i = m2i && mu[x] == Locus::vertex(lca(independent_sigma_bar(g, x)));
      if (restricted) {
        const auto kids = t.children(x);
        for (std::size_t i = 0; i < kids.size(); ++i) {
          for (std::size_t j = i + 1; j < kids.size(); ++j) {
            if (ord.comparable(mu[kids[i]], mu[kids[j]])) m2iv = false;
          }
        }
      }
    } else {
      m2ii = m2ii && mu[x].is_edge();
    }
    if (g.is_transfer_edge(x)) m2iii = m2iii && !ord.comparable(mu[t.parent(x)], mu[x]);
    // Every strict ancestor of x reachable without crossing a transfer edge.
    VertexId c = x;
    while (t.parent(c) != kNoVertex && !g.is_transfer_edge(c)) {
      const VertexId y = t.parent(c);
      if (is_dt(x) && is_dt(y)) {
        m3i = m3i && ord.leq(mu[x], mu[y]);
      } else {
        m3ii = m3ii && ord.less(mu[x], mu[y]);
      }
      c = y;
    }
  }
  std::vector<std::string> out;
  if (!m1) out.push_back("M1");
  if (!m2i) out.push_back("M2.i");
  if (!m2ii) out.push_back("M2.ii");
  if (!m2iii) out.push_back("M2.iii");
  if (restricted && !m2iv) out.push_back("M2.iv");
  if (!m3i) out.push_back("M3.i");
  if (!m3ii) out.push_back("M3.ii");
  return out;
}

std::vector<Locus> all_loci(const RootedTree& s) {
  std::vector<Locus> out;
  for (VertexId v = 0; v < s.size(); ++v) {
    out.push_back(Locus::vertex(v));
    if (s.parent(v) != kNoVertex) out.push_back(Locus::edge(s.parent(v), v));
  }
  return out;
}

Perturbation perturb(const GeneTree& g, const PlantedSpeciesTree& s, const std::vector<Locus>& mu,
                     std::mt19937_64& rng) {
  std::vector<VertexId> flippable;
  for (VertexId x = 0; x < g.size(); ++x) {
    const Event e = g.event(x);
    if (e != Event::kSpeciation && e != Event::kDuplication) continue;
    const auto kids = g.tree().children(x);
    if (std::none_of(kids.begin(), kids.end(), [&](VertexId c) { return g.is_transfer_edge(c); })) {
      flippable.push_back(x);
    }
  }
  if (!flippable.empty() && uniform_below(rng, 4) == 0) {
    const VertexId x = flippable[uniform_below(rng, flippable.size())];
    std::vector<Event> events = g.events();
    events[x] = events[x] == Event::kSpeciation ? Event::kDuplication : Event::kSpeciation;
    std::vector<std::string> species(g.size());
    for (VertexId l : g.tree().leaves()) species[l] = g.species_of(l);
    GeneTree flipped(g.tree(), std::move(events), g.transfer_flags(), std::move(species));
    return {std::move(flipped), mu, "flip event at " + std::to_string(x)};
  }
  const auto loci = all_loci(s.tree());
  std::vector<Locus> moved = mu;
  const VertexId x = static_cast<VertexId>(uniform_below(rng, g.size()));
  moved[x] = loci[uniform_below(rng, loci.size())];
  return {g, std::move(moved), "move image of " + std::to_string(x)};
}

std::string canonical(const GeneTree& g) {
  const RootedTree& t = g.tree();
  std::vector<std::string> text(t.size());
  const auto order = t.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    if (t.is_leaf(v)) {
      text[v] = t.label(v) + "@" + g.species_of(v);
    } else {
      std::vector<std::string> parts;
      for (VertexId c : t.children(v)) parts.push_back((g.is_transfer_edge(c) ? "#T" : "") + text[c]);
      std::sort(parts.begin(), parts.end());
      text[v] = "(";
      for (std::size_t i = 0; i < parts.size(); ++i) text[v] += (i ? "," : "") + parts[i];
      text[v] += ")";
      text[v] += event_code(g.event(v));
    }
  }
  return text[t.root()];
}

}  // namespace testing_support
