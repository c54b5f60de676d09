#include "gtrec/time_consistency.hpp"

#include <algorithm>
#include <numeric>

#include "gtrec/error.hpp"

namespace gtrec {
namespace {

struct Arc {
  std::uint32_t from;  // node index: genes first, then species
  std::uint32_t to;
  const char* reason;
};

bool t1_applies(const GeneTree& g, VertexId u) {
  return g.event(u) == Event::kNone || g.event(u) == Event::kSpeciation;
}

}  // namespace

TimeCheckResult check_time_consistency(const GeneTree& g, const PlantedSpeciesTree& s,
                                       const ReconciliationMap& mu) {
  if (!validate_map(g, s, mu, false).all_pass()) {
    DomainError("time consistency requires a valid reconciliation map");
  }
  const RootedTree& gt = g.tree();
  const RootedTree& st = s.tree();
  const auto ng = static_cast<std::uint32_t>(gt.size());
  const auto n = static_cast<std::uint32_t>(ng + st.size());
  auto species_node = [&](VertexId v) { return ng + v; };
  auto to_node = [&](std::uint32_t i) {
    return i < ng ? TimeNode{false, i} : TimeNode{true, i - ng};
  };

  // T1 classes. Each gene joins at most the class of one species vertex, so a
  // class is a species vertex with the genes mapped onto it, or a lone node.
  std::vector<std::uint32_t> cls(n);
  std::iota(cls.begin(), cls.end(), 0u);
  for (VertexId u = 0; u < ng; ++u) {
    if (t1_applies(g, u)) cls[u] = species_node(mu[u].lower);
  }

  std::vector<Arc> arcs;
  for (VertexId v = 0; v < ng; ++v) {
    if (gt.parent(v) != kNoVertex) arcs.push_back({gt.parent(v), v, "gene-edge"});
  }
  for (VertexId v = 0; v < st.size(); ++v) {
    if (st.parent(v) != kNoVertex) {
      arcs.push_back({species_node(st.parent(v)), species_node(v), "species-edge"});
    }
  }
  for (VertexId u = 0; u < ng; ++u) {
    if (t1_applies(g, u)) continue;
    arcs.push_back({species_node(mu[u].upper), u, "T2-upper"});
    arcs.push_back({u, species_node(mu[u].lower), "T2-lower"});
  }

  // Class digraph with one representative arc per lifted edge.
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t i = 0; i < arcs.size(); ++i) out[cls[arcs[i].from]].push_back(i);

  TimeCheckResult result;

  // Iterative DFS for a cycle; colors 0 white, 1 on stack, 2 done.
  std::vector<int> color(n, 0);
  std::vector<std::size_t> via(n, SIZE_MAX);  // arc used to enter a class
  std::vector<std::uint32_t> order;           // reverse postorder
  for (std::uint32_t start = 0; start < n; ++start) {
    if (cls[start] != start || color[start] != 0) continue;
    std::vector<std::pair<std::uint32_t, std::size_t>> stack{{start, 0}};
    color[start] = 1;
    while (!stack.empty()) {
      auto& [c, next] = stack.back();
      if (next == out[c].size()) {
        color[c] = 2;
        order.push_back(c);
        stack.pop_back();
        continue;
      }
      const std::size_t a = out[c][next++];
      const std::uint32_t d = cls[arcs[a].to];
      if (color[d] == 0) {
        color[d] = 1;
        via[d] = a;
        stack.emplace_back(d, 0);
      } else if (color[d] == 1) {
        // Back arc: unwind the stack from c to d, then close with arc a.
        std::vector<std::size_t> cyc{a};
        for (std::uint32_t x = c; x != d; x = cls[arcs[via[x]].from]) cyc.push_back(via[x]);
        std::reverse(cyc.begin(), cyc.end());
        // Expand into explicit steps, inserting T1 equalities between arcs.
        auto bridge = [&](std::uint32_t from, std::uint32_t to) {
          if (from == to) return;
          const std::uint32_t hub = cls[from];
          if (from != hub) result.cycle.push_back({to_node(from), to_node(hub), false, "T1"});
          if (to != hub) result.cycle.push_back({to_node(hub), to_node(to), false, "T1"});
        };
        for (std::size_t k = 0; k < cyc.size(); ++k) {
          const Arc& arc = arcs[cyc[k]];
          result.cycle.push_back({to_node(arc.from), to_node(arc.to), true, arc.reason});
          bridge(arc.to, arcs[cyc[(k + 1) % cyc.size()]].from);
        }
        return result;
      }
    }
  }

  // Longest-path levels in topological order.
  std::reverse(order.begin(), order.end());
  std::vector<std::uint32_t> level(n, 0);
  for (std::uint32_t c : order) {
    for (std::size_t a : out[c]) {
      const std::uint32_t d = cls[arcs[a].to];
      level[d] = std::max(level[d], level[c] + 1);
    }
  }
  result.feasible = true;
  result.witness.gene.resize(ng);
  result.witness.species.resize(st.size());
  for (std::uint32_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(level[cls[i]]);
    if (i < ng) result.witness.gene[i] = t; else result.witness.species[i - ng] = t;
  }
  return result;
}

std::string check_time_witness(const GeneTree& g, const PlantedSpeciesTree& s,
                               const ReconciliationMap& mu, const TimeAssignment& tau) {
  const RootedTree& gt = g.tree();
  const RootedTree& st = s.tree();
  if (tau.gene.size() != gt.size() || tau.species.size() != st.size()) {
    return "time map sizes do not match the trees";
  }
  for (VertexId v = 0; v < gt.size(); ++v) {
    const VertexId p = gt.parent(v);
    if (p != kNoVertex && !(tau.gene[p] < tau.gene[v])) {
      return "gene edge (" + std::to_string(p) + "," + std::to_string(v) + ") is not increasing";
    }
  }
  for (VertexId v = 0; v < st.size(); ++v) {
    const VertexId p = st.parent(v);
    if (p != kNoVertex && !(tau.species[p] < tau.species[v])) {
      return "species edge (" + std::to_string(p) + "," + std::to_string(v) + ") is not increasing";
    }
  }
  for (VertexId u = 0; u < gt.size(); ++u) {
    if (t1_applies(g, u)) {
      if (tau.gene[u] != tau.species[mu[u].lower]) return "T1 fails at gene vertex " + std::to_string(u);
    } else if (!(tau.species[mu[u].upper] < tau.gene[u] && tau.gene[u] < tau.species[mu[u].lower])) {
      return "T2 fails at gene vertex " + std::to_string(u);
    }
  }
  return {};
}

}  // namespace gtrec
