#include "gtrec/history.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "gtrec/error.hpp"

namespace gtrec {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) DomainError("uniform_below needs a positive bound");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do x = rng(); while (x >= limit);
  return x % n;
}

void check_times(const TimedSpeciesTree& s) {
  if (s.time.size() != s.tree.size()) DomainError("one time per species vertex is required");
  for (VertexId v = 0; v < s.tree.size(); ++v) {
    if (!(s.time[v] > s.branch_start(v)) || !std::isfinite(s.time[v])) {
      DomainError("species time at vertex " + std::to_string(v) + " does not exceed its parent's");
    }
  }
}

char history_event_code(HistoryEvent e) {
  switch (e) {
    case HistoryEvent::kSpeciation: return 's';
    case HistoryEvent::kDuplication: return 'd';
    case HistoryEvent::kTransfer: return 't';
    case HistoryEvent::kExtant: return 'o';
    case HistoryEvent::kLoss: return 'x';
  }
  return '?';
}

std::vector<VertexId> TrueHistory::extant() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < events.size(); ++v) {
    if (events[v] == HistoryEvent::kExtant) out.push_back(v);
  }
  return out;
}

namespace {

// Accumulates gene vertices in creation order.
class HistoryBuilder {
 public:
  explicit HistoryBuilder(const TimedSpeciesTree& s) { h_.species = s; }

  VertexId add(VertexId parent, HistoryEvent e, double t, VertexId branch, bool transfer = false,
               std::string name = {}) {
    parents_.push_back(parent);
    h_.events.push_back(e);
    h_.time.push_back(t);
    h_.branch.push_back(branch);
    h_.transfer_in.push_back(transfer);
    h_.names.push_back(std::move(name));
    return static_cast<VertexId>(parents_.size() - 1);
  }
  std::size_t size() const { return parents_.size(); }

  TrueHistory finish() {
    h_.genes = RootedTree(parents_, h_.names);
    return std::move(h_);
  }

  TrueHistory& raw() { return h_; }

 private:
  TrueHistory h_;
  std::vector<VertexId> parents_;
};

struct Lineage {
  VertexId last;    // gene vertex the lineage descends from
  VertexId branch;  // species vertex below the current branch
  bool transfer;    // the lineage began with a transfer edge
};

}  // namespace

std::optional<TrueHistory> simulate_once(const TimedSpeciesTree& s, const ScenarioConfig& cfg,
                                         std::mt19937_64& rng) {
  const RootedTree& st = s.tree;
  const double per_lineage = cfg.duplication_rate + cfg.transfer_rate + cfg.loss_rate;
  HistoryBuilder hb(s);
  std::vector<Lineage> active{{kNoVertex, st.root(), false}};
  double now = 0.0;

  while (!active.empty()) {
    if (hb.size() > cfg.max_genes) return std::nullopt;
    double boundary = std::numeric_limits<double>::infinity();
    for (const Lineage& l : active) boundary = std::min(boundary, s.time[l.branch]);

    const double total = per_lineage * static_cast<double>(active.size());
    const double wait = total > 0 ? -std::log1p(-uniform01(rng)) / total
                                  : std::numeric_limits<double>::infinity();
    if (now + wait < boundary) {
      now += wait;
      const std::size_t i = uniform_below(rng, active.size());
      const Lineage l = active[i];
      const double pick = uniform01(rng) * per_lineage;
      if (pick < cfg.duplication_rate) {
        const VertexId d = hb.add(l.last, HistoryEvent::kDuplication, now, l.branch, l.transfer);
        active[i] = {d, l.branch, false};
        active.insert(active.begin() + static_cast<std::ptrdiff_t>(i) + 1, {d, l.branch, false});
      } else if (pick < cfg.duplication_rate + cfg.transfer_rate) {
        std::vector<VertexId> targets;
        for (VertexId w = 0; w < st.size(); ++w) {
          if (s.branch_start(w) < now && now < s.time[w] && !st.comparable(w, l.branch)) {
            targets.push_back(w);
          }
        }
        if (targets.empty()) continue;
        const VertexId w = targets[uniform_below(rng, targets.size())];
        const VertexId t = hb.add(l.last, HistoryEvent::kTransfer, now, l.branch, l.transfer);
        active[i] = {t, l.branch, false};
        active.insert(active.begin() + static_cast<std::ptrdiff_t>(i) + 1, {t, w, true});
      } else {
        hb.add(l.last, HistoryEvent::kLoss, now, l.branch, l.transfer);
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(i));
      }
      continue;
    }

    now = boundary;
    std::vector<Lineage> next;
    for (const Lineage& l : active) {
      if (s.time[l.branch] != boundary) {
        next.push_back(l);
        continue;
      }
      if (st.is_leaf(l.branch)) {
        hb.add(l.last, HistoryEvent::kExtant, now, l.branch, l.transfer);
        continue;
      }
      const VertexId sp = hb.add(l.last, HistoryEvent::kSpeciation, now, l.branch, l.transfer);
      for (VertexId c : st.children(l.branch)) next.push_back({sp, c, false});
    }
    active = std::move(next);
  }
  if (hb.size() > cfg.max_genes) return std::nullopt;

  TrueHistory& h = hb.raw();
  std::map<VertexId, int> counter;
  bool any = false;
  // Name extant genes per species in creation order.
  for (VertexId v = 0; v < h.events.size(); ++v) {
    if (h.events[v] != HistoryEvent::kExtant) continue;
    any = true;
    h.names[v] = st.label(h.branch[v]) + "_" + std::to_string(++counter[h.branch[v]]);
  }
  if (!any) return std::nullopt;
  return hb.finish();
}

TrueHistory simulate(const TimedSpeciesTree& s, const ScenarioConfig& cfg) {
  check_times(s);
  if (cfg.duplication_rate < 0 || cfg.transfer_rate < 0 || cfg.loss_rate < 0) {
    DomainError("event rates must be non-negative");
  }
  for (VertexId leaf : s.tree.leaves()) {
    if (s.tree.label(leaf).empty()) DomainError("species tree leaves need names");
  }
  std::mt19937_64 rng(cfg.seed);
  for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    if (auto h = simulate_once(s, cfg, rng)) return std::move(*h);
  }
  DomainError("no history with surviving genes within the size bound after " +
              std::to_string(cfg.max_attempts) + " attempts");
}

std::string check_history(const TrueHistory& h) {
  const RootedTree& st = h.species.tree;
  const RootedTree& gt = h.genes;
  const std::size_t n = gt.size();
  if (h.events.size() != n || h.time.size() != n || h.branch.size() != n ||
      h.transfer_in.size() != n || h.names.size() != n) {
    return "history field sizes differ";
  }
  auto at = [](VertexId v) { return "gene vertex " + std::to_string(v) + ": "; };
  for (VertexId v = 0; v < n; ++v) {
    const VertexId b = h.branch[v];
    if (!st.contains(b)) return at(v) + "unknown branch";
    const double lo = h.species.branch_start(b);
    const double hi = h.species.time[b];
    const auto kids = gt.children(v);
    const VertexId p = gt.parent(v);
    if (p != kNoVertex && !(h.time[p] < h.time[v])) return at(v) + "time does not exceed parent's";
    if (h.transfer_in[v] && (p == kNoVertex || h.events[p] != HistoryEvent::kTransfer)) {
      return at(v) + "transfer edge does not leave a transfer vertex";
    }
    switch (h.events[v]) {
      case HistoryEvent::kSpeciation: {
        if (h.time[v] != hi || st.is_leaf(b)) return at(v) + "speciation off a species vertex";
        const auto sk = st.children(b);
        if (kids.size() != sk.size()) return at(v) + "speciation does not split into every child";
        std::vector<VertexId> got, want(sk.begin(), sk.end());
        for (VertexId c : kids) {
          if (h.transfer_in[c]) return at(v) + "transfer edge below a speciation";
          got.push_back(h.branch[c]);
        }
        std::sort(got.begin(), got.end());
        if (got != want) return at(v) + "speciation child in the wrong branch";
        break;
      }
      case HistoryEvent::kExtant:
        if (!kids.empty() || !st.is_leaf(b) || h.time[v] != hi) return at(v) + "misplaced extant gene";
        if (h.names[v].empty()) return at(v) + "extant gene without a name";
        break;
      case HistoryEvent::kLoss:
        if (!kids.empty() || !(lo < h.time[v] && h.time[v] < hi)) return at(v) + "misplaced loss";
        break;
      case HistoryEvent::kDuplication:
        if (!(lo < h.time[v] && h.time[v] < hi)) return at(v) + "duplication outside its branch";
        if (kids.size() < 2) return at(v) + "duplication with fewer than two children";
        for (VertexId c : kids) {
          if (h.transfer_in[c] || h.branch[c] != b) return at(v) + "duplication child left the branch";
        }
        break;
      case HistoryEvent::kTransfer: {
        if (!(lo < h.time[v] && h.time[v] < hi)) return at(v) + "transfer outside its branch";
        std::size_t moved = 0;
        for (VertexId c : kids) {
          const VertexId w = h.branch[c];
          if (!h.transfer_in[c]) {
            if (w != b) return at(v) + "non-transfer child left the branch";
            continue;
          }
          ++moved;
          if (st.comparable(w, b)) return at(v) + "transfer into a comparable branch";
          if (!(h.species.branch_start(w) < h.time[v] && h.time[v] < h.species.time[w])) {
            return at(v) + "transfer target not contemporaneous";
          }
        }
        if (moved == 0 || moved == kids.size()) return at(v) + "transfer needs both kinds of child";
        break;
      }
    }
  }
  return {};
}

ObservableResult observable_part(const TrueHistory& h, bool restricted) {
  const auto leaves = h.extant();
  if (leaves.empty()) DomainError("the history has no extant gene");
  ObservableResult out;
  Restriction r = restrict_with_origin(h.genes, leaves);
  out.origin = r.origin;
  const RootedTree& t = r.tree;
  std::vector<Event> events(t.size(), Event::kNone);
  std::vector<bool> transfer(t.size(), false);
  std::vector<std::string> species(t.size());
  for (VertexId v = 0; v < t.size(); ++v) {
    const VertexId o = r.origin[v];
    switch (h.events[o]) {
      case HistoryEvent::kSpeciation: events[v] = Event::kSpeciation; break;
      case HistoryEvent::kDuplication: events[v] = Event::kDuplication; break;
      case HistoryEvent::kTransfer: events[v] = Event::kTransfer; break;
      case HistoryEvent::kExtant: species[v] = h.species.tree.label(h.branch[o]); break;
      case HistoryEvent::kLoss: DomainError("a loss survived the restriction");
    }
    const VertexId p = t.parent(v);
    if (p == kNoVertex) continue;
    VertexId first = o;
    while (h.genes.parent(first) != r.origin[p]) first = h.genes.parent(first);
    transfer[v] = h.transfer_in[first];
  }
  try {
    GeneTree g(r.tree, std::move(events), std::move(transfer), std::move(species));
    out.report = check_observability(g, restricted);
    if (!out.report.all_pass()) {
      out.failure = "observability axioms fail";
      return out;
    }
    out.tree = std::move(g);
  } catch (const Error& e) {
    out.failure = e.what();
  }
  return out;
}

namespace {

// Species tree (((A,B),C),X) or (((A,B),C),E) with the given times.
TimedSpeciesTree three_level_species(const std::string& outgroup, std::vector<double> time) {
  std::vector<VertexId> parents{kNoVertex, 0, 1, 2, 2, 1, 0};
  std::vector<std::string> labels{"", "", "", "A", "B", "C", outgroup};
  return {RootedTree(std::move(parents), std::move(labels)), std::move(time)};
}

constexpr HistoryEvent S = HistoryEvent::kSpeciation;
constexpr HistoryEvent D = HistoryEvent::kDuplication;
constexpr HistoryEvent T = HistoryEvent::kTransfer;
constexpr HistoryEvent O = HistoryEvent::kExtant;
constexpr HistoryEvent X = HistoryEvent::kLoss;

}  // namespace

TrueHistory hidden_transfer_history() {
  // Species vertices: 0 root, 1 (A,B,C), 2 (A,B), 3 A, 4 B, 5 C, 6 X.
  HistoryBuilder b(three_level_species("X", {1, 2, 3, 4, 4, 4, 4}));
  const VertexId root = b.add(kNoVertex, D, 0.5, 0);
  const VertexId q1 = b.add(root, S, 1, 0);
  const VertexId r1 = b.add(q1, S, 2, 1);
  b.add(q1, X, 2.5, 6);
  const VertexId ab1 = b.add(r1, S, 3, 2);
  b.add(r1, O, 4, 5, false, "c");
  b.add(ab1, O, 4, 3, false, "a");
  b.add(ab1, O, 4, 4, false, "b");
  const VertexId q2 = b.add(root, S, 1, 0);
  const VertexId r2 = b.add(q2, S, 2, 1);
  const VertexId hgt = b.add(q2, T, 3.5, 6);
  const VertexId ab2 = b.add(r2, S, 3, 2);
  b.add(r2, O, 4, 5, false, "c2");
  b.add(ab2, X, 3.5, 3);
  b.add(ab2, O, 4, 4, false, "b2");
  b.add(hgt, X, 3.8, 6);
  b.add(hgt, O, 4, 3, true, "a2");
  return b.finish();
}

TrueHistory two_hidden_transfers_history() {
  // Species vertices: 0 root, 1 (A,B,C), 2 (A,B), 3 A, 4 B, 5 C, 6 E.
  HistoryBuilder b(three_level_species("E", {1, 2, 3, 5, 5, 5, 5}));
  const VertexId root = b.add(kNoVertex, D, 0.5, 0);
  const VertexId p1 = b.add(root, S, 1, 0);
  const VertexId q1 = b.add(p1, S, 2, 1);
  b.add(p1, X, 1.5, 6);
  const VertexId dup = b.add(q1, D, 2.5, 2);
  b.add(q1, O, 5, 5, false, "c");
  const VertexId ab1 = b.add(dup, S, 3, 2);
  const VertexId ab2 = b.add(dup, S, 3, 2);
  b.add(ab1, O, 5, 3, false, "a");
  b.add(ab1, X, 4, 4);
  b.add(ab2, X, 4, 3);
  b.add(ab2, O, 5, 4, false, "b");

  const VertexId p2 = b.add(root, S, 1, 0);
  const VertexId q2 = b.add(p2, S, 2, 1);
  const VertexId visible = b.add(p2, T, 3.5, 6);
  const VertexId ab3 = b.add(q2, S, 3, 2);
  const VertexId c_to_a = b.add(q2, T, 3.5, 5);
  const VertexId a_to_c = b.add(ab3, T, 4, 3);
  b.add(ab3, O, 5, 4, false, "b2");
  b.add(a_to_c, X, 4.5, 3);
  b.add(a_to_c, O, 5, 5, true, "c2");
  b.add(c_to_a, X, 4, 5);
  b.add(c_to_a, O, 5, 3, true, "a2");
  b.add(visible, O, 5, 6, false, "e");
  b.add(visible, O, 5, 5, true, "c3");
  return b.finish();
}

}  // namespace gtrec
