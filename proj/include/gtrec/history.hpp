#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gtrec/gene_tree.hpp"
#include "gtrec/tree.hpp"

namespace gtrec {

/// Species tree with a time per vertex. The process starts at time 0 on the
/// edge above the root, so every time is positive and grows toward the leaves.
struct TimedSpeciesTree {
  RootedTree tree;
  std::vector<double> time;

  /// Start of the branch above v.
  double branch_start(VertexId v) const {
    const VertexId p = tree.parent(v);
    return p == kNoVertex ? 0.0 : time[p];
  }
};

/// Throws a domain error unless times strictly increase from the origin.
void check_times(const TimedSpeciesTree& s);

enum class HistoryEvent : std::uint8_t { kSpeciation, kDuplication, kTransfer, kExtant, kLoss };

char history_event_code(HistoryEvent e);  // s d t o x

/// A full gene history inside a timed species tree.
struct TrueHistory {
  TimedSpeciesTree species;
  RootedTree genes;
  std::vector<HistoryEvent> events;
  std::vector<double> time;
  /// Species vertex whose incoming branch holds the gene vertex. For
  /// speciations and extant genes it is the species vertex itself.
  std::vector<VertexId> branch;
  std::vector<bool> transfer_in;
  /// Gene names of extant leaves, empty elsewhere.
  std::vector<std::string> names;

  std::vector<VertexId> extant() const;
};

/// Re-checks the invariants of a history: residence times, speciations at
/// species vertices with one child per species child, and transfers between
/// contemporaneous incomparable branches. Empty on success.
std::string check_history(const TrueHistory& h);

struct ScenarioConfig {
  double duplication_rate = 0.0;
  double transfer_rate = 0.0;
  double loss_rate = 0.0;
  std::uint64_t seed = 1;
  /// Upper bound on gene-tree vertices; larger histories are resampled.
  std::size_t max_genes = 200;
  /// Resampling attempts before giving up.
  int max_attempts = 1000;
};

/// Birth-death-transfer process run with exact event times. A transfer with
/// no contemporaneous incomparable branch is skipped. Histories with no
/// extant gene or too many vertices are resampled; when every attempt fails
/// a domain error is raised.
TrueHistory simulate(const TimedSpeciesTree& s, const ScenarioConfig& cfg);
/// Same process driven by a caller-owned engine, one attempt only.
std::optional<TrueHistory> simulate_once(const TimedSpeciesTree& s, const ScenarioConfig& cfg,
                                         std::mt19937_64& rng);

struct ObservableResult {
  /// Unset when the restriction fails a structural check or O1-O3.
  std::optional<GeneTree> tree;
  ObservabilityReport report;
  std::string failure;
  /// Result vertex v came from history vertex origin[v].
  std::vector<VertexId> origin;

  bool observable() const { return tree.has_value(); }
};

/// Restriction of the history to its extant genes. An edge of the result is a
/// transfer edge when the first history edge on its path is one. Domain error
/// when nothing survives.
ObservableResult observable_part(const TrueHistory& h, bool restricted = false);

/// Duplication above the root followed by one hidden transfer and losses; the
/// observable tree (((a,b)s,c)s,((b2,c2)s,a2)s)d shows no transfer at all.
TrueHistory hidden_transfer_history();
/// Two hidden transfers and one visible transfer; the observable tree is
/// (((a,b)d,c)s,(((b2,c2)s,a2)s,(e,#T c3)t)s)d.
TrueHistory two_hidden_transfers_history();

/// Uniform double in [0,1) from the top 53 bits of one engine output.
double uniform01(std::mt19937_64& rng);
/// Uniform integer in [0,n) by rejection on raw engine outputs.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

}  // namespace gtrec
