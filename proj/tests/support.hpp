// Shared fixtures for the test binaries: random instances and an independent
// evaluator of the map axioms built on explicit ancestor sets.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gtrec/gene_tree.hpp"
#include "gtrec/history.hpp"
#include "gtrec/io.hpp"
#include "gtrec/reconcile.hpp"
#include "gtrec/tree.hpp"
#include "gtrec/triples.hpp"

namespace gtrec {
inline void PrintTo(const Triple& t, std::ostream* os) { *os << to_string(t); }
}  // namespace gtrec

namespace testing_support {

using namespace gtrec;

inline GeneTree gene(const std::string& nwk) { return parse_gene_tree(nwk); }

inline RootedTree species(const std::string& nwk) { return parse_species_tree(nwk).tree; }

inline std::string corpus_path(const std::string& name) { return std::string(GTREC_CORPUS_DIR) + "/" + name; }

std::string read_file(const std::string& path);

/// Random binary tree on n labels "A", "B", ... by uniform leaf insertion.
RootedTree random_binary_tree(std::size_t n, std::mt19937_64& rng);

/// Random binary species tree on n leaves with increasing times; all leaves
/// share the last time point.
TimedSpeciesTree random_timed_species(std::size_t n, std::mt19937_64& rng);

struct InstanceOptions {
  std::size_t min_species = 3;
  std::size_t max_species = 5;
  std::size_t max_genes = 8;
  double max_dup = 0.6;
  double max_hgt = 0.6;
  double max_loss = 0.6;
  bool restricted = false;
};

struct Instance {
  TrueHistory history;
  GeneTree tree;
  std::uint64_t seed = 0;
};

/// First observable instance at or after `seed` meeting the options; `seed`
/// is advanced past it.
Instance next_instance(std::uint64_t& seed, const InstanceOptions& opt);

/// Contracts the edge above v, which must be a non-transfer edge into an
/// interior vertex without transfer children.
GeneTree contract_edge(const GeneTree& g, VertexId v);

/// Independent reading of the axioms. Returns the ids of the failing axioms
/// in the order M1, M2.i, M2.ii, M2.iii, M2.iv, M3.i, M3.ii.
std::vector<std::string> independent_failures(const GeneTree& g, const RootedTree& s,
                                              const std::vector<Locus>& mu, bool restricted);

/// Every vertex and edge locus of s.
std::vector<Locus> all_loci(const RootedTree& s);

struct Perturbation {
  GeneTree tree;
  std::vector<Locus> map;
  std::string what;
};

/// Moves the image of one gene vertex to a random locus, or swaps s and d at
/// one interior vertex without outgoing transfer edges.
Perturbation perturb(const GeneTree& g, const PlantedSpeciesTree& s, const std::vector<Locus>& mu,
                     std::mt19937_64& rng);

/// Order-free text form of a gene tree with events and transfer marks.
std::string canonical(const GeneTree& g);

/// σ over T_Ē recomputed by walking the tree without crossing transfer edges.
std::set<std::string> independent_sigma_bar(const GeneTree& g, VertexId x);

}  // namespace testing_support
