#include <gtest/gtest.h>

#include "gtrec/build.hpp"
#include "gtrec/error.hpp"
#include "gtrec/oracle.hpp"
#include "support.hpp"

using namespace gtrec;
using testing_support::corpus_path;
using testing_support::read_file;

namespace {

std::vector<std::string> first_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('A' + i)));
  return out;
}

// Rooted phylogenetic trees on n labels: the block holding the first label
// has size k, the rest is any forest.
std::vector<std::uint64_t> all_tree_counts(std::size_t max_n) {
  std::vector<std::vector<std::uint64_t>> binom(max_n + 1, std::vector<std::uint64_t>(max_n + 1, 0));
  for (std::size_t n = 0; n <= max_n; ++n) {
    binom[n][0] = 1;
    for (std::size_t k = 1; k <= n; ++k) binom[n][k] = binom[n - 1][k - 1] + (k <= n - 1 ? binom[n - 1][k] : 0);
  }
  std::vector<std::uint64_t> tree(max_n + 1, 0), forest(max_n + 1, 0);
  forest[0] = 1;
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::uint64_t split = 0;
    for (std::size_t k = 1; k < n; ++k) split += binom[n - 1][k - 1] * tree[k] * forest[n - k];
    tree[n] = n == 1 ? 1 : split;
    forest[n] = split + tree[n];
  }
  return tree;
}

std::uint64_t double_factorial(std::int64_t m) {
  std::uint64_t r = 1;
  for (std::int64_t i = m; i > 1; i -= 2) r *= static_cast<std::uint64_t>(i);
  return r;
}

std::string canonical(const RootedTree& t, VertexId v) {
  if (t.is_leaf(v)) return t.label(v);
  std::vector<std::string> parts;
  for (VertexId c : t.children(v)) parts.push_back(canonical(t, c));
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const auto& p : parts) out += p + ",";
  out.back() = ')';
  return out;
}

// Every gene tree with at most six vertices over species A, B, C whose
// structure is valid: shapes with slots for events, transfer marks, species.
std::vector<GeneTree> micro_gene_trees() {
  const std::vector<std::string> shapes = {
      "(L,L)E",          "((L,L)E,L)E",         "(L,L,L)E",
      "((L,L)E,L,L)E",   "((L,L,L)E,L)E",       "(L,L,L,L)E",
  };
  std::vector<GeneTree> out;
  const char* events = "sdt";
  for (const auto& shape : shapes) {
    std::size_t leaves = 0, inner = 0;
    for (char c : shape) {
      leaves += c == 'L';
      inner += c == 'E';
    }
    const std::size_t nonroot = leaves + inner - 1;
    std::size_t species_combos = 1, event_combos = 1;
    for (std::size_t i = 0; i < leaves; ++i) species_combos *= 3;
    for (std::size_t i = 0; i < inner; ++i) event_combos *= 3;
    for (std::size_t sp = 0; sp < species_combos; ++sp) {
      for (std::size_t ev = 0; ev < event_combos; ++ev) {
        for (std::size_t tf = 0; tf < (std::size_t{1} << nonroot); ++tf) {
          std::string nwk;
          std::size_t si = sp, ei = ev, slot = 0, leaf = 0;
          // Event slots follow closing parentheses; inner vertices close in
          // postorder, so the root's slot is the last one.
          std::vector<char> ev_codes;
          for (std::size_t i = 0; i < inner; ++i, ei /= 3) ev_codes.push_back(events[ei % 3]);
          std::size_t ev_slot = 0;
          for (std::size_t i = 0; i < shape.size(); ++i) {
            const char c = shape[i];
            const bool vertex_start = (c == 'L' || c == '(') && (i == 0 || shape[i - 1] == '(' || shape[i - 1] == ',');
            if (vertex_start && i != 0) {
              if (tf >> slot & 1) nwk += "#T ";
              ++slot;
            }
            if (c == 'L') {
              nwk += "g" + std::to_string(leaf++) + "@" + std::string(1, static_cast<char>('A' + si % 3));
              si /= 3;
            } else if (c == 'E') {
              nwk += std::string("[&ev=") + ev_codes[ev_slot++] + "]";
            } else {
              nwk += c;
            }
          }
          nwk += ";";
          try {
            out.push_back(parse_gene_tree(nwk));
          } catch (const Error&) {
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

TEST(Enumeration, BinaryCountsAreDoubleFactorials) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const std::uint64_t expected = n == 1 ? 1 : double_factorial(2 * static_cast<std::int64_t>(n) - 3);
    EXPECT_EQ(count_species_trees(first_labels(n), true), expected) << n;
  }
}

TEST(Enumeration, AllTreeCountsMatchPartitionRecurrence) {
  const auto expected = all_tree_counts(6);
  for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(count_species_trees(first_labels(n), false), expected[n]) << n;
}

TEST(Enumeration, TreesAreDistinctAndPhylogenetic) {
  for (bool binary : {true, false}) {
    for (std::size_t n = 1; n <= 5; ++n) {
      std::set<std::string> seen;
      enumerate_species_trees(first_labels(n), binary, [&](const RootedTree& t) {
        EXPECT_TRUE(t.is_phylogenetic());
        if (binary) {
          EXPECT_TRUE(t.is_binary());
        }
        std::vector<std::string> names;
        for (VertexId l : t.leaves()) names.push_back(t.label(l));
        std::sort(names.begin(), names.end());
        EXPECT_EQ(names, first_labels(n));
        EXPECT_TRUE(seen.insert(canonical(t, t.root())).second);
        return true;
      });
    }
  }
}

TEST(Enumeration, CapAndEmptyAreDomainErrors) {
  EXPECT_THROW(count_species_trees({}, true), Error);
  EXPECT_THROW(count_species_trees(first_labels(9), true), Error);
  EXPECT_THROW(count_species_trees({"A", "A"}, true), Error);
}

TEST(Enumeration, VisitorCanStop) {
  std::size_t seen = 0;
  enumerate_species_trees(first_labels(5), true, [&](const RootedTree&) { return ++seen < 7; });
  EXPECT_EQ(seen, 7u);
}

TEST(Oracle, SingleTransferHasSpeciesTree) {
  const GeneTree g = parse_gene_tree(read_file(corpus_path("single_transfer.nwk")));
  const auto r = exists_map_bruteforce(g, false);
  ASSERT_TRUE(r.exists);
  for (const Triple& t : species_triples(g)) EXPECT_TRUE(displays(*r.witness, t));
  EXPECT_TRUE(check_theorem_equivalence(g, false));
}

TEST(Oracle, NoSpeciesTreeExample) {
  const GeneTree g = parse_gene_tree(read_file(corpus_path("no_species_tree.nwk")));
  const auto r = exists_map_bruteforce(g, false);
  EXPECT_FALSE(r.exists);
  EXPECT_EQ(r.trees_checked, 3u);
  // No binary species tree admits any map at all, not just the constructed one.
  enumerate_species_trees(g.species(), true, [&](const RootedTree& s) {
    EXPECT_FALSE(find_any_map(g, plant(s), false).has_value());
    return true;
  });
  EXPECT_TRUE(check_theorem_equivalence(g, false));
}

TEST(Oracle, MultifurcatingHiddenTransfers) {
  const GeneTree g = parse_gene_tree(read_file(corpus_path("hidden_transfers_multifurcating.nwk")));
  EXPECT_THROW(exists_map_bruteforce(g, false), Error);
  EXPECT_FALSE(is_consistent(species_triples(g)));
  // A plain map exists although the species triples are inconsistent.
  const auto s = plant(testing_support::species(read_file(corpus_path("hidden_transfers.species.nwk"))));
  EXPECT_TRUE(validate_map(g, s, construct_map(g, s), false).all_pass());
  const auto r = theorem_equivalence(g, true);
  EXPECT_FALSE(r.oracle.exists);
  EXPECT_TRUE(r.holds());
}

TEST(Oracle, BinaryHiddenTransfers) {
  const GeneTree g = parse_gene_tree(read_file(corpus_path("hidden_transfers.nwk")));
  EXPECT_TRUE(check_theorem_equivalence(g, false));
  EXPECT_TRUE(check_theorem_equivalence(g, true));
}

TEST(Oracle, PreconditionsAreDomainErrors) {
  EXPECT_THROW(exists_map_bruteforce(parse_gene_tree(read_file(corpus_path("o2_violation.nwk"))), false), Error);
  const GeneTree big = testing_support::gene(
      "((((((a@A,b@B)[&ev=s],c@C)[&ev=s],d@D)[&ev=s],e@E)[&ev=s],f@F)[&ev=s],h@H)[&ev=s];");
  EXPECT_THROW(exists_map_bruteforce(big, false), Error);
}

TEST(Oracle, TrueSpeciesTreeAdmitsMapWithoutTransfers) {
  testing_support::InstanceOptions opt;
  opt.max_hgt = 0.0;
  std::uint64_t seed = 11000;
  for (int i = 0; i < 60; ++i) {
    const auto inst = testing_support::next_instance(seed, opt);
    if (!inst.tree.is_binary()) continue;
    const auto r = theorem_equivalence(inst.tree, false);
    EXPECT_TRUE(r.consistent && r.oracle.exists) << "seed " << inst.seed;
  }
}

TEST(Oracle, ConstructedMapFailsOnlyWhenNoMapExists) {
  const auto genes = micro_gene_trees();
  std::size_t checked = 0, without_map = 0;
  for (const GeneTree& g : genes) {
    for (bool restricted : {false, true}) {
      if (!restricted && !g.is_binary()) continue;
      if (!check_observability(g, restricted).all_pass()) continue;
      enumerate_species_trees(g.species(), true, [&](const RootedTree& t) {
        const auto s = plant(t);
        const bool constructed = validate_map(g, s, construct_map(g, s), restricted).all_pass();
        const auto any = find_any_map(g, s, restricted);
        EXPECT_EQ(constructed, any.has_value()) << serialize_gene_tree(g) << " on " << serialize_species_tree(t);
        if (any) {
          EXPECT_TRUE(testing_support::independent_failures(g, s.tree(), *any, restricted).empty());
        }
        ++checked;
        without_map += !any;
        return true;
      });
      EXPECT_TRUE(check_theorem_equivalence(g, restricted)) << serialize_gene_tree(g);
    }
  }
  EXPECT_GT(checked, 500u);
  EXPECT_GT(without_map, 50u);
}

TEST(Oracle, UniqueDisplayFlagMatchesEnumeration) {
  std::mt19937_64 rng(17);
  int unique_seen = 0;
  for (int round = 0; round < 200; ++round) {
    const auto labels = first_labels(3 + uniform_below(rng, 3));
    const std::size_t n = labels.size();
    TripleSet r;
    const std::size_t want = 1 + uniform_below(rng, n * (n - 1) * (n - 2) / 2);
    while (r.size() < want) {
      const auto a = labels[uniform_below(rng, n)], b = labels[uniform_below(rng, n)], c = labels[uniform_below(rng, n)];
      if (a != b && a != c && b != c) r.insert(Triple::make(a, b, c));
    }
    if (!is_consistent(r)) continue;
    const auto lr = r.labels();
    std::size_t displaying = 0;
    enumerate_species_trees(lr, false, [&](const RootedTree& t) {
      displaying += std::all_of(r.begin(), r.end(), [&](const Triple& x) { return displays(t, x); });
      return true;
    });
    if (is_unique_display_tree(r)) {
      ++unique_seen;
      EXPECT_EQ(displaying, 1u) << to_text(r);
    } else {
      EXPECT_GT(displaying, 1u) << to_text(r);
    }
  }
  EXPECT_GT(unique_seen, 5);
}
