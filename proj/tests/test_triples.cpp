#include <gtest/gtest.h>

#include "gtrec/error.hpp"
#include "gtrec/triples.hpp"
#include "support.hpp"

using namespace gtrec;
using testing_support::gene;

namespace {

const char* kSingleTransfer = "((a@A,c1@C)[&ev=s],(d@D,#T(b@B,c2@C)[&ev=s])[&ev=t])[&ev=s];";

// Leaves reachable from x without crossing a transfer edge.
std::vector<VertexId> forest_leaves(const GeneTree& g, VertexId x) {
  std::vector<VertexId> out;
  for (VertexId l : g.tree().leaves()) {
    VertexId v = l;
    bool ok = true;
    while (v != x) {
      const VertexId p = g.tree().parent(v);
      if (p == kNoVertex || g.is_transfer_edge(v)) {
        ok = false;
        break;
      }
      v = p;
    }
    if (ok) out.push_back(l);
  }
  return out;
}

// Deepest vertex whose forest leaf set holds every given leaf, if any.
std::optional<VertexId> forest_lca(const GeneTree& g, const std::vector<VertexId>& ls) {
  std::optional<VertexId> best;
  for (VertexId x = 0; x < g.size(); ++x) {
    const auto below = forest_leaves(g, x);
    const bool all = std::all_of(ls.begin(), ls.end(), [&](VertexId l) {
      return std::find(below.begin(), below.end(), l) != below.end();
    });
    if (all && (!best || g.tree().depth(x) > g.tree().depth(*best))) best = x;
  }
  return best;
}

TripleSet brute_speciation_triples(const GeneTree& g) {
  TripleSet out;
  const auto& L = g.tree().leaves();
  for (VertexId a : L) {
    for (VertexId b : L) {
      for (VertexId c : L) {
        if (a >= b || c == a || c == b) continue;
        const auto sa = g.species_of(a), sb = g.species_of(b), sc = g.species_of(c);
        if (sa == sb || sa == sc || sb == sc) continue;
        const auto top = forest_lca(g, {a, b, c});
        if (!top || g.event(*top) != Event::kSpeciation) continue;
        if (*forest_lca(g, {a, b}) != *top) out.insert(Triple::make(g.gene_name(a), g.gene_name(b), g.gene_name(c)));
      }
    }
  }
  return out;
}

TripleSet brute_transfer_triples(const GeneTree& g, const Edge& e) {
  TripleSet out;
  const auto lx = forest_leaves(g, e.parent), ly = forest_leaves(g, e.child);
  auto add = [&](const std::vector<VertexId>& pair, const std::vector<VertexId>& out_side) {
    for (VertexId a : pair) {
      for (VertexId b : pair) {
        for (VertexId c : out_side) {
          const auto sa = g.species_of(a), sb = g.species_of(b), sc = g.species_of(c);
          if (a < b && sa != sb && sa != sc && sb != sc) {
            out.insert(Triple::make(g.gene_name(a), g.gene_name(b), g.gene_name(c)));
          }
        }
      }
    }
  };
  add(lx, ly);
  add(ly, lx);
  return out;
}

}  // namespace

TEST(Triple, CanonicalOrder) {
  EXPECT_EQ(Triple::make("b", "a", "c"), Triple::make("a", "b", "c"));
  EXPECT_EQ(to_string(Triple::make("y", "x", "z")), "x y | z");
  EXPECT_THROW(Triple::make("a", "a", "c"), Error);
}

TEST(Triple, ParseAndPrintRoundTrip) {
  const TripleSet r = parse_triples("# comment\nb a | c\n\nc d|a  # trailing\n");
  EXPECT_EQ(r, (TripleSet{Triple::make("a", "b", "c"), Triple::make("c", "d", "a")}));
  EXPECT_EQ(parse_triples(to_text(r)), r);
}

TEST(Triple, ParseErrorsCarryLine) {
  try {
    parse_triples("a b | c\na b c\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(parse_triples("a b | a\n"), ParseError);
  EXPECT_THROW(parse_triples("a | b\n"), ParseError);
}

TEST(Displays, Caterpillar) {
  const RootedTree t = testing_support::species("((a,b),c);");
  EXPECT_TRUE(displays(t, Triple::make("a", "b", "c")));
  EXPECT_FALSE(displays(t, Triple::make("a", "c", "b")));
  EXPECT_FALSE(displays(t, Triple::make("a", "b", "z")));
  EXPECT_EQ(displayed_triples(t).size(), 1u);
}

TEST(Displays, StarDisplaysNothing) {
  EXPECT_TRUE(displayed_triples(testing_support::species("(a,b,c,d);")).empty());
}

TEST(Displays, BinaryTreeDisplaysOnePerLeafTriple) {
  std::mt19937_64 rng(1);
  for (std::size_t n = 3; n <= 8; ++n) {
    const auto t = testing_support::random_binary_tree(n, rng);
    EXPECT_EQ(displayed_triples(t).size(), n * (n - 1) * (n - 2) / 6);
  }
}

TEST(Displays, ForestNeedsOneComponent) {
  const GeneTree g = gene(kSingleTransfer);
  EXPECT_TRUE(displays(g.forest(), Triple::make("a", "c1", "d")));
  EXPECT_FALSE(displays(g.forest(), Triple::make("a", "c1", "b")));
  EXPECT_TRUE(displays(g.tree(), Triple::make("a", "c1", "b")));
}

TEST(Informative, SingleTransferExample) {
  const auto r = informative_triples(gene(kSingleTransfer));
  EXPECT_EQ(r.r0, TripleSet{Triple::make("a", "c1", "d")});
  ASSERT_EQ(r.per_transfer.size(), 1u);
  EXPECT_EQ(r.per_transfer[0], TripleSet{Triple::make("b", "c2", "d")});
  EXPECT_EQ(r.all.size(), 2u);
}

TEST(Informative, SpeciesImage) {
  const TripleSet s = species_triples(gene(kSingleTransfer));
  EXPECT_EQ(s, (TripleSet{Triple::make("A", "C", "D"), Triple::make("B", "C", "D")}));
}

TEST(Informative, NoSpeciesTreeExample) {
  const GeneTree g = parse_gene_tree(testing_support::read_file(testing_support::corpus_path("no_species_tree.nwk")));
  EXPECT_EQ(species_triples(g), (TripleSet{Triple::make("A", "B", "C"), Triple::make("B", "C", "A")}));
}

TEST(Informative, DuplicationRootedTriplesExcluded) {
  const auto r = informative_triples(gene("((a@A,b@B)[&ev=s],c@C)[&ev=d];"));
  EXPECT_TRUE(r.all.empty());
}

TEST(Informative, SameSpeciesExcluded) {
  const auto r = informative_triples(gene("((a@A,a2@A)[&ev=d],c@C)[&ev=s];"));
  EXPECT_TRUE(r.all.empty());
}

TEST(Informative, MatchesBruteForceOnRandomTrees) {
  std::uint64_t seed = 2000;
  for (int i = 0; i < 150; ++i) {
    const auto inst = testing_support::next_instance(seed, {});
    const GeneTree& g = inst.tree;
    const auto r = informative_triples(g);
    EXPECT_EQ(r.r0, brute_speciation_triples(g)) << "seed " << inst.seed;
    ASSERT_EQ(r.per_transfer.size(), g.transfer_edges().size());
    TripleSet all = r.r0;
    for (std::size_t k = 0; k < r.per_transfer.size(); ++k) {
      EXPECT_EQ(r.per_transfer[k], brute_transfer_triples(g, g.transfer_edges()[k]));
      all.merge(r.per_transfer[k]);
    }
    EXPECT_EQ(r.all, all);
    TripleSet image;
    for (const Triple& t : r.all) {
      image.insert(Triple::make(g.species_name(g.species_id_of(*g.tree().find_label(t.a))),
                                g.species_name(g.species_id_of(*g.tree().find_label(t.b))),
                                g.species_name(g.species_id_of(*g.tree().find_label(t.c)))));
    }
    EXPECT_EQ(species_triples(g), image) << "seed " << inst.seed;
  }
}

TEST(Informative, SpeciationTriplesDisplayedByForest) {
  std::uint64_t seed = 3000;
  for (int i = 0; i < 100; ++i) {
    const auto inst = testing_support::next_instance(seed, {});
    for (const Triple& t : informative_triples(inst.tree).r0) EXPECT_TRUE(displays(inst.tree.forest(), t));
  }
}
