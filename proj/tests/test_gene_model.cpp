#include <gtest/gtest.h>

#include "gtrec/error.hpp"
#include "gtrec/gene_tree.hpp"
#include "support.hpp"

using namespace gtrec;
using testing_support::gene;

namespace {

const char* kSingleTransfer = "((a@A,c1@C)[&ev=s],(d@D,#T(b@B,c2@C)[&ev=s])[&ev=t])[&ev=s];";

VertexId leaf(const GeneTree& g, const char* name) { return *g.tree().find_label(name); }

}  // namespace

TEST(SigmaBar, LeafIsOwnSpecies) {
  const GeneTree g = gene(kSingleTransfer);
  EXPECT_EQ(g.sigma_bar(leaf(g, "c2")), std::vector<std::string>{"C"});
}

TEST(SigmaBar, TransferEndsAreDisjoint) {
  const GeneTree g = gene(kSingleTransfer);
  ASSERT_EQ(g.transfer_edges().size(), 1u);
  const Edge e = g.transfer_edges()[0];
  EXPECT_TRUE(disjoint_sorted(g.sigma_bar_ids(e.parent), g.sigma_bar_ids(e.child)));
}

TEST(SigmaBar, RootComponentExcludesTransferredSpecies) {
  const GeneTree g = gene(kSingleTransfer);
  const auto root = g.tree().root();
  // Frozen from the independent walk in the test support.
  const std::set<std::string> expected{"A", "C", "D"};
  EXPECT_EQ(testing_support::independent_sigma_bar(g, root), expected);
  const auto got = g.sigma_bar(root);
  EXPECT_EQ(std::set<std::string>(got.begin(), got.end()), expected);
}

TEST(SigmaBar, AgreesWithIndependentWalk) {
  std::uint64_t seed = 100;
  for (int i = 0; i < 50; ++i) {
    const auto inst = testing_support::next_instance(seed, {});
    for (VertexId x = 0; x < inst.tree.size(); ++x) {
      const auto got = inst.tree.sigma_bar(x);
      EXPECT_EQ(std::set<std::string>(got.begin(), got.end()), testing_support::independent_sigma_bar(inst.tree, x));
      EXPECT_FALSE(got.empty());
    }
  }
}

TEST(Observability, SeparatingBinaryTreePasses) {
  const GeneTree g = gene("((a@A,b@B)[&ev=s],(c@C,d@D)[&ev=s])[&ev=s];");
  EXPECT_TRUE(check_observability(g, true).all_pass());
}

TEST(Observability, TransferVertexWithoutTransferEdgeFailsO2) {
  const GeneTree g = gene("((a@A,b@B)[&ev=t],c@C)[&ev=s];");
  const auto r = check_observability(g, false);
  EXPECT_FALSE(r.o2.pass());
  EXPECT_EQ(r.o2.vertices, std::vector<VertexId>{1});
  EXPECT_TRUE(r.o1.pass());
}

TEST(Observability, AllTransferChildrenFailO2) {
  const GeneTree g = gene("(a@A,(#T b@B,#T c@C)[&ev=t])[&ev=d];");
  EXPECT_FALSE(check_observability(g, false).o2.pass());
}

TEST(Observability, UnaryVertexFailsO1) {
  const GeneTree g = gene("(((a@A)[&ev=d],b@B)[&ev=s]);");
  EXPECT_FALSE(check_observability(g, false).o1.pass());
}

TEST(Observability, OverlappingSpeciationFailsO3a) {
  const GeneTree g = gene("((a@A,b@B)[&ev=s],(a2@A,b2@B)[&ev=s])[&ev=s];");
  const auto r = check_observability(g, false);
  EXPECT_EQ(r.o3a.vertices, std::vector<VertexId>{0});
}

TEST(Observability, OverlappingTransferFailsO3b) {
  const GeneTree g = gene("(a@A,#T(a2@A,b@B)[&ev=d])[&ev=t];");
  const auto r = check_observability(g, false);
  ASSERT_EQ(r.o3b.edges.size(), 1u);
  EXPECT_EQ(r.o3b.edges[0], (Edge{0, 2}));
}

TEST(Observability, RestrictedCatchesPartialOverlap) {
  const GeneTree g = gene("(a@A,b@B,(a2@A,c@C)[&ev=d])[&ev=s];");
  EXPECT_TRUE(check_observability(g, false).all_pass());
  const auto r = check_observability(g, true);
  EXPECT_FALSE(r.o3A.pass());
  EXPECT_TRUE(r.o3a.pass());
}

TEST(Observability, HiddenTransferTreesPassRestricted) {
  for (const char* f : {"hidden_transfers.nwk", "hidden_transfers_multifurcating.nwk"}) {
    const GeneTree g = parse_gene_tree(testing_support::read_file(testing_support::corpus_path(f)));
    EXPECT_TRUE(check_observability(g, true).all_pass()) << f;
  }
}

TEST(Observability, RestrictedImpliesPlainOnRandomTrees) {
  std::uint64_t seed = 900;
  for (int i = 0; i < 80; ++i) {
    const auto inst = testing_support::next_instance(seed, {});
    const auto r = check_observability(inst.tree, true);
    if (r.o3A.pass()) { EXPECT_TRUE(r.o3a.pass()); }
  }
}

TEST(Observability, MultipleTransferEdgesAreReported) {
  const GeneTree g = gene("(a@A,#T b@B,#T c@C)[&ev=t];");
  const auto r = check_observability(g, false);
  EXPECT_TRUE(r.all_pass());
  EXPECT_EQ(r.multi_transfer, std::vector<VertexId>{0});
}

TEST(ComponentPartition, NoTransferIsOneBlock) {
  const GeneTree g = gene("((a@A,b@B)[&ev=s],c@C)[&ev=s];");
  const auto p = component_partition(g);
  ASSERT_TRUE(p.is_partition);
  ASSERT_EQ(p.blocks.size(), 1u);
  EXPECT_EQ(p.blocks[0], g.tree().leaves());
}

TEST(ComponentPartition, OneTransferIsTwoBlocks) {
  const auto p = component_partition(gene(kSingleTransfer));
  EXPECT_TRUE(p.is_partition);
  EXPECT_EQ(p.blocks.size(), 2u);
}

TEST(ComponentPartition, EmptyBlockIsReportedNotThrown) {
  const GeneTree g = gene("(a@A,#T(#T b@B,#T c@C)[&ev=t])[&ev=t];");
  const auto p = component_partition(g);
  EXPECT_FALSE(p.is_partition);
  EXPECT_FALSE(p.failure.empty());
}

TEST(ComponentPartition, SimulatedTreesArePartitions) {
  std::uint64_t seed = 4000;
  for (int i = 0; i < 100; ++i) {
    EXPECT_TRUE(component_partition(testing_support::next_instance(seed, {}).tree).is_partition);
  }
}

TEST(GeneTreeStructure, InvalidInputsThrow) {
  EXPECT_THROW(gene("(a@A,a@B)[&ev=s];"), Error);         // duplicate gene
  EXPECT_THROW(gene("(a@A,#T b@B)[&ev=d];"), Error);      // tail not t
  EXPECT_THROW(gene("(a@A,b@B);"), Error);                // interior without event
  EXPECT_THROW(gene("(a,b@B)[&ev=s];"), Error);           // no species
  EXPECT_THROW(gene("(a@A[&ev=s],b@B)[&ev=s];"), Error);  // leaf with event
}
