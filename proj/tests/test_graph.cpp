#include <gtest/gtest.h>

#include <array>
#include <numeric>

#include "dsg/graph.hpp"
#include "dsg/notation.hpp"
#include "reference_data.hpp"

using namespace dsg;

namespace {

const QuotientGraph& graph(int n) {
  static std::map<int, QuotientGraph> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_quotient_graph(n, 2)).first;
  return it->second;
}

// Drawn labels are read along the drawn arrow in the opposite composition
// order, so they are the inverses of ours.
Permutation drawn(const std::string& label, int n) {
  return Permutation::from_cycles(label, static_cast<std::size_t>(n)).inverse();
}

void expect_drawn_edges(int n, const std::vector<ref::DrawnEdge>& edges) {
  const auto& g = graph(n);
  for (const auto& e : edges) {
    const std::array<int, 2> vs{e.src, e.dst};
    const auto walk = walk_from_vertices(g, vs);
    EXPECT_EQ(g.label(walk.front()), drawn(e.label, n)) << e.src << " -> " << e.dst << " ours " << g.label(walk.front()).cycles();
  }
}

}  // namespace

TEST(QuotientGraph, Censuses) {
  for (const auto& c : ref::censuses) {
    const auto& g = graph(c.degree);
    EXPECT_EQ(g.vertex_count(), c.vertices) << c.degree;
    EXPECT_EQ(g.edge_pair_count(), c.edge_pairs) << c.degree;
    EXPECT_EQ(isolated_vertex_count(g), c.isolated) << c.degree;
    EXPECT_EQ(static_cast<int>(connected_components(g).size()), c.components) << c.degree;
  }
}

TEST(QuotientGraph, ReverseEdgesCarryInverseLabels) {
  for (int n = 4; n <= 7; ++n) {
    const auto& g = graph(n);
    for (int v = 1; v <= g.vertex_count(); ++v) {
      for (const auto& e : g.out_edges(v)) {
        const auto r = QuotientGraph::reversed(e);
        const auto back = g.out_edges(e.dst);
        EXPECT_NE(std::find(back.begin(), back.end(), r), back.end());
        EXPECT_TRUE(compose(g.label(e), g.label(r)).is_identity());
      }
    }
  }
}

TEST(QuotientGraph, EdgesRealizeTheirRedexes) {
  for (int n = 4; n <= 6; ++n) {
    const auto& g = graph(n);
    for (int v = 1; v <= g.vertex_count(); ++v)
      for (const auto& e : g.out_edges(v)) {
        const Monomial out = apply_redex(identity_monomial(g.shape(v)), g.redex(e));
        EXPECT_EQ(out, (Monomial{g.shape(e.dst), g.label(e)}));
      }
  }
}

TEST(QuotientGraph, LiftingIsUniqueAndDegreePreserving) {
  for (int n = 4; n <= 5; ++n) {
    const auto& g = graph(n);
    std::vector<int> images(static_cast<std::size_t>(n));
    std::iota(images.begin(), images.end(), 1);
    do {
      const Permutation d = Permutation::from_images(images);
      for (int v = 1; v <= g.vertex_count(); ++v)
        for (const auto& e : g.out_edges(v)) {
          const Monomial m{g.shape(v), d};
          const std::array<DirectedEdge, 1> path{e};
          const auto lift = lift_path(g, path, m);
          EXPECT_EQ(lift.end, apply_redex(m, g.redex(e)));
          EXPECT_EQ(lift.end.degree(), n);
        }
    } while (std::next_permutation(images.begin(), images.end()));
  }
}

TEST(QuotientGraph, LiftingComposesAlongThePath) {
  const auto& g = graph(5);
  const std::array<int, 3> vs{30, 68, 26};
  const auto walk = walk_from_vertices(g, vs);
  const auto lift = lift_path(g, walk, identity_monomial(g.shape(30)));
  EXPECT_EQ(lift.total, Permutation::from_cycles("(34)", 5));
  EXPECT_EQ(lift.end, (Monomial{g.shape(26), lift.total}));
  EXPECT_TRUE(lift_path(g, {}, identity_monomial(g.shape(30))).total.is_identity());
}

TEST(QuotientGraph, LiftingRejectsBrokenWalks) {
  const auto& g = graph(5);
  const std::array<int, 2> a{30, 68};
  const std::array<int, 2> b{8, 18};
  std::vector<DirectedEdge> broken = walk_from_vertices(g, a);
  broken.push_back(walk_from_vertices(g, b).front());
  EXPECT_THROW(lift_path(g, broken, identity_monomial(g.shape(30))), std::invalid_argument);
  EXPECT_THROW(lift_path(g, broken, identity_monomial(g.shape(8))), std::invalid_argument);
  const std::array<int, 2> none{8, 30};
  EXPECT_THROW(walk_from_vertices(g, none), std::invalid_argument);
}

TEST(QuotientGraph, DegreeFiveLabels) { expect_drawn_edges(5, ref::degree5_edges); }
TEST(QuotientGraph, DegreeSixLabels) { expect_drawn_edges(6, ref::degree6_edges); }
TEST(QuotientGraph, DegreeSevenLabels) { expect_drawn_edges(7, ref::degree7_edges); }

TEST(QuotientGraph, DegreeFourHasOneEdgePair) {
  const auto& g = graph(4);
  ASSERT_EQ(g.edge_pair_count(), 1);
  const auto& rel = g.relations().front().relation;
  EXPECT_EQ(rel.left, 8);
  EXPECT_EQ(to_string(Monomial{g.shape(rel.right), rel.sigma}), "(a∘c)•(b∘d)");
}

TEST(Components, SortedBySizeThenMinimalVertex) {
  for (int n = 4; n <= 8; ++n) {
    const auto cs = connected_components(graph(n));
    for (std::size_t i = 0; i < cs.size(); ++i) {
      EXPECT_EQ(cs[i].id, static_cast<int>(i) + 1);
      EXPECT_TRUE(std::is_sorted(cs[i].vertices.begin(), cs[i].vertices.end()));
      EXPECT_TRUE(std::is_sorted(cs[i].relations.begin(), cs[i].relations.end()));
      EXPECT_GE(cs[i].circuit_rank(), 0);
      if (i) {
        const auto& a = cs[i - 1];
        const auto& b = cs[i];
        EXPECT_TRUE(a.vertex_count() < b.vertex_count() || (a.vertex_count() == b.vertex_count() && a.min_vertex() < b.min_vertex()));
      }
    }
  }
}

TEST(Components, SizeHistograms) {
  for (const auto& [n, expected] : ref::size_histograms) EXPECT_EQ(component_summary(graph(n)).by_size, expected) << n;
}

TEST(Components, RankHistograms) {
  for (const auto& [n, expected] : ref::positive_rank_histograms) {
    auto ranks = component_summary(graph(n)).by_rank;
    ranks.erase(0);
    EXPECT_EQ(ranks, expected) << n;
  }
  EXPECT_EQ(component_summary(graph(9)).by_rank, ref::rank_histogram_9);
}

TEST(Components, SizesAccountForEveryVertex) {
  for (int n = 4; n <= 9; ++n) {
    const auto s = component_summary(graph(n));
    int total = s.isolated;
    for (auto [size, count] : s.by_size) total += size * count;
    EXPECT_EQ(total, graph(n).vertex_count());
  }
}

TEST(Components, CircuitRankIsEdgesMinusVerticesPlusOne) {
  const auto cs = connected_components(graph(7));
  for (const auto& c : cs) EXPECT_EQ(c.circuit_rank(), c.edge_count() - c.vertex_count() + 1);
  const auto it = std::find_if(cs.begin(), cs.end(), [](const Component& c) { return c.contains(421); });
  ASSERT_NE(it, cs.end());
  EXPECT_EQ(it->vertex_count(), 13);
  EXPECT_EQ(it->edge_count(), 15);
  EXPECT_EQ(it->circuit_rank(), 3);
  std::vector<int> expected;
  for (const auto& [index, text] : ref::degree7_types) expected.push_back(index);
  EXPECT_EQ(it->vertices, expected);
}

TEST(Components, FreeMonomialCounts) {
  for (int n = 4; n <= 9; ++n) EXPECT_EQ(count_free_monomials(graph(n)), ref::free_monomials[static_cast<std::size_t>(n - 4)]) << n;
}

TEST(Components, TransposingOperationsPreservesTheStructure) {
  for (int n = 4; n <= 7; ++n) {
    const auto& g = graph(n);
    const auto& t = g.shapes();
    const auto cs = connected_components(g);
    std::vector<int> component_of(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
    for (const auto& c : cs)
      for (int v : c.vertices) component_of[static_cast<std::size_t>(v)] = c.id;
    for (const auto& c : cs) {
      const int image = component_of[static_cast<std::size_t>(t.index_of(Shape(transpose(g.shape(c.min_vertex()).tree()))))];
      ASSERT_NE(image, 0);
      const auto& d = cs[static_cast<std::size_t>(image - 1)];
      EXPECT_EQ(d.vertex_count(), c.vertex_count());
      EXPECT_EQ(d.edge_count(), c.edge_count());
      for (int v : c.vertices)
        EXPECT_TRUE(d.contains(t.index_of(Shape(transpose(g.shape(v).tree())))));
    }
  }
}

TEST(Components, IndependentOfWorkerCount) {
  EXPECT_EQ(build_quotient_graph(8, 1), build_quotient_graph(8, 8));
}
