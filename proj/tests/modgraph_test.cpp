#include <gtest/gtest.h>

#include <random>

#include "gcx/modgraph/contract.hpp"
#include "gcx/modgraph/enumerate.hpp"
#include "oracles.hpp"

using namespace gcx;

namespace {

std::map<int, std::uint64_t> level_sizes(int g, int n, GraphConstraints cons, LegMode mode, int cap) {
  std::map<int, std::uint64_t> out;
  auto levels = enumerate_graphs_by_edges(g, n, cons, mode, cap);
  for (std::size_t k = 0; k < levels.size(); ++k) out[static_cast<int>(k)] = levels[k].size();
  return out;
}

// Random relabeling of vertices, edges, edge directions and (optionally) legs.
ModularGraph scramble(const ModularGraph& g, std::mt19937_64& rng, bool legs) {
  GraphMap m = GraphMap::identity(g);
  std::shuffle(m.vertex_map.begin(), m.vertex_map.end(), rng);
  std::shuffle(m.edge_map.begin(), m.edge_map.end(), rng);
  for (auto& f : m.flipped) f = static_cast<char>(rng() & 1);
  if (legs) std::shuffle(m.leg_map.begin(), m.leg_map.end(), rng);
  return apply_map(g, m);
}

ModularGraph double_edge() { return ModularGraph({0, 0}, {{0, 1}, {0, 1}}, {0, 1}); }

}  // namespace

TEST(Enumerate, SpotValues) {
  EXPECT_EQ(enumerate_graphs(0, 4, {}).size(), 4u);
  EXPECT_EQ(enumerate_graphs(0, 5, {}).size(), 26u);
  EXPECT_EQ(enumerate_graphs(1, 1, {}).size(), 2u);
}

TEST(Enumerate, UnstableTypeRejected) {
  EXPECT_THROW(enumerate_graphs(0, 2, {}), std::invalid_argument);
  EXPECT_THROW(enumerate_graphs(1, 0, {}), std::invalid_argument);
}

TEST(Enumerate, MatchesBruteForceUpToFiveEdges) {
  for (int g = 0; g <= 3; ++g)
    for (int n = 0; n <= 8; ++n) {
      if (!is_stable_type(g, n) || 3 * g - 3 + n > 5) continue;
      auto want = oracle::brute_force_counts(g, n, 5);
      auto got = level_sizes(g, n, {}, LegMode::Labeled, 5);
      for (const auto& [e, c] : got) EXPECT_EQ(c, want.labeled[e]) << "(g,n)=(" << g << "," << n << ") edges " << e;
    }
}

TEST(Enumerate, TruncatedLevelsMatchBruteForce) {
  for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 7}, {1, 5}, {2, 2}, {3, 0}, {3, 1}}) {
    auto want = oracle::brute_force_counts(g, n, 4);
    auto got = level_sizes(g, n, {}, LegMode::Labeled, 4);
    for (const auto& [e, c] : got) EXPECT_EQ(c, want.labeled[e]) << "(g,n)=(" << g << "," << n << ") edges " << e;
  }
}

TEST(Enumerate, ConstraintsAndUnlabeledLegsMatchBruteForce) {
  for (auto [g, n] : std::vector<std::pair<int, int>>{{1, 2}, {1, 4}, {2, 0}, {2, 1}, {2, 3}}) {
    int cap = std::min(5, 3 * g - 3 + n);
    for (bool tad : {true, false})
      for (bool gen : {true, false}) {
        auto want = oracle::brute_force_counts(g, n, cap, tad, gen);
        GraphConstraints cons{tad, gen};
        auto lab = level_sizes(g, n, cons, LegMode::Labeled, cap);
        auto unl = level_sizes(g, n, cons, LegMode::Unlabeled, cap);
        for (const auto& [e, c] : lab) EXPECT_EQ(c, want.labeled[e]) << g << "," << n << " tad=" << tad << " genus=" << gen;
        for (const auto& [e, c] : unl) EXPECT_EQ(c, want.unlabeled[e]) << g << "," << n << " tad=" << tad << " genus=" << gen;
      }
  }
}

TEST(Enumerate, EveryGraphIsStableConnectedAndOfTheRightType) {
  for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 6}, {1, 3}, {2, 2}}) {
    for (const auto& cf : enumerate_graphs(g, n, {})) {
      EXPECT_TRUE(cf.graph.is_stable());
      EXPECT_TRUE(cf.graph.is_connected());
      EXPECT_EQ(cf.graph.total_genus(), g);
      EXPECT_EQ(cf.graph.num_legs(), n);
    }
  }
}

TEST(Canonical, RelabelingInvariance) {
  std::mt19937_64 rng(7);
  for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 6}, {1, 4}, {2, 2}, {3, 0}}) {
    for (const auto& cf : enumerate_graphs(g, n, {}, LegMode::Labeled, 5)) {
      for (int t = 0; t < 3; ++t) {
        auto x = scramble(cf.graph, rng, false);
        EXPECT_EQ(canonicalize(x).encoding, cf.encoding);
        auto y = scramble(cf.graph, rng, true);
        EXPECT_EQ(canonicalize(y, LegMode::Unlabeled).encoding, canonicalize(cf.graph, LegMode::Unlabeled).encoding);
      }
    }
  }
}

TEST(Canonical, TriangleWithTwoNumberings) {
  ModularGraph a({0, 0, 0}, {{0, 1}, {1, 2}, {2, 0}}, {0, 1, 2});
  ModularGraph b({0, 0, 0}, {{2, 1}, {0, 2}, {1, 0}}, {1, 2, 0});
  EXPECT_EQ(canonicalize(a).encoding, canonicalize(b).encoding);
}

TEST(Canonical, Idempotent) {
  for (const auto& cf : enumerate_graphs(1, 3, {})) {
    auto again = canonicalize(cf.graph);
    EXPECT_EQ(again.encoding, cf.encoding);
    EXPECT_TRUE(same_layout(again.graph, cf.graph));
  }
}

TEST(Canonical, RelabelingMapsInputToCanonicalGraph) {
  std::mt19937_64 rng(11);
  for (const auto& cf : enumerate_graphs(1, 4, {})) {
    auto x = scramble(cf.graph, rng, false);
    auto c = canonicalize(x);
    EXPECT_TRUE(same_layout(apply_map(x, c.relabeling), c.graph));
  }
}

TEST(Canonical, EncodingRoundTrip) {
  for (const auto& cf : enumerate_graphs(2, 1, {})) EXPECT_EQ(canonicalize(decode_encoding(cf.encoding)).encoding, cf.encoding);
}

TEST(Automorphisms, Orders) {
  EXPECT_EQ(automorphisms(canonicalize(ModularGraph::corolla(0, 4))).order, 1u);
  ModularGraph theta({0, 0}, {{0, 1}, {0, 1}, {0, 1}}, {});
  EXPECT_EQ(automorphisms(canonicalize(theta)).order, 12u);
  EXPECT_EQ(automorphisms(canonicalize(ModularGraph::bouquet(1, 1))).order, 2u);
}

TEST(Automorphisms, TwistSignIsAHomomorphism) {
  for (auto [g, n] : std::vector<std::pair<int, int>>{{2, 0}, {2, 1}, {3, 0}})
    for (const auto& cf : enumerate_graphs(g, n, {}, LegMode::Labeled, 5)) {
      auto aut = automorphisms(cf);
      const auto& gens = aut.generators;
      for (TwistKind kind : {TwistKind::EdgeOrder, TwistKind::VertexOrderEdgeDir}) {
        Twist t{kind, false};
        for (const auto& a : gens)
          for (const auto& b : gens) {
            auto ab = compose(a, b);
            EXPECT_EQ(twist_sign(ab, t), twist_sign(a, t) * twist_sign(b, t));
          }
      }
    }
}

TEST(Automorphisms, ZeroGenerators) {
  Twist edge{TwistKind::EdgeOrder, false}, edge_legs{TwistKind::EdgeOrder, true};
  EXPECT_TRUE(is_zero_generator(canonicalize(double_edge()), edge));
  // [1,1,0]^0: strands with one leg, one leg, no leg; swapping the first two strands is even on edges, odd on legs
  ModularGraph theta_aab({0, 0, 0, 0}, {{0, 2}, {2, 1}, {0, 3}, {3, 1}, {0, 1}}, {2, 3});
  EXPECT_TRUE(is_zero_generator(canonicalize(theta_aab, LegMode::Unlabeled), edge_legs));
  EXPECT_FALSE(is_zero_generator(canonicalize(theta_aab, LegMode::Unlabeled), edge));
  // a reflection of the triangle is odd on edges and on legs
  ModularGraph triangle({0, 0, 0}, {{0, 1}, {1, 2}, {2, 0}}, {0, 1, 2});
  EXPECT_FALSE(is_zero_generator(canonicalize(triangle, LegMode::Unlabeled), edge_legs));
  EXPECT_TRUE(is_zero_generator(canonicalize(triangle, LegMode::Unlabeled), edge));
}

TEST(Contract, LoopRaisesGenus) {
  auto c = contract_edge(ModularGraph::bouquet(1, 3), 0);
  EXPECT_TRUE(c.loop);
  EXPECT_EQ(canonicalize(c.graph).encoding, canonicalize(ModularGraph::corolla(1, 3)).encoding);
}

TEST(Contract, TreeToCorollaWithSignPlusOne) {
  ModularGraph t({0, 0}, {{0, 1}}, {0, 0, 1, 1});
  auto c = contract_edge(t, 0);
  EXPECT_EQ(canonicalize(c.graph).encoding, canonicalize(ModularGraph::corolla(0, 4)).encoding);
  EXPECT_EQ(c.sign(Twist{TwistKind::EdgeOrder, false}), 1);
}

TEST(Contract, TwoEdgeCompositesAnticommute) {
  ModularGraph p({0, 0, 0}, {{0, 1}, {1, 2}}, {0, 0, 1, 2, 2});
  Twist t{TwistKind::EdgeOrder, false};
  auto first = contract_edge(p, 0);
  auto then = contract_edge(first.graph, 0);
  auto second = contract_edge(p, 1);
  auto then2 = contract_edge(second.graph, 0);
  auto a = canonicalize(then.graph), b = canonicalize(then2.graph);
  ASSERT_EQ(a.encoding, b.encoding);
  int s1 = first.sign(t) * then.sign(t) * a.twist_sign(t);
  int s2 = second.sign(t) * then2.sign(t) * b.twist_sign(t);
  EXPECT_EQ(s1, -s2);
}

TEST(Contract, AnticommutationOnAllEdgePairs) {
  // every pair of non-loop edges of every (1,3) and (2,1) graph, both twists
  for (auto [g, n] : std::vector<std::pair<int, int>>{{1, 3}, {2, 1}, {0, 6}})
    for (const auto& cf : enumerate_graphs(g, n, {}))
      for (TwistKind kind : {TwistKind::EdgeOrder, TwistKind::VertexOrderEdgeDir}) {
        Twist t{kind, false};
        const auto& gr = cf.graph;
        for (int e = 0; e < gr.num_edges(); ++e)
          for (int f = e + 1; f < gr.num_edges(); ++f) {
            if (gr.edges[static_cast<std::size_t>(e)].is_loop() || gr.edges[static_cast<std::size_t>(f)].is_loop()) continue;
            auto ce = contract_edge(gr, e);
            int f_after = ce.flag_map[static_cast<std::size_t>(2 * f)] / 2;
            if (ce.graph.edges[static_cast<std::size_t>(f_after)].is_loop()) continue;
            auto cef = contract_edge(ce.graph, f_after);
            auto cf_ = contract_edge(gr, f);
            int e_after = cf_.flag_map[static_cast<std::size_t>(2 * e)] / 2;
            auto cfe = contract_edge(cf_.graph, e_after);
            auto x = canonicalize(cef.graph), y = canonicalize(cfe.graph);
            ASSERT_EQ(x.encoding, y.encoding);
            EXPECT_EQ(ce.sign(t) * cef.sign(t) * x.twist_sign(t), -cf_.sign(t) * cfe.sign(t) * y.twist_sign(t))
                << cf.graph.describe() << " edges " << e << "," << f << " " << t.name();
          }
      }
}

TEST(Contract, LegIsNotAnEdge) { EXPECT_THROW(contract_edge(ModularGraph::corolla(0, 3), 0), std::invalid_argument); }
