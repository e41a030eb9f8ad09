#include <gtest/gtest.h>

#include "gcx/grt/grt.hpp"
#include "oracles.hpp"

using namespace gcx;

namespace {

GraphVector negate(GraphVector x) {
  for (auto& [k, c] : x) c = -c;
  return x;
}

}  // namespace

TEST(Polygon, SumIsNonzeroAlternatingCycle) {
  for (int s : {3, 5}) {
    auto p = polygon_sum(s);
    ASSERT_FALSE(p.empty());
    // one class per dihedral orbit of labelings, coefficient ±2s
    EXPECT_EQ(p.size(), oracle::factorial(s) / (2 * static_cast<std::size_t>(s))) << s;
    for (const auto& [enc, c] : p) EXPECT_EQ(abs(c), 2 * s);
    EXPECT_EQ(swap_leg_labels(p, 1, 2, polygon_twist()), negate(p));
    EXPECT_EQ(swap_leg_labels(p, 1, s, polygon_twist()), negate(p));
    EXPECT_TRUE(contract_vector(p, LegMode::Labeled, polygon_twist(), {}, false).empty()) << s;
  }
  EXPECT_THROW(polygon_sum(4), std::invalid_argument);
  EXPECT_THROW(polygon_sum(1), std::invalid_argument);
}

TEST(Nu, Shape) {
  for (auto [r, s] : std::vector<std::pair<int, int>>{{5, 3}, {7, 5}, {7, 3}}) {
    auto nu = build_nu(r, s);
    EXPECT_EQ(nu.n, r + s - 2);
    EXPECT_EQ(nu.bidegree, std::make_pair(r + 1, s - 1));
    EXPECT_EQ(nu.graph.num_edges(), r + 1);
    EXPECT_EQ(nu.graph.num_vertices(), r + 1);
    EXPECT_EQ(nu.graph.num_legs(), nu.n);
    EXPECT_EQ(nu.graph.total_genus(), 2);
    EXPECT_EQ(nu.graph.genus[0], 1);
    EXPECT_EQ(nu.graph.valence(0), s);
    EXPECT_TRUE(nu.graph.is_stable());
  }
  EXPECT_THROW(build_nu(3, 3), std::invalid_argument);
  EXPECT_THROW(build_nu(6, 3), std::invalid_argument);
  EXPECT_THROW(build_nu(5, 1), std::invalid_argument);
}

TEST(Nu, InterleavedSign) {
  EXPECT_EQ(interleaved_sign("EEL"), 1);
  EXPECT_EQ(interleaved_sign("LE"), -1);
  EXPECT_EQ(interleaved_sign("LELE"), -1);
  EXPECT_EQ(interleaved_sign("LLE"), 1);
}

TEST(Nu, DifferentialCoefficients) {
  EXPECT_EQ(d_nu(5, 3).coefficients, (std::map<int, Rational>{{0, Rational(-1)}}));
  EXPECT_EQ(d_nu(7, 3).coefficients, (std::map<int, Rational>{{0, Rational(-1)}}));
  EXPECT_EQ(d_nu(7, 5).coefficients, (std::map<int, Rational>{{0, Rational(-6)}, {1, Rational(-6)}}));
}

TEST(Nu, PropositionChain) {
  for (auto [r, s] : std::vector<std::pair<int, int>>{{5, 3}, {7, 3}, {7, 5}, {9, 3}}) {
    auto rep = verify_proposition_chain(r, s);
    EXPECT_TRUE(rep.coefficients_match) << r << "," << s;
    EXPECT_TRUE(rep.primitive_identity) << r << "," << s;
    EXPECT_TRUE(rep.cohomologous) << r << "," << s;
    EXPECT_EQ(rep.expected, -Rational(static_cast<unsigned long>(oracle::factorial(s - 2))));
  }
}

TEST(Nu, PrimitiveIdentityAtSevenFive) {
  // d([0,3,6]^1 + [1,2,6]^1) = -[0,4,6]^0 + [0,3,7]^0 + [1,2,7]^0
  auto p = nu_primitive(7, 5);
  ASSERT_EQ(p.size(), 2u);
  ThetaChain want{normalize(0, 4, 6, 0, Rational(-1)), normalize(0, 3, 7, 0), normalize(1, 2, 7, 0)};
  EXPECT_TRUE(same_chain(theta_diff(p), want));
}

TEST(Nu, ConventionsFlipOnlyTheOverallSign) {
  auto base = d_nu(7, 5).coefficients;
  for (const auto& conv : all_nu_conventions()) {
    auto c = d_nu(7, 5, conv).coefficients;
    ASSERT_EQ(c.size(), base.size()) << conv.name();
    int sign = c.begin()->second == base.begin()->second ? 1 : -1;
    for (const auto& [q, v] : c) EXPECT_EQ(v, base.at(q) * sign) << conv.name();
  }
}

TEST(Bracket, Pairs) {
  EXPECT_EQ(bracket_pairs(6), (std::vector<std::pair<int, int>>{{5, 3}}));
  EXPECT_EQ(bracket_pairs(10), (std::vector<std::pair<int, int>>{{9, 3}, {7, 5}}));
  EXPECT_TRUE(bracket_pairs(4).empty());
}

TEST(Bracket, DimensionsMatchTheCounts) {
  for (int n = 4; n <= 14; n += 2) {
    auto rep = bracket_report(n);
    EXPECT_EQ(rep.span_dim, oracle::bracket_span(n)) << n;
    EXPECT_EQ(rep.relation_dim, oracle::alternating_gamma(n)) << n;
    EXPECT_EQ(rep.quotient_dim, oracle::theta_top(n)) << n;
    EXPECT_TRUE(rep.pass()) << n;
    EXPECT_EQ(rep.relations_rho.size(), rep.relations_nu.size());
  }
  EXPECT_THROW(bracket_report(7), std::invalid_argument);
}

TEST(Identity, SmallN) {
  auto cal = calibrate_lie_degrees();
  auto r4 = dimension_identity(4, build_sector(Sector::ComBar, 2, 4, true), build_sector(Sector::Lie, 2, 4, true), cal);
  EXPECT_EQ(r4.delta_term, 0u);
  EXPECT_EQ(r4.gamma_term, 0u);
  EXPECT_TRUE(r4.pass());
  auto r6 = dimension_identity(6, build_sector(Sector::ComBar, 2, 6, true), build_sector(Sector::Lie, 2, 6, true), cal);
  EXPECT_EQ(r6.delta_term, oracle::theta_top(6));
  EXPECT_EQ(r6.gamma_term, oracle::alternating_gamma(6));
  EXPECT_TRUE(r6.pass());
  EXPECT_THROW(dimension_identity(5, {}, {}, cal), std::invalid_argument);
}
