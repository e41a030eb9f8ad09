#include <gtest/gtest.h>

#include "gcx/decor/decoration.hpp"
#include "oracles.hpp"

using namespace gcx;

namespace {

oracle::Poly to_poly(const LieElement& e) {
  oracle::Poly p;
  for (const auto& [w, c] : e.words()) p[w] = c;
  return p;
}

// Column j: act(perm) applied to basis element j, in basis coordinates.
std::vector<std::vector<Rational>> act_matrix(const DecorationSystem& d, const Permutation& perm) {
  std::size_t dim = d.space_dim(0, static_cast<int>(perm.size()));
  std::vector<std::vector<Rational>> m(dim, std::vector<Rational>(dim, Rational(0)));
  for (std::size_t j = 0; j < dim; ++j)
    for (const auto& [i, c] : d.act(perm, 0, j)) m[i][j] = c;
  return m;
}

std::vector<std::vector<Rational>> multiply(const std::vector<std::vector<Rational>>& a,
                                            const std::vector<std::vector<Rational>>& b) {
  std::size_t n = a.size();
  std::vector<std::vector<Rational>> c(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

std::vector<Permutation> all_permutations(int k) {
  std::vector<Permutation> out;
  auto p = identity_permutation(static_cast<std::size_t>(k));
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::map<int, int> as_map(const Permutation& p) {
  std::map<int, int> m;
  for (std::size_t i = 0; i < p.size(); ++i) m[static_cast<int>(i)] = p[i];
  return m;
}

// Oracle trace of a relabeling on Lie((k)): express σ·b_j in the basis {b_i} by a dense solve over cyclic words.
Rational oracle_trace(int k, const Permutation& sigma) {
  auto flags = identity_permutation(static_cast<std::size_t>(k));
  std::size_t dim = lie_dimension(k);
  std::vector<oracle::Poly> basis;
  for (std::size_t i = 0; i < dim; ++i) basis.push_back(to_poly(LieElement::basis(flags, i)));
  Rational tr = 0;
  for (std::size_t j = 0; j < dim; ++j) {
    auto image = oracle::relabel(basis[j], as_map(sigma));
    auto fam = basis;
    fam.push_back(image);
    auto rows = oracle::as_rows(fam);
    std::size_t words = rows[0].size();
    std::vector<std::vector<oracle::Q>> a(words, std::vector<oracle::Q>(dim));
    std::vector<oracle::Q> b(words);
    for (std::size_t w = 0; w < words; ++w) {
      for (std::size_t i = 0; i < dim; ++i) a[w][i] = rows[i][w];
      b[w] = rows[dim][w];
    }
    std::vector<oracle::Q> x;
    EXPECT_TRUE(oracle::dense_solve(a, b, x));
    tr += x[j];
  }
  return tr;
}

}  // namespace

TEST(Commutative, Dimensions) {
  auto com = com_system(false), bar = com_system(true);
  EXPECT_EQ(com->space_dim(1, 3), 0u);
  EXPECT_EQ(bar->space_dim(2, 1), 1u);
  EXPECT_EQ(com->space_dim(0, 3), 1u);
  auto act = bar->act({2, 0, 1}, 1, 0);
  ASSERT_EQ(act.size(), 1u);
  EXPECT_EQ(act[0].second, 1);
}

TEST(Lie, DimensionIsFactorial) {
  auto lie = lie_system();
  EXPECT_EQ(lie->space_dim(0, 3), 1u);
  EXPECT_EQ(lie->space_dim(0, 4), 2u);
  EXPECT_EQ(lie->space_dim(0, 5), 6u);
  EXPECT_EQ(lie->space_dim(1, 4), 0u);
}

TEST(Lie, BasisSpansTheBracketSpan) {
  // rank of all left-normed brackets = (k-2)! and the basis lies in their span
  for (int k = 3; k <= 6; ++k) {
    auto flags = identity_permutation(static_cast<std::size_t>(k));
    auto brackets = oracle::all_left_normed(flags);
    std::size_t r = oracle::dense_rank(oracle::as_rows(brackets));
    EXPECT_EQ(r, oracle::factorial(k - 2));
    auto fam = brackets;
    std::vector<oracle::Poly> basis;
    for (std::size_t i = 0; i < lie_dimension(k); ++i) basis.push_back(to_poly(LieElement::basis(flags, i)));
    fam.insert(fam.end(), basis.begin(), basis.end());
    EXPECT_EQ(oracle::dense_rank(oracle::as_rows(fam)), r);
    EXPECT_EQ(oracle::dense_rank(oracle::as_rows(basis)), r);
  }
}

TEST(Lie, BasisElementMatchesBracketExpansion) {
  // element index 0 on flags 0..4 is 0 ⊗ [[[1,2],3],4]
  auto e = LieElement::basis({0, 1, 2, 3, 4}, 0);
  EXPECT_EQ(to_poly(e), oracle::cyclic(0, oracle::left_normed({1, 2, 3, 4})));
}

TEST(Lie, AntisymmetryAndCycle) {
  auto lie = lie_system();
  auto swapped = lie->act({0, 2, 1}, 0, 0);
  ASSERT_EQ(swapped.size(), 1u);
  EXPECT_EQ(swapped[0].second, -1);
  auto x = LieElement::basis({0, 1, 2}, 0);
  std::map<int, int> cyc{{0, 1}, {1, 2}, {2, 0}};
  auto once = lie_act(cyc, x);
  EXPECT_TRUE(once == x || once.coeffs[0] == -1);
  EXPECT_EQ(lie_act(cyc, lie_act(cyc, once)), x);
  EXPECT_EQ(lie_act({{0, 0}, {1, 1}, {2, 2}}, x), x);
}

TEST(Lie, RepresentationPropertyExhaustive) {
  auto lie = lie_system();
  for (int k = 3; k <= 6; ++k) {
    Permutation swap01 = identity_permutation(static_cast<std::size_t>(k));
    std::swap(swap01[0], swap01[1]);
    Permutation cycle(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) cycle[static_cast<std::size_t>(i)] = (i + 1) % k;
    for (const auto& sigma : all_permutations(k)) {
      auto ms = act_matrix(*lie, sigma);
      for (const auto& tau : {swap01, cycle})
        EXPECT_EQ(act_matrix(*lie, compose(sigma, tau)), multiply(ms, act_matrix(*lie, tau))) << "k=" << k;
    }
  }
}

TEST(Lie, CharacterOnValenceFour) {
  auto lie = lie_system();
  // Lie((4)) is the two-dimensional irreducible of S_4
  auto expected_by_cycle_type = [](const Permutation& p) {
    std::vector<int> lens;
    std::vector<char> seen(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (seen[i]) continue;
      int len = 0;
      for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
        seen[j] = 1;
        ++len;
      }
      lens.push_back(len);
    }
    std::sort(lens.begin(), lens.end());
    if (lens == std::vector<int>{1, 1, 1, 1}) return 2;
    if (lens == std::vector<int>{1, 1, 2}) return 0;
    if (lens == std::vector<int>{2, 2}) return 2;
    if (lens == std::vector<int>{1, 3}) return -1;
    return 0;
  };
  for (const auto& sigma : all_permutations(4)) {
    auto m = act_matrix(*lie, sigma);
    Rational tr = m[0][0] + m[1][1];
    EXPECT_EQ(tr, oracle_trace(4, sigma));
    EXPECT_EQ(tr, expected_by_cycle_type(sigma));
  }
}

TEST(Lie, SignIsotypicDimensionMatchesOracleProjector) {
  auto lie = lie_system();
  for (int k = 3; k <= 6; ++k) {
    std::size_t dim = lie_dimension(k);
    std::vector<std::vector<oracle::Q>> proj(dim, std::vector<oracle::Q>(dim, 0));
    // oracle projector: images of basis words under Σ sgn(σ) σ, as word vectors
    auto flags = identity_permutation(static_cast<std::size_t>(k));
    std::vector<oracle::Poly> images(dim);
    for (const auto& sigma : all_permutations(k)) {
      auto m = act_matrix(*lie, sigma);
      int sg = permutation_sign(sigma);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) proj[i][j] += sg * m[i][j];
      for (std::size_t j = 0; j < dim; ++j)
        for (const auto& [w, c] : oracle::relabel(to_poly(LieElement::basis(flags, j)), as_map(sigma)))
          images[j][w] += sg * c;
    }
    for (auto& p : images) std::erase_if(p, [](const auto& kv) { return kv.second == 0; });
    std::size_t oracle_rank = 0;
    {
      std::vector<oracle::Poly> nonzero;
      for (const auto& p : images)
        if (!p.empty()) nonzero.push_back(p);
      oracle_rank = nonzero.empty() ? 0 : oracle::dense_rank(oracle::as_rows(nonzero));
    }
    EXPECT_EQ(oracle::dense_rank(proj), oracle_rank) << "k=" << k;
    if (k == 3) EXPECT_EQ(oracle_rank, 1u);
  }
}

TEST(Lie, JacobiFromThreeGraftings) {
  auto a = LieElement::basis({0, 1, 10}, 0);
  auto b = LieElement::basis({2, 3, 11}, 0);
  auto t = lie_contract(a, 10, b, 11);
  std::map<int, int> rot{{0, 0}, {1, 2}, {2, 3}, {3, 1}};
  auto t1 = lie_act(rot, t);
  auto t2 = lie_act(rot, t1);
  auto sum = LieElement::zero({0, 1, 2, 3});
  for (const auto* x : {&t, &t1, &t2})
    for (std::size_t i = 0; i < sum.coeffs.size(); ++i) sum.coeffs[i] += x->coeffs[i];
  EXPECT_FALSE(t.is_zero());
  EXPECT_TRUE(sum.is_zero());
}

TEST(Lie, ContractionMatchesOperadicSubstitution) {
  // x = 0 ⊗ [1, 5] grafted at 5 onto y = 5 ⊗ [[2, 3], 4]  gives  0 ⊗ [1, [[2,3],4]]
  auto x = lie_from_words({0, 1, 5}, oracle::cyclic(0, oracle::bracket(oracle::letter(1), oracle::letter(5))));
  auto y = lie_from_words({2, 3, 4, 5}, oracle::cyclic(5, oracle::left_normed({2, 3, 4})));
  auto got = lie_contract(x, 5, y, 5);
  auto want = oracle::cyclic(0, oracle::bracket(oracle::letter(1), oracle::left_normed({2, 3, 4})));
  EXPECT_EQ(to_poly(got), want);
  // output of y against an input of x versus the reverse order of arguments
  EXPECT_EQ(lie_contract(y, 5, x, 5), got);
}

TEST(Lie, ContractionOutputToOutputViaCyclicAction) {
  // x = 0 ⊗ [1,2] is also 1 ⊗ [2,0]; grafting its output 0 onto the output 3 of y = 3 ⊗ [4,5]
  // is the substitution 0 := [4,5] in 1 ⊗ [2,0]
  auto x = LieElement::basis({0, 1, 2}, 0);
  auto y = LieElement::basis({3, 4, 5}, 0);
  auto direct = lie_contract(x, 0, y, 3);
  auto want = oracle::cyclic(1, oracle::bracket(oracle::letter(2), oracle::bracket(oracle::letter(4), oracle::letter(5))));
  EXPECT_EQ(to_poly(direct), want);
  // renaming flag 0 to 9 turns it into an input of x; the composite is unchanged
  auto x_in = lie_act({{0, 9}, {1, 1}, {2, 2}}, x);
  EXPECT_EQ(lie_contract(x_in, 9, y, 3), direct);
}

TEST(Lie, ContractionIsAssociative) {
  auto a = LieElement::basis({0, 1, 10}, 0);
  auto b = LieElement::basis({2, 11, 12}, 0);
  auto c = LieElement::basis({3, 4, 13}, 0);
  auto left = lie_contract(lie_contract(a, 10, b, 11), 12, c, 13);
  auto right = lie_contract(a, 10, lie_contract(b, 12, c, 13), 11);
  EXPECT_EQ(left, right);
}

TEST(Lie, ContractionIsEquivariant) {
  auto a = LieElement::basis({0, 1, 2, 10}, 1);
  auto b = LieElement::basis({3, 4, 11}, 0);
  auto glued_then_acted = lie_act({{0, 4}, {1, 0}, {2, 3}, {3, 1}, {4, 2}}, lie_contract(a, 10, b, 11));
  std::map<int, int> sa{{0, 4}, {1, 0}, {2, 3}, {10, 10}}, sb{{3, 1}, {4, 2}, {11, 11}};
  auto acted_then_glued = lie_contract(lie_act(sa, a), 10, lie_act(sb, b), 11);
  EXPECT_EQ(glued_then_acted, acted_then_glued);
}

TEST(Lie, ContractOnSameWordRejected) {
  auto a = LieElement::basis({0, 1, 2}, 0);
  EXPECT_THROW(lie_contract(a, 0, a, 1), std::invalid_argument);
}

TEST(Lie, SystemContractComposeMatchesElementContraction) {
  auto lie = lie_system();
  for (std::size_t x1 = 0; x1 < 2; ++x1)
    for (std::size_t x2 = 0; x2 < 2; ++x2) {
      auto v = lie->contract_compose(0, 4, x1, 3, 0, 4, x2, 0);
      auto a = LieElement::basis({0, 1, 2, 3}, x1);
      auto b = LieElement::basis({4, 5, 6, 7}, x2);
      auto c = lie_contract(a, 3, b, 4);
      std::map<int, int> renum{{0, 0}, {1, 1}, {2, 2}, {5, 3}, {6, 4}, {7, 5}};
      auto want = lie_act(renum, c);
      std::vector<Rational> dense(want.coeffs.size(), Rational(0));
      for (const auto& [i, q] : v) dense[i] = q;
      EXPECT_EQ(dense, want.coeffs);
    }
  EXPECT_TRUE(lie->contract_compose(1, 3, 0, 0, 0, 3, 0, 0).empty());
}
