#include <gtest/gtest.h>

#include <random>

#include "fdhom/fixtures.hpp"

using namespace fdhom;

namespace {

// Paths avoiding a set of forbidden monomials, counted by depth-first search.
int monomial_dim(int nv, const std::vector<std::pair<int, int>>& arrows, const std::vector<std::vector<int>>& zero) {
  auto forbidden = [&](const std::vector<int>& p) {
    for (const auto& z : zero) {
      if (z.size() > p.size()) continue;
      for (std::size_t s = 0; s + z.size() <= p.size(); ++s)
        if (std::equal(z.begin(), z.end(), p.begin() + s)) return true;
    }
    return false;
  };
  int count = nv;
  std::vector<std::vector<int>> frontier;
  for (int a = 0; a < static_cast<int>(arrows.size()); ++a) frontier.push_back({a});
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (auto& p : frontier) {
      if (forbidden(p)) continue;
      ++count;
      for (int a = 0; a < static_cast<int>(arrows.size()); ++a)
        if (arrows[a].first == arrows[p.back()].second) {
          auto q = p;
          q.push_back(a);
          next.push_back(q);
        }
    }
    frontier = std::move(next);
  }
  return count;
}

std::string composition(const std::vector<int>& traversal, const Quiver& q) {
  std::string s;
  for (auto it = traversal.rbegin(); it != traversal.rend(); ++it) s += (s.empty() ? "" : "*") + q.arrow(*it).name;
  return s;
}

template <class K>
AlgebraPtr<K> commutative_truncated(int n, bool anti) {
  Quiver q({"1"}, {{"x", 0, 0}, {"y", 0, 0}});
  std::string xn = "x", yn = "y";
  for (int i = 1; i < n; ++i) {
    xn += "*x";
    yn += "*y";
  }
  return build_algebra<K>("C", q,
                          {make_relation<K>(q, {{K(1), xn}}), make_relation<K>(q, {{K(1), yn}}),
                           make_relation<K>(q, {{K(1), "x*y"}, {K(anti ? 1 : -1), "y*x"}})});
}

template <class K>
void expect_associative(const AlgebraPtr<K>& a) {
  const int n = a->dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Vec<K> ei(n, K(0)), ej(n, K(0)), ek(n, K(0));
        ei[i] = K(1);
        ej[j] = K(1);
        ek[k] = K(1);
        EXPECT_EQ(a->multiply(a->multiply(ei, ej), ek), a->multiply(ei, a->multiply(ej, ek)));
      }
}

}  // namespace

TEST(Algebra, BundledDimensions) {
  EXPECT_EQ(dual_numbers<F2>()->dim(), 2);
  EXPECT_EQ(example_lambda<F2>()->dim(), 4);
  EXPECT_EQ(nakayama2<F2>()->dim(), 4);
  EXPECT_EQ(a2<F2>()->dim(), 3);
  EXPECT_EQ(a3_zero<F2>()->dim(), 5);
  EXPECT_EQ(loop_extension<F2>()->dim(), 5);
  EXPECT_EQ(semisimple2<F2>()->dim(), 2);
}

TEST(Algebra, TensorAndOppositeDimensions) {
  auto l = example_lambda<F101>();
  auto s = dual_numbers<F101>();
  EXPECT_EQ(tensor_algebra(l, opposite(s))->dim(), 8);
  EXPECT_EQ(enveloping(l)->dim(), 16);
  EXPECT_EQ(opposite(l)->dim(), 4);
  EXPECT_EQ(opposite(opposite(l)), l);
  EXPECT_TRUE(same_algebra(tensor_algebra(l, opposite(s)), tensor_algebra(l, opposite(s))));
}

TEST(Algebra, RandomMonomialAlgebrasMatchPathCount) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    int nv = 1 + static_cast<int>(rng() % 3);
    int na = 1 + static_cast<int>(rng() % 4);
    std::vector<std::string> vs;
    for (int v = 0; v < nv; ++v) vs.push_back(std::to_string(v + 1));
    std::vector<Arrow> arrows;
    std::vector<std::pair<int, int>> ends;
    for (int a = 0; a < na; ++a) {
      int s = static_cast<int>(rng() % nv), e = static_cast<int>(rng() % nv);
      arrows.push_back({"a" + std::to_string(a), s, e});
      ends.push_back({s, e});
    }
    Quiver q(vs, arrows);
    // every path of length 3 vanishes, plus random length-2 monomials
    std::vector<std::vector<int>> zero;
    for (int a = 0; a < na; ++a)
      for (int b = 0; b < na; ++b)
        for (int c = 0; c < na; ++c)
          if (ends[a].second == ends[b].first && ends[b].second == ends[c].first) zero.push_back({a, b, c});
    for (int a = 0; a < na; ++a)
      for (int b = 0; b < na; ++b)
        if (ends[a].second == ends[b].first && rng() % 3 == 0) zero.push_back({a, b});
    std::vector<Poly<F3>> rels;
    for (const auto& z : zero) rels.push_back(make_relation<F3>(q, {{F3(1), composition(z, q)}}));
    auto alg = build_algebra<F3>("R", q, rels);
    EXPECT_EQ(alg->dim(), monomial_dim(nv, ends, zero));
  }
}

TEST(Algebra, CommutativeTruncatedPolynomials) {
  // k[x,y]/(x^n, y^n) has basis x^i y^j, i, j < n
  EXPECT_EQ(commutative_truncated<F101>(2, false)->dim(), 4);
  EXPECT_EQ(commutative_truncated<F101>(3, false)->dim(), 9);
  EXPECT_EQ(commutative_truncated<Q>(3, false)->dim(), 9);
  // exterior algebra: xy = -yx with x^2 = y^2 = 0
  EXPECT_EQ(commutative_truncated<F101>(2, true)->dim(), 4);
  EXPECT_EQ(commutative_truncated<F2>(2, true)->dim(), 4);
}

TEST(Algebra, MultiplicationIsAssociativeWithUnit) {
  for (auto a : {example_lambda<F101>(), nakayama2<F101>(), loop_extension<F101>(), commutative_truncated<F101>(3, false),
                 commutative_truncated<F101>(2, true), tensor_algebra(dual_numbers<F101>(), opposite(a2<F101>()))}) {
    expect_associative(a);
    Vec<F101> one(a->dim(), F101(0));
    for (int v = 0; v < a->num_vertices(); ++v) one[a->idempotent(v)] = F101(1);
    for (int b = 0; b < a->dim(); ++b) {
      Vec<F101> e(a->dim(), F101(0));
      e[b] = F101(1);
      EXPECT_EQ(a->multiply(one, e), e);
      EXPECT_EQ(a->multiply(e, one), e);
    }
  }
}

TEST(Algebra, CompositionOrder) {
  // "b*a" means a then b, so it is a path 1 -> 2 through the loop
  auto l = example_lambda<F2>();
  int a = l->arrow_element(0), b = l->arrow_element(1);
  auto ba = l->mult(b, a);
  EXPECT_TRUE(ba.empty());  // ba = 0
  auto ab = l->mult(a, b);
  EXPECT_TRUE(ab.empty());  // not composable
}

TEST(Algebra, Errors) {
  Quiver q({"1"}, {{"x", 0, 0}});
  EXPECT_THROW(build_algebra<F2>("k[x]", q, {}, 8), NotFiniteDimensional);
  Quiver q2({"1", "2"}, {{"a", 0, 1}, {"b", 0, 1}});
  EXPECT_THROW(build_algebra<F2>("bad", q2, {make_relation<F2>(q2, {{F2(1), "a"}})}), NonAdmissible);
  Quiver q3({"1", "2"}, {{"x", 0, 0}, {"a", 0, 1}});
  EXPECT_THROW(build_algebra<F2>("bad", q3, {make_relation<F2>(q3, {{F2(1), "x*x"}, {F2(1), "a*x"}})}), NonAdmissible);
  EXPECT_THROW(make_relation<F2>(q, {{F2(1), "y*x"}}), std::invalid_argument);
  EXPECT_THROW(require_same(dual_numbers<F2>(), a2<F2>(), "test"), AlgebraMismatch);
}
