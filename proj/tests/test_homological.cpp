#include <gtest/gtest.h>

#include <random>

#include "fdhom/fixtures.hpp"

using namespace fdhom;

namespace {

using K = F3;

std::vector<AlgebraPtr<K>> corpus() {
  return {dual_numbers<K>(), example_lambda<K>(), nakayama2<K>(), a2<K>(), a3_zero<K>(), loop_extension<K>()};
}

// dim Hom(Omega^n X, Y) minus the maps that extend to P_{n-1}.
template <class F>
int ext_dim_oracle(const Resolution<F>& r, const RepPtr<F>& y, int n) {
  if (n == 0) return static_cast<int>(hom_basis(r.module, y).size());
  if (static_cast<int>(r.syzygies.size()) <= n) return 0;
  const auto& om = r.syzygies[n];
  auto hs = hom_basis(om.rep, y);
  if (hs.empty()) return 0;
  auto ext_maps = hom_basis(r.term(n - 1).rep, y);
  const std::size_t len = hs[0].coords().size();
  Matrix<F> all(len, hs.size()), restricted(len, ext_maps.size());
  for (std::size_t i = 0; i < hs.size(); ++i) all.set_col(i, hs[i].coords());
  for (std::size_t i = 0; i < ext_maps.size(); ++i) restricted.set_col(i, compose(ext_maps[i], om.inclusion).coords());
  return static_cast<int>(rank(all)) - static_cast<int>(rank(restricted));
}

int count(const std::vector<int>& gens, int v) { return static_cast<int>(std::count(gens.begin(), gens.end(), v)); }

// Global dimension as the largest projective dimension of a simple module.
template <class F>
std::optional<int> gldim_oracle(const AlgebraPtr<F>& a, int bound) {
  int g = 0;
  for (int v = 0; v < a->num_vertices(); ++v) {
    auto pd = projective_dimension(simple(a, v), bound);
    if (!pd) return std::nullopt;
    g = std::max(g, *pd);
  }
  return g;
}

template <class F>
ExtClass<F> random_class(const ExtGroupPtr<F>& g, std::mt19937_64& rng) {
  Vec<F> c(g->dim());
  for (auto& e : c) e = F::random(rng);
  return {g, c};
}

}  // namespace

TEST(Resolution, DifferentialsSquareToZero) {
  std::mt19937_64 rng(31);
  for (const auto& a : corpus()) {
    auto x = random_module(a, rng, 3);
    auto r = min_resolution(x, 5);
    for (int i = 1; i < static_cast<int>(r.diffs.size()); ++i) {
      auto dd = compose(r.diffs[i - 1], r.diffs[i]);
      for (const auto& m : dd.maps) EXPECT_TRUE(m.is_zero()) << a->name() << " degree " << i;
    }
  }
}

TEST(Resolution, ExactAndMinimal) {
  std::mt19937_64 rng(32);
  for (const auto& a : corpus()) {
    auto x = random_module(a, rng, 3);
    if (x->total_dim() == 0) continue;
    auto r = min_resolution(x, 5);
    EXPECT_EQ(cokernel(r.augmentation()).rep->total_dim(), 0);
    for (int i = 0; i + 1 < static_cast<int>(r.diffs.size()); ++i) {
      // dim P_i = dim image d_i + dim image d_{i+1}
      int here = image(r.diffs[i]).rep->total_dim(), next = image(r.diffs[i + 1]).rep->total_dim();
      EXPECT_EQ(r.term(i).rep->total_dim(), here + next) << a->name();
    }
    for (int i = 0; i <= r.length(); ++i) EXPECT_EQ(top_dims(*r.term(i).rep), top_dims(*r.syzygy(i)));
  }
}

TEST(Resolution, ProjectiveDimensions) {
  EXPECT_EQ(projective_dimension(simple(a2<K>(), 0), 6), std::optional<int>(1));
  EXPECT_EQ(projective_dimension(simple(a3_zero<K>(), 0), 6), std::optional<int>(2));
  EXPECT_EQ(projective_dimension(regular(example_lambda<K>()), 6), std::optional<int>(0));
  EXPECT_EQ(projective_dimension(simple(dual_numbers<K>(), 0), 6), std::nullopt);
}

TEST(Ext, SimpleTargetsCountGenerators) {
  std::mt19937_64 rng(33);
  for (const auto& a : corpus()) {
    auto x = random_module(a, rng, 3);
    auto r = resolve(x, 6);
    for (int n = 0; n <= 5; ++n)
      for (int v = 0; v < a->num_vertices(); ++v) {
        int expected = r->has_term(n) ? count(r->term(n).gens, v) : 0;
        EXPECT_EQ(ext(r, simple(a, v), n)->dim(), expected) << a->name() << " n=" << n << " v=" << v;
      }
  }
}

TEST(Ext, DimensionMatchesSyzygyQuotient) {
  std::mt19937_64 rng(34);
  for (const auto& a : corpus())
    for (int t = 0; t < 3; ++t) {
      auto x = random_module(a, rng, 2), y = random_module(a, rng, 2);
      auto r = resolve(x, 5);
      for (int n = 0; n <= 4; ++n) EXPECT_EQ(ext(r, y, n)->dim(), ext_dim_oracle(*r, y, n)) << a->name() << " n=" << n;
    }
}

TEST(Ext, DualNumbersHavePolynomialExtAlgebra) {
  auto s = dual_numbers<K>();
  auto sv = simple(s, 0);
  auto r = resolve(sv, 8);
  auto e1 = ext(r, sv, 1);
  ASSERT_EQ(e1->dim(), 1);
  auto eta = ExtClass<K>::basis_element(e1, 0);
  auto power = eta;
  for (int n = 2; n <= 6; ++n) {
    auto g = ext(r, sv, n);
    ASSERT_EQ(g->dim(), 1);
    power = yoneda(eta, power, g);
    EXPECT_FALSE(power.is_zero()) << "eta^" << n;
  }
}

TEST(Ext, YonedaIsAssociativeAndBilinear) {
  std::mt19937_64 rng(35);
  for (const auto& a : {nakayama2<K>(), loop_extension<K>(), example_lambda<K>()}) {
    auto x = simple(a, 0);
    auto r = resolve(x, 8);
    auto g = [&](int n) { return ext(r, x, n); };
    for (int t = 0; t < 3; ++t) {
      auto u = random_class(g(1), rng), v = random_class(g(1), rng), w = random_class(g(2), rng);
      auto lhs = yoneda(yoneda(u, v, g(2)), w, g(4));
      auto rhs = yoneda(u, yoneda(v, w, g(3)), g(4));
      EXPECT_EQ(lhs.coords, rhs.coords) << a->name();
      ExtClass<K> sum{g(1), u.coords};
      for (std::size_t i = 0; i < sum.coords.size(); ++i) sum.coords[i] += v.coords[i];
      auto s1 = yoneda(sum, w, g(3)), s2 = yoneda(u, w, g(3)), s3 = yoneda(v, w, g(3));
      for (std::size_t i = 0; i < s1.coords.size(); ++i) EXPECT_EQ(s1.coords[i], s2.coords[i] + s3.coords[i]);
    }
  }
}

TEST(Ext, IdentityIsAYonedaUnit) {
  std::mt19937_64 rng(36);
  for (const auto& a : corpus()) {
    auto x = random_module(a, rng, 2);
    if (x->total_dim() == 0) continue;
    auto r = resolve(x, 4);
    auto e0 = ext(r, x, 0);
    auto one = ExtClass<K>::from_cocycle(e0, e0->cochain(r->augmentation()));
    auto e2 = ext(r, x, 2);
    auto u = random_class(e2, rng);
    EXPECT_EQ(yoneda(one, u, e2).coords, u.coords) << a->name();
    EXPECT_EQ(yoneda(u, one, e2).coords, u.coords) << a->name();
  }
}

TEST(Rotation, BijectiveOnSelfinjectiveAlgebras) {
  for (const auto& a : {dual_numbers<K>(), nakayama2<K>()})
    for (int v = 0; v < a->num_vertices(); ++v) {
      auto u = simple(a, v);
      auto w = simple(a, a->num_vertices() - 1 - v);
      auto ru = resolve(u, 0), rw = resolve(w, 0);
      for (int n = 2; n <= 6; ++n)
        for (int i = 1; i < n; ++i) EXPECT_TRUE(rotation_matrix(ru, rw, n, i).bijective()) << a->name() << " " << n << " " << i;
    }
}

TEST(Rotation, IndexOutOfRange) {
  auto s = dual_numbers<K>();
  auto r = resolve(simple(s, 0), 4);
  auto g = ext(r, simple(s, 0), 2);
  EXPECT_THROW(rotation(ExtClass<K>::basis_element(g, 0), 2, r, g), IndexError);
}

TEST(StableHom, BridgeToExtOnSelfinjectiveAlgebras) {
  std::mt19937_64 rng(37);
  for (const auto& a : {dual_numbers<K>(), nakayama2<K>()})
    for (int t = 0; t < 3; ++t) {
      auto c = random_module(a, rng, 2), m = random_module(a, rng, 2);
      for (int n = 1; n <= 4; ++n) {
        auto b = sthom_to_ext(c, m, n);
        EXPECT_TRUE(b.bijective) << a->name() << " n=" << n;
        EXPECT_EQ(static_cast<int>(b.sthom.dim()), b.ext->dim());
      }
    }
}

TEST(StableHom, ProjectivesVanish) {
  for (const auto& a : corpus()) {
    auto p = regular(a);
    EXPECT_EQ(stable_hom(p, simple(a, 0)).dim(), 0u) << a->name();
  }
}

TEST(Gorenstein, MatchesGlobalDimensionWhenFinite) {
  for (const auto& a : {a2<K>(), a3_zero<K>(), semisimple2<K>()}) {
    auto g = gldim_oracle(a, 8);
    ASSERT_TRUE(g.has_value());
    auto r = gorenstein_report(a, 10);
    EXPECT_TRUE(r.gorenstein) << a->name();
    EXPECT_EQ(r.dimension, *g) << a->name();
  }
}

TEST(Gorenstein, BundledAlgebras) {
  auto s = gorenstein_report(dual_numbers<K>(), 10);
  EXPECT_TRUE(s.gorenstein);
  EXPECT_EQ(s.dimension, 0);
  EXPECT_EQ(gorenstein_report(nakayama2<K>(), 10).verdict(), "yes(0)");
  EXPECT_EQ(gorenstein_report(loop_extension<K>(), 10).verdict(), "yes(1)");
  EXPECT_EQ(gorenstein_report(example_lambda<K>(), 10).verdict(), "no_evidence(10)");
  EXPECT_EQ(gorenstein_report(enveloping(dual_numbers<K>()), 6).verdict(), "yes(0)");
}

TEST(Gorenstein, MaximalCohenMacaulayModules) {
  std::mt19937_64 rng(38);
  auto s = dual_numbers<K>();
  auto gs = gorenstein_report(s, 10);
  for (int t = 0; t < 4; ++t) EXPECT_TRUE(is_mcm(random_module(s, rng, 3), gs));
  // over a hereditary algebra the MCM modules are the projectives
  auto h = a2<K>();
  auto gh = gorenstein_report(h, 10);
  EXPECT_TRUE(is_mcm(regular(h), gh));
  for (int v = 0; v < h->num_vertices(); ++v) EXPECT_EQ(is_mcm(simple(h, v), gh), is_projective(simple(h, v)));
  EXPECT_THROW(is_mcm(simple(example_lambda<K>(), 0), gorenstein_report(example_lambda<K>(), 4)), NoGorensteinCertificate);
}
