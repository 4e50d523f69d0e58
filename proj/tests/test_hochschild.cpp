#include <gtest/gtest.h>

#include "fdhom/fixtures.hpp"

using namespace fdhom;

namespace {

template <class K>
AlgebraPtr<K> truncated(int m) {
  Quiver q({"1"}, {{"x", 0, 0}});
  std::string w = "x";
  for (int i = 1; i < m; ++i) w += "*x";
  return build_algebra<K>("k[x]/x^" + std::to_string(m), q, {make_relation<K>(q, {{K(1), w}})});
}

// k[x]/x^m has the 2-periodic bimodule resolution with maps x(x)1 - 1(x)x and
// sum x^i (x) x^{m-1-i}; applying Hom gives A -0-> A -m x^{m-1}-> A -0-> ...
int truncated_hh_oracle(int m, int p, int n) {
  if (n == 0) return m;
  const bool m_vanishes = p != 0 && m % p == 0;
  return m_vanishes ? m : m - 1;
}

template <class K>
class HochschildFields : public ::testing::Test {};
using Fields = ::testing::Types<F2, F3, F101>;
TYPED_TEST_SUITE(HochschildFields, Fields);

}  // namespace

TYPED_TEST(HochschildFields, TruncatedPolynomialsMatchPeriodicComplex) {
  using K = TypeParam;
  for (int m = 2; m <= 3; ++m) {
    auto a = truncated<K>(m);
    auto ring = hochschild(a);
    for (int n = 0; n <= 5; ++n)
      EXPECT_EQ(ring->group(n)->dim(), truncated_hh_oracle(m, static_cast<int>(K::characteristic), n)) << "m=" << m << " n=" << n;
  }
}

TYPED_TEST(HochschildFields, DegreeZeroIsTheCenter) {
  using K = TypeParam;
  for (const auto& a : {dual_numbers<K>(), example_lambda<K>(), nakayama2<K>(), a2<K>(), a3_zero<K>(), loop_extension<K>()})
    EXPECT_EQ(hh(a, 0)->dim(), center_dim(a)) << a->name();
}

TEST(Hochschild, AgreesWithBarComplex) {
  using K = F3;
  for (const auto& a : {dual_numbers<K>(), example_lambda<K>(), nakayama2<K>(), a2<K>(), loop_extension<K>()}) {
    auto ring = hochschild(a);
    for (int n = 0; n <= 3; ++n) EXPECT_EQ(ring->group(n)->dim(), bar_cochain_oracle(a, n)) << a->name() << " n=" << n;
  }
}

TEST(Hochschild, HereditaryAlgebrasOfTrees) {
  auto ring = hochschild(a2<F101>());
  EXPECT_EQ(ring->group(0)->dim(), 1);
  for (int n = 1; n <= 3; ++n) EXPECT_EQ(ring->group(n)->dim(), 0);
}

TEST(Hochschild, WorkedExampleAlgebra) {
  auto ring = hochschild(example_lambda<F2>());
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(ring->group(n)->dim(), 1) << n;
}

TEST(Hochschild, GradedCommutativeInLowDegrees) {
  using K = F3;
  auto ring = hochschild(nakayama2<K>());
  auto s = graded_slice(*ring, 0, 4);
  EXPECT_TRUE(s.associative);
  for (int p = 1; p <= 2; ++p)
    for (int q = 1; p + q <= 4; ++q) {
      auto gp = ring->group(p), gq = ring->group(q);
      for (int i = 0; i < gp->dim(); ++i)
        for (int j = 0; j < gq->dim(); ++j) {
          auto x = ExtClass<K>::basis_element(gp, i), y = ExtClass<K>::basis_element(gq, j);
          auto xy = ring->multiply(x, y), yx = ring->multiply(y, x);
          K sign = (p * q) % 2 ? K(-1) : K(1);
          for (std::size_t c = 0; c < xy.coords.size(); ++c) EXPECT_EQ(xy.coords[c], sign * yx.coords[c]);
        }
    }
}

TEST(Fg, DualNumbersAreFinitelyGenerated) {
  auto r2 = fg_check(dual_numbers<F2>(), 6, 1);
  EXPECT_EQ(r2.verdict, FgVerdict::ConsistentUpTo);
  EXPECT_EQ(r2.generation_degree, 0);
  auto r3 = fg_check(dual_numbers<F3>(), 6, 1);
  EXPECT_EQ(r3.verdict, FgVerdict::ConsistentUpTo);
  EXPECT_EQ(r3.verdict_string(), "consistent-up-to(6)");
  for (int d : r3.ext_dims) EXPECT_EQ(d, 1);
}

TEST(Fg, NonGorensteinAlgebraIsSuspect) {
  auto r = fg_check(example_lambda<F2>(), 4, 1);
  EXPECT_EQ(r.verdict, FgVerdict::Suspect);
  EXPECT_FALSE(r.precheck.gorenstein);
}

TEST(Fg, GeneratorCountsAndArguments) {
  auto r = fg_check(nakayama2<F3>(), 6, 1);
  ASSERT_EQ(r.hh_dims.size(), 7u);
  for (std::size_t n = 0; n < r.hh_dims.size(); ++n) EXPECT_LE(r.hh_generators[n], r.hh_dims[n]);
  EXPECT_THROW(fg_check(nakayama2<F3>(), 1, 0), std::invalid_argument);
  EXPECT_THROW(fg_check(nakayama2<F3>(), 4, 4), std::invalid_argument);
}

TEST(TensorTransfer, SyzygyOfRegularActsByRotationWithSign) {
  for (const auto& a : {dual_numbers<F3>(), nakayama2<F3>()}) {
    auto g = gorenstein_report(a, 10);
    auto u = regular_bimodule(a);
    for (int i = 0; i <= 2; ++i) {
      auto r = tensor_transfer_check(a, g, u, i, std::max(i, 1), 5, 2);
      EXPECT_TRUE(r.ok()) << a->name() << " i=" << i;
      for (const auto& d : r.degrees) {
        EXPECT_TRUE(d.bijective) << a->name() << " i=" << i << " n=" << d.degree;
        EXPECT_TRUE(d.sign_ok) << a->name() << " i=" << i << " n=" << d.degree;
      }
    }
  }
}

TEST(TensorTransfer, Hypotheses) {
  auto l = example_lambda<F2>();
  EXPECT_THROW(tensor_transfer_check(l, gorenstein_report(l, 4), regular_bimodule(l), 1, 2, 4), NoGorensteinCertificate);
  auto s = dual_numbers<F3>();
  auto g = gorenstein_report(s, 10);
  EXPECT_THROW(tensor_transfer_check(s, g, regular_bimodule(s), 2, 1, 4), HypothesisFailed);
  auto se = enveloping(s);
  EXPECT_THROW(tensor_transfer_check(s, g, simple(se, 0), 0, 1, 3), HypothesisFailed);
}
