#include <gtest/gtest.h>

#include <random>

#include "fdhom/fixtures.hpp"

using namespace fdhom;

namespace {

std::string verdicts(const SemtlReport& r) {
  std::string s;
  for (const auto& c : r.cond) s += to_string(c.verdict).substr(0, 1);
  return s;
}

}  // namespace

TEST(Semtl, WorkedExampleInCharacteristicTwo) {
  auto d = example7<F2>();
  auto r = check_semtl(d);
  EXPECT_EQ(r.level, 1);
  EXPECT_TRUE(r.pass()) << verdicts(r);
  d.level = 0;
  auto r0 = check_semtl(d);
  EXPECT_EQ(verdicts(r0), "ppfp");
  EXPECT_FALSE(r0.cond[2].removed.empty() && r0.cond[2].lhs_dims == r0.cond[2].rhs_dims);
}

TEST(Semtl, WorkedExampleInOddCharacteristic) {
  EXPECT_FALSE(check_semtl(example7<F101>()).pass());
  auto r = check_semtl(example7<F101>(true));
  EXPECT_TRUE(r.pass()) << verdicts(r);
}

TEST(Semtl, TensorProductAgreesWithSyzygy) {
  auto d = example7<F2>();
  auto mn = tensor_over(view_bimodule(d.m), view_bimodule(d.n)).rep;
  auto om = syzygy(regular_bimodule(d.lambda), 1);
  EXPECT_EQ(mn->dims(), (std::vector<int>{2, 0, 2, 0}));
  EXPECT_TRUE(is_isomorphic(strip_projectives(mn).rep, strip_projectives(om).rep).isomorphic);
}

TEST(Semtl, Level0DataAndTheirLifts) {
  std::vector<SemtlData<F3>> data = {identity_data(a2<F3>()), identity_data(dual_numbers<F3>()),
                                     dual_numbers_twist<F3>(), nakayama_swap<F3>()};
  for (const auto& d : data) {
    auto r = check_semtl(d);
    EXPECT_TRUE(r.pass()) << d.lambda->name() << " " << verdicts(r);
    auto up = increase_level(d);
    EXPECT_EQ(up.level, d.level + 1);
    EXPECT_TRUE(check_semtl(up).pass()) << d.lambda->name() << " lifted";
  }
}

TEST(Semtl, GammaPairNeedsLevelOne) {
  auto raw = gamma_sigma_raw<F101>();
  auto r = check_semtl(raw);
  EXPECT_EQ(r.cond[2].verdict, Verdict::Fail);
  auto d = gamma_sigma<F101>();
  EXPECT_EQ(d.level, 1);
  EXPECT_TRUE(check_semtl(d).pass()) << verdicts(check_semtl(d));
}

TEST(Semtl, RejectsBimodulesOverWrongAlgebras) {
  auto d = example7<F2>();
  std::swap(d.m, d.n);
  EXPECT_THROW(check_semtl(d), AlgebraMismatch);
}

TEST(Semt, DoubledRegularLiftsToItsGlobalDimension) {
  for (auto [alg, gl] : {std::pair{a2<F3>(), 1}, std::pair{a3_zero<F3>(), 2}}) {
    auto inst = doubled_regular(alg);
    auto r = check_semt(inst.data, inst.x, inst.y);
    ASSERT_TRUE(r.pass()) << alg->name();
    EXPECT_EQ(r.pd_x, gl);
    EXPECT_EQ(r.pd_y, gl);
    auto lifted = lift_semt_to_semtl(inst.data, r);
    EXPECT_EQ(lifted.level, gl);
    EXPECT_TRUE(check_semtl(lifted).pass()) << alg->name();
  }
}

TEST(Semt, WrongComplementFails) {
  auto inst = doubled_regular(a2<F3>());
  auto r = check_semt(inst.data, simple(enveloping(a2<F3>()), 0), inst.y);
  EXPECT_FALSE(r.pass());
  EXPECT_THROW(lift_semt_to_semtl(inst.data, r), HypothesisFailed);
}

TEST(ExtTransfer, GammaPairOnRandomModules) {
  using K = F101;
  auto d = gamma_sigma<K>();
  auto gl = gorenstein_report(d.lambda, 10), gs = gorenstein_report(d.sigma, 10);
  ASSERT_TRUE(gl.gorenstein && gs.gorenstein);
  std::mt19937_64 rng(41);
  for (int t = 0; t < 6; ++t) {
    auto a = random_module(d.lambda, rng, 2), b = random_module(d.lambda, rng, 2);
    auto r = verify_ext_iso(d, gl, gs, a, b, 5);
    EXPECT_TRUE(r.pass());
    for (const auto& c : r.degrees) {
      EXPECT_EQ(c.lhs_dim, ext(a, b, c.degree)->dim());
      if (c.in_window) EXPECT_EQ(c.lhs_dim, c.rhs_dim);
    }
  }
}

TEST(ExtTransfer, TwistedAlgebrasInEveryDegree) {
  using K = F3;
  std::mt19937_64 rng(42);
  for (const auto& d0 : {nakayama_swap<K>(), dual_numbers_twist<K>()}) {
    auto d = increase_level(d0);
    auto g = gorenstein_report(d.lambda, 10);
    auto a = random_module(d.lambda, rng, 2), b = random_module(d.lambda, rng, 2);
    auto r = verify_ext_iso(d, g, g, a, b, 4);
    EXPECT_TRUE(r.pass()) << d.lambda->name();
  }
}

TEST(ExtTransfer, NeedsGorensteinAlgebras) {
  auto d = example7<F2>();
  auto gl = gorenstein_report(d.lambda, 6), gs = gorenstein_report(d.sigma, 6);
  EXPECT_FALSE(gl.gorenstein);
  EXPECT_THROW(verify_ext_iso(d, gl, gs, simple(d.lambda, 0), simple(d.lambda, 0), 3), NoGorensteinCertificate);
  EXPECT_THROW(verify_hh_transfer(d, gl, gs, 3), NoGorensteinCertificate);
  EXPECT_THROW(verify_fg_transfer_diagram(d, gl, gs, 3), NoGorensteinCertificate);
}

TEST(HhTransfer, GammaPairIsMultiplicative) {
  using K = F101;
  auto d = gamma_sigma<K>();
  auto gl = gorenstein_report(d.lambda, 10), gs = gorenstein_report(d.sigma, 10);
  auto r = verify_hh_transfer(d, gl, gs, 7);
  EXPECT_TRUE(r.pass());
  EXPECT_GT(r.pairs_checked, 0);
  for (const auto& x : r.degrees)
    if (x.in_window) EXPECT_EQ(x.dim_lambda, x.dim_sigma) << x.degree;
}

TEST(HhTransfer, TwistedNakayamaAlgebra) {
  using K = F3;
  auto d = increase_level(nakayama_swap<K>());
  auto g = gorenstein_report(d.lambda, 10);
  EXPECT_TRUE(verify_hh_transfer(d, g, g, 5).pass());
  EXPECT_THROW(verify_hh_transfer(nakayama_swap<K>(), g, g, 5), HypothesisFailed);
}

TEST(FgDiagram, GammaPairCommutesAndVerdictsAgree) {
  using K = F101;
  auto d = gamma_sigma<K>();
  auto gl = gorenstein_report(d.lambda, 10), gs = gorenstein_report(d.sigma, 10);
  auto r = verify_fg_transfer_diagram(d, gl, gs, 5);
  EXPECT_TRUE(r.pass());
  EXPECT_TRUE(r.verdicts_agree);
  EXPECT_EQ(r.fg_lambda.substr(0, 16), "consistent-up-to");
}
