// One line per acceptance criterion; exit status 0 iff every criterion passes.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "fdhom/runner.hpp"

using namespace fdhom;

namespace {

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;

  void check(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

int failures = 0;

void criterion(int id, const std::string& title, double budget, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.notes.push_back(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget > 0 && secs > budget) o.check(false, "time budget " + std::to_string(budget) + " s");
  std::ostringstream line;
  line << "criterion " << id << ": " << (o.ok ? "PASS" : "FAIL") << "  " << title << " (" << std::fixed
       << std::setprecision(2) << secs << " s)";
  std::cout << line.str() << "\n";
  for (const auto& n : o.notes) std::cout << "    " << n << "\n";
  std::cout.flush();
  if (!o.ok) ++failures;
}

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string join(const std::vector<int>& xs) {
  std::string s;
  for (int x : xs) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

template <class K>
Matrix<K> jordan() {
  return Matrix<K>::from_rows({{K(0), K(0)}, {K(1), K(0)}}, 2);
}

// A representation over the quiver of `a` given by vertex dims and named arrow maps.
template <class K>
RepPtr<K> displayed(const AlgebraPtr<K>& a, const std::map<std::string, int>& dims,
                    const std::map<std::string, Matrix<K>>& maps) {
  const Quiver& q = a->quiver();
  std::vector<int> ds;
  for (const auto& v : q.vertices()) ds.push_back(dims.count(v) ? dims.at(v) : 0);
  std::vector<Matrix<K>> ms;
  for (int i = 0; i < q.num_arrows(); ++i) {
    const auto& ar = q.arrow(i);
    auto it = maps.find(ar.name);
    ms.push_back(it != maps.end() ? it->second : Matrix<K>(ds[ar.target], ds[ar.source]));
  }
  return make_rep(a, ds, ms);
}

template <class K>
std::vector<RepPtr<K>> module_corpus(const AlgebraPtr<K>& a, std::mt19937_64& rng) {
  std::vector<RepPtr<K>> out;
  for (int v = 0; v < a->num_vertices(); ++v) {
    out.push_back(simple(a, v));
    out.push_back(projective(a, v));
    auto om = syzygy(simple(a, v), 1);
    if (om->total_dim() > 0) out.push_back(om);
  }
  for (int t = 0; t < 2; ++t) {
    auto x = random_module(a, rng, 2);
    if (x->total_dim() > 0) out.push_back(x);
  }
  return out;
}

void criterion1() {
  criterion(1, "worked example golden run", 10, [](Outcome& o) {
    using K = F2;
    auto d = example7<K>();
    auto ls = tensor_algebra(d.lambda, opposite(d.sigma));
    auto le = enveloping(d.lambda);
    o.check(d.lambda->dim() == 4, "dim Lambda = 4");
    o.check(d.sigma->dim() == 2, "dim Sigma = 2");
    o.check(ls->dim() == 8, "dim Lambda(x)Sigma^op = 8");
    o.check(le->dim() == 16, "dim Lambda^e = 16");

    // one-sided structure; the data forces M_Sigma = Sigma^2, _Sigma N = Sigma, N_Lambda = e_1 Lambda
    auto sop = opposite(d.sigma);
    o.check(is_isomorphic(restrict_left(d.m), regular(d.lambda)).isomorphic, "_Lambda M = Lambda");
    o.check(is_isomorphic(restrict_right(d.m), direct_sum(regular(sop), regular(sop))).isomorphic, "M_Sigma = Sigma^2");
    o.check(is_isomorphic(restrict_left(d.n), regular(d.sigma)).isomorphic, "_Sigma N = Sigma");
    o.check(is_isomorphic(restrict_right(d.n), projective(opposite(d.lambda), 0)).isomorphic, "N_Lambda = e_1 Lambda");
    o.note("one-sided restrictions: M_Sigma = Sigma^2 (dim " + std::to_string(restrict_right(d.m)->total_dim()) +
           "), _Sigma N = Sigma (dim " + std::to_string(restrict_left(d.n)->total_dim()) +
           "), N_Lambda = e_1 Lambda; the text's M_Sigma = Sigma, _Sigma N = Sigma^2, N_Lambda = e_2 Lambda "
           "do not match the dimensions of the displayed M and N");

    auto j = jordan<K>();
    auto mn = tensor_over(view_bimodule(d.m), view_bimodule(d.n)).rep;
    auto shown = displayed<K>(le, {{"1|1", 2}, {"2|1", 2}}, {{"a|1", j}, {"1|aop", j}, {"b|1", j}, {"2|aop", j}});
    o.check(is_isomorphic(mn, shown).isomorphic, "M (x) N matches the displayed representation");
    auto reg_shown = displayed<K>(le, {{"1|1", 2}, {"2|1", 1}, {"2|2", 1}},
                                  {{"a|1", j},
                                   {"1|aop", j},
                                   {"b|1", Matrix<K>::from_rows({{K(1), K(0)}}, 2)},
                                   {"2|bop", Matrix<K>::from_rows({{K(1)}}, 1)}});
    auto reg = regular_bimodule(d.lambda);
    o.check(is_isomorphic(reg, reg_shown).isomorphic, "Lambda matches the displayed representation");
    auto res = resolve(reg, 1);
    std::vector<std::string> cover;
    for (int g : res->term(0).gens) cover.push_back(le->quiver().vertices()[g]);
    o.check(cover == std::vector<std::string>{"1|1", "2|2"}, "cover P(1x1) + P(2x2)");
    o.check(is_isomorphic(mn, res->syzygy(1)).isomorphic, "M (x) N = Omega^1(Lambda)");
    auto nm = tensor_over(view_bimodule(d.n), view_bimodule(d.m)).rep;
    o.check(is_isomorphic(nm, regular_bimodule(d.sigma)).isomorphic, "N (x) M = Sigma");

    auto r1 = check_semtl(d);
    o.check(r1.pass(), "semtl-check passes at level 1");
    auto d0 = d;
    d0.level = 0;
    auto r0 = check_semtl(d0);
    o.check(!r0.pass() && r0.cond[2].verdict == Verdict::Fail, "semtl-check fails (3) at level 0");

    auto report = fdh::run(fdh::parse(slurp(FDHOM_SOURCE_DIR "/fixtures/example7.fdh")));
    auto golden = nlohmann::ordered_json::parse(slurp(FDHOM_SOURCE_DIR "/fixtures/example7.golden.json"));
    o.check(report.exit_code() == 0, "fixture run exit code 0");
    o.check(report.to_json(false) == golden, "fixture report equals the golden JSON");
  });
}

void criterion2() {
  criterion(2, "Gorenstein reports", 5, [](Outcome& o) {
    using K = F2;
    auto s = gorenstein_report(dual_numbers<K>(), 10);
    auto se = gorenstein_report(enveloping(dual_numbers<K>()), 10);
    auto l = gorenstein_report(example_lambda<K>(), 10);
    o.note("Sigma " + s.verdict() + ", Sigma^e " + se.verdict() + ", Lambda " + l.verdict());
    o.check(s.verdict() == "yes(0)", "Sigma yes(0)");
    o.check(se.verdict() == "yes(0)", "Sigma^e yes(0)");
    o.check(l.verdict() == "no_evidence(10)" && !l.left_id.finite, "Lambda no_evidence(10)");
  });
}

void criterion3() {
  criterion(3, "(Fg) truncated check", 30, [](Outcome& o) {
    auto run = [&](auto tag) {
      using K = decltype(tag);
      auto s = fg_check(dual_numbers<K>(), 8, 1);
      auto l = fg_check(example_lambda<K>(), 8, 1);
      o.note(std::string(K::characteristic == 2 ? "F2" : "F101") + ": Sigma " + s.verdict_string() +
             " (generation degree " + std::to_string(s.generation_degree) + "), Lambda " + l.verdict_string());
      o.check(s.verdict_string() == "consistent-up-to(8)", "Sigma consistent-up-to(8)");
      o.check(s.generation_degree >= 0 && s.generation_degree <= 1, "Sigma generation degree <= 1");
      o.check(l.verdict == FgVerdict::Suspect && !l.precheck.gorenstein, "Lambda suspect via precheck");
    };
    run(F2{});
    run(F101{});
  });
}

void criterion4() {
  criterion(4, "Hochschild cohomology against the bar complex", 60, [](Outcome& o) {
    auto run = [&](auto tag) {
      using K = decltype(tag);
      for (const auto& a : {dual_numbers<K>(), example_lambda<K>(), nakayama2<K>(), a2<K>(), semisimple2<K>()}) {
        auto ring = hochschild(a);
        std::vector<int> dims;
        for (int n = 0; n <= 4; ++n) {
          dims.push_back(ring->group(n)->dim());
          o.check(dims.back() == bar_cochain_oracle(a, n), a->name() + " HH^" + std::to_string(n));
        }
        o.check(dims[0] == center_dim(a), a->name() + " HH^0 = center");
        o.note(std::string(K::characteristic == 2 ? "F2 " : "F101 ") + a->name() + ": " + join(dims));
      }
    };
    run(F2{});
    run(F101{});
  });
}

void criterion5() {
  criterion(5, "rotation maps on Ext(S, S)", 30, [](Outcome& o) {
    using K = F101;
    int checked = 0;
    for (const auto& a : {dual_numbers<K>(), nakayama2<K>()})
      for (int v = 0; v < a->num_vertices(); ++v) {
        auto r = resolve(simple(a, v), 0);
        for (int n = 1; n <= 8; ++n) {
          auto id = rotation_matrix(r, r, n, 0);
          o.check(id.matrix == Matrix<K>::identity(id.source->dim()), a->name() + " rho_0 = id");
          for (int i = 1; i < n; ++i) {
            o.check(rotation_matrix(r, r, n, i).bijective(), a->name() + " rho_" + std::to_string(i) + " on Ext^" + std::to_string(n));
            ++checked;
          }
        }
      }
    o.note(std::to_string(checked) + " rotation maps bijective");
  });
}

void criterion6() {
  criterion(6, "stable Hom bridge", 0, [](Outcome& o) {
    using K = F101;
    std::mt19937_64 rng(6);
    int checked = 0, skipped = 0;
    for (const auto& a : {dual_numbers<K>(), example_lambda<K>(), nakayama2<K>(), a2<K>(), a3_zero<K>(), loop_extension<K>()}) {
      auto mods = module_corpus(a, rng);
      auto reg = regular(a);
      for (const auto& c : mods) {
        auto res = resolve(c, 7);
        for (int n = 1; n <= 6; ++n) {
          if (ext(res, reg, n)->dim() != 0) {
            skipped += static_cast<int>(mods.size());
            continue;
          }
          for (const auto& m : mods) {
            auto b = sthom_to_ext(c, m, n);
            o.check(static_cast<int>(b.sthom.dim()) == b.ext->dim() && b.bijective,
                    a->name() + " n=" + std::to_string(n));
            ++checked;
          }
        }
      }
    }
    o.note(std::to_string(checked) + " (C, A, n) triples checked, " + std::to_string(skipped) + " excluded by Ext^n(C, regular) != 0");
  });
}

void criterion7() {
  criterion(7, "Ext transfer on the Gorenstein pair", 0, [](Outcome& o) {
    using K = F101;
    auto d = gamma_sigma<K>();
    auto gl = gorenstein_report(d.lambda, 10), gs = gorenstein_report(d.sigma, 10);
    std::mt19937_64 rng(7);
    int pairs = 0, mcm = 0;
    while (pairs < 20) {
      auto a = random_module(d.lambda, rng, 2), b = random_module(d.lambda, rng, 2);
      if (a->total_dim() == 0 || b->total_dim() == 0) continue;
      o.check(verify_ext_iso(d, gl, gs, a, b, 6).pass(), "random pair " + std::to_string(pairs));
      ++pairs;
    }
    while (mcm < 6) {
      auto a = syzygy(random_module(d.lambda, rng, 2), 1), b = syzygy(random_module(d.lambda, rng, 2), 1);
      if (a->total_dim() == 0 || b->total_dim() == 0) continue;
      o.check(is_mcm(a, gl) && is_mcm(b, gl), "syzygies are MCM");
      o.check(verify_ext_iso(d, gl, gs, a, b, 6, 0).pass(), "MCM pair " + std::to_string(mcm));
      ++mcm;
    }
    o.note("Gamma/Sigma at level " + std::to_string(d.level) + ", d = " + std::to_string(std::max(gl.dimension, gs.dimension)) +
           ": " + std::to_string(pairs) + " random pairs (n > d), " + std::to_string(mcm) + " MCM pairs (n >= 1), degrees <= 6");
  });
}

void criterion8() {
  criterion(8, "Hochschild transfer and the K (x) - sign", 0, [](Outcome& o) {
    using K = F101;
    auto d = gamma_sigma<K>();
    auto gl = gorenstein_report(d.lambda, 10), gs = gorenstein_report(d.sigma, 10);
    const int dd = std::max(gl.dimension, gs.dimension);
    std::vector<int> hl, hs;
    for (int n = dd + 1; n <= 6; ++n) {
      hl.push_back(hh(d.lambda, n)->dim());
      hs.push_back(hh(d.sigma, n)->dim());
    }
    o.check(hl == hs, "dim HH^n equal for d < n <= 6");
    o.note("HH^n, n = " + std::to_string(dd + 1) + "..6: Gamma " + join(hl) + ", Sigma " + join(hs));
    auto r = verify_hh_transfer(d, gl, gs, 7);
    o.check(r.pass(), "HH transfer bijective and multiplicative");
    o.note("HH transfer: " + std::to_string(r.pairs_checked) + " product pairs sampled");
    for (const auto& a : {d.lambda, d.sigma}) {
      auto g = gorenstein_report(a, 10);
      auto u = regular_bimodule(a);
      for (int i = 1; i <= 2; ++i) {
        auto t = tensor_transfer_check(a, g, u, i, std::max(2 * g.dimension, i), 6, 4, 8);
        bool sign = true, bij = true;
        for (const auto& x : t.degrees) {
          sign = sign && x.sign_ok;
          bij = bij && x.bijective;
        }
        o.check(bij, a->name() + " K (x) - bijective, i=" + std::to_string(i));
        o.check(t.multiplicative, a->name() + " K (x) - multiplicative, i=" + std::to_string(i));
        o.check(sign, a->name() + " transfer = (-1)^{in} rho_i, i=" + std::to_string(i));
        o.note(a->name() + " i=" + std::to_string(i) + ": " + std::to_string(t.degrees.size()) + " degrees, " +
               std::to_string(t.pairs_checked) + " pairs");
      }
    }
  });
}

void criterion9() {
  criterion(9, "transfer diagram and (Fg) verdicts across the pair", 0, [](Outcome& o) {
    using K = F101;
    auto d = gamma_sigma<K>();
    auto gl = gorenstein_report(d.lambda, 10), gs = gorenstein_report(d.sigma, 10);
    auto r = verify_fg_transfer_diagram(d, gl, gs, 6);
    for (const auto& x : r.degrees) {
      o.check(x.top_square && x.bottom_square && x.outer, "squares commute");
      o.check(x.f_iso && x.g_iso, "vertical maps are isomorphisms");
    }
    o.check(r.verdicts_agree, "fg verdicts agree");
    o.note("Gamma " + r.fg_lambda + ", Sigma " + r.fg_sigma + ", " + std::to_string(r.degrees.size()) + " degrees");
  });
}

void criterion10() {
  criterion(10, "level operations", 0, [](Outcome& o) {
    auto preserve = [&](const auto& d, const std::string& name) {
      bool before = check_semtl(d).pass();
      bool after = check_semtl(increase_level(d)).pass();
      o.check(!before || after, name + ": increase_level preserves a pass");
      o.note(name + ": level " + std::to_string(d.level) + " " + (before ? "pass" : "fail") + ", level " +
             std::to_string(d.level + 1) + " " + (after ? "pass" : "fail"));
    };
    preserve(example7<F2>(), "worked example (F2)");
    preserve(example7<F101>(true), "worked example, sign flipped (F101)");
    preserve(identity_data(dual_numbers<F101>()), "identity on Sigma");
    preserve(dual_numbers_twist<F101>(), "Sigma twisted by c -> -c");
    preserve(nakayama_swap<F101>(), "Nakayama swap");
    preserve(gamma_sigma_raw<F101>(), "Gamma/Sigma");
    preserve(gamma_sigma<F101>(), "Gamma/Sigma at level 1");

    auto inst = doubled_regular(a2<F101>());
    auto r = check_semt(inst.data, inst.x, inst.y);
    o.check(r.pass() && r.pd_x == 1 && r.pd_y == 1, "semt instance with pd 1");
    auto lifted = lift_semt_to_semtl(inst.data, r);
    o.check(lifted.level == 1, "lift has level 1");
    o.check(check_semtl(lifted).pass(), "lift passes semtl-check");
  });
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << "\n";
  return failures == 0 ? 0 : 1;
}
