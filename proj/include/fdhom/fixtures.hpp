#pragma once

// Bundled algebras and bimodules: the worked example, self-injective and
// Gorenstein pairs, and stable-equivalence instances with projective defects.

#include <random>

#include "fdhom/semtl.hpp"

namespace fdhom {

/// An algebra map A -> L: vertex images and arrow images as elements of L.
template <class K>
struct AlgebraMap {
  std::vector<int> vertex;
  std::vector<Vec<K>> arrow;
};

template <class K>
AlgebraMap<K> identity_map(const AlgebraPtr<K>& a) {
  AlgebraMap<K> f;
  for (int v = 0; v < a->num_vertices(); ++v) f.vertex.push_back(v);
  for (int al = 0; al < a->quiver().num_arrows(); ++al) {
    Vec<K> e(a->dim(), K(0));
    e[a->arrow_element(al)] = K(1);
    f.arrow.push_back(e);
  }
  return f;
}

/// L as an (A, B)-bimodule with a x b = f(a) x g(b); a module over A (x) B^op.
template <class K>
RepPtr<K> twisted_bimodule(const AlgebraPtr<K>& l, const AlgebraPtr<K>& a, const AlgebraMap<K>& f,
                           const AlgebraPtr<K>& b, const AlgebraMap<K>& g) {
  auto bop = opposite(b);
  auto alg = tensor_algebra(a, bop);
  auto ix = product_index(*a, *bop);
  const int nl = l->num_vertices();
  // basis of e_x L e_y
  std::vector<std::vector<int>> block(nl * nl);
  for (int e = 0; e < l->dim(); ++e) block[l->target(e) * nl + l->source(e)].push_back(e);
  auto space = [&](int i, int j) -> const std::vector<int>& { return block[f.vertex[i] * nl + g.vertex[j]]; };
  std::vector<int> dims(alg->num_vertices());
  for (int i = 0; i < a->num_vertices(); ++i)
    for (int j = 0; j < b->num_vertices(); ++j) dims[ix.vertex(i, j)] = static_cast<int>(space(i, j).size());
  auto action = [&](const std::vector<int>& from, const std::vector<int>& to, const Vec<K>& u, bool left) {
    Matrix<K> m(to.size(), from.size());
    for (std::size_t c = 0; c < from.size(); ++c) {
      Vec<K> x(l->dim(), K(0));
      x[from[c]] = K(1);
      Vec<K> y = left ? l->multiply(u, x) : l->multiply(x, u);
      for (int e = 0; e < l->dim(); ++e) {
        if (y[e].is_zero()) continue;
        auto it = std::find(to.begin(), to.end(), e);
        if (it == to.end()) throw std::invalid_argument("twisted_bimodule: map does not respect idempotents");
        m(it - to.begin(), c) = y[e];
      }
    }
    return m;
  };
  std::vector<Matrix<K>> maps(alg->quiver().num_arrows());
  const auto& qa = a->quiver();
  const auto& qb = b->quiver();
  for (int al = 0; al < qa.num_arrows(); ++al)
    for (int j = 0; j < b->num_vertices(); ++j) {
      const auto& arr = qa.arrow(al);
      maps[ix.left_arrow(al, j)] = action(space(arr.source, j), space(arr.target, j), f.arrow[al], true);
    }
  for (int be = 0; be < qb.num_arrows(); ++be)
    for (int i = 0; i < a->num_vertices(); ++i) {
      const auto& arr = qb.arrow(be);  // x -> x g(beta) sends e_i L e_t to e_i L e_s
      maps[ix.right_arrow(i, be)] = action(space(i, arr.target), space(i, arr.source), g.arrow[be], false);
    }
  return make_rep(alg, dims, maps);
}

// ---------------------------------------------------------------------------
// Algebras.

template <class K>
AlgebraPtr<K> dual_numbers(const std::string& name = "Sigma", const std::string& vertex = "3",
                           const std::string& loop = "c") {
  Quiver q({vertex}, {{loop, 0, 0}});
  return build_algebra<K>(name, q, {make_relation<K>(q, {{K(1), loop + "*" + loop}})});
}

/// Loop a at 1 with a^2 = 0 and b: 1 -> 2 with ba = 0.
template <class K>
AlgebraPtr<K> example_lambda() {
  Quiver q({"1", "2"}, {{"a", 0, 0}, {"b", 0, 1}});
  return build_algebra<K>("Lambda", q, {make_relation<K>(q, {{K(1), "a*a"}}), make_relation<K>(q, {{K(1), "b*a"}})});
}

/// Self-injective Nakayama algebra on a 2-cycle with radical square zero.
template <class K>
AlgebraPtr<K> nakayama2(const std::string& name = "N2") {
  Quiver q({"1", "2"}, {{"a", 0, 1}, {"b", 1, 0}});
  return build_algebra<K>(name, q, {make_relation<K>(q, {{K(1), "b*a"}}), make_relation<K>(q, {{K(1), "a*b"}})});
}

/// Path algebra of 1 -> 2.
template <class K>
AlgebraPtr<K> a2(const std::string& name = "A2") {
  Quiver q({"1", "2"}, {{"a", 0, 1}});
  return build_algebra<K>(name, q, {});
}

/// 1 -> 2 -> 3 with ba = 0 (global dimension 2).
template <class K>
AlgebraPtr<K> a3_zero(const std::string& name = "A3") {
  Quiver q({"1", "2", "3"}, {{"a", 0, 1}, {"b", 1, 2}});
  return build_algebra<K>(name, q, {make_relation<K>(q, {{K(1), "b*a"}})});
}

/// Loop c at 1 with c^2 = 0 and an arrow d: 2 -> 1 (Gorenstein of dimension 1).
template <class K>
AlgebraPtr<K> loop_extension(const std::string& name = "Gamma") {
  Quiver q({"1", "2"}, {{"c", 0, 0}, {"d", 1, 0}});
  return build_algebra<K>(name, q, {make_relation<K>(q, {{K(1), "c*c"}})});
}

template <class K>
AlgebraPtr<K> semisimple2(const std::string& name = "kxk") {
  Quiver q({"1", "2"}, {});
  return build_algebra<K>(name, q, {});
}

// ---------------------------------------------------------------------------
// Bimodule data.

/// The worked example. With flip_sign the left action of the loop on N is
/// negated, which is the form in which the data works in odd characteristic.
template <class K>
SemtlData<K> example7(bool flip_sign = false) {
  auto l = example_lambda<K>();
  auto s = dual_numbers<K>();
  Matrix<K> j = Matrix<K>::from_rows({{K(0), K(0)}, {K(1), K(0)}}, 2);
  auto ls = tensor_algebra(l, opposite(s));
  auto sl = tensor_algebra(s, opposite(l));
  auto m = make_rep<K>(ls, {2, 2}, {j, j, j, j});
  auto n = make_rep<K>(sl, {2, 0}, {flip_sign ? K(-1) * j : j, Matrix<K>(0, 0), j, Matrix<K>(2, 0)});
  return {l, s, m, n, 1};
}

/// Identity data (regular bimodule on both sides) at level 0.
template <class K>
SemtlData<K> identity_data(const AlgebraPtr<K>& a) {
  auto f = identity_map(a);
  auto m = twisted_bimodule(a, a, f, a, f);
  return {a, a, m, m, 0};
}

/// A twisted by an automorphism s (with inverse t): M = A_s, N = A_t, level 0.
template <class K>
SemtlData<K> twist_data(const AlgebraPtr<K>& a, const AlgebraMap<K>& s, const AlgebraMap<K>& t) {
  auto id = identity_map(a);
  return {a, a, twisted_bimodule(a, a, id, a, s), twisted_bimodule(a, a, id, a, t), 0};
}

/// k[x]/x^2 with x -> -x.
template <class K>
SemtlData<K> dual_numbers_twist() {
  auto s = dual_numbers<K>();
  AlgebraMap<K> f = identity_map(s);
  for (auto& c : f.arrow[0]) c = -c;
  return twist_data(s, f, f);
}

/// The 2-cycle Nakayama algebra with its vertex swap.
template <class K>
SemtlData<K> nakayama_swap() {
  auto a = nakayama2<K>();
  AlgebraMap<K> f = identity_map(a);
  f.vertex = {1, 0};
  std::swap(f.arrow[0], f.arrow[1]);
  return twist_data(a, f, f);
}

/// Gamma (Gorenstein of dimension 1) against the dual numbers through the
/// inclusion Sigma -> e_1 Gamma e_1: M = Gamma e_1, N = e_1 Gamma. The raw data
/// has level 0 and fails (3); its level-1 lift is the bundled Gorenstein pair.
template <class K>
SemtlData<K> gamma_sigma_raw() {
  auto g = loop_extension<K>();
  auto s = dual_numbers<K>();
  AlgebraMap<K> inc;
  inc.vertex = {0};
  Vec<K> c(g->dim(), K(0));
  c[g->arrow_element(0)] = K(1);
  inc.arrow = {c};
  auto id = identity_map(g);
  return {g, s, twisted_bimodule(g, g, id, s, inc), twisted_bimodule(g, s, inc, g, id), 0};
}

template <class K>
SemtlData<K> gamma_sigma() {
  return increase_level(gamma_sigma_raw<K>());
}

/// Stable equivalence of Morita type with a projective-dimension defect:
/// M = A + A, N = A, so M (x) N = A + X and N (x) M = A + Y with X = Y = A
/// and pd X = gldim A.
template <class K>
struct SemtInstance {
  SemtlData<K> data;
  RepPtr<K> x, y;
};

template <class K>
SemtInstance<K> doubled_regular(const AlgebraPtr<K>& a) {
  auto d = identity_data(a);
  auto two = direct_sum(d.m, d.m);
  return {{a, a, two, d.n, 0}, d.m, d.m};
}

// ---------------------------------------------------------------------------
// Random modules: cokernels of random maps between projectives.

template <class K>
RepPtr<K> random_module(const AlgebraPtr<K>& a, std::mt19937_64& rng, int max_gens = 2) {
  std::uniform_int_distribution<int> vert(0, a->num_vertices() - 1), count(1, max_gens);
  std::vector<int> top, rel;
  for (int i = count(rng); i > 0; --i) top.push_back(vert(rng));
  for (int i = count(rng) - 1; i > 0; --i) rel.push_back(vert(rng));
  auto p0 = make_proj(a, top);
  if (rel.empty()) return p0.rep;
  auto p1 = make_proj(a, rel);
  std::vector<Vec<K>> imgs;
  for (int v : rel) {
    Vec<K> x(p0.rep->dim(v));
    for (auto& c : x) c = K::random(rng);
    imgs.push_back(x);
  }
  auto f = p1.hom_to(p0.rep, imgs);
  return cokernel(f).rep;
}

}  // namespace fdhom
