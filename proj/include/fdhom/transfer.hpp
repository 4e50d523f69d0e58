#pragma once

// Maps between Ext groups induced by tensor functors, by module maps, and by
// rotation along arbitrary projective resolutions.
//
// A tensor functor F = W (x) - (x) W' is applied to the minimal resolution of
// the source, giving a resolution F(P) of F(U). The cocycle F(eta) is then
// pulled back to the minimal resolution of the target module through a
// comparison map obtained by chain lifting.

#include <optional>
#include <type_traits>

#include "fdhom/ext.hpp"
#include "fdhom/tensor.hpp"

namespace fdhom {

namespace detail {

template <class K>
BimoduleView<K> as_left_factor(const RepPtr<K>& x) {
  return x->algebra()->is_tensor() ? view_bimodule(x) : view_right(x);
}
template <class K>
BimoduleView<K> as_right_factor(const RepPtr<K>& x) {
  return x->algebra()->is_tensor() ? view_bimodule(x) : view_left(x);
}

}  // namespace detail

/// X -> W (x) X (x) W'; either side may be absent.
template <class K>
struct TensorFunctor {
  RepPtr<K> left, right;

  struct Applied {
    std::optional<TensorProduct<K>> inner, outer;
    RepPtr<K> rep;
  };

  Applied apply(const RepPtr<K>& x) const {
    Applied a;
    a.rep = x;
    std::optional<BimoduleView<K>> cur;
    if (left) {
      a.inner = tensor_over(detail::as_left_factor(left), detail::as_right_factor(x));
      a.rep = a.inner->rep;
      cur = a.inner->view;
    }
    if (right) {
      a.outer = tensor_over(cur ? *cur : detail::as_left_factor(x), detail::as_right_factor(right));
      a.rep = a.outer->rep;
    }
    return a;
  }

  Hom<K> apply(const Hom<K>& f, const Applied& s, const Applied& t) const {
    Hom<K> h = f;
    if (left) h = tensor_hom_right(*s.inner, *t.inner, h);
    if (right) h = tensor_hom_left(*s.outer, *t.outer, h);
    return h;
  }
};

/// F applied to a resolution: the complex F(P_.) -> theta(F(U)).
template <class K>
struct AppliedResolution {
  std::vector<typename TensorFunctor<K>::Applied> terms;
  RepComplex<K> complex;
};

template <class K>
AppliedResolution<K> apply_to_resolution(const TensorFunctor<K>& f, Resolution<K>& res, int n,
                                         const typename TensorFunctor<K>::Applied& fu, const Hom<K>& theta) {
  res.extend_to(n);
  AppliedResolution<K> out;
  out.complex.module = theta.tgt;
  for (int k = 0; k <= n && res.has_term(k); ++k) {
    out.terms.push_back(f.apply(res.term(k).rep));
    out.complex.terms.push_back(out.terms.back().rep);
    if (k == 0)
      out.complex.maps.push_back(compose(theta, f.apply(res.d(0), out.terms[0], fu)));
    else
      out.complex.maps.push_back(f.apply(res.d(k), out.terms[k], out.terms[k - 1]));
  }
  return out;
}

/// Comparison from the minimal resolution of `q.module` into the exact complex q.
template <class K>
ChainLift<K> compare(Resolution<K>& res, const RepComplex<K>& q, int steps) {
  res.extend_to(steps);
  std::vector<Vec<K>> aug;
  if (res.has_term(0))
    for (int g = 0; g < res.term(0).size(); ++g) aug.push_back(res.gen_images[0][g]);
  return lift_chain_map(res, 0, q, aug, steps);
}

namespace detail {

/// Cocycle on the minimal resolution of the comparison source, from a map
/// h: Q_n -> V' and the comparison c.
template <class K>
Vec<K> pull_through(const ExtGroup<K>& tgt, const Resolution<K>& res, const ChainLift<K>& c, const Hom<K>& h, int n) {
  std::vector<Vec<K>> imgs;
  if (res.has_term(n)) {
    const Proj<K>& p = res.term(n);
    for (int g = 0; g < p.size(); ++g) {
      if (static_cast<int>(c.images.size()) <= n || c.images[n].empty())
        imgs.push_back(Vec<K>(tgt.target()->dim(p.gens[g]), K(0)));
      else
        imgs.push_back(h.maps[p.gens[g]] * c.images[n][g]);
    }
  }
  return tgt.cochain(imgs);
}

}  // namespace detail

/// The map Ext^n(U, V) -> Ext^n(U', V') induced by F, with identifications
/// theta_u: F(U) -> U' and theta_v: F(V) -> V' (isomorphisms).
/// `tgt` must be a group over a resolution of U' with target V'.
template <class K>
ExtMap<K> transfer(const ExtGroupPtr<K>& src, const TensorFunctor<K>& f, const ExtGroupPtr<K>& tgt,
                   const std::type_identity_t<std::optional<Hom<K>>>& theta_u = std::nullopt,
                   const std::type_identity_t<std::optional<Hom<K>>>& theta_v = std::nullopt) {
  const int n = src->degree();
  if (tgt->degree() != n) throw std::invalid_argument("transfer: degree mismatch");
  auto fu = f.apply(src->source());
  auto fv = f.apply(src->target());
  Hom<K> tu = theta_u ? *theta_u : Hom<K>::identity(fu.rep);
  Hom<K> tv = theta_v ? *theta_v : Hom<K>::identity(fv.rep);
  if (!detail::same_module(tu.tgt, tgt->source()) || !detail::same_module(tv.tgt, tgt->target()))
    throw AlgebraMismatch("transfer: target group does not match F(U), F(V)");
  auto& res_u = *src->resolution();
  ExtMap<K> out{src, tgt, Matrix<K>(tgt->dim(), src->dim())};
  if (src->dim() == 0 || tgt->dim() == 0) return out;
  AppliedResolution<K> q = apply_to_resolution(f, res_u, n, fu, tu);
  auto& res_t = *tgt->resolution();
  ChainLift<K> c = compare(res_t, q.complex, n);
  for (int b = 0; b < src->dim(); ++b) {
    Hom<K> eta = src->hom(src->basis()[b]);
    Hom<K> h = compose(tv, f.apply(eta, q.terms[n], fv));
    out.matrix.set_col(b, tgt->class_coords(detail::pull_through(*tgt, res_t, c, h, n)));
  }
  return out;
}

/// s_*: Ext^n(U, V) -> Ext^n(U, V') for s: V -> V'. Both groups over the same resolution.
template <class K>
ExtMap<K> pushforward(const ExtGroupPtr<K>& src, const Hom<K>& s, const ExtGroupPtr<K>& tgt) {
  if (src->resolution() != tgt->resolution() || src->degree() != tgt->degree())
    throw AlgebraMismatch("pushforward: groups must share a resolution and degree");
  ExtMap<K> out{src, tgt, Matrix<K>(tgt->dim(), src->dim())};
  for (int b = 0; b < src->dim(); ++b) {
    auto imgs = src->images(src->basis()[b]);
    const Proj<K>* p = src->resolution()->has_term(src->degree()) ? &src->resolution()->term(src->degree()) : nullptr;
    for (std::size_t g = 0; g < imgs.size(); ++g) imgs[g] = s.maps[p->gens[g]] * imgs[g];
    out.matrix.set_col(b, tgt->class_coords(tgt->cochain(imgs)));
  }
  return out;
}

/// p^*: Ext^n(U', V) -> Ext^n(U, V) for p: U -> U'.
template <class K>
ExtMap<K> pullback(const ExtGroupPtr<K>& src, const Hom<K>& p, const ExtGroupPtr<K>& tgt) {
  const int n = src->degree();
  if (!detail::same_module(src->target(), tgt->target()) || tgt->degree() != n)
    throw AlgebraMismatch("pullback: target modules differ");
  ExtMap<K> out{src, tgt, Matrix<K>(tgt->dim(), src->dim())};
  if (src->dim() == 0 || tgt->dim() == 0) return out;
  auto& res_u = *tgt->resolution();
  auto& res_w = *src->resolution();
  res_u.extend_to(n);
  res_w.extend_to(n);
  std::vector<Vec<K>> f;
  for (int g = 0; g < res_u.rank(0); ++g) f.push_back(p.maps[res_u.term(0).gens[g]] * res_u.gen_images[0][g]);
  ChainLift<K> c = lift_chain_map(res_u, 0, as_complex(res_w), f, n);
  for (int b = 0; b < src->dim(); ++b) {
    Hom<K> eta = src->hom(src->basis()[b]);
    // eta o F_n, with F_n: P^U_n -> P^W_n
    std::vector<Vec<K>> imgs;
    if (res_u.has_term(n))
      for (int g = 0; g < res_u.rank(n); ++g) {
        const int v = res_u.term(n).gens[g];
        if (static_cast<int>(c.images.size()) <= n || c.images[n].empty())
          imgs.push_back(Vec<K>(tgt->target()->dim(v), K(0)));
        else
          imgs.push_back(eta.maps[v] * c.images[n][g]);
      }
    out.matrix.set_col(b, tgt->class_coords(tgt->cochain(imgs)));
  }
  return out;
}

/// Iso transport Ext^n(U, V) -> Ext^n(U', V') along isomorphisms a: U -> U' and b: V -> V'.
template <class K>
ExtMap<K> conjugate(const ExtGroupPtr<K>& src, const Hom<K>& a, const Hom<K>& b, const ExtGroupPtr<K>& tgt) {
  auto mid = ext(src->resolution(), tgt->target(), src->degree());
  auto push = pushforward(src, b, mid);
  return then(push, pullback(mid, inverse(a), tgt));
}

// ---------------------------------------------------------------------------
// Rotation along an arbitrary projective resolution Q of U: the i-th syzygy
// Omega_Q^i U is given with the corestriction epi: Q_i -> Omega_Q^i U.

template <class K>
struct SyzygyData {
  ResolutionPtr<K> minimal;  // minimal resolution of the module resolved by q
  RepComplex<K> q;
  int i = 0;
  Hom<K> epi;  // Q_i -> Omega
  RepPtr<K> omega() const { return epi.tgt; }
};

/// The truncation class in Ext^i(U, Omega_Q^i U), as a cocycle on the minimal resolution of U.
template <class K>
ExtClass<K> truncation_class(const SyzygyData<K>& s) {
  auto g = ext(s.minimal, s.omega(), s.i);
  ChainLift<K> c = compare(*s.minimal, s.q, s.i);
  Vec<K> cocycle = detail::pull_through(*g, *s.minimal, c, s.epi, s.i);
  return ExtClass<K>::from_cocycle(g, cocycle);
}

/// rho_i = (pi_i^*)^{-1} (tau_i)_*: Ext^n(U, V) -> Ext^n(Omega_Q^i U, Omega_Q^i V), for n >= 1.
/// `tgt` is a group over a resolution of Omega_Q^i U with target Omega_Q^i V.
template <class K>
ExtMap<K> rotation_along(const ExtGroupPtr<K>& src, const SyzygyData<K>& su, const SyzygyData<K>& sv,
                         const ExtGroupPtr<K>& tgt) {
  const int n = src->degree(), i = su.i;
  if (sv.i != i) throw std::invalid_argument("rotation_along: syzygy indices differ");
  if (n < 1 || i >= n) throw IndexError("rotation index must satisfy 0 <= i < n");
  if (!detail::same_module(src->source(), su.minimal->module) || !detail::same_module(src->target(), sv.minimal->module))
    throw AlgebraMismatch("rotation_along: resolutions do not match the group");
  ExtClass<K> tau = truncation_class(sv);
  ExtClass<K> pi = truncation_class(su);
  auto shifted = ext(src->resolution(), sv.omega(), n + i);
  // (pi_i^*) as a matrix Ext^n(Omega U, Omega V) -> Ext^{n+i}(U, Omega V)
  Matrix<K> pm(shifted->dim(), tgt->dim());
  for (int b = 0; b < tgt->dim(); ++b) pm.set_col(b, yoneda(ExtClass<K>::basis_element(tgt, b), pi, shifted).coords);
  Matrix<K> tm(shifted->dim(), src->dim());
  for (int b = 0; b < src->dim(); ++b) tm.set_col(b, yoneda(tau, ExtClass<K>::basis_element(src, b), shifted).coords);
  if (rank(pm) != static_cast<std::size_t>(tgt->dim()) || pm.rows() != pm.cols())
    throw std::logic_error("rotation_along: truncation map is not invertible");
  auto sol = solve_right(pm, tm);
  if (!sol) throw std::logic_error("rotation_along: image outside the shifted group");
  return {src, tgt, sol->particular};
}

/// Syzygy data of the minimal resolution itself.
template <class K>
SyzygyData<K> minimal_syzygy_data(const ResolutionPtr<K>& res, int i) {
  res->extend_to(i);
  SyzygyData<K> s;
  s.minimal = res;
  s.q = as_complex(*res);
  s.i = i;
  s.epi = res->covers.at(i);
  return s;
}

}  // namespace fdhom
