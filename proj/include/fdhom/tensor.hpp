#pragma once

// Bimodules and tensor products over an algebra.
//
// An (L, R)-bimodule is a left module over L (x) Rb with Rb = R^op. The
// component at vertex (i, j) is e_i X e_j. A plain left A-module is viewed
// as an (A, k)-bimodule and a plain right module (a left Rb-module) as a
// (k, R)-bimodule, which keeps vertex and arrow numbering unchanged.

#include "fdhom/hom.hpp"
#include "fdhom/rep.hpp"

namespace fdhom {

template <class K>
const AlgebraPtr<K>& shared_point_algebra() {
  static const AlgebraPtr<K> k = point_algebra<K>();
  return k;
}

template <class K>
bool is_point(const AlgebraPtr<K>& a) {
  return a->num_vertices() == 1 && a->dim() == 1;
}

template <class K>
struct BimoduleView {
  RepPtr<K> rep;
  AlgebraPtr<K> left;   // L
  AlgebraPtr<K> right;  // Rb, the literal second factor
  ProductIndex ix;

  int nl() const { return ix.nv_left; }
  int nr() const { return ix.nv_right; }
  int vertex(int i, int j) const { return ix.vertex(i, j); }
  int dim(int i, int j) const { return rep->dim(vertex(i, j)); }

  /// Left action of basis element b of L on the component at right vertex j.
  const Matrix<K>& act_left(int b, int j) const {
    return rep->action(b * right->dim() + right->idempotent(j));
  }
  /// Action of basis element b of Rb (a right action of R) at left vertex i.
  const Matrix<K>& act_right(int i, int b) const {
    return rep->action(left->idempotent(i) * right->dim() + b);
  }
};

template <class K>
BimoduleView<K> view_bimodule(const RepPtr<K>& x) {
  const auto& f = x->algebra()->factors();
  if (!f) throw std::invalid_argument("module over " + x->algebra()->name() + " is not a bimodule");
  return {x, f->left, f->right, product_index(*f->left, *f->right)};
}

/// x as an (A, k)-bimodule.
template <class K>
BimoduleView<K> view_left(const RepPtr<K>& x) {
  const auto& k = shared_point_algebra<K>();
  return {x, x->algebra(), k, product_index(*x->algebra(), *k)};
}

/// x, a left module over Rb, as a (k, R)-bimodule.
template <class K>
BimoduleView<K> view_right(const RepPtr<K>& x) {
  const auto& k = shared_point_algebra<K>();
  return {x, k, x->algebra(), product_index(*k, *x->algebra())};
}

/// The algebra carrying (L, Rb)-bimodules, collapsing point factors.
template <class K>
AlgebraPtr<K> carrier_algebra(const AlgebraPtr<K>& l, const AlgebraPtr<K>& rb) {
  if (is_point(rb)) return l;
  if (is_point(l)) return rb;
  return tensor_algebra(l, rb);
}

/// Regular bimodule A over A (x) A^op. Component (i, j) is e_i A e_j, with the
/// basis elements of A ordered by index.
template <class K>
struct RegularBimodule {
  RepPtr<K> rep;
  std::vector<int> pos;  // position of basis element b inside its vertex (t(b), s(b))
};

template <class K>
RegularBimodule<K> regular_bimodule_data(const AlgebraPtr<K>& a, const AlgebraPtr<K>& env) {
  const ProductIndex ix = product_index(*a, *env->factors()->right);
  const int n = a->dim();
  std::vector<int> dims(env->num_vertices(), 0);
  std::vector<int> pos(n);
  for (int b = 0; b < n; ++b) pos[b] = dims[ix.vertex(a->target(b), a->source(b))]++;
  const Quiver& q = env->quiver();
  std::vector<Matrix<K>> maps;
  for (int ar = 0; ar < q.num_arrows(); ++ar) maps.emplace_back(dims[q.arrow(ar).target], dims[q.arrow(ar).source]);
  for (int al = 0; al < ix.na_left; ++al) {
    int ea = a->arrow_element(al);
    for (int b = 0; b < n; ++b) {
      if (a->target(b) != a->quiver().arrow(al).source) continue;
      int j = a->source(b);
      auto& m = maps[ix.left_arrow(al, j)];
      for (const auto& [c, coef] : a->mult(ea, b)) m(pos[c], pos[b]) += coef;
    }
  }
  for (int be = 0; be < ix.na_right; ++be) {
    int eb = a->arrow_element(be);  // arrow be of A^op is arrow be of A reversed
    for (int b = 0; b < n; ++b) {
      if (a->source(b) != a->quiver().arrow(be).target) continue;
      int i = a->target(b);
      auto& m = maps[ix.right_arrow(i, be)];
      for (const auto& [c, coef] : a->mult(b, eb)) m(pos[c], pos[b]) += coef;
    }
  }
  return {make_rep(env, dims, maps), pos};
}

template <class K>
RepPtr<K> regular_bimodule(const AlgebraPtr<K>& a) {
  return regular_bimodule_data(a, enveloping(a)).rep;
}

/// Forget the right action: a left L-module.
template <class K>
RepPtr<K> restrict_left(const RepPtr<K>& x) {
  auto v = view_bimodule(x);
  const Quiver& q = v.left->quiver();
  std::vector<int> dims(v.nl(), 0);
  for (int i = 0; i < v.nl(); ++i)
    for (int j = 0; j < v.nr(); ++j) dims[i] += v.dim(i, j);
  std::vector<Matrix<K>> maps;
  for (int al = 0; al < q.num_arrows(); ++al) {
    Matrix<K> m(dims[q.arrow(al).target], dims[q.arrow(al).source]);
    std::size_t r = 0, c = 0;
    for (int j = 0; j < v.nr(); ++j) {
      m.set_block(r, c, x->map(v.ix.left_arrow(al, j)));
      r += v.dim(q.arrow(al).target, j);
      c += v.dim(q.arrow(al).source, j);
    }
    maps.push_back(std::move(m));
  }
  return make_rep(v.left, dims, maps);
}

/// Forget the left action: a left module over the second factor Rb.
template <class K>
RepPtr<K> restrict_right(const RepPtr<K>& x) {
  auto v = view_bimodule(x);
  const Quiver& q = v.right->quiver();
  std::vector<int> dims(v.nr(), 0);
  for (int i = 0; i < v.nl(); ++i)
    for (int j = 0; j < v.nr(); ++j) dims[j] += v.dim(i, j);
  std::vector<Matrix<K>> maps;
  for (int be = 0; be < q.num_arrows(); ++be) {
    Matrix<K> m(dims[q.arrow(be).target], dims[q.arrow(be).source]);
    std::size_t r = 0, c = 0;
    for (int i = 0; i < v.nl(); ++i) {
      m.set_block(r, c, x->map(v.ix.right_arrow(i, be)));
      r += v.dim(i, q.arrow(be).target);
      c += v.dim(i, q.arrow(be).source);
    }
    maps.push_back(std::move(m));
  }
  return make_rep(v.right, dims, maps);
}

/// X (x)_B Y together with the data needed to push maps through it.
template <class K>
struct TensorProduct {
  BimoduleView<K> x, y;
  RepPtr<K> rep;
  BimoduleView<K> view;  // rep as an (L_x, R_y)-bimodule
  // For result vertex (i, l): offset of the block X_ij (x) Y_jl in the big space.
  std::vector<std::vector<int>> block_off;
  std::vector<int> big_dim;
  std::vector<Matrix<K>> proj, lift;  // big -> quotient, quotient -> big

  int nm() const { return x.nr(); }  // vertices of the middle algebra
};

namespace detail {

template <class K>
void check_middle(const BimoduleView<K>& x, const BimoduleView<K>& y) {
  // right factor of x is B^op, left factor of y is B
  const AlgebraPtr<K>& bop = x.right;
  const AlgebraPtr<K>& b = y.left;
  bool ok = bop->opposite_of() ? same_algebra(bop->opposite_of(), b) : same_algebra(opposite(b), bop);
  if (!ok && is_point(bop) && is_point(b)) ok = true;
  if (!ok) throw AlgebraMismatch("tensor product: middle algebras " + bop->name() + " and " + b->name() + " do not match");
}

}  // namespace detail

template <class K>
TensorProduct<K> tensor_over(const BimoduleView<K>& x, const BimoduleView<K>& y) {
  detail::check_middle(x, y);
  TensorProduct<K> t;
  t.x = x;
  t.y = y;
  const int nl = x.nl(), nm = x.nr(), nr = y.nr();
  const AlgebraPtr<K>& mid = y.left;
  const Quiver& qm = mid->quiver();
  auto alg = carrier_algebra(x.left, y.right);
  const ProductIndex ix = product_index(*x.left, *y.right);
  std::vector<int> dims(nl * nr, 0);
  t.block_off.assign(nl * nr, std::vector<int>(nm + 1, 0));
  t.big_dim.assign(nl * nr, 0);
  t.proj.resize(nl * nr);
  t.lift.resize(nl * nr);
  for (int i = 0; i < nl; ++i)
    for (int l = 0; l < nr; ++l) {
      const int v = ix.vertex(i, l);
      for (int j = 0; j < nm; ++j) t.block_off[v][j + 1] = t.block_off[v][j] + x.dim(i, j) * y.dim(j, l);
      const int w = t.big_dim[v] = t.block_off[v][nm];
      // relations (x beta) (x) y - x (x) (beta y) for beta: s -> t in B,
      // x in X_{i,t}, y in Y_{s,l}
      std::vector<Vec<K>> rels;
      for (int be = 0; be < qm.num_arrows(); ++be) {
        const int s = qm.arrow(be).source, tt = qm.arrow(be).target;
        const Matrix<K>& xb = x.rep->map(x.ix.right_arrow(i, be));  // X_{i,t} -> X_{i,s}
        const Matrix<K>& yb = y.rep->map(y.ix.left_arrow(be, l));   // Y_{s,l} -> Y_{t,l}
        const int dxt = x.dim(i, tt), dxs = x.dim(i, s), dys = y.dim(s, l), dyt = y.dim(tt, l);
        for (int a = 0; a < dxt; ++a)
          for (int c = 0; c < dys; ++c) {
            Vec<K> r(w, K(0));
            for (int a2 = 0; a2 < dxs; ++a2)
              if (!xb(a2, a).is_zero()) r[t.block_off[v][s] + a2 * dys + c] += xb(a2, a);
            for (int c2 = 0; c2 < dyt; ++c2)
              if (!yb(c2, c).is_zero()) r[t.block_off[v][tt] + a * dyt + c2] -= yb(c2, c);
            if (!is_zero_vec(r)) rels.push_back(std::move(r));
          }
      }
      Subspace<K> sub = rels.empty() ? Subspace<K>(w) : Subspace<K>::span(rels, w);
      auto reps = quotient_basis(sub);
      const int c = static_cast<int>(reps.size());
      std::vector<int> free;
      for (const auto& r : reps)
        for (int k = 0; k < w; ++k)
          if (!r[k].is_zero()) free.push_back(k);
      Matrix<K> p(c, w), s(w, c);
      for (int k = 0; k < w; ++k) {
        Vec<K> e(w, K(0));
        e[k] = K(1);
        Vec<K> red = sub.reduce(e);
        for (int m = 0; m < c; ++m) p(m, k) = red[free[m]];
      }
      for (int m = 0; m < c; ++m) s(free[m], m) = K(1);
      t.proj[v] = std::move(p);
      t.lift[v] = std::move(s);
      dims[v] = c;
    }
  // outer actions
  const Quiver& qr = alg->quiver();
  std::vector<Matrix<K>> maps(qr.num_arrows());
  const Quiver& ql = x.left->quiver();
  const Quiver& qy = y.right->quiver();
  for (int al = 0; al < ql.num_arrows(); ++al)
    for (int l = 0; l < nr; ++l) {
      const int s = ql.arrow(al).source, tt = ql.arrow(al).target;
      const int vs = ix.vertex(s, l), vt = ix.vertex(tt, l);
      Matrix<K> big(t.big_dim[vt], t.big_dim[vs]);
      for (int j = 0; j < nm; ++j)
        big.set_block(t.block_off[vt][j], t.block_off[vs][j],
                      kron(x.rep->map(x.ix.left_arrow(al, j)), Matrix<K>::identity(y.dim(j, l))));
      maps[ix.left_arrow(al, l)] = t.proj[vt] * big * t.lift[vs];
    }
  for (int i = 0; i < nl; ++i)
    for (int be = 0; be < qy.num_arrows(); ++be) {
      const int s = qy.arrow(be).source, tt = qy.arrow(be).target;
      const int vs = ix.vertex(i, s), vt = ix.vertex(i, tt);
      Matrix<K> big(t.big_dim[vt], t.big_dim[vs]);
      for (int j = 0; j < nm; ++j)
        big.set_block(t.block_off[vt][j], t.block_off[vs][j],
                      kron(Matrix<K>::identity(x.dim(i, j)), y.rep->map(y.ix.right_arrow(j, be))));
      maps[ix.right_arrow(i, be)] = t.proj[vt] * big * t.lift[vs];
    }
  t.rep = make_rep(alg, dims, maps, false);
  t.view = BimoduleView<K>{t.rep, x.left, y.right, ix};
  return t;
}

/// Tensor product of bimodules; plain modules are accepted on either side.
template <class K>
TensorProduct<K> tensor_over(const RepPtr<K>& x, const RepPtr<K>& y) {
  auto vx = x->algebra()->is_tensor() ? view_bimodule(x) : view_right(x);
  auto vy = y->algebra()->is_tensor() ? view_bimodule(y) : view_left(y);
  return tensor_over(vx, vy);
}

/// g (x) f : X (x) Y -> X' (x) Y' for bimodule maps g: X -> X', f: Y -> Y'.
template <class K>
Hom<K> tensor_homs(const TensorProduct<K>& src, const TensorProduct<K>& tgt, const Hom<K>& g, const Hom<K>& f) {
  Hom<K> h = Hom<K>::zero(src.rep, tgt.rep);
  for (int i = 0; i < src.x.nl(); ++i)
    for (int l = 0; l < src.y.nr(); ++l) {
      const int v = src.view.vertex(i, l);
      Matrix<K> big(tgt.big_dim[v], src.big_dim[v]);
      for (int j = 0; j < src.nm(); ++j)
        big.set_block(tgt.block_off[v][j], src.block_off[v][j],
                      kron(g.maps[src.x.vertex(i, j)], f.maps[src.y.vertex(j, l)]));
      h.maps[v] = tgt.proj[v] * big * src.lift[v];
    }
  return h;
}

template <class K>
Hom<K> tensor_hom_right(const TensorProduct<K>& src, const TensorProduct<K>& tgt, const Hom<K>& f) {
  return tensor_homs(src, tgt, Hom<K>::identity(src.x.rep), f);
}

template <class K>
Hom<K> tensor_hom_left(const TensorProduct<K>& src, const TensorProduct<K>& tgt, const Hom<K>& g) {
  return tensor_homs(src, tgt, g, Hom<K>::identity(src.y.rep));
}

/// Multiplication B (x)_B Y -> Y for t = tensor_over(regular bimodule of B, Y).
template <class K>
Hom<K> left_unit(const TensorProduct<K>& t) {
  const AlgebraPtr<K>& b = t.y.left;
  const BimoduleView<K>& y = t.y;
  auto target_rep = y.rep;
  Hom<K> h = Hom<K>::zero(t.rep, target_rep);
  // positions of basis elements inside e_i B e_j, ordered by index
  std::vector<std::vector<int>> elems(b->num_vertices() * b->num_vertices());
  for (int e = 0; e < b->dim(); ++e) elems[b->target(e) * b->num_vertices() + b->source(e)].push_back(e);
  for (int i = 0; i < t.x.nl(); ++i)
    for (int l = 0; l < y.nr(); ++l) {
      const int v = t.view.vertex(i, l);
      const int yv = y.vertex(i, l);
      Matrix<K> big(y.dim(i, l), t.big_dim[v]);
      for (int j = 0; j < t.nm(); ++j) {
        const auto& es = elems[i * b->num_vertices() + j];
        for (std::size_t a = 0; a < es.size(); ++a) {
          const Matrix<K>& act = y.act_left(es[a], l);  // Y_{j,l} -> Y_{i,l}
          for (int c = 0; c < y.dim(j, l); ++c)
            for (int r = 0; r < y.dim(i, l); ++r) big(r, t.block_off[v][j] + a * y.dim(j, l) + c) = act(r, c);
        }
      }
      h.maps[yv] = big * t.lift[v];
    }
  return h;
}

/// Multiplication X (x)_B B -> X for t = tensor_over(X, regular bimodule of B).
template <class K>
Hom<K> right_unit(const TensorProduct<K>& t) {
  const BimoduleView<K>& x = t.x;
  const AlgebraPtr<K>& bop = x.right;
  const int nb = bop->num_vertices();
  Hom<K> h = Hom<K>::zero(t.rep, x.rep);
  // B_{j,l} = e_j B e_l holds the elements with target j and source l; the
  // matching basis element of B^op has the same index
  const AlgebraPtr<K>& b = t.y.left;
  std::vector<std::vector<int>> elems(nb * nb);
  for (int e = 0; e < b->dim(); ++e) elems[b->target(e) * nb + b->source(e)].push_back(e);
  for (int i = 0; i < x.nl(); ++i)
    for (int l = 0; l < t.y.nr(); ++l) {
      const int v = t.view.vertex(i, l);
      Matrix<K> big(x.dim(i, l), t.big_dim[v]);
      for (int j = 0; j < t.nm(); ++j) {
        const auto& es = elems[j * nb + l];
        for (int a = 0; a < x.dim(i, j); ++a)
          for (std::size_t c = 0; c < es.size(); ++c) {
            const Matrix<K>& act = x.act_right(i, es[c]);  // X_{i,j} -> X_{i,l}
            for (int r = 0; r < x.dim(i, l); ++r)
              big(r, t.block_off[v][j] + a * static_cast<int>(es.size()) + c) = act(r, a);
          }
      }
      h.maps[x.vertex(i, l)] = big * t.lift[v];
    }
  return h;
}

/// The associator (X (x) Y) (x) Z -> X (x) (Y (x) Z), with xy = X (x) Y,
/// lhs = xy (x) Z, yz = Y (x) Z and rhs = X (x) yz.
template <class K>
Hom<K> associator(const TensorProduct<K>& xy, const TensorProduct<K>& lhs, const TensorProduct<K>& yz,
                  const TensorProduct<K>& rhs) {
  const BimoduleView<K>& x = xy.x;
  const BimoduleView<K>& y = xy.y;
  const BimoduleView<K>& z = yz.y;
  Hom<K> h = Hom<K>::zero(lhs.rep, rhs.rep);
  const int nj = xy.nm(), nk = yz.nm();
  for (int i = 0; i < x.nl(); ++i)
    for (int l = 0; l < z.nr(); ++l) {
      const int v = lhs.view.vertex(i, l);
      // lhs big space: sum_k (XY)_{ik} (x) Z_kl ; expand (XY)_{ik} through its lift
      // rhs big space: sum_j X_ij (x) (YZ)_{jl}
      Matrix<K> m(rhs.big_dim[v], lhs.big_dim[v]);
      for (int k = 0; k < nk; ++k) {
        const int vik = xy.view.vertex(i, k);
        const int qik = xy.rep->dim(vik);
        const int dz = z.dim(k, l);
        for (int p = 0; p < qik; ++p)
          for (int c = 0; c < dz; ++c) {
            const int col = lhs.block_off[v][k] + p * dz + c;
            for (int j = 0; j < nj; ++j) {
              const int dy = y.dim(j, k);
              const int vjl = yz.view.vertex(j, l);
              for (int a = 0; a < x.dim(i, j); ++a)
                for (int bb = 0; bb < dy; ++bb) {
                  K coef = xy.lift[vik](xy.block_off[vik][j] + a * dy + bb, p);
                  if (coef.is_zero()) continue;
                  // y_b (x) z_c lies in block k of (YZ)_{jl}
                  const int big_yz = yz.block_off[vjl][k] + bb * dz + c;
                  const int qjl = yz.rep->dim(vjl);
                  for (int r = 0; r < qjl; ++r) {
                    K pc = yz.proj[vjl](r, big_yz);
                    if (pc.is_zero()) continue;
                    m(rhs.block_off[v][j] + a * qjl + r, col) += coef * pc;
                  }
                }
            }
          }
      }
      h.maps[v] = rhs.proj[v] * m * lhs.lift[v];
    }
  return h;
}

}  // namespace fdhom
