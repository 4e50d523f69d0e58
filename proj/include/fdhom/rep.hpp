#pragma once

// Modules as quiver representations and the morphisms between them.
//
// A left A-module X stores one vector space X_v per vertex and one matrix per
// arrow (dims[target] x dims[source]). Global coordinates concatenate the
// vertex spaces in vertex order.

#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "fdhom/algebra.hpp"
#include "fdhom/matrix.hpp"

namespace fdhom {

template <class K>
class Rep;

template <class K>
using RepPtr = std::shared_ptr<const Rep<K>>;

template <class K>
class Rep {
 public:
  Rep(AlgebraPtr<K> alg, std::vector<int> dims, std::vector<Matrix<K>> maps, bool validate = true)
      : alg_(std::move(alg)), dims_(std::move(dims)), maps_(std::move(maps)) {
    const Quiver& q = alg_->quiver();
    if (static_cast<int>(dims_.size()) != q.num_vertices()) throw DimensionMismatch("dimension vector length");
    if (static_cast<int>(maps_.size()) != q.num_arrows()) throw DimensionMismatch("arrow map count");
    for (int a = 0; a < q.num_arrows(); ++a) {
      const auto& m = maps_[a];
      if (m.rows() != static_cast<std::size_t>(dims_[q.arrow(a).target]) ||
          m.cols() != static_cast<std::size_t>(dims_[q.arrow(a).source]))
        throw DimensionMismatch("matrix of arrow " + q.arrow(a).name + " has the wrong shape");
    }
    offsets_.assign(dims_.size() + 1, 0);
    std::partial_sum(dims_.begin(), dims_.end(), offsets_.begin() + 1);
    actions_.reserve(alg_->dim());
    for (int b = 0; b < alg_->dim(); ++b) actions_.push_back(word_matrix(alg_->basis()[b]));
    if (validate) check_relations();
  }

  const AlgebraPtr<K>& algebra() const { return alg_; }
  const std::vector<int>& dims() const { return dims_; }
  int dim(int v) const { return dims_[v]; }
  int total_dim() const { return offsets_.back(); }
  int offset(int v) const { return offsets_[v]; }
  const Matrix<K>& map(int a) const { return maps_[a]; }
  const std::vector<Matrix<K>>& maps() const { return maps_; }
  bool is_zero() const { return total_dim() == 0; }

  /// Action of basis element b: X_{source b} -> X_{target b}.
  const Matrix<K>& action(int b) const { return actions_[b]; }

  Matrix<K> word_matrix(const Word& w) const {
    Matrix<K> m = Matrix<K>::identity(dims_[w.source]);
    for (int a : w.arrows) m = maps_[a] * m;
    return m;
  }

  /// Action of basis element b on a global vector.
  Vec<K> act(int b, const Vec<K>& x) const {
    Vec<K> out(total_dim(), K(0));
    int s = alg_->source(b), t = alg_->target(b);
    Vec<K> xs(x.begin() + offsets_[s], x.begin() + offsets_[s + 1]);
    Vec<K> y = actions_[b] * xs;
    std::copy(y.begin(), y.end(), out.begin() + offsets_[t]);
    return out;
  }

  void check_relations() const {
    for (const auto& r : alg_->relations()) {
      if (r.is_zero()) continue;
      const Word& w0 = r.terms().begin()->first;
      Matrix<K> sum(dims_[w0.target], dims_[w0.source]);
      for (const auto& [w, c] : r.terms()) sum = sum + c * word_matrix(w);
      if (!sum.is_zero())
        throw std::invalid_argument("representation violates relation " + poly_to_string(r, alg_->quiver()));
    }
  }

  Vec<K> vertex_part(const Vec<K>& global, int v) const {
    return Vec<K>(global.begin() + offsets_[v], global.begin() + offsets_[v + 1]);
  }
  Vec<K> embed(int v, const Vec<K>& local) const {
    Vec<K> g(total_dim(), K(0));
    std::copy(local.begin(), local.end(), g.begin() + offsets_[v]);
    return g;
  }

 private:
  AlgebraPtr<K> alg_;
  std::vector<int> dims_;
  std::vector<Matrix<K>> maps_;
  std::vector<int> offsets_;
  std::vector<Matrix<K>> actions_;
};

template <class K>
RepPtr<K> make_rep(AlgebraPtr<K> alg, std::vector<int> dims, std::vector<Matrix<K>> maps, bool validate = true) {
  return std::make_shared<const Rep<K>>(std::move(alg), std::move(dims), std::move(maps), validate);
}

template <class K>
RepPtr<K> zero_rep(const AlgebraPtr<K>& alg) {
  std::vector<Matrix<K>> maps;
  for (int a = 0; a < alg->quiver().num_arrows(); ++a) maps.emplace_back(0, 0);
  return make_rep(alg, std::vector<int>(alg->num_vertices(), 0), maps, false);
}

/// Module homomorphism, one matrix per vertex (dims_target x dims_source).
template <class K>
struct Hom {
  RepPtr<K> src, tgt;
  std::vector<Matrix<K>> maps;

  static Hom zero(RepPtr<K> s, RepPtr<K> t) {
    Hom h{s, t, {}};
    for (int v = 0; v < s->algebra()->num_vertices(); ++v) h.maps.emplace_back(t->dim(v), s->dim(v));
    return h;
  }
  static Hom identity(RepPtr<K> x) {
    Hom h{x, x, {}};
    for (int v = 0; v < x->algebra()->num_vertices(); ++v) h.maps.push_back(Matrix<K>::identity(x->dim(v)));
    return h;
  }

  bool is_zero() const {
    for (const auto& m : maps)
      if (!m.is_zero()) return false;
    return true;
  }

  /// Flattened coordinates (vertex blocks, row-major).
  Vec<K> coords() const {
    Vec<K> c;
    for (const auto& m : maps) c.insert(c.end(), m.data().begin(), m.data().end());
    return c;
  }
  static Hom from_coords(RepPtr<K> s, RepPtr<K> t, const Vec<K>& c) {
    Hom h{s, t, {}};
    std::size_t pos = 0;
    for (int v = 0; v < s->algebra()->num_vertices(); ++v) {
      std::size_t r = t->dim(v), k = s->dim(v);
      h.maps.emplace_back(r, k, Vec<K>(c.begin() + pos, c.begin() + pos + r * k));
      pos += r * k;
    }
    return h;
  }

  Matrix<K> global() const {
    Matrix<K> g(tgt->total_dim(), src->total_dim());
    for (std::size_t v = 0; v < maps.size(); ++v) g.set_block(tgt->offset(v), src->offset(v), maps[v]);
    return g;
  }
  static Hom from_global(RepPtr<K> s, RepPtr<K> t, const Matrix<K>& g) {
    Hom h{s, t, {}};
    for (int v = 0; v < s->algebra()->num_vertices(); ++v)
      h.maps.push_back(g.block(t->offset(v), s->offset(v), t->dim(v), s->dim(v)));
    return h;
  }

  Vec<K> apply(const Vec<K>& global_x) const { return global() * global_x; }

  bool is_valid() const {
    const Quiver& q = src->algebra()->quiver();
    for (int a = 0; a < q.num_arrows(); ++a) {
      const auto& ar = q.arrow(a);
      if (!(maps[ar.target] * src->map(a) == tgt->map(a) * maps[ar.source])) return false;
    }
    return true;
  }

  bool is_iso() const {
    for (const auto& m : maps) {
      if (m.rows() != m.cols() || rank(m) != m.rows()) return false;
    }
    return true;
  }

  friend bool operator==(const Hom& f, const Hom& g) { return f.maps == g.maps; }
};

template <class K>
Hom<K> compose(const Hom<K>& g, const Hom<K>& f) {
  Hom<K> h{f.src, g.tgt, {}};
  for (std::size_t v = 0; v < f.maps.size(); ++v) h.maps.push_back(g.maps[v] * f.maps[v]);
  return h;
}

template <class K>
Hom<K> operator+(const Hom<K>& f, const Hom<K>& g) {
  Hom<K> h{f.src, f.tgt, {}};
  for (std::size_t v = 0; v < f.maps.size(); ++v) h.maps.push_back(f.maps[v] + g.maps[v]);
  return h;
}

template <class K>
Hom<K> operator-(const Hom<K>& f, const Hom<K>& g) {
  Hom<K> h{f.src, f.tgt, {}};
  for (std::size_t v = 0; v < f.maps.size(); ++v) h.maps.push_back(f.maps[v] - g.maps[v]);
  return h;
}

template <class K>
Hom<K> operator*(const K& c, const Hom<K>& f) {
  Hom<K> h{f.src, f.tgt, {}};
  for (const auto& m : f.maps) h.maps.push_back(c * m);
  return h;
}

template <class K>
Hom<K> inverse(const Hom<K>& f) {
  Hom<K> h{f.tgt, f.src, {}};
  for (const auto& m : f.maps) {
    auto inv = inverse(m);
    if (!inv) throw std::invalid_argument("homomorphism is not invertible");
    h.maps.push_back(*inv);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Sub- and quotient representations.

template <class K>
struct SubRep {
  RepPtr<K> rep;
  Hom<K> inclusion;
};

template <class K>
struct QuotientRep {
  RepPtr<K> rep;
  Hom<K> projection;
  std::vector<Matrix<K>> section;  // per vertex, a right inverse of the projection
};

/// Subrepresentation spanned vertexwise by the columns of `bases` (each of full column rank).
template <class K>
SubRep<K> subrep(const RepPtr<K>& y, const std::vector<Matrix<K>>& bases) {
  const Quiver& q = y->algebra()->quiver();
  std::vector<int> dims;
  for (const auto& b : bases) dims.push_back(static_cast<int>(b.cols()));
  std::vector<Matrix<K>> maps;
  for (int a = 0; a < q.num_arrows(); ++a) {
    const auto& ar = q.arrow(a);
    Matrix<K> img = y->map(a) * bases[ar.source];
    auto sol = solve_right(bases[ar.target], img);
    if (!sol) throw std::invalid_argument("subspace family is not a subrepresentation");
    maps.push_back(sol->particular);
  }
  auto rep = make_rep(y->algebra(), dims, maps, false);
  return {rep, Hom<K>{rep, y, bases}};
}

/// Quotient of y by the subspaces spanned by the columns of `gens` per vertex.
template <class K>
QuotientRep<K> quotient(const RepPtr<K>& y, const std::vector<Matrix<K>>& gens) {
  const Quiver& q = y->algebra()->quiver();
  const int nv = q.num_vertices();
  std::vector<Subspace<K>> subs;
  std::vector<Matrix<K>> proj, sect;
  std::vector<int> dims;
  for (int v = 0; v < nv; ++v) {
    auto s = gens[v].cols() ? Subspace<K>::span_cols(gens[v]) : Subspace<K>(y->dim(v));
    auto reps = quotient_basis(s);
    const std::size_t n = y->dim(v), c = reps.size();
    std::vector<std::size_t> free;
    for (const auto& r : reps)
      for (std::size_t i = 0; i < n; ++i)
        if (!r[i].is_zero()) free.push_back(i);
    Matrix<K> p(c, n), sec(n, c);
    for (std::size_t j = 0; j < n; ++j) {
      Vec<K> e(n, K(0));
      e[j] = K(1);
      Vec<K> red = s.reduce(e);
      for (std::size_t i = 0; i < c; ++i) p(i, j) = red[free[i]];
    }
    for (std::size_t i = 0; i < c; ++i) sec(free[i], i) = K(1);
    dims.push_back(static_cast<int>(c));
    proj.push_back(std::move(p));
    sect.push_back(std::move(sec));
    subs.push_back(std::move(s));
  }
  std::vector<Matrix<K>> maps;
  for (int a = 0; a < q.num_arrows(); ++a) {
    const auto& ar = q.arrow(a);
    maps.push_back(proj[ar.target] * y->map(a) * sect[ar.source]);
  }
  auto rep = make_rep(y->algebra(), dims, maps, false);
  return {rep, Hom<K>{y, rep, proj}, sect};
}

template <class K>
SubRep<K> kernel(const Hom<K>& f) {
  std::vector<Matrix<K>> bases;
  for (const auto& m : f.maps) bases.push_back(nullspace(m));
  return subrep(f.src, bases);
}

template <class K>
QuotientRep<K> cokernel(const Hom<K>& f) {
  return quotient(f.tgt, f.maps);
}

/// Image of f as a subrepresentation of its target.
template <class K>
SubRep<K> image(const Hom<K>& f) {
  std::vector<Matrix<K>> bases;
  for (const auto& m : f.maps) {
    auto s = Subspace<K>::span_cols(m);
    bases.push_back(s.basis().transpose());
    if (s.dim() == 0) bases.back() = Matrix<K>(m.rows(), 0);
  }
  return subrep(f.tgt, bases);
}

// ---------------------------------------------------------------------------
// Direct sums.

template <class K>
struct DirectSum {
  RepPtr<K> rep;
  std::vector<Hom<K>> inclusions, projections;
};

template <class K>
DirectSum<K> direct_sum(const std::vector<RepPtr<K>>& parts, const AlgebraPtr<K>& alg) {
  const Quiver& q = alg->quiver();
  const int nv = q.num_vertices();
  std::vector<int> dims(nv, 0);
  for (const auto& p : parts) {
    require_same(p->algebra(), alg, "direct sum");
    for (int v = 0; v < nv; ++v) dims[v] += p->dim(v);
  }
  std::vector<Matrix<K>> maps;
  for (int a = 0; a < q.num_arrows(); ++a) {
    Matrix<K> m(dims[q.arrow(a).target], dims[q.arrow(a).source]);
    std::size_t r = 0, c = 0;
    for (const auto& p : parts) {
      m.set_block(r, c, p->map(a));
      r += p->dim(q.arrow(a).target);
      c += p->dim(q.arrow(a).source);
    }
    maps.push_back(std::move(m));
  }
  DirectSum<K> out;
  out.rep = make_rep(alg, dims, maps, false);
  std::vector<int> off(nv, 0);
  for (const auto& p : parts) {
    Hom<K> inc = Hom<K>::zero(p, out.rep), pr = Hom<K>::zero(out.rep, p);
    for (int v = 0; v < nv; ++v) {
      for (int i = 0; i < p->dim(v); ++i) {
        inc.maps[v](off[v] + i, i) = K(1);
        pr.maps[v](i, off[v] + i) = K(1);
      }
      off[v] += p->dim(v);
    }
    out.inclusions.push_back(std::move(inc));
    out.projections.push_back(std::move(pr));
  }
  return out;
}

template <class K>
RepPtr<K> direct_sum(const RepPtr<K>& x, const RepPtr<K>& y) {
  return direct_sum<K>({x, y}, x->algebra()).rep;
}

/// Hom between direct sums given by a block matrix of Homs: blocks[i][j]: src_j -> tgt_i.
template <class K>
Hom<K> block_hom(const DirectSum<K>& src, const DirectSum<K>& tgt, const std::vector<std::vector<Hom<K>>>& blocks) {
  Hom<K> h = Hom<K>::zero(src.rep, tgt.rep);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = 0; j < blocks[i].size(); ++j)
      h = h + compose(tgt.inclusions[i], compose(blocks[i][j], src.projections[j]));
  return h;
}

// ---------------------------------------------------------------------------
// Simples, projectives, regular module, duality.

template <class K>
RepPtr<K> simple(const AlgebraPtr<K>& alg, int v) {
  if (v < 0 || v >= alg->num_vertices()) throw std::out_of_range("unknown vertex");
  std::vector<int> dims(alg->num_vertices(), 0);
  dims[v] = 1;
  std::vector<Matrix<K>> maps;
  for (const auto& ar : alg->quiver().arrows()) maps.emplace_back(dims[ar.target], dims[ar.source]);
  return make_rep(alg, dims, maps);
}

template <class K>
RepPtr<K> semisimple_top(const AlgebraPtr<K>& alg) {
  std::vector<RepPtr<K>> parts;
  for (int v = 0; v < alg->num_vertices(); ++v) parts.push_back(simple(alg, v));
  return direct_sum(parts, alg).rep;
}

/// The projective module with one free generator per entry of `gens` (a vertex),
/// i.e. the direct sum of the A e_v. Basis element b of generator k (with
/// source(b) = gens[k]) sits at vertex target(b), position pos[k][b].
template <class K>
struct Proj {
  AlgebraPtr<K> alg;
  std::vector<int> gens;
  RepPtr<K> rep;
  std::vector<std::vector<int>> pos;

  int size() const { return static_cast<int>(gens.size()); }

  /// Global coordinates of the element b placed in generator k.
  Vec<K> element(int k, int b) const { return rep->embed(alg->target(b), unit(rep->dim(alg->target(b)), pos[k][b])); }
  Vec<K> generator(int k) const { return element(k, alg->idempotent(gens[k])); }

  /// Image of generator k under f: an element of f.tgt at vertex gens[k].
  Vec<K> image_of_generator(const Hom<K>& f, int k) const {
    return f.maps[gens[k]].col(pos[k][alg->idempotent(gens[k])]);
  }

  /// The map sending generator k to images[k] (a vector of y at vertex gens[k]).
  Hom<K> hom_to(const RepPtr<K>& y, const std::vector<Vec<K>>& images) const {
    Hom<K> h = Hom<K>::zero(rep, y);
    for (int k = 0; k < size(); ++k)
      for (int b = 0; b < alg->dim(); ++b) {
        if (pos[k][b] < 0) continue;
        h.maps[alg->target(b)].set_col(pos[k][b], y->action(b) * images[k]);
      }
    return h;
  }

 private:
  static Vec<K> unit(int n, int i) {
    Vec<K> e(n, K(0));
    e[i] = K(1);
    return e;
  }
};

template <class K>
Proj<K> make_proj(const AlgebraPtr<K>& alg, std::vector<int> gens) {
  Proj<K> p;
  p.alg = alg;
  p.gens = std::move(gens);
  const int nv = alg->num_vertices();
  std::vector<int> dims(nv, 0);
  p.pos.assign(p.gens.size(), std::vector<int>(alg->dim(), -1));
  for (std::size_t k = 0; k < p.gens.size(); ++k)
    for (int b = 0; b < alg->dim(); ++b)
      if (alg->source(b) == p.gens[k]) p.pos[k][b] = dims[alg->target(b)]++;
  const Quiver& q = alg->quiver();
  std::vector<Matrix<K>> maps;
  for (int a = 0; a < q.num_arrows(); ++a) {
    const auto& ar = q.arrow(a);
    Matrix<K> m(dims[ar.target], dims[ar.source]);
    int ea = alg->arrow_element(a);
    for (std::size_t k = 0; k < p.gens.size(); ++k)
      for (int b = 0; b < alg->dim(); ++b) {
        if (p.pos[k][b] < 0 || alg->target(b) != ar.source) continue;
        for (const auto& [c, coef] : alg->mult(ea, b)) m(p.pos[k][c], p.pos[k][b]) += coef;
      }
    maps.push_back(std::move(m));
  }
  p.rep = make_rep(alg, dims, maps, false);
  return p;
}

template <class K>
RepPtr<K> projective(const AlgebraPtr<K>& alg, int v) {
  if (v < 0 || v >= alg->num_vertices()) throw std::out_of_range("unknown vertex");
  return make_proj(alg, {v}).rep;
}

/// The left regular module A = sum of the A e_v.
template <class K>
Proj<K> regular_proj(const AlgebraPtr<K>& alg) {
  std::vector<int> gens(alg->num_vertices());
  std::iota(gens.begin(), gens.end(), 0);
  return make_proj(alg, gens);
}

template <class K>
RepPtr<K> regular(const AlgebraPtr<K>& alg) {
  return regular_proj(alg).rep;
}

/// k-dual, a module over the opposite algebra.
template <class K>
RepPtr<K> dual(const RepPtr<K>& x) {
  auto op = opposite(x->algebra());
  std::vector<Matrix<K>> maps;
  for (const auto& m : x->maps()) maps.push_back(m.transpose());
  return make_rep(op, x->dims(), maps, false);
}

template <class K>
Hom<K> dual(const Hom<K>& f, const RepPtr<K>& dual_src, const RepPtr<K>& dual_tgt) {
  // f: X -> Y gives f*: DY -> DX
  Hom<K> h{dual_tgt, dual_src, {}};
  for (const auto& m : f.maps) h.maps.push_back(m.transpose());
  return h;
}

// ---------------------------------------------------------------------------
// Radical, top and projective covers.

/// Per vertex, the radical rad X_v = sum of images of arrows into v, as column bases.
template <class K>
std::vector<Matrix<K>> radical_gens(const Rep<K>& x) {
  const Quiver& q = x.algebra()->quiver();
  std::vector<Matrix<K>> gens;
  for (int v = 0; v < q.num_vertices(); ++v) gens.emplace_back(x.dim(v), 0);
  for (int a = 0; a < q.num_arrows(); ++a) {
    int t = q.arrow(a).target;
    gens[t] = hstack(gens[t], x.map(a));
  }
  return gens;
}

template <class K>
SubRep<K> radical(const RepPtr<K>& x) {
  std::vector<Matrix<K>> bases;
  for (const auto& g : radical_gens(*x)) {
    auto s = Subspace<K>::span_cols(g);
    bases.push_back(s.dim() ? s.basis().transpose() : Matrix<K>(g.rows(), 0));
  }
  return subrep(x, bases);
}

template <class K>
std::vector<int> top_dims(const Rep<K>& x) {
  std::vector<int> d;
  auto rad = radical_gens(x);
  for (int v = 0; v < x.algebra()->num_vertices(); ++v) d.push_back(x.dim(v) - static_cast<int>(rank(rad[v])));
  return d;
}

template <class K>
struct Cover {
  Proj<K> proj;
  Hom<K> epi;
  std::vector<Vec<K>> gen_images;  // element of X at vertex proj.gens[k]
};

/// Projective cover through a complement of the radical: the generators are
/// the standard vectors at the non-pivot positions of rad X_v.
template <class K>
Cover<K> projective_cover(const RepPtr<K>& x) {
  const AlgebraPtr<K>& alg = x->algebra();
  auto rad = radical_gens(*x);
  std::vector<int> gens;
  std::vector<Vec<K>> images;
  for (int v = 0; v < alg->num_vertices(); ++v) {
    auto s = rad[v].cols() ? Subspace<K>::span_cols(rad[v]) : Subspace<K>(x->dim(v));
    for (auto& e : quotient_basis(s)) {
      gens.push_back(v);
      images.push_back(std::move(e));
    }
  }
  Cover<K> c{make_proj(alg, gens), {}, images};
  c.epi = c.proj.hom_to(x, images);
  return c;
}

template <class K>
bool is_projective(const RepPtr<K>& x) {
  auto c = projective_cover(x);
  return c.proj.rep->total_dim() == x->total_dim();
}

}  // namespace fdhom
