#pragma once

// Finite-dimensional bound quiver algebras with an explicit basis and
// structure constants.
//
// Product convention: x*y is "y first, then x" (composition order), so for
// paths it is the traversal concatenation y ++ x.

#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fdhom/errors.hpp"
#include "fdhom/groebner.hpp"
#include "fdhom/matrix.hpp"
#include "fdhom/quiver.hpp"

namespace fdhom {

template <class K>
class Algebra;

template <class K>
using AlgebraPtr = std::shared_ptr<const Algebra<K>>;

/// Sparse coordinate vector over the basis of an algebra.
template <class K>
using Sparse = std::vector<std::pair<int, K>>;

/// Factor data kept by tensor algebras A (x) B.
template <class K>
struct TensorFactors {
  AlgebraPtr<K> left;   // A
  AlgebraPtr<K> right;  // B, the literal second factor (often an opposite)
};

template <class K>
class Algebra {
 public:
  const std::string& name() const { return name_; }
  const Quiver& quiver() const { return quiver_; }
  const std::vector<Poly<K>>& relations() const { return relations_; }
  const std::vector<Word>& basis() const { return basis_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int num_vertices() const { return quiver_.num_vertices(); }

  int idempotent(int v) const { return idem_.at(v); }
  int arrow_element(int a) const { return arrow_elem_.at(a); }
  int source(int b) const { return basis_[b].source; }
  int target(int b) const { return basis_[b].target; }

  /// Structure constants of basis(i) * basis(j).
  const Sparse<K>& mult(int i, int j) const { return mult_[static_cast<std::size_t>(i) * dim() + j]; }

  Vec<K> multiply(const Vec<K>& x, const Vec<K>& y) const {
    Vec<K> out(dim(), K(0));
    for (int i = 0; i < dim(); ++i) {
      if (x[i].is_zero()) continue;
      for (int j = 0; j < dim(); ++j) {
        if (y[j].is_zero()) continue;
        K c = x[i] * y[j];
        for (const auto& [k, v] : mult(i, j)) out[k] += c * v;
      }
    }
    return out;
  }

  /// Coordinates of an arbitrary path (traversal order).
  Vec<K> word_coords(const Word& w) const {
    Vec<K> cur(dim(), K(0));
    cur[idempotent(w.source)] = K(1);
    for (int a : w.arrows) {
      Vec<K> e(dim(), K(0));
      e[arrow_element(a)] = K(1);
      cur = multiply(e, cur);
    }
    return cur;
  }

  Vec<K> poly_coords(const Poly<K>& p) const {
    Vec<K> out(dim(), K(0));
    for (const auto& [w, c] : p.terms()) {
      Vec<K> v = word_coords(w);
      for (int i = 0; i < dim(); ++i) out[i] += c * v[i];
    }
    return out;
  }

  const std::optional<TensorFactors<K>>& factors() const { return factors_; }
  bool is_tensor() const { return factors_.has_value(); }

  /// The algebra this one is the opposite of, if it was built that way.
  const AlgebraPtr<K>& opposite_of() const { return op_of_; }

  std::string basis_label(int b) const { return labels_.at(b); }

  /// Structural identity: same quiver shape, basis words and structure
  /// constants. Names are ignored.
  friend bool same_algebra(const Algebra& a, const Algebra& b) {
    if (&a == &b) return true;
    if (a.num_vertices() != b.num_vertices() || a.quiver_.num_arrows() != b.quiver_.num_arrows()) return false;
    for (int i = 0; i < a.quiver_.num_arrows(); ++i)
      if (a.quiver_.arrow(i).source != b.quiver_.arrow(i).source || a.quiver_.arrow(i).target != b.quiver_.arrow(i).target)
        return false;
    return a.basis_ == b.basis_ && a.mult_ == b.mult_;
  }

  // Construction entry points (friends below) fill these in.
  std::string name_;
  Quiver quiver_;
  std::vector<Poly<K>> relations_;
  std::vector<Word> basis_;
  std::vector<std::string> labels_;
  std::vector<int> idem_;
  std::vector<int> arrow_elem_;
  std::vector<Sparse<K>> mult_;
  std::optional<TensorFactors<K>> factors_;
  AlgebraPtr<K> op_of_;
};

template <class K>
bool same_algebra(const AlgebraPtr<K>& a, const AlgebraPtr<K>& b) {
  return a == b || same_algebra(*a, *b);
}

template <class K>
void require_same(const AlgebraPtr<K>& a, const AlgebraPtr<K>& b, const std::string& what) {
  if (!same_algebra(a, b)) throw AlgebraMismatch(what + ": algebras " + a->name() + " and " + b->name() + " differ");
}

namespace detail {

template <class K>
Sparse<K> to_sparse(const Vec<K>& v) {
  Sparse<K> s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.emplace_back(static_cast<int>(i), v[i]);
  return s;
}

template <class K>
void fill_index_data(Algebra<K>& alg) {
  const int n = alg.dim();
  alg.idem_.assign(alg.num_vertices(), -1);
  alg.arrow_elem_.assign(alg.quiver_.num_arrows(), -1);
  for (int b = 0; b < n; ++b) {
    const Word& w = alg.basis_[b];
    if (w.length() == 0) alg.idem_[w.source] = b;
    if (w.length() == 1) alg.arrow_elem_[w.arrows[0]] = b;
  }
}

}  // namespace detail

/// A relation from (coefficient, path) pairs, paths written in composition order.
template <class K>
Poly<K> make_relation(const Quiver& q, const std::vector<std::pair<K, std::string>>& terms) {
  Poly<K> p;
  for (const auto& [c, text] : terms) {
    std::vector<int> arrows;
    std::string tok;
    std::stringstream ss(text);
    while (std::getline(ss, tok, '*')) {
      int a = q.arrow_index(tok);
      if (a < 0) throw std::invalid_argument("unknown arrow " + tok);
      arrows.insert(arrows.begin(), a);
    }
    p.add(word_from_arrows(q, arrows), c);
  }
  return p;
}

template <class K>
void check_admissible(const Quiver& q, const std::vector<Poly<K>>& relations) {
  for (const auto& r : relations) {
    if (r.is_zero()) continue;
    const Word& first = r.terms().begin()->first;
    for (const auto& [w, c] : r.terms()) {
      if (w.length() < 2)
        throw NonAdmissible("relation " + poly_to_string(r, q) + " has a term of length < 2");
      if (w.source != first.source || w.target != first.target)
        throw NonAdmissible("relation " + poly_to_string(r, q) + " mixes non-parallel paths");
    }
  }
}

template <class K>
AlgebraPtr<K> build_algebra(std::string name, const Quiver& q, std::vector<Poly<K>> relations, int cap = 32) {
  check_admissible(q, relations);
  auto alg = std::make_shared<Algebra<K>>();
  alg->name_ = std::move(name);
  alg->quiver_ = q;
  WordOrder order{LexDirection::FromFirst};
  for (auto& r : relations) r = r.reorder(order);
  alg->relations_ = relations;
  RewritingSystem<K> rs = complete(q, relations, order, cap);
  alg->basis_ = normal_words(q, rs, cap);
  const int n = alg->dim();
  std::map<Word, int, WordOrder> index(order);
  for (int b = 0; b < n; ++b) {
    index.emplace(alg->basis_[b], b);
    alg->labels_.push_back(word_to_string(alg->basis_[b], q));
  }
  alg->mult_.assign(static_cast<std::size_t>(n) * n, {});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Word& x = alg->basis_[i];
      const Word& y = alg->basis_[j];
      if (y.target != x.source) continue;
      Poly<K> nf = rs.reduce(Poly<K>::monomial(concat(y, x), K(1), order));
      Sparse<K> s;
      for (const auto& [w, c] : nf.terms()) s.emplace_back(index.at(w), c);
      std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      alg->mult_[static_cast<std::size_t>(i) * n + j] = std::move(s);
    }
  detail::fill_index_data(*alg);
  return alg;
}

/// The one-point algebra k.
template <class K>
AlgebraPtr<K> point_algebra() {
  return build_algebra<K>("k", Quiver({"*"}, {}), {});
}

template <class K>
AlgebraPtr<K> opposite(const AlgebraPtr<K>& a) {
  if (a->opposite_of()) return a->opposite_of();
  auto op = std::make_shared<Algebra<K>>();
  op->name_ = a->name() + "op";
  std::vector<Arrow> arrows;
  for (const auto& ar : a->quiver().arrows()) arrows.push_back(Arrow{ar.name + "op", ar.target, ar.source});
  op->quiver_ = Quiver(a->quiver().vertices(), arrows);
  auto reversed = [](const Word& w) {
    Word r{w.target, w.source, w.arrows};
    std::reverse(r.arrows.begin(), r.arrows.end());
    return r;
  };
  for (const auto& rel : a->relations()) {
    Poly<K> p;
    for (const auto& [w, c] : rel.terms()) p.add(reversed(w), c);
    op->relations_.push_back(p);
  }
  const int n = a->dim();
  for (int b = 0; b < n; ++b) {
    op->basis_.push_back(reversed(a->basis()[b]));
    op->labels_.push_back(word_to_string(op->basis_.back(), op->quiver_));
  }
  op->mult_.assign(static_cast<std::size_t>(n) * n, {});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) op->mult_[static_cast<std::size_t>(i) * n + j] = a->mult(j, i);
  detail::fill_index_data(*op);
  op->op_of_ = a;
  return op;
}

/// Vertex and arrow numbering inside A (x) B. Left arrows are alpha x j,
/// right arrows are i x beta with beta an arrow of B.
struct ProductIndex {
  int nv_left, nv_right, na_left, na_right;
  int vertex(int i, int j) const { return i * nv_right + j; }
  int left_arrow(int alpha, int j) const { return alpha * nv_right + j; }
  int right_arrow(int i, int beta) const { return na_left * nv_right + i * na_right + beta; }
  int left_vertex(int v) const { return v / nv_right; }
  int right_vertex(int v) const { return v % nv_right; }
};

template <class K>
ProductIndex product_index(const Algebra<K>& a, const Algebra<K>& b) {
  return {a.num_vertices(), b.num_vertices(), a.quiver().num_arrows(), b.quiver().num_arrows()};
}

/// A (x)_k B. Its basis is the set of pairs (x, y), ordered by (index x, index y),
/// with (x (x) y)(x' (x) y') = xx' (x) yy'.
template <class K>
AlgebraPtr<K> tensor_algebra(const AlgebraPtr<K>& a, const AlgebraPtr<K>& b) {
  auto t = std::make_shared<Algebra<K>>();
  t->name_ = a->name() + "(x)" + b->name();
  const ProductIndex ix = product_index(*a, *b);
  const Quiver& qa = a->quiver();
  const Quiver& qb = b->quiver();

  std::vector<std::string> verts;
  for (int i = 0; i < ix.nv_left; ++i)
    for (int j = 0; j < ix.nv_right; ++j) verts.push_back(qa.vertices()[i] + "|" + qb.vertices()[j]);
  std::vector<Arrow> arrows;
  for (int al = 0; al < ix.na_left; ++al)
    for (int j = 0; j < ix.nv_right; ++j)
      arrows.push_back(Arrow{qa.arrow(al).name + "|" + qb.vertices()[j], ix.vertex(qa.arrow(al).source, j),
                             ix.vertex(qa.arrow(al).target, j)});
  for (int i = 0; i < ix.nv_left; ++i)
    for (int be = 0; be < ix.na_right; ++be)
      arrows.push_back(Arrow{qa.vertices()[i] + "|" + qb.arrow(be).name, ix.vertex(i, qb.arrow(be).source),
                             ix.vertex(i, qb.arrow(be).target)});
  t->quiver_ = Quiver(verts, arrows);

  // Traversal word of x (x) y: the arrows of x at s(y), then the arrows of y at t(x).
  auto pair_word = [&](const Word& x, const Word& y) {
    Word w{ix.vertex(x.source, y.source), ix.vertex(x.target, y.target), {}};
    for (int al : x.arrows) w.arrows.push_back(ix.left_arrow(al, y.source));
    for (int be : y.arrows) w.arrows.push_back(ix.right_arrow(x.target, be));
    return w;
  };

  for (const auto& r : a->relations())
    for (int j = 0; j < ix.nv_right; ++j) {
      Poly<K> p;
      for (const auto& [w, c] : r.terms()) p.add(pair_word(w, Word{j, j, {}}), c);
      t->relations_.push_back(p);
    }
  for (int i = 0; i < ix.nv_left; ++i)
    for (const auto& r : b->relations()) {
      Poly<K> p;
      for (const auto& [w, c] : r.terms()) p.add(pair_word(Word{i, i, {}}, w), c);
      t->relations_.push_back(p);
    }
  for (int al = 0; al < ix.na_left; ++al)
    for (int be = 0; be < ix.na_right; ++be) {
      const Arrow& x = qa.arrow(al);
      const Arrow& y = qb.arrow(be);
      Word left_first{ix.vertex(x.source, y.source), ix.vertex(x.target, y.target),
                      {ix.left_arrow(al, y.source), ix.right_arrow(x.target, be)}};
      Word right_first{ix.vertex(x.source, y.source), ix.vertex(x.target, y.target),
                       {ix.right_arrow(x.source, be), ix.left_arrow(al, y.target)}};
      Poly<K> p;
      p.add(left_first, K(1));
      p.add(right_first, K(-1));
      t->relations_.push_back(p);
    }

  const int na = a->dim(), nb = b->dim();
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y) {
      t->basis_.push_back(pair_word(a->basis()[x], b->basis()[y]));
      t->labels_.push_back(a->basis_label(x) + "|" + b->basis_label(y));
    }
  const int n = na * nb;
  t->mult_.assign(static_cast<std::size_t>(n) * n, {});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& ma = a->mult(i / nb, j / nb);
      const auto& mb = b->mult(i % nb, j % nb);
      Sparse<K> s;
      for (const auto& [p, c] : ma)
        for (const auto& [q, d] : mb) s.emplace_back(p * nb + q, c * d);
      std::sort(s.begin(), s.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
      t->mult_[static_cast<std::size_t>(i) * n + j] = std::move(s);
    }
  detail::fill_index_data(*t);
  // arrows x|j and i|y are basis elements arrow (x) e_j and e_i (x) arrow
  for (int al = 0; al < ix.na_left; ++al)
    for (int j = 0; j < ix.nv_right; ++j)
      t->arrow_elem_[ix.left_arrow(al, j)] = a->arrow_element(al) * nb + b->idempotent(j);
  for (int i = 0; i < ix.nv_left; ++i)
    for (int be = 0; be < ix.na_right; ++be)
      t->arrow_elem_[ix.right_arrow(i, be)] = a->idempotent(i) * nb + b->arrow_element(be);
  for (int i = 0; i < ix.nv_left; ++i)
    for (int j = 0; j < ix.nv_right; ++j) t->idem_[ix.vertex(i, j)] = a->idempotent(i) * nb + b->idempotent(j);
  t->factors_ = TensorFactors<K>{a, b};
  return t;
}

/// A (x) A^op.
template <class K>
AlgebraPtr<K> enveloping(const AlgebraPtr<K>& a) {
  return tensor_algebra(a, opposite(a));
}

/// Length of the longest basis path plus one: every path of this length is zero.
template <class K>
int loewy_bound(const Algebra<K>& a) {
  std::size_t m = 0;
  for (const auto& w : a.basis()) m = std::max(m, w.length());
  return static_cast<int>(m) + 1;
}

}  // namespace fdhom
