#pragma once

// Ext groups as cohomology of Hom(P_., Y), Yoneda products by chain lifting,
// rotation maps and the stable Hom comparison.
//
// A cochain on P_n is the list of images of its generators, concatenated:
// C^n = sum over generators g of Y_{v(g)}.

#include <memory>

#include "fdhom/hom.hpp"
#include "fdhom/resolution.hpp"

namespace fdhom {

template <class K>
using ResolutionPtr = std::shared_ptr<Resolution<K>>;

template <class K>
ResolutionPtr<K> resolve(const RepPtr<K>& x, int n = 0) {
  auto r = std::make_shared<Resolution<K>>(Resolution<K>::start(x));
  r->extend_to(n);
  return r;
}

namespace detail {

template <class K>
std::vector<int> cochain_offsets(const Resolution<K>& res, int n, const Rep<K>& y) {
  std::vector<int> off{0};
  if (n >= 0 && res.has_term(n))
    for (int g : res.term(n).gens) off.push_back(off.back() + y.dim(g));
  return off;
}

}  // namespace detail

/// Matrix of f -> f o d_{n+1} from C^n to C^{n+1}.
template <class K>
Matrix<K> coboundary_matrix(const Resolution<K>& res, int n, const Rep<K>& y) {
  auto off_n = detail::cochain_offsets(res, n, y);
  auto off_m = detail::cochain_offsets(res, n + 1, y);
  Matrix<K> m(off_m.back(), off_n.back());
  if (n < 0 || !res.has_term(n + 1)) return m;
  const Proj<K>& pn = res.term(n);
  const Proj<K>& pm = res.term(n + 1);
  const AlgebraPtr<K>& alg = pn.alg;
  for (int g = 0; g < pm.size(); ++g) {
    const int v = pm.gens[g];
    const Vec<K>& z = res.gen_images[n + 1][g];  // element of P_n at vertex v
    for (int k = 0; k < pn.size(); ++k)
      for (int b = 0; b < alg->dim(); ++b) {
        int p = pn.pos[k][b];
        if (p < 0 || alg->target(b) != v || z[p].is_zero()) continue;
        const Matrix<K>& act = y.action(b);
        for (std::size_t r = 0; r < act.rows(); ++r)
          for (std::size_t c = 0; c < act.cols(); ++c)
            if (!act(r, c).is_zero()) m(off_m[g] + r, off_n[k] + c) += z[p] * act(r, c);
      }
  }
  return m;
}

template <class K>
class ExtGroup {
 public:
  ExtGroup(ResolutionPtr<K> res, RepPtr<K> target, int n) : res_(std::move(res)), target_(std::move(target)), n_(n) {
    require_same(res_->module->algebra(), target_->algebra(), "ext");
    res_->extend_to(n + 1);
    off_ = detail::cochain_offsets(*res_, n, *target_);
    const std::size_t cn = off_.back();
    Matrix<K> out = coboundary_matrix(*res_, n, *target_);
    Matrix<K> in = n >= 1 ? coboundary_matrix(*res_, n - 1, *target_) : Matrix<K>(cn, 0);
    Matrix<K> z = nullspace(out);
    Subspace<K> b = in.cols() ? Subspace<K>::span_cols(in) : Subspace<K>(cn);
    std::vector<Vec<K>> reduced;
    for (std::size_t c = 0; c < z.cols(); ++c) {
      Vec<K> r = b.reduce(z.col(c));
      if (!is_zero_vec(r)) reduced.push_back(r);
    }
    Subspace<K> q = reduced.empty() ? Subspace<K>(cn) : Subspace<K>::span(reduced, cn);
    for (std::size_t i = 0; i < q.dim(); ++i) basis_.push_back(q.basis().row(i));
    boundary_dim_ = b.dim();
    Matrix<K> sys(cn, boundary_dim_ + basis_.size());
    for (std::size_t i = 0; i < boundary_dim_; ++i) sys.set_col(i, b.basis().row(i));
    for (std::size_t i = 0; i < basis_.size(); ++i) sys.set_col(boundary_dim_ + i, basis_[i]);
    solver_ = LinearSolver<K>(sys);
    out_ = std::move(out);
  }

  int degree() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int cochain_dim() const { return off_.back(); }
  const ResolutionPtr<K>& resolution() const { return res_; }
  const RepPtr<K>& source() const { return res_->module; }
  const RepPtr<K>& target() const { return target_; }
  const std::vector<Vec<K>>& basis() const { return basis_; }

  bool is_cocycle(const Vec<K>& c) const { return is_zero_vec(out_ * c); }

  /// Coordinates of the class of a cocycle in the basis.
  Vec<K> class_coords(const Vec<K>& cocycle) const {
    if (!is_cocycle(cocycle)) throw std::invalid_argument("cochain is not a cocycle");
    auto x = solver_.solve(cocycle);
    if (!x) throw std::logic_error("cocycle outside cocycle space");
    return Vec<K>(x->begin() + boundary_dim_, x->end());
  }

  Vec<K> cocycle(const Vec<K>& coords) const {
    Vec<K> c(cochain_dim(), K(0));
    for (std::size_t i = 0; i < basis_.size(); ++i)
      for (int j = 0; j < cochain_dim(); ++j) c[j] += coords[i] * basis_[i][j];
    return c;
  }

  /// Generator images of a cochain.
  std::vector<Vec<K>> images(const Vec<K>& cochain) const {
    std::vector<Vec<K>> out;
    for (std::size_t g = 0; g + 1 < off_.size(); ++g)
      out.emplace_back(cochain.begin() + off_[g], cochain.begin() + off_[g + 1]);
    return out;
  }
  Vec<K> cochain(const std::vector<Vec<K>>& imgs) const {
    Vec<K> c;
    for (const auto& v : imgs) c.insert(c.end(), v.begin(), v.end());
    return c;
  }
  /// Cochain of a homomorphism P_n -> target.
  Vec<K> cochain(const Hom<K>& f) const {
    std::vector<Vec<K>> imgs;
    if (res_->has_term(n_)) {
      const Proj<K>& p = res_->term(n_);
      for (int g = 0; g < p.size(); ++g) imgs.push_back(p.image_of_generator(f, g));
    }
    return cochain(imgs);
  }
  Hom<K> hom(const Vec<K>& cochain) const {
    if (!res_->has_term(n_)) return Hom<K>::zero(zero_rep(target_->algebra()), target_);
    return res_->term(n_).hom_to(target_, images(cochain));
  }

 private:
  ResolutionPtr<K> res_;
  RepPtr<K> target_;
  int n_;
  std::vector<int> off_;
  std::vector<Vec<K>> basis_;
  std::size_t boundary_dim_ = 0;
  LinearSolver<K> solver_;
  Matrix<K> out_;
};

template <class K>
using ExtGroupPtr = std::shared_ptr<const ExtGroup<K>>;

template <class K>
ExtGroupPtr<K> ext(const ResolutionPtr<K>& res, const RepPtr<K>& y, int n) {
  return std::make_shared<const ExtGroup<K>>(res, y, n);
}

template <class K>
ExtGroupPtr<K> ext(const RepPtr<K>& x, const RepPtr<K>& y, int n) {
  return ext(resolve(x, n + 1), y, n);
}

/// An element of an Ext group, in coordinates of the group's basis.
template <class K>
struct ExtClass {
  ExtGroupPtr<K> group;
  Vec<K> coords;

  int degree() const { return group->degree(); }
  Vec<K> cocycle() const { return group->cocycle(coords); }
  bool is_zero() const { return is_zero_vec(coords); }

  static ExtClass basis_element(const ExtGroupPtr<K>& g, int i) {
    Vec<K> c(g->dim(), K(0));
    c[i] = K(1);
    return {g, c};
  }
  static ExtClass from_cocycle(const ExtGroupPtr<K>& g, const Vec<K>& cocycle) { return {g, g->class_coords(cocycle)}; }
};

namespace detail {

template <class K>
bool same_module(const RepPtr<K>& a, const RepPtr<K>& b) {
  return a == b || (same_algebra(a->algebra(), b->algebra()) && a->dims() == b->dims() && a->maps() == b->maps());
}

}  // namespace detail

/// Yoneda product x * y for x in Ext^m(B, C) and y in Ext^n(A, B), returned
/// as a class of `target`, a group Ext^{m+n}(A, C) over the resolution of A.
template <class K>
ExtClass<K> yoneda(const ExtClass<K>& x, const ExtClass<K>& y, const ExtGroupPtr<K>& target) {
  const auto& gx = x.group;
  const auto& gy = y.group;
  if (!detail::same_module(gx->source(), gy->target()))
    throw AlgebraMismatch("yoneda: source of the left factor differs from the target of the right factor");
  const int m = gx->degree(), n = gy->degree();
  if (target->degree() != m + n || !detail::same_module(target->source(), gy->source()) ||
      !detail::same_module(target->target(), gx->target()))
    throw AlgebraMismatch("yoneda: target group does not match");
  auto& res_a = *gy->resolution();
  auto& res_b = *gx->resolution();
  res_b.extend_to(m + 1);
  if (!res_a.has_term(n + m)) return {target, Vec<K>(target->dim(), K(0))};
  ChainLift<K> lift = lift_chain_map(res_a, n, as_complex(res_b), gy->images(y.cocycle()), m);
  Hom<K> xi = gx->hom(x.cocycle());
  const Proj<K>& p = res_a.term(n + m);
  std::vector<Vec<K>> imgs;
  for (int g = 0; g < p.size(); ++g) {
    if (static_cast<int>(lift.images.size()) <= m || lift.images[m].empty())
      imgs.push_back(Vec<K>(gx->target()->dim(p.gens[g]), K(0)));
    else
      imgs.push_back(xi.maps[p.gens[g]] * lift.images[m][g]);
  }
  return ExtClass<K>::from_cocycle(target, target->cochain(imgs));
}

/// Rotation rho_i: Ext^n(U, V) -> Ext^n(Omega^i U, Omega^i V) on minimal
/// resolutions. `target` must be a group over the i-fold shift of the
/// resolution of U with target Omega^i V.
template <class K>
ExtClass<K> rotation(const ExtClass<K>& x, int i, const ResolutionPtr<K>& res_v, const ExtGroupPtr<K>& target) {
  const int n = x.degree();
  if (i < 0 || (i >= n && i != 0)) throw IndexError("rotation index must satisfy 0 <= i < n");
  if (i == 0) return {target, target->class_coords(x.cocycle())};
  auto& res_u = *x.group->resolution();
  res_v->extend_to(i);
  // (tau_i)_*: lift along the resolution of V for i steps, then project onto Omega^i V
  ChainLift<K> lift = lift_chain_map(res_u, n, as_complex(*res_v), x.group->images(x.cocycle()), i);
  std::vector<Vec<K>> imgs;
  if (res_u.has_term(n + i)) {
    const Proj<K>& p = res_u.term(n + i);
    for (int g = 0; g < p.size(); ++g) {
      const int v = p.gens[g];
      if (!res_v->has_term(i) || static_cast<int>(lift.images.size()) <= i)
        imgs.push_back(Vec<K>(target->target()->dim(v), K(0)));
      else
        imgs.push_back(res_v->covers[i].maps[v] * lift.images[i][g]);
    }
  }
  return ExtClass<K>::from_cocycle(target, target->cochain(imgs));
}

/// A linear map between Ext groups; column j is the image of basis class j.
template <class K>
struct ExtMap {
  ExtGroupPtr<K> source, target;
  Matrix<K> matrix;

  ExtClass<K> operator()(const ExtClass<K>& x) const { return {target, matrix * x.coords}; }
  int rank() const { return fdhom::rank(matrix); }
  bool injective() const { return rank() == source->dim(); }
  bool bijective() const { return source->dim() == target->dim() && injective(); }
};

/// g o f, for f: A -> B and g: B -> C with matching middle groups.
template <class K>
ExtMap<K> then(const ExtMap<K>& f, const ExtMap<K>& g) {
  if (f.target->dim() != g.source->dim()) throw DimensionMismatch("ExtMap composition");
  return {f.source, g.target, g.matrix * f.matrix};
}

/// Ext^n(U, V) -> Ext^n(Omega^i U, Omega^i V) on minimal resolutions.
template <class K>
ExtMap<K> rotation_matrix(const ResolutionPtr<K>& res_u, const ResolutionPtr<K>& res_v, int n, int i) {
  res_u->extend_to(n + i + 1);
  res_v->extend_to(i + 1);
  auto src = ext(res_u, res_v->module, n);
  auto shifted = std::make_shared<Resolution<K>>(res_u->shifted(i));
  auto tgt = ext(shifted, res_v->syzygy(i), n);
  Matrix<K> m(tgt->dim(), src->dim());
  for (int b = 0; b < src->dim(); ++b) m.set_col(b, rotation(ExtClass<K>::basis_element(src, b), i, res_v, tgt).coords);
  return {src, tgt, m};
}

// ---------------------------------------------------------------------------
// Stable Hom and Ext.

/// pi_n^*: stHom(Omega^n C, A) -> Ext^n(C, A), g -> [g o (cover P_n -> Omega^n C)].
template <class K>
struct StableExtBridge {
  StableHomSpace<K> sthom;
  ExtGroupPtr<K> ext;
  Matrix<K> matrix;
  bool bijective = false;
};

template <class K>
StableExtBridge<K> sthom_to_ext(const RepPtr<K>& c, const RepPtr<K>& a, int n) {
  if (n < 1) throw std::invalid_argument("sthom_to_ext needs n >= 1");
  auto res = resolve(c, n + 1);
  auto reg = regular(c->algebra());
  if (ext(res, reg, n)->dim() != 0)
    throw HypothesisFailed("Ext^" + std::to_string(n) + "(C, regular module) is nonzero");
  StableExtBridge<K> out;
  out.ext = ext(res, a, n);
  RepPtr<K> kn = res->syzygies.size() > static_cast<std::size_t>(n) ? res->syzygy(n) : zero_rep(c->algebra());
  out.sthom = stable_hom(kn, a);
  out.matrix = Matrix<K>(out.ext->dim(), out.sthom.dim());
  for (std::size_t j = 0; j < out.sthom.dim(); ++j) {
    Hom<K> g = combination(kn, a, out.sthom.hom_basis, out.sthom.coset_reps[j]);
    Vec<K> cochain = res->has_term(n) ? out.ext->cochain(compose(g, res->covers[n])) : Vec<K>{};
    out.matrix.set_col(j, out.ext->class_coords(cochain));
  }
  out.bijective = out.matrix.rows() == out.matrix.cols() && rank(out.matrix) == out.matrix.rows();
  return out;
}

}  // namespace fdhom
