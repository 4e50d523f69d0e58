#pragma once

// Hom spaces, isomorphism search, summand splitting and stable Hom.

#include <cmath>
#include <optional>
#include <random>

#include "fdhom/errors.hpp"
#include "fdhom/rep.hpp"

namespace fdhom {

/// Seed and attempt budget for randomized searches. All searches are seeded,
/// so results are reproducible for a fixed seed.
struct SearchOptions {
  std::uint64_t seed = 0;
  int attempts = 64;
  double exhaustive_limit = 1e6;
};

/// Basis of Hom(x, y): the kernel of the intertwining equations, one block of
/// unknowns per vertex laid out as in Hom::coords.
template <class K>
std::vector<Hom<K>> hom_basis(const RepPtr<K>& x, const RepPtr<K>& y) {
  require_same(x->algebra(), y->algebra(), "hom_basis");
  const Quiver& q = x->algebra()->quiver();
  const int nv = q.num_vertices();
  std::vector<std::size_t> off(nv + 1, 0);
  for (int v = 0; v < nv; ++v) off[v + 1] = off[v] + static_cast<std::size_t>(y->dim(v)) * x->dim(v);
  const std::size_t unknowns = off[nv];
  std::size_t eqs = 0;
  for (const auto& ar : q.arrows()) eqs += static_cast<std::size_t>(y->dim(ar.target)) * x->dim(ar.source);
  Matrix<K> sys(eqs, unknowns);
  std::size_t row = 0;
  for (int a = 0; a < q.num_arrows(); ++a) {
    const auto& ar = q.arrow(a);
    const int s = ar.source, t = ar.target;
    const Matrix<K>& xa = x->map(a);
    const Matrix<K>& ya = y->map(a);
    for (int i = 0; i < y->dim(t); ++i)
      for (int j = 0; j < x->dim(s); ++j, ++row) {
        // (F_t X_a)[i][j] - (Y_a F_s)[i][j]
        for (int k = 0; k < x->dim(t); ++k)
          if (!xa(k, j).is_zero()) sys(row, off[t] + i * x->dim(t) + k) += xa(k, j);
        for (int k = 0; k < y->dim(s); ++k)
          if (!ya(i, k).is_zero()) sys(row, off[s] + k * x->dim(s) + j) -= ya(i, k);
      }
  }
  Matrix<K> ns = nullspace(sys);
  std::vector<Hom<K>> out;
  for (std::size_t c = 0; c < ns.cols(); ++c) out.push_back(Hom<K>::from_coords(x, y, ns.col(c)));
  return out;
}

template <class K>
Hom<K> combination(const RepPtr<K>& x, const RepPtr<K>& y, const std::vector<Hom<K>>& basis, const Vec<K>& coeffs) {
  Hom<K> h = Hom<K>::zero(x, y);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!coeffs[i].is_zero()) h = h + coeffs[i] * basis[i];
  return h;
}

namespace detail {

template <class K, class Pred>
std::optional<Vec<K>> search_coefficients(std::size_t n, const SearchOptions& opt, Pred pred) {
  std::mt19937_64 rng(opt.seed);
  for (int attempt = 0; attempt < opt.attempts; ++attempt) {
    Vec<K> c(n);
    for (auto& v : c) v = K::random(rng);
    if (pred(c)) return c;
  }
  if constexpr (K::is_finite) {
    double total = std::pow(static_cast<double>(K::characteristic), static_cast<double>(n));
    if (total <= opt.exhaustive_limit) {
      Vec<K> c(n, K(0));
      for (long long idx = 0; idx < static_cast<long long>(total); ++idx) {
        long long r = idx;
        for (std::size_t i = 0; i < n; ++i) {
          c[i] = K(r % K::characteristic);
          r /= K::characteristic;
        }
        if (pred(c)) return c;
      }
      return std::nullopt;
    }
  } else {
    if (n <= 1) {
      // a single generator: it either works or no nonzero multiple does
      Vec<K> c(n, K(1));
      if (pred(c)) return c;
      return std::nullopt;
    }
  }
  throw Undecided("randomized search over a space of dimension " + std::to_string(n) + " was inconclusive");
}

template <class K>
std::vector<int> hom_dims_profile(const RepPtr<K>& x, const std::vector<RepPtr<K>>& probes) {
  std::vector<int> d;
  for (const auto& z : probes) {
    d.push_back(static_cast<int>(hom_basis(z, x).size()));
    d.push_back(static_cast<int>(hom_basis(x, z).size()));
  }
  return d;
}

}  // namespace detail

template <class K>
struct IsoResult {
  bool isomorphic = false;
  std::optional<Hom<K>> witness;
};

/// Decide x ~= y. A found witness is checked to be an invertible homomorphism.
/// Negative answers come from Hom-dimension invariants or an exhausted search.
template <class K>
IsoResult<K> is_isomorphic(const RepPtr<K>& x, const RepPtr<K>& y, const SearchOptions& opt = {}) {
  require_same(x->algebra(), y->algebra(), "is_isomorphic");
  if (x->dims() != y->dims()) return {};
  if (x->total_dim() == 0) return {true, Hom<K>::zero(x, y)};
  auto hxy = hom_basis(x, y);
  auto hyx = hom_basis(y, x);
  if (hxy.empty() || hxy.size() != hyx.size()) return {};
  if (hom_basis(x, x).size() != hxy.size() || hom_basis(y, y).size() != hxy.size()) return {};
  auto pred = [&](const Vec<K>& c) { return combination(x, y, hxy, c).is_iso(); };
  try {
    auto c = detail::search_coefficients<K>(hxy.size(), opt, pred);
    if (!c) return {};
    Hom<K> w = combination(x, y, hxy, *c);
    return {true, w};
  } catch (const Undecided&) {
    // compare cheap invariants before giving up
    std::vector<RepPtr<K>> probes;
    const auto& alg = x->algebra();
    for (int v = 0; v < alg->num_vertices(); ++v) {
      probes.push_back(simple(alg, v));
      probes.push_back(projective(alg, v));
      probes.push_back(dual(projective(opposite(alg), v)));
    }
    probes.push_back(radical(x).rep);
    probes.push_back(radical(y).rep);
    if (detail::hom_dims_profile(x, probes) != detail::hom_dims_profile(y, probes)) return {};
    throw;
  }
}

/// A homomorphism f: x -> t admitting g: t -> x with f g = id_t, if one exists.
template <class K>
struct SplitEpi {
  Hom<K> epi;
  Hom<K> section;
};

template <class K>
std::optional<SplitEpi<K>> find_split_epi(const RepPtr<K>& x, const RepPtr<K>& t, const SearchOptions& opt = {}) {
  require_same(x->algebra(), t->algebra(), "split_off_summand");
  for (int v = 0; v < t->algebra()->num_vertices(); ++v)
    if (t->dim(v) > x->dim(v)) return std::nullopt;
  if (t->total_dim() == 0) return SplitEpi<K>{Hom<K>::zero(x, t), Hom<K>::zero(t, x)};
  auto fs = hom_basis(x, t);
  auto gs = hom_basis(t, x);
  if (fs.empty() || gs.empty()) return std::nullopt;
  const std::size_t n = fs.size() + gs.size();
  auto split = [&](const Vec<K>& c) {
    Vec<K> cf(c.begin(), c.begin() + fs.size()), cg(c.begin() + fs.size(), c.end());
    return compose(combination(x, t, fs, cf), combination(t, x, gs, cg)).is_iso();
  };
  auto c = detail::search_coefficients<K>(n, opt, split);
  if (!c) return std::nullopt;
  Vec<K> cf(c->begin(), c->begin() + fs.size()), cg(c->begin() + fs.size(), c->end());
  Hom<K> f = combination(x, t, fs, cf);
  Hom<K> g = combination(t, x, gs, cg);
  // normalize so that f g = id
  Hom<K> u = inverse(compose(f, g));
  return SplitEpi<K>{f, compose(g, u)};
}

/// Surjection x -> P(v) for the indecomposable projective P(v); decided
/// exactly: one exists iff some basis map is nonzero on the top of P(v).
template <class K>
std::optional<SplitEpi<K>> find_projective_quotient(const RepPtr<K>& x, int v) {
  const auto& alg = x->algebra();
  auto p = make_proj(alg, {v});
  int e = alg->idempotent(v);
  for (const auto& f : hom_basis(x, p.rep)) {
    // top of P(v) is spanned by the generator e_v
    bool hits_top = false;
    for (int j = 0; j < x->dim(v); ++j)
      if (!f.maps[v](p.pos[0][e], j).is_zero()) hits_top = true;
    if (!hits_top) continue;
    // f is onto; lift the generator along f to get the section
    Vec<K> col;
    for (int j = 0; j < x->dim(v); ++j)
      if (!f.maps[v](p.pos[0][e], j).is_zero()) {
        col.assign(x->dim(v), K(0));
        col[j] = f.maps[v](p.pos[0][e], j).inverse();
        break;
      }
    Hom<K> g = p.hom_to(x, {col});
    Hom<K> u = inverse(compose(f, g));
    return SplitEpi<K>{f, compose(g, u)};
  }
  return std::nullopt;
}

/// A complement X with x ~= t + X, or none if no split epi x -> t exists.
template <class K>
std::optional<RepPtr<K>> split_off_summand(const RepPtr<K>& x, const RepPtr<K>& t, const SearchOptions& opt = {}) {
  auto s = find_split_epi(x, t, opt);
  if (!s) return std::nullopt;
  return kernel(s->epi).rep;
}

template <class K>
struct StrippedRep {
  RepPtr<K> rep;
  std::vector<int> removed;  // vertices of the removed indecomposable projectives
};

/// Remove all projective direct summands. Each step is exact: a surjection
/// onto P(v) always splits.
template <class K>
StrippedRep<K> strip_projectives(const RepPtr<K>& x) {
  StrippedRep<K> out{x, {}};
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < x->algebra()->num_vertices(); ++v) {
      auto s = find_projective_quotient(out.rep, v);
      if (!s) continue;
      out.rep = kernel(s->epi).rep;
      out.removed.push_back(v);
      changed = true;
    }
  }
  return out;
}

/// Hom(x, y) modulo the maps factoring through a projective. Those are the
/// maps factoring through the projective cover of y.
template <class K>
struct StableHomSpace {
  std::vector<Hom<K>> hom_basis;
  Subspace<K> proj_subspace;   // in coordinates w.r.t. hom_basis
  std::vector<Vec<K>> coset_reps;  // coordinate vectors w.r.t. hom_basis
  Matrix<K> coords_solver_basis;   // hom_basis coordinate columns

  std::size_t dim() const { return coset_reps.size(); }

  /// Coordinates of a Hom with respect to hom_basis.
  Vec<K> coordinates(const Hom<K>& f) const {
    auto sol = solve_vec(coords_solver_basis, f.coords());
    if (!sol) throw std::invalid_argument("map is not in the Hom space");
    return *sol;
  }
  /// Coordinates of the stable class of f in the coset basis.
  Vec<K> stable_coordinates(const Hom<K>& f) const {
    Vec<K> r = proj_subspace.reduce(coordinates(f));
    Vec<K> out;
    for (const auto& rep : coset_reps)
      for (std::size_t i = 0; i < rep.size(); ++i)
        if (!rep[i].is_zero()) out.push_back(r[i]);
    return out;
  }
};

template <class K>
StableHomSpace<K> stable_hom(const RepPtr<K>& x, const RepPtr<K>& y) {
  StableHomSpace<K> s;
  s.hom_basis = hom_basis(x, y);
  const std::size_t n = s.hom_basis.size();
  const std::size_t len = s.hom_basis.empty() ? 0 : s.hom_basis[0].coords().size();
  s.coords_solver_basis = Matrix<K>(Hom<K>::zero(x, y).coords().size(), n);
  for (std::size_t i = 0; i < n; ++i) s.coords_solver_basis.set_col(i, s.hom_basis[i].coords());
  (void)len;
  auto cover = projective_cover(y);
  std::vector<Vec<K>> through;
  for (const auto& h : hom_basis(x, cover.proj.rep)) {
    auto sol = solve_vec(s.coords_solver_basis, compose(cover.epi, h).coords());
    through.push_back(*sol);
  }
  s.proj_subspace = through.empty() ? Subspace<K>(n) : Subspace<K>::span(through, n);
  s.coset_reps = quotient_basis(s.proj_subspace);
  return s;
}

}  // namespace fdhom
