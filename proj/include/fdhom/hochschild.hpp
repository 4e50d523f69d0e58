#pragma once

// Hochschild cohomology over the enveloping algebra, two independent oracles
// (center, E-relative reduced bar complex), the map phi_A, graded slices with
// product tables, the K (x) - transfer and the truncated (Fg) check.

#include <map>
#include <mutex>
#include <random>
#include <string>

#include "fdhom/gorenstein.hpp"
#include "fdhom/transfer.hpp"

namespace fdhom {

/// Ext^*(U, U) over a fixed minimal resolution of U, with groups cached by degree.
template <class K>
class ExtAlgebra {
 public:
  explicit ExtAlgebra(RepPtr<K> u) : module_(std::move(u)), res_(resolve(module_)) {}

  const RepPtr<K>& module() const { return module_; }
  const ResolutionPtr<K>& resolution() const { return res_; }

  /// Extend the resolution far enough for degrees up to n (call before sharing across threads).
  void prepare(int n) const {
    std::lock_guard<std::mutex> lock(mu_);
    res_->extend_to(n + 1);
  }

  ExtGroupPtr<K> group(int n) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = groups_.find(n);
      if (it != groups_.end()) return it->second;
      res_->extend_to(n + 1);
    }
    auto g = ext(res_, module_, n);
    std::lock_guard<std::mutex> lock(mu_);
    return groups_.emplace(n, g).first->second;
  }

  ExtClass<K> multiply(const ExtClass<K>& x, const ExtClass<K>& y) const {
    return yoneda(x, y, group(x.degree() + y.degree()));
  }

 private:
  RepPtr<K> module_;
  ResolutionPtr<K> res_;
  mutable std::map<int, ExtGroupPtr<K>> groups_;
  mutable std::mutex mu_;
};

template <class K>
std::shared_ptr<ExtAlgebra<K>> hochschild(const AlgebraPtr<K>& a) {
  return std::make_shared<ExtAlgebra<K>>(regular_bimodule(a));
}

template <class K>
ExtGroupPtr<K> hh(const AlgebraPtr<K>& a, int n) {
  return hochschild(a)->group(n);
}

/// Dimension of the center: elements commuting with every idempotent and arrow.
template <class K>
int center_dim(const AlgebraPtr<K>& a) {
  const int d = a->dim();
  auto unit = [&](int b) {
    Vec<K> e(d, K(0));
    e[b] = K(1);
    return e;
  };
  std::vector<Vec<K>> gens;
  for (int v = 0; v < a->num_vertices(); ++v) gens.push_back(unit(a->idempotent(v)));
  for (int al = 0; al < a->quiver().num_arrows(); ++al) gens.push_back(unit(a->arrow_element(al)));
  std::vector<Vec<K>> rows;
  for (const auto& g : gens) {
    // column j of [g, b_j]
    Matrix<K> m(d, d);
    for (int j = 0; j < d; ++j) {
      Vec<K> bj(d, K(0));
      bj[j] = K(1);
      Vec<K> c = a->multiply(g, bj);
      Vec<K> e = a->multiply(bj, g);
      for (int i = 0; i < d; ++i) m(i, j) = c[i] - e[i];
    }
    for (int i = 0; i < d; ++i) rows.push_back(m.row(i));
  }
  Matrix<K> all = Matrix<K>::from_rows(rows, d);
  return d - static_cast<int>(rank(all));
}

// ---------------------------------------------------------------------------
// Bar-complex oracle. For a basic algebra A = E + r with E spanned by the
// trivial paths, HH is the cohomology of the E-relative reduced cochains
// C^n = Hom_{E-E}(r (x)_E ... (x)_E r, A).

namespace detail {

template <class K>
struct BarCochains {
  std::vector<std::vector<int>> chains;          // radical basis indices r_1, ..., r_n (product r_1 ... r_n)
  std::vector<std::vector<int>> values;          // admissible value basis elements per chain
  std::vector<int> offset;
  int dim = 0;
  std::map<std::vector<int>, int> index;
};

template <class K>
BarCochains<K> bar_cochains(const Algebra<K>& a, const std::vector<int>& rad, int n) {
  BarCochains<K> c;
  std::vector<std::vector<int>> layer{{}};
  for (int k = 0; k < n; ++k) {
    std::vector<std::vector<int>> next;
    for (const auto& ch : layer)
      for (int r : rad)
        if (ch.empty() || a.source(ch.back()) == a.target(r)) {
          auto e = ch;
          e.push_back(r);
          next.push_back(std::move(e));
        }
    layer = std::move(next);
  }
  for (auto& ch : layer) {
    std::vector<int> vals;
    for (int t = 0; t < a.dim(); ++t) {
      if (n == 0) {
        if (a.source(t) == a.target(t)) vals.push_back(t);
      } else if (a.target(t) == a.target(ch.front()) && a.source(t) == a.source(ch.back())) {
        vals.push_back(t);
      }
    }
    c.index[ch] = static_cast<int>(c.chains.size());
    c.offset.push_back(c.dim);
    c.dim += static_cast<int>(vals.size());
    c.chains.push_back(ch);
    c.values.push_back(std::move(vals));
  }
  return c;
}

}  // namespace detail

template <class K>
Matrix<K> bar_differential(const AlgebraPtr<K>& ap, const std::vector<int>& rad, const detail::BarCochains<K>& src,
                           const detail::BarCochains<K>& tgt) {
  const Algebra<K>& a = *ap;
  const int n = src.chains.empty() ? 0 : static_cast<int>(src.chains.front().size());
  std::vector<int> rad_pos(a.dim(), -1);
  for (std::size_t i = 0; i < rad.size(); ++i) rad_pos[rad[i]] = static_cast<int>(i);
  Matrix<K> m(tgt.dim, src.dim);
  auto value_pos = [&](const detail::BarCochains<K>& c, int ci, int t) {
    const auto& vs = c.values[ci];
    auto it = std::find(vs.begin(), vs.end(), t);
    return it == vs.end() ? -1 : c.offset[ci] + static_cast<int>(it - vs.begin());
  };
  // contribution of source coordinate (chain s, value t) with coefficient coef
  // to target chain tc at value basis element u
  for (std::size_t tc = 0; tc < tgt.chains.size(); ++tc) {
    const auto& ch = tgt.chains[tc];  // a_1, ..., a_{n+1}
    // term a_1 f(a_2..a_{n+1}) and, for n = 0, f is evaluated on the empty chain
    auto add_left = [&]() {
      std::vector<int> rest(ch.begin() + 1, ch.end());
      auto it = src.index.find(rest);
      if (it == src.index.end()) return;
      int sc = it->second;
      for (std::size_t k = 0; k < src.values[sc].size(); ++k) {
        int t = src.values[sc][k];
        for (auto [u, coef] : a.mult(ch.front(), t)) {
          int row = value_pos(tgt, static_cast<int>(tc), u);
          if (row >= 0) m(row, src.offset[sc] + k) += coef;
        }
      }
    };
    auto add_right = [&](K sign) {
      std::vector<int> rest(ch.begin(), ch.end() - 1);
      auto it = src.index.find(rest);
      if (it == src.index.end()) return;
      int sc = it->second;
      for (std::size_t k = 0; k < src.values[sc].size(); ++k) {
        int t = src.values[sc][k];
        for (auto [u, coef] : a.mult(t, ch.back())) {
          int row = value_pos(tgt, static_cast<int>(tc), u);
          if (row >= 0) m(row, src.offset[sc] + k) += sign * coef;
        }
      }
    };
    add_left();
    for (int i = 0; i < n; ++i) {
      // (-1)^{i+1} f(a_1, .., a_{i+1} a_{i+2}, ..)
      K sign = (i % 2 == 0) ? K(-1) : K(1);
      for (auto [p, coef] : a.mult(ch[i], ch[i + 1])) {
        if (rad_pos[p] < 0) continue;  // products of radical elements stay radical
        std::vector<int> sub(ch.begin(), ch.begin() + i);
        sub.push_back(p);
        sub.insert(sub.end(), ch.begin() + i + 2, ch.end());
        auto it = src.index.find(sub);
        if (it == src.index.end()) continue;
        int sc = it->second;
        for (std::size_t k = 0; k < src.values[sc].size(); ++k) {
          int row = value_pos(tgt, static_cast<int>(tc), src.values[sc][k]);
          if (row >= 0) m(row, src.offset[sc] + k) += sign * coef;
        }
      }
    }
    add_right((n + 1) % 2 == 0 ? K(1) : K(-1));
  }
  return m;
}

/// dim HH^n(a) from the reduced bar complex; CapExceeded past `cap` or for huge cochain spaces.
template <class K>
int bar_cochain_oracle(const AlgebraPtr<K>& a, int n, int cap = 6, int max_cochains = 20000) {
  if (n < 0) throw std::invalid_argument("bar_cochain_oracle: negative degree");
  if (n > cap) throw CapExceeded("bar cochain degree " + std::to_string(n) + " above cap " + std::to_string(cap));
  std::vector<int> rad;
  for (int b = 0; b < a->dim(); ++b)
    if (!a->basis()[b].arrows.empty()) rad.push_back(b);
  auto c_prev = n >= 1 ? detail::bar_cochains(*a, rad, n - 1) : detail::BarCochains<K>{};
  auto c_n = detail::bar_cochains(*a, rad, n);
  auto c_next = detail::bar_cochains(*a, rad, n + 1);
  if (c_next.dim > max_cochains) throw CapExceeded("bar cochain space too large");
  std::size_t r_out = c_n.dim && c_next.dim ? rank(bar_differential(a, rad, c_n, c_next)) : 0;
  std::size_t r_in = n >= 1 && c_prev.dim && c_n.dim ? rank(bar_differential(a, rad, c_prev, c_n)) : 0;
  return c_n.dim - static_cast<int>(r_out) - static_cast<int>(r_in);
}

// ---------------------------------------------------------------------------
// phi_A: HH^n(Lambda) -> Ext^n(A, A), A (x)_Lambda -.

template <class K>
ExtMap<K> phi(const ExtAlgebra<K>& hh_ring, const ExtAlgebra<K>& x_ring, int n) {
  const RepPtr<K>& reg = hh_ring.module();
  const RepPtr<K>& x = x_ring.module();
  TensorFunctor<K> f{nullptr, x};
  auto t = tensor_over(view_bimodule(reg), view_left(x));
  Hom<K> mu = left_unit(t);
  return transfer(hh_ring.group(n), f, x_ring.group(n), mu, mu);
}

// ---------------------------------------------------------------------------
// Graded slices.

template <class K>
struct GradedRngSlice {
  int lo = 0, hi = 0;                               // window (lo, hi]
  std::map<int, int> dims;                          // degree -> dim
  std::map<int, std::vector<std::string>> labels;   // degree -> basis labels
  // (p, q) -> products of basis elements: table[i][j] = coords in degree p+q
  std::map<std::pair<int, int>, std::vector<std::vector<Vec<K>>>> products;

  bool associative = true;
  int triples_checked = 0;
};

template <class K>
GradedRngSlice<K> graded_slice(const ExtAlgebra<K>& ring, int lo, int hi, const std::string& prefix = "x") {
  if (lo >= hi) return GradedRngSlice<K>{lo, hi};
  GradedRngSlice<K> s;
  s.lo = lo;
  s.hi = hi;
  for (int n = lo + 1; n <= hi; ++n) {
    auto g = ring.group(n);
    s.dims[n] = g->dim();
    for (int i = 0; i < g->dim(); ++i) s.labels[n].push_back(prefix + std::to_string(n) + "_" + std::to_string(i));
  }
  for (int p = lo + 1; p <= hi; ++p)
    for (int q = lo + 1; p + q <= hi; ++q) {
      auto gp = ring.group(p), gq = ring.group(q);
      std::vector<std::vector<Vec<K>>> table(gp->dim(), std::vector<Vec<K>>(gq->dim()));
      for (int i = 0; i < gp->dim(); ++i)
        for (int j = 0; j < gq->dim(); ++j)
          table[i][j] = ring.multiply(ExtClass<K>::basis_element(gp, i), ExtClass<K>::basis_element(gq, j)).coords;
      s.products[{p, q}] = std::move(table);
    }
  // associativity on in-window triples
  auto prod = [&](int p, int q, const Vec<K>& x, const Vec<K>& y) {
    const auto& t = s.products.at({p, q});
    Vec<K> out(s.dims.at(p + q), K(0));
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j)
        if (!x[i].is_zero() && !y[j].is_zero())
          for (std::size_t k = 0; k < out.size(); ++k) out[k] += x[i] * y[j] * t[i][j][k];
    return out;
  };
  for (int p = lo + 1; p <= hi; ++p)
    for (int q = lo + 1; p + q <= hi; ++q)
      for (int r = lo + 1; p + q + r <= hi; ++r)
        for (int i = 0; i < s.dims[p]; ++i)
          for (int j = 0; j < s.dims[q]; ++j)
            for (int k = 0; k < s.dims[r]; ++k) {
              Vec<K> ei(s.dims[p], K(0)), ej(s.dims[q], K(0)), ek(s.dims[r], K(0));
              ei[i] = ej[j] = ek[k] = K(1);
              if (prod(p + q, r, prod(p, q, ei, ej), ek) != prod(p, q + r, ei, prod(q, r, ej, ek))) s.associative = false;
              ++s.triples_checked;
            }
  return s;
}

// ---------------------------------------------------------------------------
// K (x)_Lambda - on Ext over the enveloping algebra, K = Omega^i(Lambda).

struct TransferDegree {
  int degree = 0;
  int source_dim = 0, target_dim = 0;
  int rank = 0;
  bool bijective = false;
  bool sign_ok = false;  // transfer = (-1)^{in} rho_i
};

struct TensorTransferReport {
  int i = 0;
  std::vector<TransferDegree> degrees;
  int pairs_checked = 0;
  bool multiplicative = true;
  bool ok() const {
    if (!multiplicative) return false;
    for (const auto& d : degrees)
      if (!d.bijective || !d.sign_ok) return false;
    return true;
  }
};

template <class K>
bool one_sided_projective(const RepPtr<K>& bimodule) {
  return is_projective(restrict_left(bimodule)) && is_projective(restrict_right(bimodule));
}

template <class K>
TensorTransferReport tensor_transfer_check(const AlgebraPtr<K>& a, const GorensteinReport& g, const RepPtr<K>& u, int i,
                                           int lo, int hi, int samples = 6, std::uint64_t seed = 0) {
  if (!g.gorenstein) throw NoGorensteinCertificate("tensor_transfer_check needs a Gorenstein algebra");
  if (!one_sided_projective(u)) throw HypothesisFailed("U is not projective on both sides");
  if (lo < std::max(2 * g.dimension, i)) throw HypothesisFailed("window must start above max(2d, i)");
  if (i < 0) throw std::invalid_argument("negative syzygy index");
  auto reg = regular_bimodule(a);
  auto res_reg = resolve(reg, std::max(i, hi) + 1);
  ExtAlgebra<K> u_ring(u);
  RepPtr<K> kmod = i == 0 ? reg : res_reg->syzygy(i);
  TensorFunctor<K> kf{kmod, nullptr};
  auto ku = tensor_over(view_bimodule(kmod), view_bimodule(u));
  ExtAlgebra<K> ku_ring(ku.rep);
  std::optional<Hom<K>> theta;
  if (i == 0) theta = left_unit(ku);

  // rotation data along P (x)_Lambda U, a projective resolution of U via mu
  SyzygyData<K> sd;
  if (i > 0) {
    TensorFunctor<K> right{nullptr, u};
    auto lu = tensor_over(view_bimodule(reg), view_bimodule(u));
    Hom<K> mu = left_unit(lu);
    auto ar = apply_to_resolution(right, *res_reg, i, right.apply(reg), mu);
    sd.minimal = u_ring.resolution();
    sd.q = ar.complex;
    sd.i = i;
    sd.epi = tensor_homs(*ar.terms[i].outer, ku, res_reg->covers[i], Hom<K>::identity(u));
  }

  TensorTransferReport rep;
  rep.i = i;
  std::map<int, ExtMap<K>> maps;
  for (int n = lo + 1; n <= hi; ++n) {
    auto src = u_ring.group(n);
    auto tgt = i == 0 ? u_ring.group(n) : ku_ring.group(n);
    ExtMap<K> t = i == 0 ? transfer(src, kf, tgt, theta, theta) : transfer(src, kf, tgt);
    TransferDegree d;
    d.degree = n;
    d.source_dim = src->dim();
    d.target_dim = tgt->dim();
    d.rank = t.rank();
    d.bijective = t.bijective();
    Matrix<K> rho = i == 0 ? Matrix<K>::identity(src->dim()) : rotation_along(src, sd, sd, tgt).matrix;
    K sign = ((i * n) % 2 == 0) ? K(1) : K(-1);
    d.sign_ok = t.matrix == sign * rho;
    rep.degrees.push_back(d);
    maps.emplace(n, t);
  }
  // multiplicativity on sampled pairs with p + q <= hi
  std::mt19937_64 rng(seed);
  const ExtAlgebra<K>& tgt_ring = i == 0 ? u_ring : ku_ring;
  for (int p = lo + 1; p <= hi; ++p)
    for (int q = lo + 1; p + q <= hi; ++q)
      for (int s = 0; s < samples; ++s) {
        auto gp = u_ring.group(p), gq = u_ring.group(q);
        Vec<K> cx(gp->dim()), cy(gq->dim());
        for (auto& c : cx) c = K::random(rng);
        for (auto& c : cy) c = K::random(rng);
        ExtClass<K> x{gp, cx}, y{gq, cy};
        auto xy = u_ring.multiply(x, y);
        auto tpq = maps.count(p + q) ? maps.at(p + q)
                                     : (i == 0 ? transfer(u_ring.group(p + q), kf, u_ring.group(p + q), theta, theta)
                                               : transfer(u_ring.group(p + q), kf, ku_ring.group(p + q)));
        auto lhs = tpq(xy);
        auto rhs = tgt_ring.multiply(maps.at(p)(x), maps.at(q)(y));
        if (lhs.coords != rhs.coords) rep.multiplicative = false;
        ++rep.pairs_checked;
      }
  return rep;
}

// ---------------------------------------------------------------------------
// Truncated (Fg) check.

enum class FgVerdict { ConsistentUpTo, GenerationFailsAt, Suspect };

inline std::string to_string(FgVerdict v) {
  switch (v) {
    case FgVerdict::ConsistentUpTo: return "consistent-up-to";
    case FgVerdict::GenerationFailsAt: return "generation-fails-at";
    default: return "suspect";
  }
}

struct FgReport {
  int cap = 0;
  std::vector<int> hh_dims;   // degrees 0..D
  std::vector<int> ext_dims;  // Ext^n(S, S), degrees 0..D
  std::vector<int> phi_ranks;
  std::vector<int> hh_generators;  // per degree: dim HH^n minus decomposables
  int generation_degree = -1;      // -1 when none <= g_max works
  int fails_at = -1;
  FgVerdict verdict = FgVerdict::ConsistentUpTo;
  GorensteinReport precheck;

  std::string verdict_string() const {
    switch (verdict) {
      case FgVerdict::ConsistentUpTo: return "consistent-up-to(" + std::to_string(cap) + ")";
      case FgVerdict::GenerationFailsAt: return "generation-fails-at(" + std::to_string(fails_at) + ")";
      default: return "suspect";
    }
  }
};

template <class K>
FgReport fg_check(const AlgebraPtr<K>& a, int cap, int g_max, int gorenstein_bound = -1) {
  if (cap < 2 || g_max >= cap || g_max < 0) throw std::invalid_argument("fg_check needs D >= 2 and 0 <= g_max < D");
  FgReport r;
  r.cap = cap;
  r.precheck = gorenstein_report(a, gorenstein_bound < 0 ? std::max(cap, 10) : gorenstein_bound);
  auto hring = hochschild(a);
  ExtAlgebra<K> sring(semisimple_top(a));
  hring->prepare(cap);
  sring.prepare(cap);
  std::vector<ExtMap<K>> phis;
  for (int n = 0; n <= cap; ++n) {
    r.hh_dims.push_back(hring->group(n)->dim());
    r.ext_dims.push_back(sring.group(n)->dim());
    phis.push_back(phi(*hring, sring, n));
    r.phi_ranks.push_back(phis.back().rank());
  }
  // HH generators: dim HH^n minus the span of products of positive-degree pieces
  for (int n = 0; n <= cap; ++n) {
    std::vector<Vec<K>> dec;
    for (int p = 1; p < n; ++p) {
      auto gp = hring->group(p), gq = hring->group(n - p);
      for (int i = 0; i < gp->dim(); ++i)
        for (int j = 0; j < gq->dim(); ++j)
          dec.push_back(
              hring->multiply(ExtClass<K>::basis_element(gp, i), ExtClass<K>::basis_element(gq, j)).coords);
    }
    int dd = dec.empty() || r.hh_dims[n] == 0 ? 0 : static_cast<int>(Subspace<K>::span(dec, r.hh_dims[n]).dim());
    r.hh_generators.push_back(n == 0 ? r.hh_dims[0] : r.hh_dims[n] - dd);
  }
  // span of phi(HH^{n-j}) . Ext^j for j <= g, as a subspace of Ext^n
  auto spanned = [&](int n, int g) {
    const int target = r.ext_dims[n];
    if (target == 0) return true;
    if (n <= g) return true;  // phi(1) . Ext^n
    std::vector<Vec<K>> vs;
    for (int j = 0; j <= g; ++j) {
      auto gh = hring->group(n - j);
      auto ge = sring.group(j);
      for (int h = 0; h < gh->dim(); ++h) {
        ExtClass<K> ph = phis[n - j](ExtClass<K>::basis_element(gh, h));
        if (ph.is_zero()) continue;
        for (int e = 0; e < ge->dim(); ++e) vs.push_back(sring.multiply(ph, ExtClass<K>::basis_element(ge, e)).coords);
      }
    }
    return !vs.empty() && static_cast<int>(Subspace<K>::span(vs, target).dim()) == target;
  };
  for (int g = 0; g <= g_max && r.generation_degree < 0; ++g) {
    int fail = -1;
    for (int n = 1; n <= cap && fail < 0; ++n)
      if (!spanned(n, g)) fail = n;
    if (fail < 0)
      r.generation_degree = g;
    else if (g == g_max)
      r.fails_at = fail;
  }
  if (!r.precheck.gorenstein)
    r.verdict = FgVerdict::Suspect;
  else if (r.generation_degree >= 0)
    r.verdict = FgVerdict::ConsistentUpTo;
  else
    r.verdict = FgVerdict::GenerationFailsAt;
  return r;
}

}  // namespace fdhom
