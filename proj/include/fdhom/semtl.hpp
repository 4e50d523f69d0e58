#pragma once

// Singular equivalences of Morita type (with level): the defining conditions,
// level operations, Ext transfer and the Hochschild and (Fg) comparisons.

#include <random>
#include <string>

#include "fdhom/hochschild.hpp"

namespace fdhom {

/// M over lambda (x) sigma^op, N over sigma (x) lambda^op, level l.
template <class K>
struct SemtlData {
  AlgebraPtr<K> lambda, sigma;
  RepPtr<K> m, n;
  int level = 0;
};

enum class Verdict { Pass, Fail, Undecided };

inline std::string to_string(Verdict v) {
  return v == Verdict::Pass ? "pass" : v == Verdict::Fail ? "fail" : "undecided";
}

struct ConditionResult {
  Verdict verdict = Verdict::Fail;
  std::string detail;
  std::vector<int> lhs_dims, rhs_dims;  // stripped tensor product and syzygy, for (3)-(4)
  std::vector<int> removed;             // vertices of stripped projective summands
};

struct SemtlReport {
  int level = 0;
  ConditionResult cond[4];
  bool pass() const {
    for (const auto& c : cond)
      if (c.verdict != Verdict::Pass) return false;
    return true;
  }
};

namespace detail {

template <class K>
void check_bimodule(const RepPtr<K>& x, const AlgebraPtr<K>& l, const AlgebraPtr<K>& r, const std::string& name) {
  const auto& f = x->algebra()->factors();
  if (!f || !same_algebra(f->left, l) || !same_algebra(f->right, opposite(r)))
    throw AlgebraMismatch(name + " is not a bimodule over " + l->name() + " and " + r->name());
}

template <class K>
ConditionResult projective_both_sides(const RepPtr<K>& x, const std::string& left, const std::string& right) {
  ConditionResult c;
  bool l = is_projective(restrict_left(x));
  bool r = is_projective(restrict_right(x));
  c.verdict = l && r ? Verdict::Pass : Verdict::Fail;
  c.detail = std::string("projective over ") + left + ": " + (l ? "yes" : "no") + ", over " + right + ": " +
             (r ? "yes" : "no");
  return c;
}

template <class K>
ConditionResult stable_iso(const RepPtr<K>& lhs, const RepPtr<K>& syz, const SearchOptions& opt) {
  ConditionResult c;
  auto a = strip_projectives(lhs);
  auto b = strip_projectives(syz);
  c.lhs_dims = a.rep->dims();
  c.rhs_dims = b.rep->dims();
  c.removed = a.removed;
  try {
    auto iso = is_isomorphic(a.rep, b.rep, opt);
    c.verdict = iso.isomorphic ? Verdict::Pass : Verdict::Fail;
    c.detail = iso.isomorphic ? "stably isomorphic" : "not stably isomorphic";
  } catch (const Undecided& e) {
    c.verdict = Verdict::Undecided;
    c.detail = e.what();
  }
  return c;
}

}  // namespace detail

template <class K>
SemtlReport check_semtl(const SemtlData<K>& d, const SearchOptions& opt = {}) {
  detail::check_bimodule(d.m, d.lambda, d.sigma, "M");
  detail::check_bimodule(d.n, d.sigma, d.lambda, "N");
  if (d.level < 0) throw std::invalid_argument("negative level");
  SemtlReport r;
  r.level = d.level;
  r.cond[0] = detail::projective_both_sides(d.m, d.lambda->name(), d.sigma->name());
  r.cond[1] = detail::projective_both_sides(d.n, d.sigma->name(), d.lambda->name());
  auto mn = tensor_over(view_bimodule(d.m), view_bimodule(d.n));
  auto nm = tensor_over(view_bimodule(d.n), view_bimodule(d.m));
  r.cond[2] = detail::stable_iso(mn.rep, syzygy(regular_bimodule(d.lambda), d.level), opt);
  r.cond[3] = detail::stable_iso(nm.rep, syzygy(regular_bimodule(d.sigma), d.level), opt);
  return r;
}

// ---------------------------------------------------------------------------
// Stable equivalence of Morita type up to finite projective dimension.

struct SemtReport {
  bool lambda_split = false, sigma_split = false;
  Verdict lambda_rest = Verdict::Fail, sigma_rest = Verdict::Fail;  // remainder iso to X, Y
  int pd_x = -1, pd_y = -1;
  bool pass() const {
    return lambda_split && sigma_split && lambda_rest == Verdict::Pass && sigma_rest == Verdict::Pass;
  }
};

namespace detail {

template <class K>
Verdict remainder_matches(const RepPtr<K>& t, const RepPtr<K>& reg, const RepPtr<K>& x, bool& split,
                          const SearchOptions& opt) {
  auto rest = split_off_summand(t, reg, opt);
  split = rest.has_value();
  if (!rest) return Verdict::Fail;
  try {
    return is_isomorphic(*rest, x, opt).isomorphic ? Verdict::Pass : Verdict::Fail;
  } catch (const Undecided&) {
    return Verdict::Undecided;
  }
}

}  // namespace detail

/// M (x) N = Lambda + X and N (x) M = Sigma + Y with pd X, pd Y finite (certified within `cap`).
template <class K>
SemtReport check_semt(const SemtlData<K>& d, const RepPtr<K>& x, const RepPtr<K>& y, int cap = 16,
                      const SearchOptions& opt = {}) {
  detail::check_bimodule(d.m, d.lambda, d.sigma, "M");
  detail::check_bimodule(d.n, d.sigma, d.lambda, "N");
  SemtReport r;
  auto mn = tensor_over(view_bimodule(d.m), view_bimodule(d.n));
  auto nm = tensor_over(view_bimodule(d.n), view_bimodule(d.m));
  r.lambda_rest = detail::remainder_matches(mn.rep, regular_bimodule(d.lambda), x, r.lambda_split, opt);
  r.sigma_rest = detail::remainder_matches(nm.rep, regular_bimodule(d.sigma), y, r.sigma_split, opt);
  auto px = projective_dimension(x, cap);
  if (!px) throw PdBoundExceeded("pd(X) not certified within " + std::to_string(cap), cap);
  auto py = projective_dimension(y, cap);
  if (!py) throw PdBoundExceeded("pd(Y) not certified within " + std::to_string(cap), cap);
  r.pd_x = *px;
  r.pd_y = *py;
  return r;
}

/// Level l = max(pd X, pd Y) with M replaced by its minimal l-th syzygy.
template <class K>
SemtlData<K> lift_semt_to_semtl(const SemtlData<K>& d, const SemtReport& r) {
  if (!r.pass()) throw HypothesisFailed("semt data did not pass");
  SemtlData<K> out = d;
  out.level = std::max({r.pd_x, r.pd_y, 0});
  out.m = syzygy(d.m, out.level);
  return out;
}

template <class K>
SemtlData<K> increase_level(const SemtlData<K>& d) {
  SemtlData<K> out = d;
  out.level = d.level + 1;
  out.m = syzygy(d.m, 1);
  return out;
}

// ---------------------------------------------------------------------------
// Ext transfer.

enum class Direction { LambdaToSigma, SigmaToLambda };

/// N (x)_Lambda - (or M (x)_Sigma -) as a map Ext^n(A, B) -> Ext^n(F A, F B).
/// Returns the map together with the groups it was computed in.
template <class K>
ExtMap<K> transfer_ext(const SemtlData<K>& d, Direction dir, const ResolutionPtr<K>& res_a, const RepPtr<K>& b, int n) {
  const RepPtr<K>& w = dir == Direction::LambdaToSigma ? d.n : d.m;
  TensorFunctor<K> f{w, nullptr};
  auto fa = f.apply(res_a->module).rep;
  auto fb = f.apply(b).rep;
  auto src = ext(res_a, b, n);
  auto tgt = ext(resolve(fa, n + 1), fb, n);
  return transfer(src, f, tgt);
}

struct DegreeCheck {
  int degree = 0;
  int lhs_dim = 0, rhs_dim = 0;
  int rank = 0;
  bool in_window = false;
  bool ok = false;
};

struct ExtIsoReport {
  int d = 0;
  std::vector<DegreeCheck> degrees;
  bool pass() const {
    for (const auto& c : degrees)
      if (c.in_window && !c.ok) return false;
    return true;
  }
};

/// Degreewise comparison Ext^n_Lambda(a, b) vs Ext^n_Sigma(N a, N b), asserted for d < n <= D.
template <class K>
ExtIsoReport verify_ext_iso(const SemtlData<K>& d, const GorensteinReport& gl, const GorensteinReport& gs,
                            const RepPtr<K>& a, const RepPtr<K>& b, int cap, int from = -1) {
  if (!gl.gorenstein || !gs.gorenstein) throw NoGorensteinCertificate("verify_ext_iso needs both algebras Gorenstein");
  ExtIsoReport r;
  r.d = std::max(gl.dimension, gs.dimension);
  const int lo = from < 0 ? r.d : from;
  auto res_a = resolve(a, cap + 1);
  for (int n = 0; n <= cap; ++n) {
    auto t = transfer_ext(d, Direction::LambdaToSigma, res_a, b, n);
    DegreeCheck c;
    c.degree = n;
    c.lhs_dim = t.source->dim();
    c.rhs_dim = t.target->dim();
    c.rank = t.rank();
    c.in_window = n > lo;
    c.ok = t.bijective();
    r.degrees.push_back(c);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Hochschild transfer.

namespace detail {

/// Identification of Ext(Omega, Omega) with Ext(Z, Z) through maps
/// p: Z -> Omega and s: Omega -> Z factoring through the common stripped core
/// C, so that p s and s p are the identity up to projective summands.
template <class K>
struct SplitTransport {
  Hom<K> p, s;
};

template <class K>
SplitTransport<K> split_transport(const RepPtr<K>& z, const RepPtr<K>& omega, const SearchOptions& opt) {
  if (auto sp = find_split_epi(z, omega, opt)) return {sp->epi, sp->section};
  auto core = strip_projectives(omega).rep;
  auto zc = find_split_epi(z, core, opt);
  auto oc = find_split_epi(omega, core, opt);
  if (!zc || !oc) throw HypothesisFailed("syzygy and tensor product are not stably isomorphic");
  return {compose(oc->section, zc->epi), compose(zc->section, oc->epi)};
}

template <class K>
ExtMap<K> transport(const ExtGroupPtr<K>& src, const SplitTransport<K>& t, const ExtGroupPtr<K>& tgt) {
  auto mid = ext(src->resolution(), tgt->target(), src->degree());
  return then(pushforward(src, t.s, mid), pullback(mid, t.p, tgt));
}

}  // namespace detail

struct HhDegree {
  int degree = 0;
  int dim_lambda = 0, dim_sigma = 0;
  bool in_window = false;
  bool forward_injective = false;   // N (x) - (x) M
  bool backward_injective = false;  // M (x) - (x) N
  bool bijective = false;           // composite with the rotation
};

struct HhTransferReport {
  int d = 0;
  std::vector<HhDegree> degrees;
  int pairs_checked = 0;
  bool multiplicative = true;
  bool pass() const {
    if (!multiplicative) return false;
    for (const auto& x : degrees)
      if (x.in_window && (x.dim_lambda != x.dim_sigma || !x.bijective || !x.forward_injective || !x.backward_injective))
        return false;
    return true;
  }
};

namespace detail {

/// F = W (x) - (x) W' on HH^n(A) with values in Ext(W (x) W', W (x) W'), where
/// the identification W (x) A (x) W' -> W (x) W' uses the right unit.
template <class K>
struct HhLeg {
  TensorFunctor<K> f;
  TensorProduct<K> ww;  // W (x) W'
  std::optional<Hom<K>> theta;
};

template <class K>
HhLeg<K> hh_leg(const RepPtr<K>& w, const RepPtr<K>& w2, const RepPtr<K>& reg) {
  HhLeg<K> l{TensorFunctor<K>{w, w2}, tensor_over(view_bimodule(w), view_bimodule(w2)), std::nullopt};
  auto fa = l.f.apply(reg);
  Hom<K> ru = right_unit(*fa.inner);  // W (x) A -> W
  l.theta = tensor_homs(*fa.outer, l.ww, ru, Hom<K>::identity(w2));
  return l;
}

}  // namespace detail

/// HH^n(Lambda) -> Ext^n(Z, Z) <- HH^n(Sigma) with Z = N (x) M and the right
/// leg given by rotation rho'_l followed by the stable identification.
template <class K>
HhTransferReport verify_hh_transfer(const SemtlData<K>& d, const GorensteinReport& gl, const GorensteinReport& gs,
                                    int cap, int samples = 4, std::uint64_t seed = 0, const SearchOptions& opt = {}) {
  if (d.level < 1) throw HypothesisFailed("HH transfer needs level >= 1");
  if (!gl.gorenstein || !gs.gorenstein) throw NoGorensteinCertificate("verify_hh_transfer needs both algebras Gorenstein");
  HhTransferReport r;
  r.d = std::max({d.level, 2 * gl.dimension, 2 * gs.dimension});
  auto hl = hochschild(d.lambda);
  auto hs = hochschild(d.sigma);
  auto fwd = detail::hh_leg(d.n, d.m, hl->module());  // into Ext over Sigma^e
  auto bwd = detail::hh_leg(d.m, d.n, hs->module());  // into Ext over Lambda^e
  ExtAlgebra<K> z_sigma(fwd.ww.rep), z_lambda(bwd.ww.rep);
  // rotation on HH(Sigma) to Ext(Omega^l Sigma, Omega^l Sigma)
  auto omega_s = hs->resolution();
  omega_s->extend_to(cap + d.level + 1);
  ExtAlgebra<K> omega_ring(omega_s->syzygy(d.level));
  auto tr = detail::split_transport(fwd.ww.rep, omega_ring.module(), opt);

  std::map<int, Matrix<K>> psi;  // HH^n(Lambda) -> HH^n(Sigma)
  for (int n = 1; n <= cap; ++n) {
    HhDegree x;
    x.degree = n;
    x.dim_lambda = hl->group(n)->dim();
    x.dim_sigma = hs->group(n)->dim();
    x.in_window = n > r.d;
    if (x.in_window) {
      auto t = transfer(hl->group(n), fwd.f, z_sigma.group(n), fwd.theta, fwd.theta);
      auto back = transfer(hs->group(n), bwd.f, z_lambda.group(n), bwd.theta, bwd.theta);
      x.forward_injective = t.injective();
      x.backward_injective = back.injective();
      auto rot = rotation_along(hs->group(n), minimal_syzygy_data(omega_s, d.level),
                                minimal_syzygy_data(omega_s, d.level), omega_ring.group(n));
      auto s = then(rot, detail::transport(omega_ring.group(n), tr, z_sigma.group(n)));
      // psi with s psi = t
      auto sol = s.injective() ? solve_right(s.matrix, t.matrix) : std::nullopt;
      x.bijective = sol.has_value() && x.dim_lambda == x.dim_sigma && rank(sol->particular) == std::size_t(x.dim_sigma);
      if (sol) psi.emplace(n, sol->particular);
    }
    r.degrees.push_back(x);
  }
  // ring structure: psi(x y) = psi(x) psi(y) on sampled in-window pairs
  std::mt19937_64 rng(seed);
  for (int p = r.d + 1; p <= cap; ++p)
    for (int q = r.d + 1; p + q <= cap; ++q) {
      if (!psi.count(p) || !psi.count(q) || !psi.count(p + q)) continue;
      for (int s = 0; s < samples; ++s) {
        auto gp = hl->group(p), gq = hl->group(q);
        Vec<K> cx(gp->dim()), cy(gq->dim());
        for (auto& c : cx) c = K::random(rng);
        for (auto& c : cy) c = K::random(rng);
        auto xy = hl->multiply({gp, cx}, {gq, cy});
        Vec<K> lhs = psi.at(p + q) * xy.coords;
        auto rhs = hs->multiply({hs->group(p), psi.at(p) * cx}, {hs->group(q), psi.at(q) * cy});
        if (lhs != rhs.coords) r.multiplicative = false;
        ++r.pairs_checked;
      }
    }
  return r;
}

// ---------------------------------------------------------------------------
// The commutative diagram relating phi_A and phi_{N (x) A}.

struct DiagramDegree {
  int degree = 0;
  bool top_square = false;     // (- (x) A) rho_l = rho'_l phi_A
  bool bottom_square = false;  // (M (x) -) phi_B = (- (x) A)(M (x) - (x) N)
  bool outer = false;          // phi_B f = g phi_A
  bool f_iso = false, g_iso = false;
};

struct FgDiagramReport {
  int d = 0;
  std::vector<DiagramDegree> degrees;
  std::string fg_lambda, fg_sigma;
  bool verdicts_agree = false;
  bool pass() const {
    for (const auto& x : degrees)
      if (!x.top_square || !x.bottom_square || !x.outer || !x.f_iso || !x.g_iso) return false;
    return verdicts_agree;
  }
};

template <class K>
FgDiagramReport verify_fg_transfer_diagram(const SemtlData<K>& d, const GorensteinReport& gl,
                                           const GorensteinReport& gs, int cap, int g_max = 1,
                                           const SearchOptions& opt = {}) {
  if (d.level < 1) throw HypothesisFailed("the diagram needs level >= 1");
  if (!gl.gorenstein || !gs.gorenstein)
    throw NoGorensteinCertificate("verify_fg_transfer_diagram needs both algebras Gorenstein");
  FgDiagramReport r;
  const int l = d.level;
  r.d = std::max({l, 2 * gl.dimension, 2 * gs.dimension});

  auto hl = hochschild(d.lambda);
  auto hs = hochschild(d.sigma);
  auto reg = hl->module();
  auto a = semisimple_top(d.lambda);
  ExtAlgebra<K> a_ring(a);

  // Z = M (x) N over Lambda^e, Z (x) A over Lambda, B = N (x) A over Sigma
  auto leg = detail::hh_leg(d.m, d.n, hs->module());
  auto z = leg.ww.rep;
  ExtAlgebra<K> z_ring(z);
  TensorFunctor<K> tensor_a{nullptr, a};
  auto za = tensor_over(view_bimodule(z), view_left(a));
  ExtAlgebra<K> za_ring(za.rep);
  auto na = tensor_over(view_bimodule(d.n), view_left(a));
  ExtAlgebra<K> b_ring(na.rep);

  // Omega^l Lambda and its identification with Z
  auto res_reg = hl->resolution();
  res_reg->extend_to(cap + l + 1);
  auto omega = res_reg->syzygy(l);
  ExtAlgebra<K> omega_ring(omega);
  auto tr = detail::split_transport(z, omega, opt);
  auto oa = tensor_over(view_bimodule(omega), view_left(a));
  ExtAlgebra<K> oa_ring(oa.rep);
  detail::SplitTransport<K> tra{tensor_homs(za, oa, tr.p, Hom<K>::identity(a)),
                                tensor_homs(oa, za, tr.s, Hom<K>::identity(a))};

  // rotation along P (x)_Lambda A
  auto lu = tensor_over(view_bimodule(reg), view_left(a));
  Hom<K> mu = left_unit(lu);
  auto applied = apply_to_resolution(tensor_a, *res_reg, l, tensor_a.apply(reg), mu);
  SyzygyData<K> sa;
  sa.minimal = a_ring.resolution();
  sa.q = applied.complex;
  sa.i = l;
  sa.epi = tensor_homs(*applied.terms[l].outer, oa, res_reg->covers[l], Hom<K>::identity(a));

  // M (x) (N (x) A) -> (M (x) N) (x) A
  TensorFunctor<K> m_left{d.m, nullptr};
  auto m_na = tensor_over(view_bimodule(d.m), na.view);
  Hom<K> alpha_inv = inverse(associator(leg.ww, za, na, m_na));

  for (int n = r.d + 1; n <= cap; ++n) {
    DiagramDegree x;
    x.degree = n;
    auto phi_a = phi(*hl, a_ring, n);
    auto phi_b = phi(*hs, b_ring, n);
    auto rho = then(rotation_along(hl->group(n), minimal_syzygy_data(res_reg, l), minimal_syzygy_data(res_reg, l),
                                   omega_ring.group(n)),
                    detail::transport(omega_ring.group(n), tr, z_ring.group(n)));
    auto rho_p = then(rotation_along(a_ring.group(n), sa, sa, oa_ring.group(n)),
                      detail::transport(oa_ring.group(n), tra, za_ring.group(n)));
    auto down = transfer(z_ring.group(n), tensor_a, za_ring.group(n));        // - (x) A
    auto mnn = transfer(hs->group(n), leg.f, z_ring.group(n), leg.theta, leg.theta);  // M (x) - (x) N
    auto m_b = transfer(b_ring.group(n), m_left, za_ring.group(n), alpha_inv, alpha_inv);  // M (x) -

    x.top_square = then(rho, down).matrix == then(phi_a, rho_p).matrix;
    x.bottom_square = then(phi_b, m_b).matrix == then(mnn, down).matrix;
    auto f = mnn.bijective() ? solve_right(mnn.matrix, rho.matrix) : std::nullopt;
    auto g = m_b.bijective() ? solve_right(m_b.matrix, rho_p.matrix) : std::nullopt;
    x.f_iso = f && rho.bijective();
    x.g_iso = g && rho_p.bijective();
    if (f && g) x.outer = phi_b.matrix * f->particular == g->particular * phi_a.matrix;
    r.degrees.push_back(x);
  }
  auto fl = fg_check(d.lambda, cap, g_max);
  auto fs = fg_check(d.sigma, cap, g_max);
  r.fg_lambda = fl.verdict_string();
  r.fg_sigma = fs.verdict_string();
  r.verdicts_agree = fl.verdict == fs.verdict;
  return r;
}

}  // namespace fdhom
