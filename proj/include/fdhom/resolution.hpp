#pragma once

// Minimal projective resolutions built from projective covers, and chain
// lifting into arbitrary exact complexes.
//
// Terms are free on generators (Proj). The i-th differential is recorded by
// the images of the generators of P_i, each an element of P_{i-1} (or of the
// module for i = 0) at the generator's vertex.

#include <string>
#include <vector>

#include "fdhom/rep.hpp"

namespace fdhom {

template <class K>
struct Resolution {
  RepPtr<K> module;
  std::vector<Proj<K>> terms;                   // P_0, P_1, ...
  std::vector<std::vector<Vec<K>>> gen_images;  // d_i on generators (i = 0: augmentation)
  std::vector<Hom<K>> diffs;                    // d_i: P_i -> P_{i-1}, i >= 1 (diffs[0] = augmentation)
  std::vector<SubRep<K>> syzygies;              // Omega^i with its inclusion into P_{i-1}; [0] = module
  std::vector<Hom<K>> covers;                   // cover epi P_i -> Omega^i
  bool terminated = false;                      // some syzygy vanished
  int pd = -1;                                  // valid when terminated (-1 for the zero module)

  int length() const { return static_cast<int>(terms.size()) - 1; }

  const Proj<K>& term(int i) const { return terms.at(i); }
  /// P_i, or the zero projective past the end of a terminated resolution.
  bool has_term(int i) const { return i < static_cast<int>(terms.size()); }
  int rank(int i) const { return has_term(i) ? terms[i].size() : 0; }

  const Hom<K>& augmentation() const { return diffs.at(0); }
  const Hom<K>& d(int i) const { return diffs.at(i); }
  const RepPtr<K>& syzygy(int i) const { return syzygies.at(i).rep; }

  /// Extend to at least P_n (no-op once terminated).
  void extend_to(int n) {
    while (!terminated && length() < n) step();
  }

  /// The resolution of Omega^i obtained by dropping the first i terms.
  Resolution shifted(int i) const {
    if (i < 0 || i >= static_cast<int>(syzygies.size())) throw std::out_of_range("shift beyond computed syzygies");
    Resolution r;
    r.module = syzygies[i].rep;
    r.syzygies.push_back(SubRep<K>{r.module, Hom<K>::identity(r.module)});
    for (std::size_t k = i; k < terms.size(); ++k) {
      r.terms.push_back(terms[k]);
      r.covers.push_back(covers[k]);
      r.cover_gen_images_.push_back(cover_gen_images_[k]);
      if (k == static_cast<std::size_t>(i)) {
        r.gen_images.push_back(cover_images(k));
        r.diffs.push_back(covers[k]);
      } else {
        r.gen_images.push_back(gen_images[k]);
        r.diffs.push_back(diffs[k]);
      }
      if (k + 1 < syzygies.size()) r.syzygies.push_back(syzygies[k + 1]);
    }
    r.terminated = terminated;
    r.pd = terminated ? pd - i : -1;
    if (r.module->total_dim() == 0) r.pd = -1;
    return r;
  }

  static Resolution start(const RepPtr<K>& x) {
    Resolution r;
    r.module = x;
    r.syzygies.push_back(SubRep<K>{x, Hom<K>::identity(x)});
    if (x->total_dim() == 0) {
      r.terminated = true;
      r.pd = -1;
    }
    return r;
  }

 private:
  std::vector<std::vector<Vec<K>>> cover_gen_images_;

  std::vector<Vec<K>> cover_images(std::size_t k) const { return cover_gen_images_.at(k); }

  void step() {
    const std::size_t i = terms.size();
    const SubRep<K>& omega = syzygies[i];
    Cover<K> c = projective_cover(omega.rep);
    terms.push_back(c.proj);
    covers.push_back(c.epi);
    cover_gen_images_.push_back(c.gen_images);
    // d_i = inclusion of Omega^i into P_{i-1} after the cover
    std::vector<Vec<K>> imgs;
    for (int k = 0; k < c.proj.size(); ++k) imgs.push_back(omega.inclusion.maps[c.proj.gens[k]] * c.gen_images[k]);
    gen_images.push_back(imgs);
    diffs.push_back(compose(omega.inclusion, c.epi));
    SubRep<K> ker = kernel(c.epi);
    syzygies.push_back(ker);
    if (ker.rep->total_dim() == 0) {
      terminated = true;
      pd = static_cast<int>(i);
    }
  }
};

template <class K>
Resolution<K> min_resolution(const RepPtr<K>& x, int n) {
  auto r = Resolution<K>::start(x);
  r.extend_to(n);
  return r;
}

template <class K>
RepPtr<K> syzygy(const RepPtr<K>& x, int i) {
  if (i == 0) return x;
  auto r = min_resolution(x, i - 1);
  if (static_cast<int>(r.syzygies.size()) <= i) return zero_rep(x->algebra());
  return r.syzygy(i);
}

/// Projective dimension if a minimal resolution terminates within `bound` steps.
template <class K>
std::optional<int> projective_dimension(const RepPtr<K>& x, int bound) {
  auto r = min_resolution(x, bound + 1);
  if (r.terminated && r.pd <= bound) return std::max(r.pd, 0);
  return std::nullopt;
}

/// An exact complex of modules ... -> Q_1 -> Q_0 -> M -> 0, given by its terms
/// and maps (maps[0]: Q_0 -> M, maps[k]: Q_k -> Q_{k-1}).
template <class K>
struct RepComplex {
  RepPtr<K> module;
  std::vector<RepPtr<K>> terms;
  std::vector<Hom<K>> maps;

  int length() const { return static_cast<int>(terms.size()) - 1; }
};

template <class K>
RepComplex<K> as_complex(const Resolution<K>& r) {
  RepComplex<K> c;
  c.module = r.module;
  for (const auto& t : r.terms) c.terms.push_back(t.rep);
  c.maps = r.diffs;
  return c;
}

/// A lifted chain map: for each step k, the images of the generators of
/// P_{n+k} (source resolution) in Q_k, at the generator's vertex.
template <class K>
struct ChainLift {
  int offset = 0;
  std::vector<std::vector<Vec<K>>> images;

  Hom<K> hom(const Resolution<K>& src, const RepComplex<K>& tgt, int k) const {
    return src.term(offset + k).hom_to(tgt.terms[k], images[k]);
  }
};

/// Lift f: P_n -> M (given on generators, with f d_{n+1} = 0) to a chain map
/// P_{n+k} -> Q_k for k = 0..steps. Solutions take free variables zero, so
/// the lift is deterministic.
template <class K>
ChainLift<K> lift_chain_map(Resolution<K>& src, int n, const RepComplex<K>& tgt, const std::vector<Vec<K>>& f,
                            int steps) {
  src.extend_to(n + steps);
  ChainLift<K> out;
  out.offset = n;
  std::vector<Vec<K>> prev_targets = f;  // what generator images must map to, per generator
  for (int k = 0; k <= steps; ++k) {
    if (!src.has_term(n + k) || k > tgt.length()) {
      // past the end of either complex the map is zero
      std::vector<Vec<K>> zeros;
      if (src.has_term(n + k))
        for (int g : src.term(n + k).gens) zeros.push_back(Vec<K>(k <= tgt.length() ? tgt.terms[k]->dim(g) : 0, K(0)));
      out.images.push_back(zeros);
      if (k > tgt.length()) break;
      continue;
    }
    const Proj<K>& p = src.term(n + k);
    std::vector<Vec<K>> imgs;
    for (int g = 0; g < p.size(); ++g) {
      const int v = p.gens[g];
      auto sol = solve_vec(tgt.maps[k].maps[v], prev_targets[g]);
      if (!sol) throw std::logic_error("chain lift failed: target complex is not exact");
      imgs.push_back(*sol);
    }
    out.images.push_back(imgs);
    if (k == steps) break;
    // targets for the next step: F_k(d_{n+k+1}(generator))
    if (!src.has_term(n + k + 1)) continue;
    Hom<K> fk = p.hom_to(tgt.terms[k], imgs);
    const Proj<K>& next = src.term(n + k + 1);
    prev_targets.clear();
    for (int g = 0; g < next.size(); ++g) {
      const int v = next.gens[g];
      prev_targets.push_back(fk.maps[v] * src.gen_images[n + k + 1][g]);
    }
  }
  return out;
}

}  // namespace fdhom
