#pragma once

// Noncommutative Buchberger completion for path algebras and reduction to
// normal form. Orders are length-first, so every rewrite shortens or keeps
// the length and the process terminates once the leading words are bounded.

#include <algorithm>
#include <deque>
#include <vector>

#include "fdhom/errors.hpp"
#include "fdhom/quiver.hpp"

namespace fdhom {

template <class K>
class RewritingSystem {
 public:
  RewritingSystem() = default;
  RewritingSystem(Quiver q, WordOrder order, std::vector<Poly<K>> rules)
      : quiver_(std::move(q)), order_(order), rules_(std::move(rules)) {}

  const std::vector<Poly<K>>& rules() const { return rules_; }
  WordOrder order() const { return order_; }

  /// Position of the first rule whose leading word occurs in w: (rule, offset).
  std::pair<int, std::size_t> find_reducer(const Word& w) const {
    for (std::size_t r = 0; r < rules_.size(); ++r) {
      const auto& u = rules_[r].leading_word().arrows;
      if (u.size() > w.length()) continue;
      for (std::size_t pos = 0; pos + u.size() <= w.length(); ++pos)
        if (std::equal(u.begin(), u.end(), w.arrows.begin() + pos)) return {static_cast<int>(r), pos};
    }
    return {-1, 0};
  }

  bool is_normal(const Word& w) const { return find_reducer(w).first < 0; }

  /// Rewrite using the rules in the given order of preference (indices into rules()).
  /// Any order yields the same normal form when the system is complete.
  Poly<K> reduce(Poly<K> p, const std::vector<int>* preference = nullptr) const {
    Poly<K> result(order_);
    p = p.reorder(order_);
    while (!p.is_zero()) {
      Word w = p.leading_word();
      K c = p.leading_coeff();
      auto [r, pos] = preference ? find_preferred(w, *preference) : find_reducer(w);
      if (r < 0) {
        result.add(w, c);
        p.add(w, -c);
        continue;
      }
      const auto& rule = rules_[r];
      Word prefix = subword(w, 0, pos, quiver_);
      std::size_t len = rule.leading_word().length();
      Word suffix = subword(w, pos + len, w.length() - pos - len, quiver_);
      p.add(rule.sandwich(prefix, suffix), -c);
    }
    return result;
  }

 private:
  std::pair<int, std::size_t> find_preferred(const Word& w, const std::vector<int>& pref) const {
    for (int r : pref) {
      const auto& u = rules_[r].leading_word().arrows;
      if (u.size() > w.length()) continue;
      for (std::size_t pos = 0; pos + u.size() <= w.length(); ++pos)
        if (std::equal(u.begin(), u.end(), w.arrows.begin() + pos)) return {r, pos};
    }
    return {-1, 0};
  }

  Quiver quiver_;
  WordOrder order_;
  std::vector<Poly<K>> rules_;
};

namespace detail {

template <class K>
std::vector<Poly<K>> interreduce(const Quiver& q, WordOrder order, std::vector<Poly<K>> gens) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& g : gens) g.make_monic();
    // drop zeros and duplicates, shortest leading words first
    std::sort(gens.begin(), gens.end(), [&](const Poly<K>& a, const Poly<K>& b) {
      if (a.is_zero() != b.is_zero()) return !a.is_zero();
      if (a.is_zero()) return false;
      return order(a.leading_word(), b.leading_word());
    });
    while (!gens.empty() && gens.back().is_zero()) gens.pop_back();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::vector<Poly<K>> others;
      for (std::size_t j = 0; j < gens.size(); ++j)
        if (j != i) others.push_back(gens[j]);
      RewritingSystem<K> rs(q, order, others);
      Poly<K> red = rs.reduce(gens[i]);
      red.make_monic();
      if (!(red == gens[i])) {
        gens[i] = red;
        changed = true;
        break;
      }
    }
  }
  return gens;
}

}  // namespace detail

/// Complete the relations to a reduced Gröbner basis. Throws
/// NotFiniteDimensional when a leading word longer than `cap` appears.
template <class K>
RewritingSystem<K> complete(const Quiver& q, const std::vector<Poly<K>>& relations, WordOrder order, int cap) {
  std::vector<Poly<K>> gens;
  for (const auto& r : relations) gens.push_back(r.reorder(order));
  gens = detail::interreduce(q, order, gens);

  for (int round = 0;; ++round) {
    if (round > 4 * cap + 64)
      throw NotFiniteDimensional("Gröbner completion did not stabilize", cap);
    RewritingSystem<K> rs(q, order, gens);
    std::vector<Poly<K>> fresh;
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = 0; j < gens.size(); ++j) {
        const Word& u = gens[i].leading_word();
        const Word& v = gens[j].leading_word();
        for (std::size_t k = 1; k < std::min(u.length(), v.length()); ++k) {
          if (!std::equal(u.arrows.end() - k, u.arrows.end(), v.arrows.begin())) continue;
          Word a = subword(u, 0, u.length() - k, q);
          Word b = subword(v, k, v.length() - k, q);
          Word empty_left{u.source, u.source, {}};
          Word empty_right{v.target, v.target, {}};
          Poly<K> s = gens[i].sandwich(empty_left, b);
          s.add(gens[j].sandwich(a, empty_right), K(-1));
          s = rs.reduce(s);
          if (!s.is_zero()) {
            if (static_cast<int>(s.leading_word().length()) > cap)
              throw NotFiniteDimensional("Gröbner basis element exceeds path length cap", cap);
            fresh.push_back(std::move(s));
          }
        }
      }
    if (fresh.empty()) return rs;
    gens.insert(gens.end(), fresh.begin(), fresh.end());
    gens = detail::interreduce(q, order, gens);
  }
}

/// Normal words (basis paths), including trivial paths, sorted by the order.
template <class K>
std::vector<Word> normal_words(const Quiver& q, const RewritingSystem<K>& rs, int cap) {
  std::vector<Word> out;
  std::vector<Word> layer;
  for (int v = 0; v < q.num_vertices(); ++v) layer.push_back(Word{v, v, {}});
  for (int len = 0; !layer.empty(); ++len) {
    if (len >= cap)
      throw NotFiniteDimensional("irreducible paths of length " + std::to_string(cap) + " remain", cap);
    std::sort(layer.begin(), layer.end(), rs.order());
    out.insert(out.end(), layer.begin(), layer.end());
    std::vector<Word> next;
    for (const auto& w : layer)
      for (int a = 0; a < q.num_arrows(); ++a) {
        if (q.arrow(a).source != w.target) continue;
        Word ext = w.length() == 0 ? Word{w.source, q.arrow(a).target, {a}} : concat(w, Word{q.arrow(a).source, q.arrow(a).target, {a}});
        // w is normal, so only suffixes of ext can be leading words
        bool normal = true;
        for (const auto& r : rs.rules()) {
          const auto& u = r.leading_word().arrows;
          if (u.size() <= ext.length() && std::equal(u.begin(), u.end(), ext.arrows.end() - u.size())) {
            normal = false;
            break;
          }
        }
        if (normal) next.push_back(std::move(ext));
      }
    layer = std::move(next);
  }
  return out;
}

}  // namespace fdhom
