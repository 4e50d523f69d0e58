#pragma once

// Quivers, paths and path-algebra polynomials.
//
// Paths are stored in traversal order (first arrow first). Text uses
// composition order, so "b*a" is the path that runs a and then b.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdhom/field.hpp"

namespace fdhom {

struct Arrow {
  std::string name;
  int source = 0;
  int target = 0;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

class Quiver {
 public:
  Quiver() = default;
  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
      : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      for (std::size_t j = i + 1; j < vertices_.size(); ++j)
        if (vertices_[i] == vertices_[j]) throw std::invalid_argument("duplicate vertex name " + vertices_[i]);
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
      const auto& a = arrows_[i];
      if (a.source < 0 || a.target < 0 || a.source >= num_vertices() || a.target >= num_vertices())
        throw std::invalid_argument("arrow " + a.name + " uses an undeclared vertex");
      for (std::size_t j = i + 1; j < arrows_.size(); ++j)
        if (arrows_[j].name == a.name) throw std::invalid_argument("duplicate arrow name " + a.name);
    }
  }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_arrows() const { return static_cast<int>(arrows_.size()); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(int i) const { return arrows_.at(i); }

  int vertex_index(const std::string& name) const {
    for (int i = 0; i < num_vertices(); ++i)
      if (vertices_[i] == name) return i;
    return -1;
  }
  int arrow_index(const std::string& name) const {
    for (int i = 0; i < num_arrows(); ++i)
      if (arrows_[i].name == name) return i;
    return -1;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
};

/// A path of the quiver. Trivial paths have no arrows and source == target.
struct Word {
  int source = 0;
  int target = 0;
  std::vector<int> arrows;

  std::size_t length() const { return arrows.size(); }
  friend bool operator==(const Word&, const Word&) = default;
};

/// Concatenation in traversal order (u first, then v). Caller checks composability.
inline Word concat(const Word& u, const Word& v) {
  Word w{u.source, v.target, u.arrows};
  w.arrows.insert(w.arrows.end(), v.arrows.begin(), v.arrows.end());
  return w;
}

inline Word subword(const Word& w, std::size_t pos, std::size_t len, const Quiver& q) {
  if (len == 0) {
    int v = pos < w.length() ? q.arrow(w.arrows[pos]).source : w.target;
    return Word{v, v, {}};
  }
  Word s;
  s.arrows.assign(w.arrows.begin() + pos, w.arrows.begin() + pos + len);
  s.source = q.arrow(s.arrows.front()).source;
  s.target = q.arrow(s.arrows.back()).target;
  return s;
}

inline Word word_from_arrows(const Quiver& q, std::vector<int> arrows) {
  if (arrows.empty()) throw std::invalid_argument("empty arrow list has no endpoints");
  for (std::size_t i = 1; i < arrows.size(); ++i)
    if (q.arrow(arrows[i - 1]).target != q.arrow(arrows[i]).source)
      throw std::invalid_argument("arrows do not compose into a path");
  Word w{q.arrow(arrows.front()).source, q.arrow(arrows.back()).target, std::move(arrows)};
  return w;
}

/// Admissible monomial orders: length first, then lexicographic on arrow
/// indices read either from the first arrow or from the last one.
enum class LexDirection { FromFirst, FromLast };

struct WordOrder {
  LexDirection dir = LexDirection::FromFirst;

  bool operator()(const Word& a, const Word& b) const {  // a < b
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.length() == 0) {
      if (a.source != b.source) return a.source < b.source;
      return false;
    }
    const std::size_t n = a.length();
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t i = dir == LexDirection::FromFirst ? k : n - 1 - k;
      if (a.arrows[i] != b.arrows[i]) return a.arrows[i] < b.arrows[i];
    }
    return false;
  }
};

/// Linear combination of parallel paths, ordered by a monomial order.
template <class K>
class Poly {
 public:
  using Terms = std::map<Word, K, WordOrder>;

  explicit Poly(WordOrder order = {}) : terms_(order) {}

  static Poly monomial(Word w, K c, WordOrder order = {}) {
    Poly p(order);
    if (!c.is_zero()) p.terms_.emplace(std::move(w), std::move(c));
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  const Word& leading_word() const { return terms_.rbegin()->first; }
  const K& leading_coeff() const { return terms_.rbegin()->second; }

  void add(const Word& w, const K& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  void add(const Poly& o, const K& scale) {
    for (const auto& [w, c] : o.terms_) add(w, c * scale);
  }
  void scale(const K& s) {
    for (auto& [w, c] : terms_) c *= s;
  }
  void make_monic() {
    if (!is_zero()) scale(leading_coeff().inverse());
  }

  /// prefix ++ p ++ suffix, in traversal order.
  Poly sandwich(const Word& prefix, const Word& suffix) const {
    Poly r(terms_.key_comp());
    for (const auto& [w, c] : terms_) r.terms_.emplace(concat(concat(prefix, w), suffix), c);
    return r;
  }

  /// Re-sort the terms under another order.
  Poly reorder(WordOrder order) const {
    Poly r(order);
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, c);
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    for (; i != a.terms_.end(); ++i, ++j)
      if (!(i->first == j->first) || i->second != j->second) return false;
    return true;
  }

 private:
  Terms terms_;
};

/// Written form of a path in composition order, e.g. "b*a".
inline std::string word_to_string(const Word& w, const Quiver& q) {
  if (w.arrows.empty()) return "e_" + q.vertices()[w.source];
  std::string s;
  for (auto it = w.arrows.rbegin(); it != w.arrows.rend(); ++it) {
    if (!s.empty()) s += "*";
    s += q.arrow(*it).name;
  }
  return s;
}

template <class K>
std::string poly_to_string(const Poly<K>& p, const Quiver& q) {
  if (p.is_zero()) return "0";
  std::string s;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [w, c] = *it;
    std::string cs = c.to_string();
    bool unit = cs == "1";
    bool neg_unit = (K(0) - c) == K(1);
    if (!s.empty()) s += neg_unit ? " - " : " + ";
    else if (neg_unit) s += "-";
    if (!unit && !neg_unit) s += cs + " ";
    s += word_to_string(w, q);
  }
  return s;
}

}  // namespace fdhom
