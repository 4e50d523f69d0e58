#pragma once

// Injective dimensions through duality, Gorenstein certificates and the
// maximal Cohen-Macaulay test.

#include <algorithm>
#include <string>

#include "fdhom/ext.hpp"

namespace fdhom {

/// A dimension certified within a bound, or "exceeds bound".
struct BoundedDim {
  bool finite = false;
  int value = -1;
  int bound = 0;

  std::string to_string() const {
    return finite ? std::to_string(value) : "exceeds(" + std::to_string(bound) + ")";
  }
};

template <class K>
BoundedDim projective_dim(const RepPtr<K>& x, int bound) {
  auto pd = projective_dimension(x, bound);
  return pd ? BoundedDim{true, *pd, bound} : BoundedDim{false, -1, bound};
}

/// id(x) = pd of the dual over the opposite algebra.
template <class K>
BoundedDim injective_dimension(const RepPtr<K>& x, int bound) {
  return projective_dim(dual(x), bound);
}

struct GorensteinReport {
  BoundedDim left_id, right_id;
  bool gorenstein = false;
  int dimension = -1;
  int bound = 0;

  std::string verdict() const {
    return gorenstein ? "yes(" + std::to_string(dimension) + ")" : "no_evidence(" + std::to_string(bound) + ")";
  }
};

template <class K>
GorensteinReport gorenstein_report(const AlgebraPtr<K>& a, int bound) {
  if (bound < 0) throw std::invalid_argument("gorenstein_report: negative bound");
  GorensteinReport r;
  r.bound = bound;
  r.left_id = injective_dimension(regular(a), bound);
  r.right_id = injective_dimension(regular(opposite(a)), bound);
  if (r.left_id.finite && r.right_id.finite && r.left_id.value == r.right_id.value) {
    r.gorenstein = true;
    r.dimension = r.left_id.value;
  }
  return r;
}

/// Ext^i(c, regular) = 0 for 1 <= i <= window, with window max(2d, 1) by default.
template <class K>
bool is_mcm(const RepPtr<K>& c, const GorensteinReport& g, int window = -1) {
  if (!g.gorenstein) throw NoGorensteinCertificate("is_mcm needs a Gorenstein certificate");
  if (window < 0) window = std::max(2 * g.dimension, 1);
  auto res = resolve(c, window + 1);
  auto reg = regular(c->algebra());
  for (int i = 1; i <= window; ++i)
    if (ext(res, reg, i)->dim() != 0) return false;
  return true;
}

}  // namespace fdhom
