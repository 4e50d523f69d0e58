#pragma once

// Exact scalar types: prime fields Z/p and the rationals.

#include <cstdint>
#include <gmpxx.h>
#include <random>
#include <stdexcept>
#include <string>

namespace fdhom {

/// Residues modulo a compile-time prime P, stored canonically in [0, P).
template <std::uint32_t P>
class Zp {
  static_assert(P >= 2, "modulus must be at least 2");

 public:
  static constexpr std::uint32_t characteristic = P;
  static constexpr bool is_finite = true;

  constexpr Zp() = default;
  constexpr Zp(long long x) : v_(reduce(x)) {}

  static std::string name() { return "F" + std::to_string(P); }

  static Zp from_fraction(long long num, long long den) {
    if (reduce(den) == 0) throw std::domain_error("denominator vanishes mod " + std::to_string(P));
    return Zp(num) / Zp(den);
  }

  template <class Rng>
  static Zp random(Rng& rng) {
    return Zp(static_cast<long long>(std::uniform_int_distribution<std::uint32_t>(0, P - 1)(rng)));
  }

  constexpr std::uint32_t value() const { return v_; }
  constexpr bool is_zero() const { return v_ == 0; }

  friend constexpr Zp operator+(Zp a, Zp b) {
    std::uint32_t s = a.v_ + b.v_;
    if (s >= P) s -= P;
    return raw(s);
  }
  friend constexpr Zp operator-(Zp a, Zp b) { return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + P - b.v_); }
  friend constexpr Zp operator*(Zp a, Zp b) {
    return raw(static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v_) * b.v_ % P));
  }
  friend Zp operator/(Zp a, Zp b) { return a * b.inverse(); }
  constexpr Zp operator-() const { return raw(v_ == 0 ? 0 : P - v_); }
  Zp& operator+=(Zp o) { return *this = *this + o; }
  Zp& operator-=(Zp o) { return *this = *this - o; }
  Zp& operator*=(Zp o) { return *this = *this * o; }
  Zp& operator/=(Zp o) { return *this = *this / o; }
  friend constexpr bool operator==(Zp a, Zp b) { return a.v_ == b.v_; }
  friend constexpr bool operator!=(Zp a, Zp b) { return a.v_ != b.v_; }

  Zp inverse() const {
    if (v_ == 0) throw std::domain_error("division by zero in " + name());
    // Fermat; P is prime for every instantiation we ship.
    std::uint64_t result = 1, base = v_, e = P - 2;
    while (e) {
      if (e & 1) result = result * base % P;
      base = base * base % P;
      e >>= 1;
    }
    return raw(static_cast<std::uint32_t>(result));
  }

  std::string to_string() const { return std::to_string(v_); }

 private:
  static constexpr std::uint32_t reduce(long long x) {
    long long r = x % static_cast<long long>(P);
    if (r < 0) r += P;
    return static_cast<std::uint32_t>(r);
  }
  static constexpr Zp raw(std::uint32_t v) {
    Zp z;
    z.v_ = v;
    return z;
  }

  std::uint32_t v_ = 0;
};

/// Rationals as reduced fractions of arbitrary-precision integers.
class Rational {
 public:
  static constexpr std::uint32_t characteristic = 0;
  static constexpr bool is_finite = false;

  Rational() = default;
  Rational(long long x) : q_(static_cast<long>(x)) {}
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  static std::string name() { return "Q"; }

  static Rational from_fraction(long long num, long long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    mpq_class q(static_cast<long>(num), static_cast<long>(den));
    return Rational(q);
  }

  /// Small random integers; enough spread that random invertibility tests succeed.
  template <class Rng>
  static Rational random(Rng& rng) {
    return Rational(static_cast<long long>(std::uniform_int_distribution<int>(-50, 50)(rng)));
  }

  const mpq_class& value() const { return q_; }
  bool is_zero() const { return sgn(q_) == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("division by zero in Q");
    return Rational(mpq_class(a.q_ / b.q_));
  }
  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }

  Rational inverse() const { return Rational(1) / *this; }
  std::string to_string() const { return q_.get_str(); }

 private:
  mpq_class q_{0};
};

template <class K>
concept ExactField = requires(K a, K b) {
  { a + b } -> std::convertible_to<K>;
  { a * b } -> std::convertible_to<K>;
  { a / b } -> std::convertible_to<K>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { K::name() } -> std::convertible_to<std::string>;
  { K::from_fraction(1LL, 1LL) } -> std::convertible_to<K>;
};

using F2 = Zp<2>;
using F3 = Zp<3>;
using F101 = Zp<101>;
using Q = Rational;

}  // namespace fdhom
