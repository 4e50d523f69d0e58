#include <gtest/gtest.h>

#include <random>

#include "fdhom/matrix.hpp"

using namespace fdhom;

namespace {

template <class K>
Matrix<K> random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  Matrix<K> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = K::random(rng);
  return m;
}

// Counts kernel vectors by enumerating all of F_p^n.
template <std::uint32_t P>
std::size_t brute_kernel_size(const Matrix<Zp<P>>& m) {
  const std::size_t n = m.cols();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= P;
  std::size_t count = 0;
  for (std::size_t code = 0; code < total; ++code) {
    Vec<Zp<P>> v(n);
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= P) v[i] = Zp<P>(static_cast<long long>(c % P));
    if (is_zero_vec(m * v)) ++count;
  }
  return count;
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST(Field, PrimeFieldInverses) {
  for (long long x = 1; x < 101; ++x) {
    F101 a(x);
    EXPECT_EQ(a * a.inverse(), F101(1));
  }
  EXPECT_EQ(F2(1) + F2(1), F2(0));
  EXPECT_EQ(F3(-1), F3(2));
  EXPECT_EQ(F101::from_fraction(1, 2) * F101(2), F101(1));
  EXPECT_THROW(F3::from_fraction(1, 3), std::domain_error);
  EXPECT_THROW(F2(0).inverse(), std::domain_error);
}

TEST(Field, Rationals) {
  Q a = Q::from_fraction(2, 6), b = Q::from_fraction(1, 3);
  EXPECT_EQ(a, b);
  EXPECT_EQ((a + b).to_string(), "2/3");
  EXPECT_EQ((a * Q(3)), Q(1));
  EXPECT_THROW(Q(1) / Q(0), std::domain_error);
}

TEST(Matrix, RankMatchesBruteForceKernelOverF2) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 7;
    auto m = random_matrix<F2>(rng, r, c);
    EXPECT_EQ(brute_kernel_size(m), ipow(2, c - rank(m)));
  }
}

TEST(Matrix, RankMatchesBruteForceKernelOverF3) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
    auto m = random_matrix<F3>(rng, r, c);
    EXPECT_EQ(brute_kernel_size(m), ipow(3, c - rank(m)));
  }
}

template <class K>
class LinalgProperties : public ::testing::Test {};
using Fields = ::testing::Types<F2, F3, F101, Q>;
TYPED_TEST_SUITE(LinalgProperties, Fields);

TYPED_TEST(LinalgProperties, NullspaceIsKernelAndRankNullity) {
  using K = TypeParam;
  std::mt19937_64 rng(3);
  for (int t = 0; t < 60; ++t) {
    std::size_t r = rng() % 6, c = rng() % 6;
    auto m = random_matrix<K>(rng, r, c);
    auto n = nullspace(m);
    EXPECT_EQ(n.rows(), c);
    EXPECT_EQ(rank(m) + n.cols(), c);
    EXPECT_TRUE((m * n).is_zero());
    EXPECT_EQ(rank(n), n.cols());
  }
}

TYPED_TEST(LinalgProperties, SolveRightReproducesRhs) {
  using K = TypeParam;
  std::mt19937_64 rng(4);
  for (int t = 0; t < 60; ++t) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5, k = 1 + rng() % 3;
    auto a = random_matrix<K>(rng, r, c);
    auto x = random_matrix<K>(rng, c, k);
    auto b = a * x;
    auto s = solve_right(a, b);
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(a * s->particular, b);
    EXPECT_TRUE((a * s->null_basis).is_zero());
  }
}

TYPED_TEST(LinalgProperties, InconsistentSystemsAreRejected) {
  using K = TypeParam;
  Matrix<K> a(2, 1);
  a(0, 0) = K(1);
  a(1, 0) = K(1);
  Matrix<K> b(2, 1);
  b(0, 0) = K(1);
  EXPECT_FALSE(solve_right(a, b).has_value());
  LinearSolver<K> ls(a);
  EXPECT_FALSE(ls.solve({K(1), K(0)}).has_value());
  EXPECT_TRUE(ls.solve({K(1), K(1)}).has_value());
}

TYPED_TEST(LinalgProperties, InverseOfInvertible) {
  using K = TypeParam;
  std::mt19937_64 rng(5);
  int found = 0;
  for (int t = 0; t < 100 && found < 20; ++t) {
    std::size_t n = 1 + rng() % 5;
    auto m = random_matrix<K>(rng, n, n);
    auto inv = inverse(m);
    EXPECT_EQ(inv.has_value(), rank(m) == n);
    if (!inv) continue;
    ++found;
    EXPECT_EQ(m * *inv, Matrix<K>::identity(n));
    EXPECT_EQ(*inv * m, Matrix<K>::identity(n));
  }
  EXPECT_GT(found, 0);
}

TYPED_TEST(LinalgProperties, SubspaceOperations) {
  using K = TypeParam;
  std::mt19937_64 rng(6);
  for (int t = 0; t < 40; ++t) {
    auto m = random_matrix<K>(rng, 1 + rng() % 4, 5);
    auto s = Subspace<K>::span_rows(m);
    EXPECT_EQ(s.dim(), rank(m));
    for (std::size_t i = 0; i < m.rows(); ++i) EXPECT_TRUE(s.contains(m.row(i)));
    EXPECT_EQ(s.dim() + quotient_basis(s).size(), 5u);
    EXPECT_TRUE(Subspace<K>::full(5).contains(s));
  }
}

TEST(Matrix, RationalRankExample) {
  // rows (1,2,3), (4,5,6), (7,8,9): rank 2; a scaled copy of the first row adds nothing
  auto m = Matrix<Q>::from_rows({{Q(1), Q(2), Q(3)}, {Q(4), Q(5), Q(6)}, {Q(7), Q(8), Q(9)},
                                 {Q::from_fraction(1, 2), Q(1), Q::from_fraction(3, 2)}},
                                3);
  EXPECT_EQ(rank(m), 2u);
  auto n = nullspace(m);
  ASSERT_EQ(n.cols(), 1u);
  // (1, -2, 1) up to scale
  EXPECT_EQ(n(0, 0) * Q(-2), n(1, 0));
  EXPECT_EQ(n(0, 0), n(2, 0));
}

TEST(Matrix, ShapeErrors) {
  Matrix<F2> a(2, 3), b(2, 2);
  EXPECT_THROW(a * b, DimensionMismatch);
  EXPECT_THROW(solve_right(a, Matrix<F2>(3, 1)), DimensionMismatch);
  EXPECT_EQ(kron(Matrix<F2>::identity(2), Matrix<F2>::identity(3)), Matrix<F2>::identity(6));
}
