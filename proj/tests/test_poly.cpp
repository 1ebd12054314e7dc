#include <gtest/gtest.h>

#include <random>

#include "ipw/poly.hpp"

using namespace ipw;

namespace {

Poly P(std::initializer_list<long> c) {
  Poly a;
  for (long x : c) a.push_back(Int(x));
  trim(a);
  return a;
}

Poly random_poly(std::mt19937_64& rng, int maxdeg, long bound) {
  std::uniform_int_distribution<int> dd(0, maxdeg);
  std::uniform_int_distribution<long> cc(-bound, bound);
  Poly a(dd(rng) + 1);
  for (auto& x : a) x = cc(rng);
  trim(a);
  return a;
}

}  // namespace

TEST(Poly, TrimAndDegree) {
  Poly a = {Int(1), Int(0), Int(0)};
  trim(a);
  EXPECT_EQ(a, P({1}));
  EXPECT_EQ(deg(Poly{}), -1);
  EXPECT_EQ(deg(P({0, 0, 3})), 2);
}

TEST(Poly, GeometricSumDivision) {
  auto q = pdiv_exact(xn_minus_1(4), P({-1, 1}));
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, P({1, 1, 1, 1}));
}

TEST(Poly, NonDivisibleReturnsNothing) {
  EXPECT_FALSE(pdiv_exact(P({-1, 0, 1}), P({-1, 0, 0, 1})).has_value());
  EXPECT_FALSE(pdiv_exact(P({1, 1}), P({2})).has_value());
}

TEST(Poly, CyclotomicPrimePowers) {
  EXPECT_EQ(cyclotomic_ppow(2, 1), P({1, 1}));
  EXPECT_EQ(cyclotomic_ppow(2, 2), P({1, 0, 1}));
  EXPECT_EQ(cyclotomic_ppow(3, 1), P({1, 1, 1}));
  EXPECT_EQ(cyclotomic_ppow(3, 2), P({1, 0, 0, 1, 0, 0, 1}));
  // v^{p^k} - 1 is the product of Phi_{p^j}, j <= k
  for (long p : {2L, 3L, 5L})
    for (int k = 1; k <= 3; ++k) {
      Poly prod = P({-1, 1});
      for (int j = 1; j <= k; ++j) prod = pmul(prod, cyclotomic_ppow(p, j));
      EXPECT_EQ(prod, xn_minus_1(lpow(p, k)));
      EXPECT_EQ(peval(cyclotomic_ppow(p, k), 1), Int(p));
    }
}

TEST(Poly, GcdAndContent) {
  Poly a = pmul(P({-1, 1}), P({2, 4}));
  Poly b = pmul(P({-1, 1}), P({3}));
  EXPECT_EQ(pgcd(a, b), P({-1, 1}));
  EXPECT_EQ(pcontent(P({4, -6, 10})), Int(2));
  EXPECT_EQ(pprimitive(P({4, -6, 10})), P({2, -3, 5}));
}

TEST(Poly, ComposeAndEval) {
  EXPECT_EQ(pcompose_pow(P({1, 1}), 3), P({1, 0, 0, 1}));
  EXPECT_EQ(pcompose(P({0, 0, 1}), P({1, 1})), P({1, 2, 1}));
  EXPECT_EQ(peval(P({1, 0, 1}), 2), Int(5));
  EXPECT_EQ(preduce_mod(P({-1, 9}), 8), P({7, 1}));
  EXPECT_EQ(ilog_p(27, 3), 3);
  EXPECT_EQ(ilog_p(12, 3), -1);
}

TEST(Poly, MonicDivisionProperty) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    Poly a = random_poly(rng, 8, 20);
    Poly b = random_poly(rng, 4, 5);
    if (b.empty()) continue;
    b.back() = 1;
    auto [q, r] = pdivmod_monic(a, b);
    EXPECT_EQ(padd(pmul(q, b), r), a);
    EXPECT_LT(deg(r), deg(b));
  }
}

TEST(Poly, ExactDivisionRoundTrip) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    Poly a = random_poly(rng, 6, 9);
    Poly b = random_poly(rng, 4, 9);
    if (b.empty()) continue;
    auto q = pdiv_exact(pmul(a, b), b);
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(*q, a);
  }
}

TEST(Poly, RingLaws) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 100; ++t) {
    Poly a = random_poly(rng, 5, 9), b = random_poly(rng, 5, 9), c = random_poly(rng, 5, 9);
    EXPECT_EQ(pmul(a, padd(b, c)), padd(pmul(a, b), pmul(a, c)));
    EXPECT_EQ(pmul(pmul(a, b), c), pmul(a, pmul(b, c)));
    EXPECT_EQ(psub(a, a), Poly{});
    EXPECT_EQ(peval(pmul(a, b), 3), peval(a, 3) * peval(b, 3));
  }
}
