#include <gtest/gtest.h>

#include <random>

#include "ipw/errors.hpp"
#include "ipw/theta.hpp"

using namespace ipw;

namespace {

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

Elem rand_elem(const AinfTruncation& A, std::mt19937_64& rng) {
  Poly a(1 + rng() % 6);
  for (auto& x : a) x = static_cast<long>(rng() % 9) - 4;
  trim(a);
  return A.ring().poly(a);
}

bool is_zero(const WittVector& w) {
  for (const auto& c : w.c)
    if (!w.ring.is_zero(c)) return false;
  return true;
}

}  // namespace

TEST(Theta, Examples) {
  AinfTruncation A(2, 1);
  // theta(xi) = zeta_2 + 1 = 0
  EXPECT_EQ(A.xi(), A.ring().add(A.v(), A.ring().one()));
  EXPECT_TRUE(is_zero(theta_r(A, A.xi(), 1, 1)));
  // theta_2(xi) = V(1)
  Ring O = Ring::cyclotomic(2, 1);
  EXPECT_EQ(theta_r(A, A.xi(), 2, 1), verschiebung(witt_one(2, O, 1)));

  // theta~_1(mu) = [zeta_3] - 1 in W_1(Z[zeta_9])
  AinfTruncation B(3, 1);
  Ring C = Ring::cyclotomic(3, 2);
  WittVector lhs = theta_tilde_r(B, B.mu(), 1, 2);
  WittVector rhs = witt_sub(teichmuller(3, C, 1, C.pow(C.gen(), 3)), witt_one(3, C, 1));
  EXPECT_EQ(lhs, rhs);
  EXPECT_FALSE(C.is_zero(lhs.c[0]));
}

TEST(Theta, GeneratorsGoToTeichmullerRoots) {
  for (long p : {2L, 3L})
    for (int k = 1; k <= 2; ++k)
      for (int r = 1; r <= 2; ++r) {
        AinfTruncation A(p, k);
        Ring Cm = Ring::cyclotomic(p, k + r);
        // zeta_{p^{k+r}} = gen; zeta_{p^k} = gen^{p^r}
        EXPECT_EQ(theta_tilde_r(A, A.v(), r, k + r), teichmuller(p, Cm, r, Cm.gen()));
        EXPECT_EQ(theta_r(A, A.v(), r, k + r), teichmuller(p, Cm, r, Cm.pow(Cm.gen(), lpow(p, r))));
      }
}

TEST(Theta, KernelElements) {
  for (long p : {2L, 3L})
    for (int k = 1; k <= 2; ++k)
      for (int r = 1; r <= 2; ++r) {
        AinfTruncation A(p, k);
        EXPECT_TRUE(is_zero(theta_tilde_r(A, A.xi_tilde_r(r), r, k + r)));
        if (r <= k) EXPECT_TRUE(is_zero(theta_r(A, A.xi_r(r), r, k)));
        // mu itself is not killed
        EXPECT_FALSE(is_zero(theta_tilde_r(A, A.mu(), r, k + r)));
      }
}

TEST(Theta, RingHomomorphism) {
  std::mt19937_64 rng(71);
  for (long p : {2L, 3L}) {
    AinfTruncation A(p, 1);
    Ring R = A.ring();
    for (int t = 0; t < 10; ++t) {
      Elem x = rand_elem(A, rng), y = rand_elem(A, rng);
      for (int r = 1; r <= 2; ++r) {
        EXPECT_EQ(theta_r(A, R.add(x, y), r, 2), witt_add(theta_r(A, x, r, 2), theta_r(A, y, r, 2)));
        EXPECT_EQ(theta_r(A, R.mul(x, y), r, 2), witt_mul(theta_r(A, x, r, 2), theta_r(A, y, r, 2)));
        EXPECT_EQ(theta_tilde_r(A, R.mul(x, y), r, 1 + r),
                  witt_mul(theta_tilde_r(A, x, r, 1 + r), theta_tilde_r(A, y, r, 1 + r)));
      }
    }
  }
}

TEST(Theta, CompatibilityWithFAndR) {
  std::mt19937_64 rng(72);
  for (long p : {2L, 3L}) {
    AinfTruncation A(p, 1);
    for (int r = 1; r <= 2; ++r) {
      int m = 1 + r + 1;
      for (int t = 0; t < 5; ++t) {
        Elem y = rand_elem(A, rng);
        // theta~_r = F theta~_{r+1}
        EXPECT_EQ(theta_tilde_r(A, y, r, m), frobenius(theta_tilde_r(A, y, r + 1, m)));
        // theta~_r(y) = R theta~_{r+1}(phi(y))
        EXPECT_EQ(theta_tilde_r(A, y, r, m), restrict_(theta_tilde_r(A, A.phi(y), r + 1, m)));
      }
    }
  }
}

TEST(Theta, Preconditions) {
  AinfTruncation A(2, 2);
  EXPECT_EQ(code_of([&] { theta_r(A, A.v(), 1, 1); }), "InsufficientDepth");
  EXPECT_EQ(code_of([&] { theta_tilde_r(A, A.v(), 2, 3); }), "InsufficientDepth");
  // a general unit of the localization need not map to a unit of Z[zeta]
  Elem s = A.ring().frac({Int(1)}, {Int(1), Int(1), Int(1)});
  EXPECT_EQ(code_of([&] { theta_r(A, s, 1, 2); }), "NotRepresentable");
}

TEST(Theta, RootsOfUnityIdeals) {
  for (long p : {2L, 3L})
    for (int r = 1; r <= 2; ++r) {
      for (const auto& c : roots_of_unity_ideals(p, r, r))
        if (c.asserted) EXPECT_TRUE(c.pass) << p << " " << r << " " << c.name;
      auto model = roots_of_unity_ideals_model(p, r);
      EXPECT_FALSE(model.empty());
      for (const auto& c : model) {
        EXPECT_TRUE(c.asserted);
        EXPECT_TRUE(c.pass) << p << " " << r << " " << c.name;
      }
    }
}
