#include <gtest/gtest.h>

#include <random>

#include "ipw/errors.hpp"
#include "ipw/theta.hpp"
#include "ipw/witt.hpp"

using namespace ipw;

namespace {

const Ring Z = Ring::integers();

WittVector W(long p, std::initializer_list<long> c) {
  std::vector<Elem> e;
  for (long x : c) e.push_back(Z.from_int(x));
  return witt_make(p, Z, e);
}

std::vector<Elem> ints(std::initializer_list<long> c) {
  std::vector<Elem> e;
  for (long x : c) e.push_back(Z.from_int(x));
  return e;
}

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

Elem rand_elem(const Ring& R, std::mt19937_64& rng) {
  if (R.kind == RingKind::Integers || R.kind == RingKind::IntegersMod) return R.from_int(static_cast<long>(rng() % 21) - 10);
  Poly a(R.lattice_rank());
  for (auto& x : a) x = static_cast<long>(rng() % 11) - 5;
  trim(a);
  return R.poly(a);
}

WittVector rand_witt(long p, const Ring& R, int r, std::mt19937_64& rng) {
  std::vector<Elem> c;
  for (int i = 0; i < r; ++i) c.push_back(rand_elem(R, rng));
  return witt_make(p, R, c);
}

std::vector<Elem> ghost_op(const Ring& R, const std::vector<Elem>& a, const std::vector<Elem>& b, bool mul) {
  std::vector<Elem> out;
  for (size_t i = 0; i < a.size(); ++i) out.push_back(mul ? R.mul(a[i], b[i]) : R.add(a[i], b[i]));
  return out;
}

}  // namespace

TEST(Witt, GhostExamples) {
  EXPECT_EQ(ghost(verschiebung(witt_one(2, Z, 2))), ints({0, 2, 2}));
  EXPECT_EQ(ghost(teichmuller(3, Z, 2, Z.from_int(2))), ints({2, 8}));
  EXPECT_EQ(ghost(W(2, {1, 1})), ints({1, 3}));
}

TEST(Witt, ArithmeticExamples) {
  EXPECT_EQ(witt_add(W(2, {1, 0}), W(2, {1, 0})), W(2, {2, -1}));
  EXPECT_EQ(witt_mul(teichmuller(3, Z, 2, Z.from_int(2)), teichmuller(3, Z, 2, Z.from_int(5))), W(3, {10, 0}));
  std::mt19937_64 rng(61);
  for (int t = 0; t < 20; ++t) {
    WittVector w = rand_witt(3, Z, 3, rng);
    EXPECT_EQ(witt_add(w, witt_zero(3, Z, 3)), w);
  }
  EXPECT_EQ(frobenius(verschiebung(witt_one(2, Z, 1))), W(2, {2}));
  // F[x] = [x^p]: [3] -> [27] at p = 3 and [3] -> [9] at p = 2
  for (int r = 1; r <= 3; ++r) {
    EXPECT_EQ(frobenius(teichmuller(3, Z, r + 1, Z.from_int(3))), teichmuller(3, Z, r, Z.from_int(27)));
    EXPECT_EQ(frobenius(teichmuller(2, Z, r + 1, Z.from_int(3))), teichmuller(2, Z, r, Z.from_int(9)));
  }
  WittVector x = teichmuller(2, Z, 2, Z.from_int(3));
  WittVector v1 = verschiebung(witt_one(2, Z, 1));
  EXPECT_EQ(witt_mul(x, v1), W(2, {0, 9}));
  EXPECT_EQ(verschiebung(frobenius(x)), W(2, {0, 9}));
}

TEST(Witt, UniversalPolynomialsLowDegree) {
  // p = 2: S_1 = X_1 + Y_1 - X_0 Y_0 and P_1 = X_0^2 Y_1 + X_1 Y_0^2 + 2 X_1 Y_1
  const WittPolys& wp = witt_polys(2, 2);
  std::map<std::vector<int>, Int> s1 = {{{0, 1, 0, 0}, 1}, {{0, 0, 0, 1}, 1}, {{1, 0, 1, 0}, -1}};
  std::map<std::vector<int>, Int> p1 = {{{2, 0, 0, 1}, 1}, {{0, 1, 2, 0}, 1}, {{0, 1, 0, 1}, 2}};
  auto pad = [](std::map<std::vector<int>, Int> m, size_t n) {
    std::map<std::vector<int>, Int> out;
    for (const auto& [k, v] : m) {
      auto key = k;
      key.resize(n, 0);
      out[key] = v;
    }
    return out;
  };
  ASSERT_FALSE(wp.add[1].terms.empty());
  size_t nv = wp.add[1].terms.begin()->first.size();
  EXPECT_EQ(pad(wp.add[1].terms, nv), pad(s1, nv));
  EXPECT_EQ(pad(wp.mul[1].terms, nv), pad(p1, nv));
}

TEST(Witt, GhostIsARingMapAndDeterminesTheVector) {
  std::mt19937_64 rng(62);
  for (long p : {2L, 3L, 5L})
    for (const Ring& R : {Z, Ring::cyclotomic(p, 1)})
      for (int r = 1; r <= (p == 5 ? 3 : 4); ++r)
        for (int t = 0; t < 8; ++t) {
          WittVector a = rand_witt(p, R, r, rng), b = rand_witt(p, R, r, rng);
          EXPECT_EQ(ghost(witt_add(a, b)), ghost_op(R, ghost(a), ghost(b), false));
          EXPECT_EQ(ghost(witt_mul(a, b)), ghost_op(R, ghost(a), ghost(b), true));
          // the ghost route as an independent oracle for the structure polynomials
          EXPECT_EQ(ghost_inverse(p, R, ghost_op(R, ghost(a), ghost(b), false)), witt_add(a, b));
          EXPECT_EQ(ghost_inverse(p, R, ghost_op(R, ghost(a), ghost(b), true)), witt_mul(a, b));
          EXPECT_EQ(ghost_inverse(p, R, ghost(a)), a);
        }
}

TEST(Witt, NotAGhostVector) {
  EXPECT_EQ(code_of([] { ghost_inverse(2, Z, ints({0, 1})); }), "NotInImage");
}

TEST(Witt, OperatorIdentities) {
  std::mt19937_64 rng(63);
  for (long p : {2L, 3L})
    for (const Ring& R : {Z, Ring::mod(lpow(p, 4)), Ring::cyclotomic(p, 2)})
      for (int r = 2; r <= 4; ++r)
        for (int t = 0; t < 6; ++t) {
          WittVector x = rand_witt(p, R, r, rng), y = rand_witt(p, R, r - 1, rng);
          WittVector pr = witt_from_int(p, R, r - 1, p);
          // FV = p
          EXPECT_EQ(frobenius(verschiebung(y)), witt_mul(pr, y)) << R.name();
          // V(F(x) y) = x V(y)
          EXPECT_EQ(verschiebung(witt_mul(frobenius(x), y)), witt_mul(x, verschiebung(y)));
          // F is a ring map, V additive
          WittVector x2 = rand_witt(p, R, r, rng);
          EXPECT_EQ(frobenius(witt_mul(x, x2)), witt_mul(frobenius(x), frobenius(x2)));
          EXPECT_EQ(verschiebung(witt_add(y, y)), witt_add(verschiebung(y), verschiebung(y)));
          // F[x] = [x^p], restriction commutes with F and V
          Elem e = rand_elem(R, rng);
          EXPECT_EQ(frobenius(teichmuller(p, R, r, e)), teichmuller(p, R, r - 1, R.pow(e, p)));
          if (r >= 3) EXPECT_EQ(restrict_(frobenius(x)), frobenius(restrict_(x)));
          if (r >= 3) EXPECT_EQ(restrict_(verschiebung(y)), verschiebung(restrict_(y)));
          if (R.kind != RingKind::IntegersMod) {
            auto gx = ghost(x), gf = ghost(frobenius(x));
            for (int i = 0; i + 1 < r; ++i) EXPECT_EQ(gf[i], gx[i + 1]);
          }
        }
}

TEST(Witt, LengthErrors) {
  EXPECT_EQ(code_of([] { frobenius(witt_one(2, Z, 1)); }), "LengthTooShort");
  EXPECT_EQ(code_of([] { restrict_(witt_one(2, Z, 1)); }), "LengthTooShort");
  EXPECT_EQ(code_of([] { witt_add(witt_one(2, Z, 2), witt_one(2, Z, 3)); }), "MismatchedShape");
}

TEST(Witt, IdealReports) {
  IdealReport a = witt_ideal_report(Ring::mod(16), Ring::mod(16).from_int(2), 2, 1);
  EXPECT_TRUE(a.pass);
  // [2]^2 = (4, 0) and it is in 2 W_2(Z/16)
  WittVector t2 = teichmuller(2, Ring::mod(16), 2, Ring::mod(16).from_int(2));
  EXPECT_EQ(witt_mul(t2, t2), witt_make(2, Ring::mod(16), {Ring::mod(16).from_int(4), Ring::mod(16).zero()}));
  EXPECT_TRUE(witt_ideal_report(Ring::mod(9), Ring::mod(9).from_int(3), 2, 1).pass);
  EXPECT_TRUE(witt_ideal_report(Ring::mod(4), Ring::mod(4).zero(), 2, 1).pass);
  EXPECT_EQ(code_of([] { witt_ideal_report(Z, Z.from_int(2), 2, 1); }), "UndecidableVariant");
}

TEST(Ainf, DesignatedElements) {
  for (long p : {2L, 3L})
    for (int k = 1; k <= 3; ++k) {
      AinfTruncation A(p, k);
      Ring R = A.ring();
      EXPECT_EQ(A.q(), R.pow(A.v(), lpow(p, k)));
      EXPECT_EQ(A.mu(), R.sub(A.q(), R.one()));
      for (int r = 1; r <= 3; ++r) {
        Elem phr = A.mu();
        for (int i = 0; i < r; ++i) phr = A.phi(phr);
        EXPECT_EQ(R.divide_exact_polynomial(phr, A.mu()), A.xi_tilde_r(r));
        R.divide_exact_polynomial(R.sub(A.xi_tilde_r(r), R.from_int(lpow(p, r))), A.mu());
        if (r <= k) {
          Elem phm = A.mu();
          for (int i = 0; i < r; ++i) phm = A.phi_inverse(phm);
          EXPECT_EQ(R.mul(A.xi_r(r), phm), A.mu());
        }
      }
      EXPECT_EQ(A.xi(), A.xi_r(1));
    }
  AinfTruncation A(2, 1);
  Ring R = A.ring();
  EXPECT_EQ(A.phi(A.mu()), R.sub(R.pow(A.v(), 4), R.one()));
  EXPECT_EQ(A.phi_inverse(R.sub(R.pow(A.v(), 4), R.one())), A.mu());
  EXPECT_EQ(code_of([&] { A.phi_inverse(R.sub(R.pow(A.v(), 3), R.one())); }), "InsufficientDepth");
  EXPECT_EQ(code_of([] { AinfTruncation(2, 0).xi(); }), "InsufficientDepth");
}
