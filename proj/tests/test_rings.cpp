#include <gtest/gtest.h>

#include <random>

#include "ipw/errors.hpp"
#include "ipw/ring.hpp"

using namespace ipw;

namespace {

Poly P(std::initializer_list<long> c) {
  Poly a;
  for (long x : c) a.push_back(Int(x));
  trim(a);
  return a;
}

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

Poly random_poly(std::mt19937_64& rng, int maxdeg, long bound) {
  std::uniform_int_distribution<long> cc(-bound, bound);
  Poly a(1 + rng() % (maxdeg + 1));
  for (auto& x : a) x = cc(rng);
  trim(a);
  return a;
}

// denominators drawn from S: value at 1 prime to p
Poly random_s(std::mt19937_64& rng, long p) {
  for (;;) {
    Poly s = random_poly(rng, 2, 4);
    Int v = peval(s, 1);
    if (v != 0 && v % p != 0) return s;
  }
}

Elem random_elem(const Ring& R, std::mt19937_64& rng) {
  switch (R.kind) {
    case RingKind::DepthPoly:
      return rng() % 3 == 0 ? R.frac(random_poly(rng, 4, 6), random_s(rng, R.p)) : R.poly(random_poly(rng, 4, 6));
    case RingKind::Laurent: {
      Elem x = R.zero();
      for (int t = 0; t < 3; ++t) {
        std::vector<long> ex(R.d);
        for (auto& e : ex) e = static_cast<long>(rng() % 7) - 3;
        x = R.add(x, R.monomial_T(ex, random_elem(*R.base, rng)));
      }
      return x;
    }
    case RingKind::Integers:
    case RingKind::IntegersMod:
      return R.from_int(static_cast<long>(rng() % 101) - 50);
    default:
      return R.poly(random_poly(rng, 5, 50));
  }
}

std::vector<Ring> all_variants() {
  return {Ring::integers(),
          Ring::mod(8),
          Ring::mod(9),
          Ring::cyclotomic(2, 2),
          Ring::cyclotomic(3, 2),
          Ring::depth_poly(2, 1),
          Ring::depth_poly(3, 0),
          Ring::fdq(2, 1, 3, cyclotomic_ppow(2, 2)),
          Ring::fdq(3, 1, 2, pmul(cyclotomic_ppow(3, 1), cyclotomic_ppow(3, 1))),
          Ring::laurent(Ring::cyclotomic(2, 1), 2, 1),
          Ring::laurent(Ring::mod(4), 1, 0)};
}

}  // namespace

TEST(Rings, CanonicalizeExamples) {
  Ring Z = Ring::integers();
  EXPECT_EQ(Z.divide_exact(Z.from_int(6), Z.from_int(2)), Z.from_int(3));
  Elem f;
  f.num = P({6});
  f.den = P({2});
  EXPECT_EQ(Z.canonicalize(f), Z.from_int(3));

  Ring D = Ring::depth_poly(2, 1);
  EXPECT_EQ(D.frac(P({-1, 0, 1}), P({-1, 1})), D.poly(P({1, 1})));

  Ring M = Ring::mod(8);
  EXPECT_EQ(M.from_int(13), M.from_int(5));
  EXPECT_EQ(M.from_int(13).num, P({5}));
}

TEST(Rings, CanonicalizeIsIdempotent) {
  std::mt19937_64 rng(31);
  for (const Ring& R : all_variants())
    for (int t = 0; t < 20; ++t) {
      Elem x = random_elem(R, rng);
      EXPECT_EQ(R.canonicalize(x), x) << R.name();
    }
}

TEST(Rings, MalformedElements) {
  Ring Z = Ring::integers();
  Elem x;
  x.num = P({1, 1});
  EXPECT_EQ(code_of([&] { Z.canonicalize(x); }), "MalformedElement");
  Ring L = Ring::laurent(Z, 2, 0);
  Elem y;
  y.exps = {{1}};
  y.coeffs = {Z.one()};
  EXPECT_EQ(code_of([&] { L.canonicalize(y); }), "MalformedElement");
  EXPECT_EQ(code_of([] { Ring::laurent(Ring::integers(), 0, 0); }), "InvalidArgument");
}

TEST(Rings, DivideExactExamples) {
  Ring D0 = Ring::depth_poly(2, 0);
  EXPECT_EQ(D0.divide_exact(D0.poly(xn_minus_1(4)), D0.poly(P({-1, 1}))), D0.poly(P({1, 1, 1, 1})));

  Ring Z = Ring::integers();
  EXPECT_EQ(code_of([&] { Z.divide_exact(Z.from_int(7), Z.from_int(2)); }), "NotDivisible");
  EXPECT_EQ(code_of([&] { Z.divide_exact(Z.from_int(7), Z.zero()); }), "DivisionByZero");

  // strict polynomial division refuses; the localized ring inverts v^2+v+1
  Ring D1 = Ring::depth_poly(2, 1);
  Elem a = D1.poly(P({-1, 0, 1})), b = D1.poly(P({-1, 0, 0, 1}));
  EXPECT_EQ(code_of([&] { D1.divide_exact_polynomial(a, b); }), "NotDivisible");
  Elem q = D1.divide_exact(a, b);
  EXPECT_EQ(D1.mul(q, b), a);
  // v - 1 is in the maximal ideal: no quotient 1 / (v - 1)
  EXPECT_EQ(code_of([&] { D1.divide_exact(D1.one(), D1.poly(P({-1, 1}))); }), "NotDivisible");
}

TEST(Rings, IsUnitExamples) {
  EXPECT_FALSE(Ring::depth_poly(3, 1).is_unit(Ring::depth_poly(3, 1).poly(P({1, 1, 1}))));
  Ring D = Ring::depth_poly(2, 2);
  EXPECT_TRUE(D.is_unit(D.frac(P({-1, 0, 0, 1}), P({-1, 1}))));
  EXPECT_TRUE(Ring::mod(8).is_unit(Ring::mod(8).from_int(3)));
  EXPECT_FALSE(Ring::mod(8).is_unit(Ring::mod(8).from_int(6)));
  Ring C = Ring::cyclotomic(3, 1);
  EXPECT_TRUE(C.is_unit(C.gen()));
  EXPECT_FALSE(C.is_unit(C.sub(C.gen(), C.one())));
}

TEST(Rings, FdqUnitsAreThoseOutsideTheMaximalIdeal) {
  // Z/8[v]/(v^2+1) is local with maximal ideal (2, v-1): x is a unit iff
  // x(1) is odd. Oracle: brute-force search for an inverse.
  Ring F = Ring::fdq(2, 1, 3, cyclotomic_ppow(2, 2));
  for (long a = 0; a < 8; ++a)
    for (long b = 0; b < 8; ++b) {
      Elem x = F.poly(P({a, b}));
      bool has_inverse = false;
      for (long c = 0; c < 8 && !has_inverse; ++c)
        for (long d = 0; d < 8 && !has_inverse; ++d) has_inverse = F.mul(x, F.poly(P({c, d}))) == F.one();
      EXPECT_EQ(F.is_unit(x), has_inverse) << a << "+" << b << "v";
      EXPECT_EQ(has_inverse, (a + b) % 2 == 1);
    }
}

TEST(Rings, HomApplyExamples) {
  Ring D0 = Ring::depth_poly(2, 0), Z = Ring::integers();
  auto h1 = make_hom(D0, Z, Z.from_int(2));
  EXPECT_EQ(hom_apply(h1, D0.poly(P({1, 0, 1}))), Z.from_int(5));

  Ring D2 = Ring::depth_poly(2, 2), C = Ring::cyclotomic(2, 2);
  auto h2 = make_hom(D2, C, C.gen());
  EXPECT_TRUE(C.is_zero(hom_apply(h2, D2.poly(P({1, 0, 1})))));
  // oracle: zeta_4^2 = -1 by reduction mod v^2 + 1
  EXPECT_EQ(C.pow(C.gen(), 2), C.from_int(-1));

  Ring D1 = Ring::depth_poly(2, 1);
  Poly g = *pdiv_exact(xn_minus_1(4), xn_minus_1(2));
  EXPECT_EQ(g, P({1, 0, 1}));
  Ring F = Ring::fdq(2, 1, 3, g);
  auto h3 = make_hom(D1, F, F.gen());
  Elem img = hom_apply(h3, D1.poly(P({0, 0, 0, 1})));
  EXPECT_EQ(img, F.neg(F.gen()));
  EXPECT_EQ(img, F.poly(P({0, 7})));  // canonical representative of -v mod 8
}

TEST(Rings, HomIllDefined) {
  // v -> 2 does not kill Phi_4
  Ring C = Ring::cyclotomic(2, 2), Z = Ring::integers();
  EXPECT_EQ(code_of([&] {
              auto h = make_hom(C, Z, Z.from_int(2));
              hom_apply(h, C.gen());
            }),
            "IllDefined");
}

TEST(Rings, RingAxioms) {
  std::mt19937_64 rng(32);
  for (const Ring& R : all_variants())
    for (int t = 0; t < 15; ++t) {
      Elem a = random_elem(R, rng), b = random_elem(R, rng), c = random_elem(R, rng);
      EXPECT_EQ(R.add(R.add(a, b), c), R.add(a, R.add(b, c))) << R.name();
      EXPECT_EQ(R.mul(R.mul(a, b), c), R.mul(a, R.mul(b, c))) << R.name();
      EXPECT_EQ(R.mul(a, R.add(b, c)), R.add(R.mul(a, b), R.mul(a, c))) << R.name();
      EXPECT_EQ(R.mul(a, b), R.mul(b, a)) << R.name();
      EXPECT_EQ(R.mul(a, R.one()), a) << R.name();
      EXPECT_EQ(R.add(a, R.zero()), a) << R.name();
      EXPECT_TRUE(R.is_zero(R.add(a, R.neg(a)))) << R.name();
    }
}

TEST(Rings, DivideExactInverts) {
  std::mt19937_64 rng(33);
  for (const Ring& R : {Ring::integers(), Ring::cyclotomic(2, 2), Ring::cyclotomic(3, 1), Ring::depth_poly(2, 1),
                        Ring::depth_poly(3, 1), Ring::laurent(Ring::integers(), 2, 0)})
    for (int t = 0; t < 25; ++t) {
      Elem a = random_elem(R, rng), b = random_elem(R, rng);
      if (R.is_zero(b)) continue;
      EXPECT_EQ(R.divide_exact(R.mul(a, b), b), a) << R.name();
    }
}

TEST(Rings, HomApplyIsMultiplicative) {
  std::mt19937_64 rng(34);
  Ring D = Ring::depth_poly(3, 1);
  Ring C = Ring::cyclotomic(3, 2);
  Ring F = Ring::fdq(3, 1, 4, cyclotomic_ppow(3, 2));
  auto to_c = make_hom(D, C, C.gen());
  auto to_f = make_hom(D, F, F.gen());
  for (int t = 0; t < 40; ++t) {
    Elem a = D.poly(random_poly(rng, 6, 9)), b = D.poly(random_poly(rng, 6, 9));
    for (const auto* h : {&to_c, &to_f}) {
      const Ring& T = h->dst;
      EXPECT_EQ(hom_apply(*h, D.add(a, b)), T.add(hom_apply(*h, a), hom_apply(*h, b)));
      EXPECT_EQ(hom_apply(*h, D.mul(a, b)), T.mul(hom_apply(*h, a), hom_apply(*h, b)));
    }
  }
  EXPECT_EQ(hom_apply(to_f, D.one()), F.one());
  EXPECT_TRUE(F.is_zero(hom_apply(to_f, D.zero())));
}

TEST(Rings, LocalizedElementsBecomeUnitsInFiniteQuotients) {
  std::mt19937_64 rng(35);
  for (long p : {2L, 3L}) {
    Ring D = Ring::depth_poly(p, 1);
    Ring F = Ring::fdq(p, 1, 3, pmul(cyclotomic_ppow(p, 1), cyclotomic_ppow(p, 1)));
    auto h = make_hom(D, F, F.gen());
    for (int t = 0; t < 30; ++t) {
      Poly s = random_s(rng, p);
      Elem x = hom_apply(h, D.poly(s));
      EXPECT_TRUE(F.is_unit(x));
      EXPECT_EQ(F.mul(x, F.inverse(x)), F.one());
      Elem fr = D.frac(random_poly(rng, 3, 5), s);
      EXPECT_EQ(F.mul(hom_apply(h, fr), x), hom_apply(h, D.mul(fr, D.poly(s))));
    }
  }
}

TEST(Rings, CyclotomicRankAndPhi) {
  for (long p : {2L, 3L, 5L})
    for (int k = 1; k <= 2; ++k) EXPECT_EQ(Ring::cyclotomic(p, k).lattice_rank(), size_t(lpow(p, k - 1) * (p - 1)));
  Ring D = Ring::depth_poly(2, 1);
  EXPECT_EQ(D.phi(D.poly(P({-1, 0, 1}))), D.poly(P({-1, 0, 0, 0, 1})));
  EXPECT_EQ(D.phi_inverse(D.poly(P({-1, 0, 0, 0, 1}))), D.poly(P({-1, 0, 1})));
  EXPECT_EQ(code_of([&] { D.phi_inverse(D.poly(P({-1, 0, 0, 1}))); }), "InsufficientDepth");
}

TEST(Rings, LaurentUnitsAndDivision) {
  Ring Z = Ring::cyclotomic(2, 1);  // the integers, with p = 2 attached
  Ring L = Ring::laurent(Z, 1, 1);  // exponents in (1/2) Z
  Elem t = L.monomial_T({1}, Z.one());  // T^{1/2}
  EXPECT_TRUE(L.is_unit(t));
  EXPECT_EQ(L.mul(t, L.inverse(t)), L.one());
  EXPECT_FALSE(L.is_unit(L.add(t, L.one())));
  Elem a = L.add(L.monomial_T({2}, Z.one()), L.neg(L.one()));  // T - 1
  Elem b = L.add(t, L.neg(L.one()));
  EXPECT_EQ(L.divide_exact(a, b), L.add(t, L.one()));
}
