#include <gtest/gtest.h>

#include <random>

#include "ipw/errors.hpp"
#include "ipw/qtorus.hpp"

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

Weight wt(std::initializer_list<long> a) {
  Weight w;
  for (long x : a) w.push_back(QRat{x, 0});
  return w;
}

bool all_checks(const std::vector<Check>& cs, std::string* first_bad = nullptr) {
  for (const auto& c : cs)
    if (!c.pass) {
      if (first_bad) *first_bad = c.id + ": expected " + c.expected + ", observed " + c.observed;
      return false;
    }
  return !cs.empty();
}

}  // namespace

TEST(QTorus, QIntegers) {
  AinfTruncation A0(2, 0);
  Ring R = A0.ring();
  EXPECT_TRUE(R.is_zero(q_integer(A0, 0)));
  EXPECT_EQ(q_integer(A0, 1), R.one());
  EXPECT_EQ(q_integer(A0, 3), R.poly(P({1, 1, 1})));
  // [-1]_q = -q^{-1}
  EXPECT_EQ(q_integer(A0, -1), R.neg(R.inverse(A0.q())));
  EXPECT_TRUE(R.is_unit(A0.q()));
  for (long p : {2L, 3L}) {
    AinfTruncation A(p, 1);
    Ring S = A.ring();
    RingHom at1 = make_hom(S, Ring::integers(), Ring::integers().one());
    for (long n = -4; n <= 4; ++n) {
      EXPECT_EQ(hom_apply(at1, q_integer(A, n)), Ring::integers().from_int(n));
      for (long m = -4; m <= 4; ++m)
        EXPECT_EQ(S.add(q_integer(A, n), S.mul(S.pow(A.q(), n), q_integer(A, m))), q_integer(A, n + m));
    }
  }
}

TEST(QTorus, QDerivative) {
  AinfTruncation A(2, 0);
  Ring R = A.ring();
  Ring L = Ring::laurent(R, 1, 0);
  auto T = [&](long e) { return L.monomial_T({e}, R.one()); };
  EXPECT_EQ(q_derivative(A, L, T(3), 0), L.monomial_T({3}, q_integer(A, 3)));
  EXPECT_TRUE(L.is_zero(q_derivative(A, L, L.one(), 0)));
  // twisted Leibniz on T * T^2
  Elem lhs = q_derivative(A, L, L.mul(T(1), T(2)), 0);
  Elem qT2 = gamma_shift(A, L, T(2), 0);
  EXPECT_EQ(qT2, L.monomial_T({2}, R.pow(A.q(), 2)));
  Elem rhs = L.add(L.mul(T(1), q_derivative(A, L, T(2), 0)), L.mul(qT2, q_derivative(A, L, T(1), 0)));
  EXPECT_EQ(lhs, rhs);
  EXPECT_EQ(lhs, q_derivative(A, L, T(3), 0));
  // matches (f(qT) - f(T)) / (q - 1)
  Elem f = L.add(T(-2), L.monomial_T({5}, R.from_int(3)));
  Elem diff = L.sub(gamma_shift(A, L, f, 0), f);
  EXPECT_EQ(L.mul(q_derivative(A, L, f, 0), L.monomial_T({0}, A.mu())), diff);

  Ring Lh = Ring::laurent(R, 1, 1);
  EXPECT_EQ(code_of([&] { q_derivative(A, Lh, Lh.monomial_T({1}, R.one()), 0); }), "NonIntegralExponent");
}

TEST(QTorus, TwistedLeibnizRandom) {
  std::mt19937_64 rng(81);
  AinfTruncation A(3, 1);
  Ring R = A.ring();
  Ring L = Ring::laurent(R, 2, 0);
  auto rnd = [&] {
    Elem x = L.zero();
    for (int t = 0; t < 3; ++t)
      x = L.add(x, L.monomial_T({static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 7) - 3},
                                R.from_int(static_cast<long>(rng() % 9) - 4)));
    return x;
  };
  for (int t = 0; t < 20; ++t) {
    Elem f = rnd(), g = rnd();
    for (int i = 0; i < 2; ++i)
      EXPECT_EQ(q_derivative(A, L, L.mul(f, g), i),
                L.add(L.mul(f, q_derivative(A, L, g, i)), L.mul(gamma_shift(A, L, g, i), q_derivative(A, L, f, i))));
  }
}

TEST(QTorus, TorusKoszulPieces) {
  AinfTruncation A1(2, 1);
  Ring R1 = A1.ring();
  FreeComplex k0 = torus_piece(A1, wt({0}));
  EXPECT_EQ(k0, koszul(R1, {R1.zero()}));
  EXPECT_EQ(torus_piece(A1, {qrat(1, 1, 2)}), koszul(R1, {R1.poly(P({-1, 1}))}));
  AinfTruncation A0(3, 0);
  Ring R0 = A0.ring();
  EXPECT_EQ(torus_piece(A0, wt({1, 2})), koszul(R0, {R0.poly(P({-1, 1})), R0.poly(P({-1, 0, 1}))}));
  EXPECT_EQ(code_of([&] { torus_piece(A1, {qrat(1, 2, 2)}); }), "DepthExceeded");

  WeightedComplex W = torus_koszul(A1, 1, cube_window(1, 1, -2, 2));
  ASSERT_EQ(W.weights.size(), 5u);
  for (size_t i = 0; i < W.weights.size(); ++i) EXPECT_EQ(W.integral[i], is_integral(W.weights[i]));
  EXPECT_EQ(weight_str({qrat(1, 1, 2), QRat{-3, 0}}, 2), "(1/2,-3)");
}

TEST(QTorus, EtaMuExamples) {
  AinfTruncation A(2, 1);
  Ring R = A.ring();
  WeightedComplex W = torus_koszul(A, 1, cube_window(1, 1, -4, 4));
  EtaTorus E = eta_mu_torus(W);
  for (size_t i = 0; i < E.weights.size(); ++i) {
    const Weight& a = E.weights[i];
    if (a == Weight{qrat(1, 1, 2)}) {
      EXPECT_EQ(E.eta[i].kind, EtaKind::Acyclic);
      EXPECT_TRUE(homotopy_ok(W.pieces[i], E.eta[i].homotopy, A.mu()));
    }
    if (a == wt({1})) EXPECT_EQ(E.eta[i].complex, koszul(R, {R.one()}));
    if (a == wt({2})) EXPECT_EQ(E.eta[i].complex, koszul(R, {R.poly(P({1, 0, 1}))}));
    if (is_integral(a)) {
      EXPECT_EQ(E.eta[i].kind, EtaKind::ClosedForm);
      EXPECT_EQ(E.eta[i].complex, qdr_piece(A, a));
    } else {
      EXPECT_EQ(E.eta[i].kind, EtaKind::Acyclic);
    }
  }
}

TEST(QTorus, IdentificationOnWindows) {
  for (long p : {2L, 3L})
    for (int d = 1; d <= 2; ++d)
      for (int k = 1; k <= 2; ++k) {
        AinfTruncation A(p, k);
        Window W = cube_window(d, k, -lpow(p, k), lpow(p, k));
        std::string bad;
        EXPECT_TRUE(all_checks(qdr_identification(A, d, W), &bad)) << bad;
        EXPECT_TRUE(all_checks(specialize_q1_check(A, d, W), &bad)) << bad;
      }
}

TEST(QTorus, SpecializeQ1) {
  AinfTruncation A(2, 1);
  Ring Z = Ring::integers();
  FreeComplex s2 = specialize_q1(qdr_piece(A, wt({2})));
  EXPECT_EQ(s2, koszul(Z, {Z.from_int(2)}));
  EXPECT_EQ(specialize_q1(qdr_piece(A, wt({3}))), koszul(Z, {Z.from_int(3)}));
  EXPECT_EQ(specialize_q1(qdr_piece(A, wt({0, 0}))), koszul(Z, {Z.zero(), Z.zero()}));
  EXPECT_EQ(specialize_q1(qdr_piece(A, wt({-1, 2}))), koszul(Z, {Z.from_int(-1), Z.from_int(2)}));
}

TEST(QTorus, Frobenius) {
  AinfTruncation A(2, 1);
  Ring R = A.ring();
  Window W = cube_window(1, 0, -4, 4);
  FrobeniusQdr f1 = frobenius_qdr(A, W, wt({1}));
  EXPECT_EQ(f1.pa, wt({2}));
  // x e_I -> xi~^n phi(x) e_I: degree 0 is phi (identity on the basis), degree 1 is xi~
  EXPECT_EQ(f1.map.f[0](0, 0), R.one());
  EXPECT_EQ(f1.map.f[1](0, 0), A.xi_tilde_r(1));
  // phi([a]_q) * xi~_1 = [pa]_q
  for (long a = -3; a <= 3; ++a) EXPECT_EQ(R.mul(A.phi(q_integer(A, a)), A.xi_tilde_r(1)), q_integer(A, 2 * a));

  FrobeniusQdr f0 = frobenius_qdr(A, W, wt({0}));
  EXPECT_EQ(f0.map.f[0], rmat_identity(R, 1));
  EXPECT_EQ(f0.map.f[1](0, 0), A.xi_tilde_r(1));

  AinfTruncation B(3, 1);
  EXPECT_EQ(code_of([&] { frobenius_qdr(B, cube_window(1, 0, -1, 1), wt({1})); }), "WindowOverflow");

  for (long p : {2L, 3L})
    for (int d = 1; d <= 2; ++d) {
      std::string bad;
      EXPECT_TRUE(all_checks(frobenius_check(AinfTruncation(p, 1), d, cube_window(d, 0, -2 * p, 2 * p)), &bad)) << bad;
    }
}

TEST(QTorus, Kunneth) {
  std::string bad;
  EXPECT_TRUE(all_checks(kunneth_check(AinfTruncation(2, 0), 1, 1, cube_window(2, 0, -1, 1)), &bad)) << bad;
  EXPECT_TRUE(all_checks(kunneth_check(AinfTruncation(3, 0), 1, 2, cube_window(3, 0, 0, 2)), &bad)) << bad;
  EXPECT_TRUE(all_checks(kunneth_check(AinfTruncation(2, 1), 2, 1, cube_window(3, 0, -1, 1)), &bad)) << bad;
}

TEST(QTorus, KunnethWithTrivialFactor) {
  // Q(1) tensored with the unit complex is Q(1)
  AinfTruncation A(2, 1);
  FreeComplex unit = make_complex(A.ring(), 0, {1}, {});
  for (long a = -2; a <= 2; ++a) EXPECT_EQ(tensor_total(qdr_piece(A, wt({a})), unit), qdr_piece(A, wt({a})));
}

TEST(QTorus, JunkTorsion) {
  AinfTruncation A(2, 2);
  auto zero = junk_torsion(A, 1, 1, wt({0}), 4);
  ASSERT_FALSE(zero.empty());
  EXPECT_TRUE(zero[0].match);
  EXPECT_FALSE(zero[0].eta_side.is_zero());

  bool any_half = false;
  for (const auto& j : junk_torsion(A, 1, 1, {qrat(1, 1, 2)}, 4)) {
    any_half = true;
    EXPECT_TRUE(j.match) << j.degree;
    if (j.degree == 0) {
      EXPECT_TRUE(j.eta_side.is_zero());
      EXPECT_TRUE(j.quotient.is_zero());
    }
  }
  EXPECT_TRUE(any_half);

  bool nonzero = false;
  for (const auto& j : junk_torsion(A, 1, 1, wt({1}), 4)) {
    EXPECT_TRUE(j.match) << j.degree;
    EXPECT_EQ(j.eta_side, j.drw_side);
    nonzero = nonzero || !j.eta_side.is_zero();
  }
  EXPECT_TRUE(nonzero);
  EXPECT_EQ(code_of([] { junk_torsion(AinfTruncation(2, 1), 1, 1, {QRat{1, 0}}, 4); }), "InsufficientDepth");
}

TEST(QTorus, CokernelKilledByMuAndQdga) {
  for (long p : {2L, 3L}) {
    AinfTruncation A(p, 1);
    std::string bad;
    EXPECT_TRUE(all_checks(compcontcohom_check(A, 1, cube_window(1, 1, -p, p), 4), &bad)) << bad;
    EXPECT_TRUE(all_checks(qdga_check(A, 2, 10, 5), &bad)) << bad;
  }
}

TEST(QTorus, KoszulModG) {
  // K([2]_q) over Z[q]/(q^2 + 1) = Z[i]: [2]_q = 1 + i has norm 2
  ModuleComplex M = koszul_mod_g({{P({1, 1}), 0}}, P({1, 0, 1}), 0);
  EXPECT_TRUE(M.cohomology(0).is_zero());
  EXPECT_EQ(M.cohomology(1).str(), "Z/2");
  // mult_matrix_mod: q * (a + b q) = -b + a q
  ZMat m = mult_matrix_mod(P({0, 1}), P({1, 0, 1}), 0);
  EXPECT_EQ(m(0, 1), -1);
  EXPECT_EQ(m(1, 0), 1);
  ZMat m8 = mult_matrix_mod(P({0, 1}), P({1, 0, 1}), 8);
  EXPECT_EQ(m8(0, 1), 7);
}
