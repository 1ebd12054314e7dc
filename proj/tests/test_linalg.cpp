#include <gtest/gtest.h>

#include <random>

#include "ipw/linalg.hpp"

using namespace ipw;

namespace {

ZMat random_mat(std::mt19937_64& rng, size_t r, size_t c, long bound) {
  std::uniform_int_distribution<long> cc(-bound, bound);
  ZMat m(r, c);
  for (auto& x : m.a) x = cc(rng);
  return m;
}

Int det(const ZMat& m, std::vector<size_t> rows, std::vector<size_t> cols) {
  if (rows.size() == 1) return m(rows[0], cols[0]);
  Int s = 0;
  for (size_t j = 0; j < cols.size(); ++j) {
    std::vector<size_t> r2(rows.begin() + 1, rows.end()), c2;
    for (size_t t = 0; t < cols.size(); ++t)
      if (t != j) c2.push_back(cols[t]);
    Int term = m(rows[0], cols[j]) * det(m, r2, c2);
    s += (j % 2 ? -term : term);
  }
  return s;
}

void subsets(size_t n, size_t k, size_t start, std::vector<size_t>& cur, std::vector<std::vector<size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// d_1 ... d_k = gcd of k x k minors: independent of any elimination order.
std::vector<Int> determinantal_divisors(const ZMat& m) {
  std::vector<Int> out;
  Int prev = 1;
  for (size_t k = 1; k <= std::min(m.rows, m.cols); ++k) {
    std::vector<std::vector<size_t>> R, C;
    std::vector<size_t> cur;
    subsets(m.rows, k, 0, cur, R);
    subsets(m.cols, k, 0, cur, C);
    Int g = 0;
    for (auto& r : R)
      for (auto& c : C) g = gcd(g, det(m, r, c));
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

}  // namespace

TEST(Linalg, SmithSmallExample) {
  ZMat A(2, 2);
  A(0, 0) = 2, A(0, 1) = 4, A(1, 0) = 6, A(1, 1) = 8;
  auto S = smith(ZArith{}, A);
  ASSERT_EQ(S.rank, 2u);
  EXPECT_EQ(S.d[0], 2);
  EXPECT_EQ(S.d[1], 4);
}

TEST(Linalg, SmithMatchesDeterminantalDivisors) {
  std::mt19937_64 rng(21);
  ZArith z;
  for (int t = 0; t < 150; ++t) {
    size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    ZMat A = random_mat(rng, r, c, 6);
    auto S = smith(z, A);
    std::vector<Int> dd(S.d.begin(), S.d.begin() + S.rank);
    EXPECT_EQ(dd, determinantal_divisors(A));
    ZMat D = matmul(z, matmul(z, S.P, A), S.Q);
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j) EXPECT_EQ(D(i, j), (i == j && i < S.rank) ? S.d[i] : Int(0));
    EXPECT_EQ(matmul(z, S.P, S.Pinv), identity(z, r));
  }
}

TEST(Linalg, SmithIsDeterministic) {
  std::mt19937_64 rng(22);
  ZArith z;
  for (int t = 0; t < 20; ++t) {
    ZMat A = random_mat(rng, 3, 4, 9);
    auto S1 = smith(z, A), S2 = smith(z, A);
    EXPECT_EQ(S1.P, S2.P);
    EXPECT_EQ(S1.Q, S2.Q);
  }
}

TEST(Linalg, KernelAndPreimage) {
  std::mt19937_64 rng(23);
  ZArith z;
  for (int t = 0; t < 100; ++t) {
    ZMat A = random_mat(rng, 2 + rng() % 2, 4, 5);
    ZMat K = kernel(z, A);
    EXPECT_TRUE(is_zero_mat(z, matmul(z, A, K)));
    // rank-nullity over Q
    auto S = smith(z, A);
    EXPECT_EQ(K.cols, A.cols - S.rank);
  }
  // preimage of 2Z under multiplication by 3 is 2Z
  ZMat A(1, 1), G(1, 1);
  A(0, 0) = 3, G(0, 0) = 2;
  ZMat Pm = preimage(z, A, G);
  Subquotient<ZArith> S(z, 1, Pm, ZMat(1, 0));
  EXPECT_TRUE(S.contains({Int(2)}));
  EXPECT_FALSE(S.contains({Int(1)}));
}

TEST(Linalg, SubquotientInvariants) {
  ZArith z;
  // Z^2 / <(2,0),(0,6)> = Z/2 + Z/6
  ZMat L = identity(z, 2), L0(2, 2);
  L0(0, 0) = 2, L0(1, 1) = 6;
  Subquotient<ZArith> S(z, 2, L, L0);
  EXPECT_EQ(S.free_rank(), 0u);
  EXPECT_EQ(S.torsion(), (std::vector<Int>{2, 6}));
  EXPECT_TRUE(S.is_zero_class({Int(2), Int(6)}));
  EXPECT_TRUE(S.same_class({Int(1), Int(1)}, {Int(3), Int(7)}));
  EXPECT_FALSE(S.is_zero_class({Int(1), Int(0)}));
}

TEST(Linalg, HomologyOfMultiplication) {
  ZArith z;
  ZMat four(1, 1);
  four(0, 0) = 4;
  auto H1 = homology(z, ZMat(0, 1), four, 1);
  EXPECT_EQ(H1.torsion(), (std::vector<Int>{4}));
  auto H0 = homology(z, four, ZMat(1, 0), 1);
  EXPECT_EQ(H0.free_rank(), 0u);
  EXPECT_TRUE(H0.torsion().empty());
}

TEST(Linalg, ZpnSmithAndInvariants) {
  ZpnArith e(2, 3);
  Mat<ZpnArith> A(2, 2, 0);
  A(0, 0) = 4, A(1, 1) = 6;  // 6 = 2 * unit mod 8
  auto S = smith(e, A);
  ASSERT_EQ(S.rank, 2u);
  EXPECT_EQ(S.d[0], 2);
  EXPECT_EQ(S.d[1], 4);
  Subquotient<ZpnArith> Q(e, 2, identity(e, 2), A);
  EXPECT_EQ(Q.torsion(), (std::vector<Int>{2, 4}));
  // Z/8 is free over the chain ring Z/8
  Subquotient<ZpnArith> F(e, 1, identity(e, 1), Mat<ZpnArith>(1, 0, 0));
  EXPECT_EQ(F.free_rank(), 1u);
  EXPECT_TRUE(F.torsion().empty());
}

TEST(Linalg, HermiteBasis) {
  ZMat G(2, 3);
  G(0, 0) = 2, G(0, 1) = 0, G(0, 2) = 4;
  G(1, 0) = 1, G(1, 1) = 3, G(1, 2) = 5;
  ZMat B = hnf_basis(G);
  ASSERT_EQ(B.rows, 2u);
  ASSERT_EQ(B.cols, 2u);
  // lattice index = gcd of 2x2 minors = gcd(6, 6, -6) = 6
  EXPECT_EQ(B(0, 0) * B(1, 1), 6);
  EXPECT_EQ(B(0, 1), 0);
  EXPECT_GE(B(1, 0), 0);
  EXPECT_LT(B(1, 0), B(1, 1));
  ZMat X = solve_lower(B, G);
  EXPECT_EQ(matmul(ZArith{}, B, X), G);
}

TEST(Linalg, InvariantFactors) {
  size_t fr = 0;
  auto f = invariant_factors({Int(2), Int(3), Int(0), Int(4)}, &fr);
  EXPECT_EQ(fr, 1u);
  EXPECT_EQ(f, (std::vector<Int>{2, 12}));
}
