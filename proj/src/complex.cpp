#include "ipw/complex.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <sstream>

#include "ipw/errors.hpp"

namespace ipw {

std::string AbelianInvariants::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const auto& t : torsion) {
    if (!first) os << " + ";
    first = false;
    os << "Z/" << t.get_str();
  }
  return os.str();
}

AbelianInvariants invariants_of(const Subquotient<ZArith>& S) {
  AbelianInvariants a;
  a.free_rank = S.free_rank();
  a.torsion = S.torsion();
  return a;
}

AbelianInvariants invariants_from_cyclic(const std::vector<Int>& orders) {
  AbelianInvariants a;
  a.torsion = invariant_factors(orders, &a.free_rank);
  return a;
}

size_t FreeComplex::rank(int deg) const {
  if (deg < lo || deg > hi()) return 0;
  return ranks[deg - lo];
}

RMat FreeComplex::diff(int deg) const {
  if (deg >= lo && deg < hi()) return d[deg - lo];
  return RMat(ring, rank(deg + 1), rank(deg));
}

void FreeComplex::validate() const {
  require(!ranks.empty(), "ShapeMismatch", "complex without terms");
  require(d.size() + 1 == ranks.size(), "ShapeMismatch", "need one differential between consecutive degrees");
  for (size_t i = 0; i < d.size(); ++i) {
    require(d[i].rows == ranks[i + 1] && d[i].cols == ranks[i], "ShapeMismatch",
            "differential " + std::to_string(lo + static_cast<int>(i)) + " has wrong shape");
    require(d[i].a.size() == d[i].rows * d[i].cols, "ShapeMismatch", "matrix storage mismatch");
  }
  for (size_t i = 0; i + 1 < d.size(); ++i)
    require(rmat_is_zero(ring, rmatmul(ring, d[i + 1], d[i])), "NotAComplex",
            "d^2 != 0 at degree " + std::to_string(lo + static_cast<int>(i)));
}

FreeComplex make_complex(const Ring& R, int lo, std::vector<size_t> ranks, std::vector<RMat> d) {
  FreeComplex C{R, lo, std::move(ranks), std::move(d)};
  C.validate();
  return C;
}

FreeComplex shift(const FreeComplex& C, int s) {
  FreeComplex D = C;
  D.lo = C.lo - s;
  if (s % 2 != 0)
    for (auto& m : D.d) m = rmat_scale(C.ring, m, C.ring.from_int(-1));
  return D;
}

FreeComplex pad(const FreeComplex& C, int lo, int hi) {
  require(lo <= C.lo && hi >= C.hi(), "InvalidArgument", "padding must enlarge the range");
  FreeComplex D;
  D.ring = C.ring;
  D.lo = lo;
  for (int i = lo; i <= hi; ++i) D.ranks.push_back(C.rank(i));
  for (int i = lo; i < hi; ++i) D.d.push_back(C.diff(i));
  return D;
}

FreeComplex base_change(const FreeComplex& C, const RingHom& h) {
  require(C.ring == h.src, "RingMismatch", "base change source differs from complex ring");
  FreeComplex D;
  D.ring = h.dst;
  D.lo = C.lo;
  D.ranks = C.ranks;
  for (const auto& m : C.d) D.d.push_back(rmat_apply(h, m));
  return D;
}

ChainMap make_chain_map(const FreeComplex& src, const FreeComplex& dst, std::vector<RMat> f) {
  require(src.ring == dst.ring, "RingMismatch", "chain map between complexes over different rings");
  require(src.lo == dst.lo && src.ranks.size() == dst.ranks.size(), "ShapeMismatch",
          "chain map needs a common degree range (pad first)");
  require(f.size() == src.ranks.size(), "ShapeMismatch", "one matrix per degree");
  const Ring& R = src.ring;
  for (size_t i = 0; i < f.size(); ++i)
    require(f[i].rows == dst.ranks[i] && f[i].cols == src.ranks[i], "ShapeMismatch", "chain map component shape");
  for (int i = src.lo; i < src.hi(); ++i) {
    size_t k = i - src.lo;
    RMat a = rmatmul(R, f[k + 1], src.diff(i));
    RMat b = rmatmul(R, dst.diff(i), f[k]);
    require(a == b, "NotAChainMap", "map does not commute with d at degree " + std::to_string(i));
  }
  return ChainMap{src, dst, std::move(f)};
}

ChainMap identity_map(const FreeComplex& C) {
  std::vector<RMat> f;
  for (auto r : C.ranks) f.push_back(rmat_identity(C.ring, r));
  return ChainMap{C, C, f};
}

std::vector<std::vector<int>> lex_subsets(int d, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > d) return out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == d - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

FreeComplex koszul(const Ring& R, size_t m, const std::vector<RMat>& ops) {
  int dd = static_cast<int>(ops.size());
  for (const auto& f : ops) require(f.rows == m && f.cols == m, "ShapeMismatch", "Koszul operator must be square");
  for (int i = 0; i < dd; ++i)
    for (int j = i + 1; j < dd; ++j)
      require(rmatmul(R, ops[i], ops[j]) == rmatmul(R, ops[j], ops[i]), "NonCommuting",
              "Koszul operators " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " do not commute");
  FreeComplex C;
  C.ring = R;
  C.lo = 0;
  std::vector<std::vector<std::vector<int>>> subs;
  for (int k = 0; k <= dd; ++k) {
    subs.push_back(lex_subsets(dd, k));
    C.ranks.push_back(m * subs.back().size());
  }
  Elem minus = R.from_int(-1);
  for (int k = 0; k < dd; ++k) {
    std::map<std::vector<int>, size_t> idx;
    for (size_t b = 0; b < subs[k + 1].size(); ++b) idx[subs[k + 1][b]] = b;
    RMat D(R, C.ranks[k + 1], C.ranks[k]);
    for (size_t a = 0; a < subs[k].size(); ++a) {
      const auto& I = subs[k][a];
      for (int j = 0; j < dd; ++j) {
        if (std::find(I.begin(), I.end(), j) != I.end()) continue;
        int before = 0;
        for (int i : I)
          if (i < j) ++before;
        std::vector<int> J = I;
        J.push_back(j);
        std::sort(J.begin(), J.end());
        size_t b = idx.at(J);
        for (size_t r = 0; r < m; ++r)
          for (size_t c = 0; c < m; ++c) {
            const Elem& x = ops[j](r, c);
            if (R.is_zero(x)) continue;
            D(b * m + r, a * m + c) = (before % 2) ? R.neg(x) : x;
          }
      }
    }
    C.d.push_back(D);
  }
  C.validate();
  return C;
}

FreeComplex koszul(const Ring& R, const std::vector<Elem>& g) {
  std::vector<RMat> ops;
  for (const auto& x : g) {
    RMat f(R, 1, 1);
    f(0, 0) = R.canonicalize(x);
    ops.push_back(f);
  }
  return koszul(R, 1, ops);
}

namespace {

struct TensorLayout {
  // for one total degree: list of (i, j, offset)
  std::vector<std::tuple<int, int, size_t>> blocks;
  size_t rank = 0;
};

TensorLayout layout(const FreeComplex& C, const FreeComplex& D, int n) {
  TensorLayout L;
  for (int i = std::min(C.hi(), n - D.lo); i >= std::max(C.lo, n - D.hi()); --i) {
    int j = n - i;
    L.blocks.emplace_back(i, j, L.rank);
    L.rank += C.rank(i) * D.rank(j);
  }
  return L;
}

}  // namespace

FreeComplex tensor_total(const FreeComplex& C, const FreeComplex& D) {
  require(C.ring == D.ring, "RingMismatch", "tensor product over different rings");
  const Ring& R = C.ring;
  FreeComplex T;
  T.ring = R;
  T.lo = C.lo + D.lo;
  int hi = C.hi() + D.hi();
  std::vector<TensorLayout> lay;
  for (int n = T.lo; n <= hi; ++n) {
    lay.push_back(layout(C, D, n));
    T.ranks.push_back(lay.back().rank);
  }
  for (int n = T.lo; n < hi; ++n) {
    const auto& src = lay[n - T.lo];
    const auto& dst = lay[n + 1 - T.lo];
    RMat M(R, dst.rank, src.rank);
    auto offset_of = [&](int i, int j) -> long {
      for (const auto& [a, b, off] : dst.blocks)
        if (a == i && b == j) return static_cast<long>(off);
      return -1;
    };
    for (const auto& [i, j, off] : src.blocks) {
      size_t rc = C.rank(i), rd = D.rank(j);
      long o1 = offset_of(i + 1, j);
      if (o1 >= 0) {
        RMat dc = C.diff(i);
        size_t rd2 = D.rank(j);
        for (size_t c = 0; c < rc; ++c)
          for (size_t c2 = 0; c2 < C.rank(i + 1); ++c2) {
            const Elem& x = dc(c2, c);
            if (R.is_zero(x)) continue;
            for (size_t e = 0; e < rd; ++e) M(o1 + c2 * rd2 + e, off + c * rd + e) = x;
          }
      }
      long o2 = offset_of(i, j + 1);
      if (o2 >= 0) {
        RMat ddm = D.diff(j);
        size_t rd2 = D.rank(j + 1);
        bool odd = ((i % 2) + 2) % 2 == 1;
        for (size_t c = 0; c < rc; ++c)
          for (size_t e = 0; e < rd; ++e)
            for (size_t e2 = 0; e2 < rd2; ++e2) {
              const Elem& x = ddm(e2, e);
              if (R.is_zero(x)) continue;
              M(o2 + c * rd2 + e2, off + c * rd + e) = odd ? R.neg(x) : x;
            }
      }
    }
    T.d.push_back(M);
  }
  T.validate();
  return T;
}

std::vector<RMat> tensor_maps(const Ring& R, const FreeComplex& C1, const FreeComplex& D1, const FreeComplex& C2,
                              const FreeComplex& D2, const std::vector<RMat>& a, const std::vector<RMat>& b) {
  require(C1.lo == C2.lo && C1.hi() == C2.hi() && D1.lo == D2.lo && D1.hi() == D2.hi(), "ShapeMismatch",
          "tensor of maps needs matching degree ranges");
  std::vector<RMat> out;
  for (int n = C1.lo + D1.lo; n <= C1.hi() + D1.hi(); ++n) {
    auto L1 = layout(C1, D1, n);
    auto L2 = layout(C2, D2, n);
    RMat M(R, L2.rank, L1.rank);
    for (size_t t = 0; t < L1.blocks.size(); ++t) {
      auto [i, j, o1] = L1.blocks[t];
      size_t o2 = std::get<2>(L2.blocks[t]);
      const RMat& A = a[i - C1.lo];
      const RMat& B = b[j - D1.lo];
      for (size_t r1 = 0; r1 < A.rows; ++r1)
        for (size_t c1 = 0; c1 < A.cols; ++c1) {
          if (R.is_zero(A(r1, c1))) continue;
          for (size_t r2 = 0; r2 < B.rows; ++r2)
            for (size_t c2 = 0; c2 < B.cols; ++c2) {
              if (R.is_zero(B(r2, c2))) continue;
              M(o2 + r1 * B.rows + r2, o1 + c1 * B.cols + c2) = R.mul(A(r1, c1), B(r2, c2));
            }
        }
    }
    out.push_back(M);
  }
  return out;
}

size_t ModuleComplex::gens(int deg) const {
  if (deg < lo || deg > hi()) return 0;
  return orders[deg - lo].size();
}

namespace {

ZMat relation_matrix(const std::vector<Int>& ord) {
  std::vector<size_t> idx;
  for (size_t i = 0; i < ord.size(); ++i)
    if (ord[i] != 0) idx.push_back(i);
  ZMat R(ord.size(), idx.size(), Int(0));
  for (size_t j = 0; j < idx.size(); ++j) R(idx[j], j) = ord[idx[j]];
  return R;
}

}  // namespace

Subquotient<ZArith> ModuleComplex::cohomology_sq(int deg) const {
  ZArith z;
  size_t n = gens(deg);
  ZMat L;
  if (deg >= lo && deg < hi()) {
    L = preimage(z, d[deg - lo], relation_matrix(orders[deg + 1 - lo]));
  } else {
    L = identity(z, n);
  }
  std::vector<Int> none;
  ZMat rel = relation_matrix(deg >= lo && deg <= hi() ? orders[deg - lo] : none);
  ZMat L0 = rel;
  if (deg - 1 >= lo && deg <= hi()) L0 = hcat(z, d[deg - 1 - lo], rel);
  if (L0.rows != n) L0 = ZMat(n, 0, Int(0));
  return Subquotient<ZArith>(z, n, L, L0);
}

AbelianInvariants ModuleComplex::cohomology(int deg) const { return invariants_of(cohomology_sq(deg)); }

bool ModuleComplex::d_squared_zero() const {
  ZArith z;
  for (size_t i = 0; i + 1 < d.size(); ++i) {
    ZMat P = matmul(z, d[i + 1], d[i]);
    const auto& ord = orders[i + 2];
    for (size_t r = 0; r < P.rows; ++r)
      for (size_t c = 0; c < P.cols; ++c) {
        if (ord[r] == 0) {
          if (P(r, c) != 0) return false;
        } else if (!z.divides(ord[r], P(r, c))) {
          return false;
        }
      }
  }
  return true;
}

std::vector<Int> ring_lattice_orders(const Ring& R, size_t rank) {
  switch (R.kind) {
    case RingKind::Integers:
    case RingKind::Cyclotomic:
      return std::vector<Int>(rank * R.lattice_rank(), Int(0));
    case RingKind::IntegersMod:
    case RingKind::FDQ:
      return std::vector<Int>(rank * R.lattice_rank(), R.m);
    default:
      fail("UnsupportedRing", "cohomology over " + R.name() + " needs a finite lattice model (reduce first)");
  }
}

ModuleComplex as_module_complex(const FreeComplex& C) {
  ModuleComplex M;
  M.lo = C.lo;
  for (auto r : C.ranks) M.orders.push_back(ring_lattice_orders(C.ring, r));
  for (const auto& m : C.d) M.d.push_back(rmat_block(C.ring, m));
  return M;
}

AbelianInvariants cohomology(const FreeComplex& C, int deg) {
  return as_module_complex(C).cohomology(deg);
}

QICert compare_module_complexes(const ModuleComplex& A, const ModuleComplex& B, const std::vector<ZMat>& F) {
  require(A.lo == B.lo && A.orders.size() == B.orders.size(), "ShapeMismatch", "comparison needs a common range");
  require(F.size() == A.orders.size(), "ShapeMismatch", "one map per degree");
  ZArith z;
  QICert cert;
  cert.pass = true;
  for (int i = A.lo; i <= A.hi(); ++i) {
    auto SA = A.cohomology_sq(i);
    auto SB = B.cohomology_sq(i);
    DegreeRecord rec;
    rec.degree = i;
    rec.lhs = invariants_of(SA).str();
    rec.rhs = invariants_of(SB).str();
    bool ok = same_invariants(SA, SB);
    if (ok) {
      const ZMat& f = F[i - A.lo];
      ZMat M(SB.ngens(), SA.ngens(), Int(0));
      for (size_t j = 0; j < SA.ngens() && ok; ++j) {
        auto y = matvec(z, f, SA.gen(j));
        if (!SB.contains(y)) {
          ok = false;
          break;
        }
        auto c = SB.coords(y);
        for (size_t r = 0; r < c.size(); ++r) M(r, j) = c[r];
      }
      ok = ok && is_surjective(z, SB, M);
    }
    rec.match = ok;
    cert.pass = cert.pass && ok;
    cert.per_degree.push_back(rec);
  }
  return cert;
}

QICert certify_quasi_iso(const ChainMap& phi) {
  ModuleComplex A = as_module_complex(phi.src);
  ModuleComplex B = as_module_complex(phi.dst);
  std::vector<ZMat> F;
  for (const auto& m : phi.f) F.push_back(rmat_block(phi.src.ring, m));
  return compare_module_complexes(A, B, F);
}

namespace {

// Integer block matrix of A over Z[v]/(f), f monic with f(0) = +-1 so that v
// is invertible; denominators must be powers of v.
ZMat zblock_mod(const Ring& R, const RMat& A, const Poly& f) {
  size_t s = deg(f);
  require(f[0] == 1 || f[0] == -1, "UnsupportedRing", "v must be a unit modulo " + pstr(f));
  // v^{-1} = -(f - f(0)) / (v f(0))
  Poly vinv(f.begin() + 1, f.end());
  vinv = pscale(vinv, -f[0]);
  ZMat Bm(A.rows * s, A.cols * s, Int(0));
  for (size_t i = 0; i < A.rows; ++i)
    for (size_t j = 0; j < A.cols; ++j) {
      Elem x = R.canonicalize(A(i, j));
      if (R.is_zero(x)) continue;
      Poly y = x.num;
      if (!x.den.empty()) {
        int e = deg(x.den);
        require(x.den == monomial(1, e), "UnsupportedRing", "exact Bockstein needs monomial denominators");
        y = pmod_monic(pmul(y, ppow(pmod_monic(vinv, f), e)), f);
      }
      y = pmod_monic(y, f);
      for (size_t b = 0; b < s; ++b) {
        Poly c = pmod_monic(pmul(y, monomial(1, static_cast<long>(b))), f);
        for (size_t a = 0; a < c.size(); ++a) Bm(i * s + a, j * s + b) = c[a];
      }
    }
  return Bm;
}

}  // namespace

BocksteinComplex bockstein_complex(const FreeComplex& C, const Elem& f, int N) {
  const Ring& R = C.ring;
  require(!R.is_zero(f), "ZeroDivisor", "f = 0 is a zero-divisor");
  ZArith z;
  BocksteinComplex out;
  out.mc.lo = C.lo;
  int lo = C.lo, hi = C.hi();
  if (R.kind == RingKind::Integers) {
    Int ff = abs(f.num[0]);
    std::vector<ZMat> B;
    for (int i = lo; i < hi; ++i) B.push_back(rmat_block(R, C.diff(i)));
    for (int i = lo; i <= hi; ++i) {
      size_t n = C.rank(i);
      ZMat L = i < hi ? preimage(z, B[i - lo], scalar_mat(z, C.rank(i + 1), ff)) : identity(z, n);
      ZMat L0 = i > lo ? hcat(z, B[i - 1 - lo], scalar_mat(z, n, ff)) : scalar_mat(z, n, ff);
      out.H.emplace_back(z, n, L, L0);
    }
    for (int i = lo; i < hi; ++i) {
      const auto& S = out.H[i - lo];
      const auto& T = out.H[i + 1 - lo];
      ZMat D(T.ngens(), S.ngens(), Int(0));
      for (size_t j = 0; j < S.ngens(); ++j) {
        auto y = matvec(z, B[i - lo], S.gen(j));
        for (auto& c : y) c = z.quo(c, ff);
        auto c = T.coords(y);
        for (size_t r = 0; r < c.size(); ++r) D(r, j) = c[r];
      }
      out.mc.d.push_back(D);
    }
  } else if (R.kind == RingKind::DepthPoly) {
    require(N >= 0, "InvalidArgument", "precision must be >= 0 (0 = exact)");
    require(f.den.empty() && deg(f.num) >= 1 && f.num.back() == 1, "UnsupportedRing",
            "Bockstein over the depth model needs a monic polynomial f");
    size_t s = deg(f.num);
    out.block = s;
    Int M = N >= 1 ? ipow(Int(R.p), N) : Int(0);
    std::vector<ZMat> B, B2;
    if (N >= 1) {
      Ring Rf = Ring::fdq(R.p, R.k, N, f.num);
      Ring Rf2 = Ring::fdq(R.p, R.k, N, pmul(f.num, f.num));
      RingHom h1 = make_hom(R, Rf, Rf.gen());
      RingHom h2 = make_hom(R, Rf2, Rf2.gen());
      for (int i = lo; i < hi; ++i) {
        B.push_back(rmat_block(Rf, rmat_apply(h1, C.diff(i))));
        B2.push_back(rmat_block(Rf2, rmat_apply(h2, C.diff(i))));
      }
    } else {
      Poly f2 = pmul(f.num, f.num);
      for (int i = lo; i < hi; ++i) {
        B.push_back(zblock_mod(R, C.diff(i), f.num));
        B2.push_back(zblock_mod(R, C.diff(i), f2));
      }
    }
    auto red = [&](const Poly& a) { return N >= 1 ? preduce_mod(a, M) : a; };
    for (int i = lo; i <= hi; ++i) {
      size_t n = C.rank(i) * s;
      ZMat L = i < hi ? preimage(z, B[i - lo], scalar_mat(z, C.rank(i + 1) * s, M)) : identity(z, n);
      ZMat L0 = i > lo ? hcat(z, B[i - 1 - lo], scalar_mat(z, n, M)) : scalar_mat(z, n, M);
      out.H.emplace_back(z, n, L, L0);
    }
    for (int i = lo; i < hi; ++i) {
      const auto& S = out.H[i - lo];
      const auto& T = out.H[i + 1 - lo];
      size_t n0 = C.rank(i), n1 = C.rank(i + 1);
      ZMat D(T.ngens(), S.ngens(), Int(0));
      for (size_t j = 0; j < S.ngens(); ++j) {
        auto x = S.gen(j);
        std::vector<Int> x2(n0 * 2 * s, Int(0));
        for (size_t c = 0; c < n0; ++c)
          for (size_t t = 0; t < s; ++t) x2[c * 2 * s + t] = x[c * s + t];
        auto y2 = matvec(z, B2[i - lo], x2);
        std::vector<Int> y(n1 * s, Int(0));
        for (size_t c = 0; c < n1; ++c) {
          Poly Y(y2.begin() + c * 2 * s, y2.begin() + (c + 1) * 2 * s);
          trim(Y);
          Y = red(Y);
          auto [q, r] = pdivmod_monic(Y, f.num);
          require(red(r).empty(), "NotACocycle", "Bockstein lift not divisible by f");
          q = red(q);
          for (size_t t = 0; t < q.size() && t < s; ++t) y[c * s + t] = q[t];
        }
        auto c = T.coords(y);
        for (size_t r = 0; r < c.size(); ++r) D(r, j) = c[r];
      }
      out.mc.d.push_back(D);
    }
  } else {
    fail("UnsupportedRing", "Bockstein complex over " + R.name() + " is not implemented");
  }
  for (const auto& S : out.H) out.mc.orders.push_back(S.orders());
  return out;
}

}  // namespace ipw
