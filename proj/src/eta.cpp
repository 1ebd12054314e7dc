#include "ipw/eta.hpp"

#include <algorithm>

#include "ipw/errors.hpp"

namespace ipw {

const char* eta_kind_name(EtaKind k) {
  switch (k) {
    case EtaKind::ClosedForm:
      return "closedForm";
    case EtaKind::Generic:
      return "generic";
    case EtaKind::Acyclic:
      return "acyclic";
  }
  return "";
}

namespace {

ZMat to_z(const RMat& A) {
  ZMat B(A.rows, A.cols, Int(0));
  for (size_t i = 0; i < A.a.size(); ++i) B.a[i] = A.a[i].num.empty() ? Int(0) : A.a[i].num[0];
  return B;
}

RMat from_z(const Ring& R, const ZMat& A) {
  RMat B(R, A.rows, A.cols);
  for (size_t i = 0; i < A.a.size(); ++i) B.a[i] = R.from_int(A.a[i]);
  return B;
}

ZMat zscale(const ZMat& A, const Int& c) {
  ZMat B = A;
  for (auto& x : B.a) x *= c;
  return B;
}

struct GenericData {
  std::vector<ZMat> basis;  // unscaled Hermite bases B^i
  EtaResult res;
};

GenericData eta_generic_data(const FreeComplex& C, const Int& f) {
  require(C.ring.kind == RingKind::Integers, "UnsupportedRing", "generic eta runs over the integers only");
  require(f != 0, "ZeroF", "eta_f needs f != 0");
  require(C.lo >= 0, "InvalidArgument", "generic eta expects complexes in nonnegative degrees");
  ZArith z;
  GenericData g;
  int lo = C.lo, hi = C.hi();
  std::vector<ZMat> D;
  for (int i = lo; i < hi; ++i) D.push_back(to_z(C.diff(i)));
  for (int i = lo; i <= hi; ++i) {
    size_t n = C.rank(i);
    if (n == 0) {
      g.basis.emplace_back(0, 0, Int(0));
      continue;
    }
    ZMat gens = i < hi ? preimage(z, D[i - lo], scalar_mat(z, C.rank(i + 1), f)) : identity(z, n);
    g.basis.push_back(hnf_basis(gens));
  }
  EtaResult& r = g.res;
  r.kind = EtaKind::Generic;
  r.f = C.ring.from_int(f);
  r.complex.ring = C.ring;
  r.complex.lo = lo;
  r.complex.ranks = C.ranks;
  for (int i = lo; i < hi; ++i) {
    ZMat Y = matmul(z, D[i - lo], g.basis[i - lo]);
    ZMat X = g.basis[i + 1 - lo].rows ? solve_lower(g.basis[i + 1 - lo], Y) : ZMat(0, Y.cols, Int(0));
    for (auto& x : X.a) {
      require(mpz_divisible_p(x.get_mpz_t(), f.get_mpz_t()) != 0, "InternalError", "eta differential not divisible by f");
      x /= f;
    }
    r.complex.d.push_back(from_z(C.ring, X));
  }
  for (int i = lo; i <= hi; ++i) r.incl.push_back(from_z(C.ring, zscale(g.basis[i - lo], ipow(f, i))));
  r.complex.validate();
  return g;
}

}  // namespace

AbelianInvariants kill_f_torsion(const AbelianInvariants& H, const Int& f) {
  std::vector<Int> cyc(H.free_rank, Int(0));
  for (const auto& t : H.torsion) {
    Int g;
    mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), f.get_mpz_t());
    cyc.push_back(t / g);
  }
  return invariants_from_cyclic(cyc);
}

EtaResult eta_generic(const FreeComplex& C, const Int& f) {
  GenericData g = eta_generic_data(C, f);
  ModuleComplex MC = as_module_complex(C), ME = as_module_complex(g.res.complex);
  for (int i = C.lo; i <= C.hi(); ++i) {
    auto want = kill_f_torsion(MC.cohomology(i), f);
    auto got = ME.cohomology(i);
    require(want == got, "AssertionFailed",
            "H^" + std::to_string(i) + "(eta_f C) = " + got.str() + " but H/H[f] = " + want.str());
  }
  return g.res;
}

namespace {

// Contraction for the i-th Koszul factor on K(g): dh + hd = g_i.
std::vector<RMat> koszul_contraction(const Ring& R, int m, int i, const Elem& c) {
  std::vector<RMat> H;
  H.emplace_back(R, 0, 1);
  for (int n = 1; n <= m; ++n) {
    auto src = lex_subsets(m, n);
    auto dst = lex_subsets(m, n - 1);
    RMat h(R, dst.size(), src.size());
    for (size_t a = 0; a < src.size(); ++a) {
      const auto& J = src[a];
      if (std::find(J.begin(), J.end(), i) == J.end()) continue;
      std::vector<int> I;
      int before = 0;
      for (int x : J) {
        if (x == i) continue;
        I.push_back(x);
        if (x < i) ++before;
      }
      size_t b = std::find(dst.begin(), dst.end(), I) - dst.begin();
      h(b, a) = before % 2 ? R.neg(c) : c;
    }
    H.push_back(h);
  }
  return H;
}

void check_homotopy(const FreeComplex& C, const std::vector<RMat>& H, const Elem& f) {
  const Ring& R = C.ring;
  for (int n = C.lo; n <= C.hi(); ++n) {
    size_t k = n - C.lo;
    RMat lhs(R, C.rank(n), C.rank(n));
    if (n > C.lo) lhs = rmatmul(R, C.diff(n - 1), H[k]);
    if (n < C.hi()) {
      RMat t = rmatmul(R, H[k + 1], C.diff(n));
      for (size_t j = 0; j < t.a.size(); ++j) lhs.a[j] = R.add(lhs.a[j], t.a[j]);
    }
    require(lhs == rmat_scale(R, rmat_identity(R, C.rank(n)), f), "AssertionFailed",
            "acyclicity witness fails dH + Hd = f in degree " + std::to_string(n));
  }
}

}  // namespace

namespace {

bool try_divide(const Ring& R, const Elem& a, const Elem& b, Elem& out) {
  try {
    out = R.divide_exact(a, b);
    return true;
  } catch (const Error& e) {
    if (e.code() != "NotDivisible" && e.code() != "DivisionByZero") throw;
  }
  return false;
}

// Offset of block (i, j) in total degree n of tensor_total(C, D), or -1.
long tensor_offset(const FreeComplex& C, const FreeComplex& D, int n, int i) {
  size_t off = 0;
  for (int a = std::min(C.hi(), n - D.lo); a >= std::max(C.lo, n - D.hi()); --a) {
    if (a == i) return static_cast<long>(off);
    off += C.rank(a) * D.rank(n - a);
  }
  return -1;
}

// (-1)^{|m|} (1 (x) h) on M (x) K.
std::vector<RMat> twisted_homotopy(const Ring& R, const FreeComplex& M, const FreeComplex& K,
                                   const std::vector<RMat>& h) {
  FreeComplex T = tensor_total(M, K);
  std::vector<RMat> H;
  for (int n = T.lo; n <= T.hi(); ++n) {
    RMat X(R, T.rank(n - 1), T.rank(n));
    for (int a = M.lo; a <= M.hi(); ++a) {
      int b = n - a;
      if (b < K.lo + 1 || b > K.hi()) continue;
      long src = tensor_offset(M, K, n, a), dst = tensor_offset(M, K, n - 1, a);
      if (src < 0 || dst < 0) continue;
      const RMat& hb = h[b - K.lo];
      size_t rs = K.rank(b), rt = K.rank(b - 1);
      for (size_t c = 0; c < M.rank(a); ++c)
        for (size_t r = 0; r < rt; ++r)
          for (size_t s = 0; s < rs; ++s) {
            const Elem& x = hb(r, s);
            if (R.is_zero(x)) continue;
            X(dst + c * rt + r, src + c * rs + s) = a % 2 ? R.neg(x) : x;
          }
    }
    H.push_back(X);
  }
  return H;
}

}  // namespace

EtaResult eta_koszul(const Ring& R, const Elem& f0, const std::vector<Elem>& g0, const FreeComplex* twist) {
  Elem f = R.canonicalize(f0);
  require(!R.is_zero(f), "ZeroF", "eta_f needs f != 0");
  if (twist)
    require(R.kind == RingKind::Integers && twist->ring == R, "UnsupportedRing",
            "twisted Koszul closed form needs an integer complex");
  int m = static_cast<int>(g0.size());
  std::vector<Elem> g, q(m);
  for (const auto& x : g0) g.push_back(R.canonicalize(x));
  bool all = true;
  int witness = -1;
  Elem cof;
  for (int i = 0; i < m; ++i) {
    if (try_divide(R, g[i], f, q[i])) continue;
    all = false;
    Elem c;
    require(try_divide(R, f, g[i], c), "MixedUndecidable",
            R.str(g[i]) + " neither divides nor is divisible by " + R.str(f));
    if (witness < 0) {
      witness = i;
      cof = c;
    }
  }
  FreeComplex K = koszul(R, g);
  EtaResult res;
  res.f = f;
  if (all) {
    res.kind = EtaKind::ClosedForm;
    FreeComplex Kq = koszul(R, q);
    std::vector<RMat> inclK;
    for (int n = 0; n <= m; ++n) inclK.push_back(rmat_scale(R, rmat_identity(R, Kq.ranks[n]), R.pow(f, n)));
    if (!twist) {
      res.complex = Kq;
      res.incl = inclK;
      return res;
    }
    EtaResult eM = eta_generic(*twist, f.num[0]);
    res.complex = tensor_total(eM.complex, Kq);
    res.incl = tensor_maps(R, eM.complex, Kq, *twist, K, eM.incl, inclK);
    make_chain_map(res.complex, tensor_total(*twist, K), res.incl);
    return res;
  }
  res.kind = EtaKind::Acyclic;
  std::vector<RMat> h = koszul_contraction(R, m, witness, cof);
  FreeComplex C = twist ? tensor_total(*twist, K) : K;
  res.homotopy = twist ? twisted_homotopy(R, *twist, K, h) : h;
  check_homotopy(C, res.homotopy, f);
  res.complex.ring = R;
  res.complex.lo = C.lo;
  res.complex.ranks.assign(C.ranks.size(), 0);
  for (size_t i = 0; i + 1 < C.ranks.size(); ++i) res.complex.d.emplace_back(R, 0, 0);
  for (size_t i = 0; i < C.ranks.size(); ++i) res.incl.emplace_back(R, C.ranks[i], 0);
  return res;
}

EtaCheck eta_compose_check(const FreeComplex& C, const Int& f, const Int& g) {
  EtaCheck chk;
  ZArith z;
  EtaResult A = eta_generic(C, f * g);
  EtaResult Bg = eta_generic(C, g);
  EtaResult Bfg = eta_generic(Bg.complex, f);
  ModuleComplex MA = as_module_complex(A.complex), MB = as_module_complex(Bfg.complex);
  for (int i = C.lo; i <= C.hi(); ++i) {
    DegreeRecord rec;
    rec.degree = i;
    auto a = MA.cohomology(i), b = MB.cohomology(i);
    rec.lhs = a.str();
    rec.rhs = b.str();
    bool ok = a == b;
    size_t k = i - C.lo;
    if (C.rank(i) > 0) {
      ZMat comp = matmul(z, to_z(Bg.incl[k]), to_z(Bfg.incl[k]));
      ok = ok && hnf_basis(comp) == hnf_basis(to_z(A.incl[k]));
    }
    rec.match = ok;
    chk.pass = chk.pass && ok;
    chk.per_degree.push_back(rec);
  }
  return chk;
}

QICert bockstein_comparison(const FreeComplex& C, const Elem& f, int N) {
  require(C.ring.kind == RingKind::Integers, "UnsupportedRing",
          "over polynomial models pass the Koszul closed form explicitly");
  EtaResult E = eta_generic(C, f.num.empty() ? Int(0) : f.num[0]);
  return bockstein_comparison(E, C, N);
}

QICert bockstein_comparison(const EtaResult& E, const FreeComplex& C, int N) {
  const Ring& R = C.ring;
  require(E.complex.lo == C.lo && E.complex.ranks.size() == C.ranks.size(), "ShapeMismatch",
          "eta result does not belong to this complex");
  BocksteinComplex B = bockstein_complex(C, E.f, N);
  ModuleComplex A;
  A.lo = C.lo;
  std::vector<ZMat> F;
  if (R.kind == RingKind::Integers) {
    Int ff = abs(E.f.num[0]);
    for (int i = C.lo; i <= C.hi(); ++i) A.orders.emplace_back(E.complex.rank(i), ff);
    for (const auto& m : E.complex.d) A.d.push_back(to_z(m));
    for (int i = C.lo; i <= C.hi(); ++i) {
      size_t k = i - C.lo;
      ZMat Bp = to_z(E.incl[k]);
      Int s = ipow(E.f.num[0], i);
      const auto& H = B.H[k];
      ZMat M(H.ngens(), Bp.cols, Int(0));
      for (size_t j = 0; j < Bp.cols; ++j) {
        auto y = col_of(Bp, j);
        for (auto& c : y) c /= s;
        auto c = H.coords(y);
        for (size_t r = 0; r < c.size(); ++r) M(r, j) = c[r];
      }
      F.push_back(M);
    }
  } else if (R.kind == RingKind::DepthPoly) {
    require(N >= 1, "InvalidArgument", "comparison over a depth polynomial model needs precision N >= 1");
    Ring Rf = Ring::fdq(R.p, R.k, N, E.f.num);
    RingHom h = make_hom(R, Rf, Rf.gen());
    A = as_module_complex(base_change(E.complex, h));
    for (int i = C.lo; i <= C.hi(); ++i) {
      size_t k = i - C.lo;
      Elem fi = R.pow(E.f, i);
      RMat Bp = E.incl[k];
      for (auto& x : Bp.a) x = R.divide_exact(x, fi);
      ZMat blk = rmat_block(Rf, rmat_apply(h, Bp));
      const auto& H = B.H[k];
      ZMat M(H.ngens(), blk.cols, Int(0));
      for (size_t j = 0; j < blk.cols; ++j) {
        auto c = H.coords(col_of(blk, j));
        for (size_t r = 0; r < c.size(); ++r) M(r, j) = c[r];
      }
      F.push_back(M);
    }
  } else {
    fail("UnsupportedRing", "Bockstein comparison over " + R.name());
  }
  require(B.mc.d_squared_zero(), "AssertionFailed", "Bockstein differential does not square to zero");
  return compare_module_complexes(A, B.mc, F);
}

EtaCheck truncation_maps_check(const FreeComplex& C, const Int& f, int n, int m) {
  require(n <= m, "InvalidArgument", "truncation needs n <= m");
  GenericData g = eta_generic_data(C, f);
  const EtaResult& E = g.res;
  ZArith z;
  EtaCheck chk;
  ModuleComplex MC = as_module_complex(C), ME = as_module_complex(E.complex);
  if (n >= C.lo && n <= C.hi()) {
    auto Hn = MC.cohomology(n);
    for (const auto& t : Hn.torsion) {
      Int gg;
      mpz_gcd(gg.get_mpz_t(), t.get_mpz_t(), f.get_mpz_t());
      if (gg != 1) {
        chk.pass = false;
        chk.note = "H^n(C) has f-torsion; the second transformation is undefined";
        return chk;
      }
    }
  }
  Int scale = ipow(f, m - n);
  for (int i = std::max(n, C.lo); i <= std::min(m, C.hi()); ++i) {
    size_t k = i - C.lo;
    auto SC = MC.cohomology_sq(i);
    auto SE = ME.cohomology_sq(i);
    const ZMat& Bi = g.basis[k];
    auto alpha = [&](const std::vector<Int>& x) {  // f^m x expressed in the eta basis
      ZMat X(x.size(), 1, Int(0));
      for (size_t r = 0; r < x.size(); ++r) X(r, 0) = x[r] * ipow(f, m - i);
      return col_of(solve_lower(Bi, X), 0);
    };
    auto beta = [&](const std::vector<Int>& y) {  // f^i B y / f^n
      ZMat Y(y.size(), 1, Int(0));
      for (size_t r = 0; r < y.size(); ++r) Y(r, 0) = y[r];
      auto v = col_of(matmul(z, Bi, Y), 0);
      for (auto& c : v) c *= ipow(f, i - n);
      return v;
    };
    bool ok = true;
    for (size_t j = 0; j < SE.ngens() && ok; ++j) {
      auto y = SE.gen(j);
      auto w = alpha(beta(y));
      std::vector<Int> sy = y;
      for (auto& c : sy) c *= scale;
      ok = SE.same_class(w, sy);
    }
    for (size_t j = 0; j < SC.ngens() && ok; ++j) {
      auto x = SC.gen(j);
      auto w = beta(alpha(x));
      std::vector<Int> sx = x;
      for (auto& c : sx) c *= scale;
      ok = SC.same_class(w, sx);
    }
    DegreeRecord rec;
    rec.degree = i;
    rec.lhs = invariants_of(SE).str();
    rec.rhs = invariants_of(SC).str();
    rec.match = ok;
    chk.pass = chk.pass && ok;
    chk.per_degree.push_back(rec);
  }
  return chk;
}

ChainMap lax_monoidal_map(const FreeComplex& C, const FreeComplex& D, const Int& f) {
  GenericData gc = eta_generic_data(C, f), gd = eta_generic_data(D, f);
  FreeComplex CD = tensor_total(C, D);
  GenericData gcd = eta_generic_data(CD, f);
  FreeComplex S = tensor_total(gc.res.complex, gd.res.complex);
  auto images = tensor_maps(C.ring, gc.res.complex, gd.res.complex, C, D, gc.res.incl, gd.res.incl);
  std::vector<RMat> maps;
  for (int n = S.lo; n <= S.hi(); ++n) {
    size_t k = n - S.lo;
    ZMat Y = to_z(images[k]);
    Int s = ipow(f, n);
    for (auto& x : Y.a) {
      require(mpz_divisible_p(x.get_mpz_t(), s.get_mpz_t()) != 0, "InternalError", "image not in f^n (C x D)");
      x /= s;
    }
    ZMat X = gcd.basis[k].rows ? solve_lower(gcd.basis[k], Y) : ZMat(0, Y.cols, Int(0));
    maps.push_back(from_z(C.ring, X));
  }
  return make_chain_map(S, gcd.res.complex, maps);
}

bool homotopy_ok(const FreeComplex& C, const std::vector<RMat>& H, const Elem& f) {
  const Ring& R = C.ring;
  if (H.size() != C.ranks.size()) return false;
  for (int n = C.lo; n <= C.hi(); ++n) {
    size_t k = n - C.lo;
    RMat lhs(R, C.rank(n), C.rank(n));
    if (n > C.lo) lhs = rmatmul(R, C.diff(n - 1), H[k]);
    if (n < C.hi()) {
      RMat t = rmatmul(R, H[k + 1], C.diff(n));
      for (size_t j = 0; j < t.a.size(); ++j) lhs.a[j] = R.add(lhs.a[j], t.a[j]);
    }
    if (!(lhs == rmat_scale(R, rmat_identity(R, C.rank(n)), f))) return false;
  }
  return true;
}

}  // namespace ipw
