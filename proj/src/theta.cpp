#include "ipw/theta.hpp"

#include "ipw/errors.hpp"

namespace ipw {

AinfTruncation::AinfTruncation(long p_, int k_) : p(p_), k(k_) {
  require(p >= 2 && k >= 0, "InvalidArgument", "A_inf truncation needs p prime and k >= 0");
}

Elem AinfTruncation::v() const { return ring().gen(); }

Elem AinfTruncation::q() const { return ring().poly(monomial(1, lpow(p, k))); }

Elem AinfTruncation::mu() const { return ring().poly(xn_minus_1(lpow(p, k))); }

Elem AinfTruncation::xi() const {
  require(k >= 1, "InsufficientDepth", "xi needs depth k >= 1");
  Poly f;
  long step = lpow(p, k - 1);
  for (long i = 0; i < p; ++i) f = padd(f, monomial(1, i * step));
  return ring().poly(f);
}

Elem AinfTruncation::xi_r(int r) const {
  require(r >= 0 && r <= k, "InsufficientDepth", "xi_r needs r <= k");
  Ring R = ring();
  return R.divide_exact_polynomial(mu(), R.poly(xn_minus_1(lpow(p, k - r))));
}

Elem AinfTruncation::xi_tilde_r(int r) const {
  require(r >= 0, "InvalidArgument", "xi~_r needs r >= 0");
  Ring R = ring();
  return R.divide_exact_polynomial(R.poly(xn_minus_1(lpow(p, k + r))), mu());
}

Elem AinfTruncation::phi(const Elem& x) const { return ring().phi(x); }

Elem AinfTruncation::phi_inverse(const Elem& x) const { return ring().phi_inverse(x); }

namespace {

// v -> zeta_{p^m}^{e} evaluated at every ghost index, then back to components.
WittVector theta_via_ghost(const AinfTruncation& A, const Elem& x, int r, int m, long e) {
  require(r >= 1, "InvalidArgument", "Witt length must be >= 1");
  Ring C = Ring::cyclotomic(A.p, m);
  Ring D = A.ring();
  Elem z = C.gen();
  Elem xc = D.canonicalize(x);
  if (!xc.den.empty()) {
    size_t nz = 0;
    for (const auto& c : xc.den) nz += c != 0;
    require(nz == 1, "NotRepresentable", "theta needs a monomial denominator, got " + D.str(xc));
  }
  long P = lpow(A.p, m);
  // a monomial denominator c v^j with c = +-1 is a root of unity, so v -> zeta^en
  // only permutes exponents mod p^m
  long shift = 0;
  int sign = 1;
  bool fast = true;
  if (!xc.den.empty()) {
    const Int& c = xc.den.back();
    fast = c == 1 || c == -1;
    sign = c == 1 ? 1 : -1;
    shift = static_cast<long>(xc.den.size()) - 1;
  }
  std::vector<Elem> g;
  for (int n = 0; n < r; ++n) {
    long en = (e * lpow(A.p, n)) % P;
    if (fast) {
      Poly f(static_cast<size_t>(P), Int(0));
      for (size_t i = 0; i < xc.num.size(); ++i) {
        if (xc.num[i] == 0) continue;
        long ex = ((static_cast<long>(i) - shift) % P * en % P + P) % P;
        f[ex] += sign > 0 ? xc.num[i] : Int(-xc.num[i]);
      }
      trim(f);
      g.push_back(C.poly(f));
    } else {
      RingHom h = make_hom(D, C, C.pow(z, en));
      g.push_back(hom_apply(h, xc));
    }
  }
  return ghost_inverse(A.p, C, g);
}

}  // namespace

WittVector theta_r(const AinfTruncation& A, const Elem& x, int r, int m) {
  require(m >= A.k, "InsufficientDepth", "target depth must be >= k");
  return theta_via_ghost(A, x, r, m, lpow(A.p, m - A.k));
}

WittVector theta_tilde_r(const AinfTruncation& A, const Elem& x, int r, int m) {
  require(m >= A.k + r, "InsufficientDepth",
          "theta~_r needs target depth m >= k + r (got m = " + std::to_string(m) + ")");
  return theta_via_ghost(A, x, r, m, lpow(A.p, m - A.k - r));
}

namespace {

bool lattice_contains(const ZMat& big, const ZMat& small) {
  ZArith z;
  Subquotient<ZArith> S(z, big.rows, big, ZMat(big.rows, 0));
  for (size_t j = 0; j < small.cols; ++j)
    if (!S.contains(col_of(small, j))) return false;
  return true;
}

bool same_lattice(const ZMat& a, const ZMat& b) { return lattice_contains(a, b) && lattice_contains(b, a); }

void put_block(ZMat& M, const ZMat& B, size_t r0, size_t c0) {
  for (size_t i = 0; i < B.rows; ++i)
    for (size_t j = 0; j < B.cols; ++j) M(r0 + i, c0 + j) = B(i, j);
}

}  // namespace

std::vector<LatticeCheck> roots_of_unity_ideals(long p, int m, int r) {
  require(r >= 1 && m >= r, "InsufficientDepth", "need 1 <= r <= m");
  Ring C = Ring::cyclotomic(p, m);
  size_t n = C.lattice_rank();
  size_t N = n * r;
  ZArith z;

  // phi: zeta -> zeta^p in lattice coordinates
  ZMat Phi(n, n, Int(0));
  Elem zp = C.pow(C.gen(), p);
  for (size_t i = 0; i < n; ++i) {
    std::vector<Int> e(n, 0);
    e[i] = 1;
    auto c = C.coords(C.eval_poly(C.from_coords(e).num, zp));
    for (size_t a = 0; a < n; ++a) Phi(a, i) = c[a];
  }
  // ghost image: g_n = sum_{j<=n} p^j Phi^{n-j} a_j (Dwork)
  ZMat M(N, N, Int(0));
  for (int j = 0; j < r; ++j) {
    ZMat P = identity(z, n);
    for (int i = j; i < r; ++i) {
      ZMat B = P;
      Int pj = ipow(Int(p), j);
      for (auto& x : B.a) x *= pj;
      put_block(M, B, i * n, j * n);
      P = matmul(z, Phi, P);
    }
  }
  auto diag_mult = [&](const std::vector<Elem>& gh) {
    ZMat D(N, N, Int(0));
    for (int i = 0; i < r; ++i) put_block(D, C.mult_block(gh[i]), i * n, i * n);
    return D;
  };

  std::vector<LatticeCheck> out;
  Elem zr = C.pow(C.gen(), lpow(p, m - r));
  for (int j = 0; j <= r; ++j) {
    std::vector<Elem> gV, gE;
    for (int i = 0; i < r; ++i) {
      gV.push_back(i >= j ? C.from_int(ipow(Int(p), j)) : C.zero());
      Elem s = C.zero(), zi = C.pow(zr, lpow(p, i));
      for (long t = 0; t < lpow(p, r - j); ++t) s = C.add(s, C.pow(zi, t));
      gE.push_back(s);
    }
    ZMat DV = matmul(z, diag_mult(gV), M), DE = matmul(z, diag_mult(gE), M);
    ZMat annV = matmul(z, M, kernel(z, DV));
    ZMat annE = matmul(z, M, kernel(z, DE));
    ZMat kerF;
    if (j == 0) {
      kerF = ZMat(N, 0);
    } else if (j == r) {
      kerF = M;
    } else {
      ZMat Pj(N - j * n, N, Int(0));
      for (size_t i = 0; i < N - j * n; ++i) Pj(i, j * n + i) = 1;
      kerF = matmul(z, M, kernel(z, matmul(z, Pj, M)));
    }
    std::string tag = " (p=" + std::to_string(p) + ", r=" + std::to_string(r) + ", j=" + std::to_string(j) + ")";
    // V^j W_{r-j}: ghost (0, .., 0, p^j g'_0, .., p^j g'_{r-j-1})
    ZMat VW(N, (r - j) * n, Int(0));
    Int pj = ipow(Int(p), j);
    for (size_t a = 0; a < (r - j) * n; ++a)
      for (size_t b = 0; b < (r - j) * n; ++b) VW(j * n + a, b) = pj * M(a, b);
    out.push_back({"Ann(V^j 1) = ker F^j" + tag, same_lattice(annV, kerF), true});
    out.push_back({"Ann(e_j) = V^j W_{r-j}" + tag, same_lattice(annE, VW), true});
    out.push_back({"ker F^j = e_j W_r" + tag, same_lattice(kerF, DE), false});
    out.push_back({"V^j(1) W_r = V^j W_{r-j}" + tag, same_lattice(DV, VW), false});
  }
  return out;
}

std::vector<LatticeCheck> roots_of_unity_ideals_model(long p, int r) {
  require(r >= 1, "InvalidArgument", "need r >= 1");
  auto xt = [&](int s) { return *pdiv_exact(xn_minus_1(lpow(p, s)), xn_minus_1(1)); };
  Poly g = xt(r);
  size_t n = static_cast<size_t>(deg(g));
  ZArith z;
  auto mult = [&](const Poly& a) {
    ZMat M(n, n, Int(0));
    for (size_t i = 0; i < n; ++i) {
      Poly c = pmod_monic(pmul(a, monomial(1, static_cast<long>(i))), g);
      for (size_t t = 0; t < c.size(); ++t) M(t, i) = c[t];
    }
    return M;
  };
  std::vector<LatticeCheck> out;
  for (int j = 0; j <= r; ++j) {
    Poly vj = *pdiv_exact(g, xt(r - j)), ej = xt(r - j);
    ZMat MV = mult(vj), ME = mult(ej);
    std::string tag = " in Z[v]/xi~_r (p=" + std::to_string(p) + ", r=" + std::to_string(r) +
                      ", j=" + std::to_string(j) + ")";
    out.push_back({"Ann(V^j 1) = ker F^j = e_j B_r" + tag, same_lattice(kernel(z, MV), ME), true});
    out.push_back({"Ann(e_j) = V^j(1) B_r" + tag, same_lattice(kernel(z, ME), MV), true});
  }
  return out;
}

}  // namespace ipw
