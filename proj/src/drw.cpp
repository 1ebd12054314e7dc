#include "ipw/drw.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ipw/errors.hpp"
#include "ipw/theta.hpp"
#include "ipw/witt.hpp"

namespace ipw {

namespace {

constexpr long kInf = 1L << 40;

long binom(int d, int n) {
  if (n < 0 || n > d) return 0;
  long b = 1;
  for (int i = 1; i <= n; ++i) b = b * (d - n + i) / i;
  return b;
}

std::vector<long> unit_vec(int d, int i, long s) {
  std::vector<long> m(d, 0);
  m[i] = s;
  return m;
}

std::vector<long> vscale(const std::vector<long>& c, long s) {
  std::vector<long> o(c);
  for (auto& x : o) x *= s;
  return o;
}

std::vector<long> vadd(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> o(a);
  for (size_t i = 0; i < o.size(); ++i) o[i] += b[i];
  return o;
}

bool all_divisible(const std::vector<long>& c, long p) {
  return std::all_of(c.begin(), c.end(), [&](long x) { return x % p == 0; });
}

std::vector<long> vdiv(const std::vector<long>& c, long p) {
  std::vector<long> o(c);
  for (auto& x : o) x /= p;
  return o;
}

Weight weight_div_p(const Weight& a, long p) {
  Weight b;
  for (const auto& x : a) b.push_back(qrat(x.num, x.den_exp + 1, p));
  return b;
}

AbelianInvariants free_zpn(long p, int N, size_t k) {
  std::vector<Int> ord(k, ipow(Int(p), N));
  return invariants_from_cyclic(ord);
}

std::string yes(bool b) { return b ? "holds" : "fails"; }

}  // namespace

long val_of(const QRat& x, long p) {
  if (x.num == 0) return kInf;
  return v_p(x.num, p) - x.den_exp;
}

long val_of(const Weight& a, const std::vector<int>& I, long p) {
  long v = kInf;
  for (int i : I) v = std::min(v, val_of(a[i], p));
  return v;
}

int u_of(const Weight& a, long p) {
  long v = kInf;
  for (const auto& x : a) v = std::min(v, val_of(x, p));
  return v < 0 ? static_cast<int>(-v) : 0;
}

std::vector<long> u_weight(const Weight& a, int r, long p) {
  std::vector<long> c;
  for (const auto& x : a) {
    require(x.den_exp <= r, "NonIntegralExponent", "weight denominator exceeds p^r");
    c.push_back(x.num * lpow(p, r - x.den_exp));
  }
  return c;
}

std::vector<int> lz_order(const Weight& a, long p) {
  std::vector<int> idx(a.size());
  for (size_t i = 0; i < a.size(); ++i) idx[i] = static_cast<int>(i);
  std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return val_of(a[x], p) < val_of(a[y], p); });
  return idx;
}

std::vector<Partition> lz_partitions(const Weight& a, int n, long p) {
  int d = static_cast<int>(a.size());
  std::vector<Partition> out;
  if (n < 0 || n > d) return out;
  auto ord = lz_order(a, p);
  // sizes m_0 >= 0, m_1..m_n >= 1 with sum d, in lex order
  std::vector<int> m(n + 1, 0);
  auto emit = [&]() {
    Partition P;
    int pos = 0;
    for (int j = 0; j <= n; ++j) {
      std::vector<int> I(ord.begin() + pos, ord.begin() + pos + m[j]);
      std::sort(I.begin(), I.end());
      P.push_back(I);
      pos += m[j];
    }
    out.push_back(P);
  };
  // recursive fill
  std::vector<int> lo(n + 1, 1);
  lo[0] = 0;
  auto rec = [&](auto&& self, int j, int left) -> void {
    if (j == n) {
      if (left >= lo[n]) {
        m[n] = left;
        emit();
      }
      return;
    }
    for (int x = lo[j]; x <= left - (n - j); ++x) {
      m[j] = x;
      self(self, j + 1, left - x);
    }
  };
  rec(rec, 0, d);
  return out;
}

std::string LZModule::str() const {
  if (zero()) return "0";
  std::string s = "W_" + std::to_string(length) + "(A)";
  return u ? "V^" + std::to_string(u) + " " + s : s;
}

LZModule lz_module(const Weight& a, int r, long p) {
  LZModule m;
  m.u = u_of(a, p);
  m.length = r - m.u;
  return m;
}

Json lz_symbol_to_json(long p, const LZSymbol& s) {
  Json w = Json::array(), part = Json::array();
  for (const auto& x : s.a) w.push_back(Json{{"num", x.num}, {"den_exp", x.den_exp}});
  for (const auto& I : s.part) {
    Json b = Json::array();
    for (int i : I) b.push_back(i + 1);
    part.push_back(b);
  }
  int t = s.r - u_of(s.a, p);
  require(t >= 1, "InvalidArgument", "zero symbols are not serialized");
  AinfTruncation A(p, 0);
  Poly x = pmod_monic(s.coeff, xi_tilde_q(p, t));
  Json coeff = witt_to_json(theta_tilde_r(A, A.ring().poly(x), t, t));
  return Json{{"r", s.r}, {"weight", w}, {"partition", part}, {"coeff", coeff}};
}

LZSymbol lz_symbol_from_json(long p, const Json& j) {
  LZSymbol s;
  try {
    s.r = j.at("r").get<int>();
    for (const auto& x : j.at("weight")) s.a.push_back(qrat(x.at("num").get<long>(), x.at("den_exp").get<int>(), p));
    for (const auto& b : j.at("partition")) {
      std::vector<int> I;
      for (const auto& i : b) I.push_back(i.get<int>() - 1);
      s.part.push_back(I);
    }
  } catch (const nlohmann::json::exception& e) {
    fail("SchemaMismatch", std::string("LZ symbol: ") + e.what());
  }
  int t = s.r - u_of(s.a, p);
  require(t >= 1, "SchemaMismatch", "LZ symbol with zero coefficient module");
  WittVector w = witt_from_json(j.at("coeff"));
  require(w.p == p && static_cast<int>(w.r()) == t && w.ring == Ring::cyclotomic(p, t), "SchemaMismatch",
          "LZ coefficient must be a length r-u(a) Witt vector over Z[zeta_{p^t}]");
  // invert theta~_t: the ghost side is x at zeta^{p^n}, linear in x
  auto gh = ghost(w);
  const Ring& C = w.ring;
  size_t b = static_cast<size_t>(lpow(p, t) - 1);
  size_t cr = C.lattice_rank();
  ZMat A(cr * t, b);
  std::vector<Int> rhs;
  for (int n = 0; n < t; ++n) {
    Elem z = C.pow(C.gen(), lpow(p, n));
    for (size_t i = 0; i < b; ++i) {
      auto co = C.coords(C.pow(z, static_cast<long>(i)));
      for (size_t k = 0; k < cr; ++k) A(n * cr + k, i) = co[k];
    }
    auto g = C.coords(gh[n]);
    rhs.insert(rhs.end(), g.begin(), g.end());
  }
  ZArith e;
  // x solves A x = rhs: find it in the preimage of the span of rhs
  ZMat R(rhs.size(), 1);
  for (size_t i = 0; i < rhs.size(); ++i) R(i, 0) = rhs[i];
  ZMat Aug = hcat(e, A, R);
  ZMat K = kernel(e, Aug);
  // the kernel is one-dimensional (A is injective); normalize last entry to -1
  require(K.cols == 1 && (K(b, 0) == 1 || K(b, 0) == -1), "SchemaMismatch", "coefficient is not in the image of theta~");
  Int sgn = -K(b, 0);
  Poly x(b);
  for (size_t i = 0; i < b; ++i) x[i] = sgn * K(i, 0);
  trim(x);
  s.coeff = x;
  return s;
}

Vec teich(BModel& B, int s, const std::vector<long>&) { return B.scalar(s, pconst(1)); }

Vec dlog_T(BModel& B, int s, int i) {
  return B.d(s, unit_vec(B.d(), i, lpow(B.p(), s)), 0, B.scalar(s, pconst(1)));
}

namespace {

struct Block {
  long v = kInf;
  std::vector<long> b;  // a|I / p^v as integers, zero off I
};

Block block_of(const Weight& a, const std::vector<int>& I, long p) {
  Block B;
  B.b.assign(a.size(), 0);
  B.v = val_of(a, I, p);
  if (B.v >= kInf) return B;
  for (int i : I) {
    // a_i / p^v = num / p^{den + v}, integral since v is the minimum
    long e = a[i].den_exp + B.v;
    B.b[i] = e >= 0 ? a[i].num / lpow(p, static_cast<int>(e)) : a[i].num * lpow(p, static_cast<int>(-e));
  }
  return B;
}

// Factor of degree one for block j (not the coefficient block) at level r.
Vec block_factor(BModel& B, int r, const Block& bl, const std::vector<int>& I, bool teich_form) {
  long p = B.p();
  if (bl.v >= kInf) {
    Vec acc = B.zero(r, 1);
    for (int i : I) acc = B.add(acc, dlog_T(B, r, i), r);
    return acc;
  }
  if (bl.v < 0) {
    int m = static_cast<int>(-bl.v), s = r - m;
    if (s <= 0) return B.zero(r, 1);
    Vec x = B.scalar(s, pconst(1));
    for (int t = s; t < r; ++t) x = B.V(t, 0, x);
    return B.d(r, vscale(bl.b, lpow(p, s)), 0, x);
  }
  int v = static_cast<int>(bl.v);
  if (teich_form) {
    // [T]^{b(p^v - 1)} d[T]^b; the left factor has empty support, no twist
    Vec y = B.d(r, vscale(bl.b, lpow(p, r)), 0, B.scalar(r, pconst(1)));
    return y;
  }
  Vec y = B.d(r + v, vscale(bl.b, lpow(p, r + v)), 0, B.scalar(r + v, pconst(1)));
  for (int t = r + v; t > r; --t) y = B.F(t, 1, y);
  return y;
}

Vec eval_impl(BModel& B, const LZSymbol& s, bool teich_form) {
  long p = B.p();
  int r = s.r, n = s.degree();
  require(static_cast<int>(s.a.size()) == B.d(), "ShapeMismatch", "symbol weight has the wrong dimension");
  require(n >= 0 && n <= B.d(), "InvalidArgument", "symbol degree out of range");
  std::vector<long> c = u_weight(s.a, r, p);
  int u = u_of(s.a, p), t = r - u;
  if (t <= 0) return B.zero(r, n);
  std::vector<Block> bl;
  for (const auto& I : s.part) bl.push_back(block_of(s.a, I, p));
  Vec acc;
  size_t first;
  std::vector<long> wacc;
  if (!s.part[0].empty()) {
    if (bl[0].v < 0) {
      int m = static_cast<int>(-bl[0].v);
      Vec x = B.scalar(r - m, s.coeff);
      for (int l = r - m; l < r; ++l) x = B.V(l, 0, x);
      acc = x;
    } else {
      acc = B.scalar(r, s.coeff);
    }
    first = 1;
  } else if (u > 0) {
    // x goes inside the first dV
    int m = static_cast<int>(-bl[1].v);
    Vec x = B.scalar(r - m, s.coeff);
    for (int l = r - m; l < r; ++l) x = B.V(l, 0, x);
    std::vector<long> c1 = vscale(bl[1].b, lpow(p, r - m));
    acc = B.d(r, c1, 0, x);
    first = 2;
  } else {
    acc = B.scalar(r, s.coeff);
    first = 1;
  }
  int deg = first == 2 ? 1 : 0;
  for (size_t j = first; j < s.part.size(); ++j) {
    Vec f = block_factor(B, r, bl[j], s.part[j], teich_form);
    std::vector<long> cj(B.d(), 0);
    for (int i : s.part[j]) cj[i] = c[i];
    acc = B.mul(r, deg, acc, cj, 1, f);
    ++deg;
  }
  return acc;
}

}  // namespace

Vec lz_eval(BModel& B, const LZSymbol& s, const Window* W) {
  if (W) require(W->contains(s.a, B.p()), "WindowMiss", "symbol weight " + weight_str(s.a, B.p()) + " outside the window");
  return eval_impl(B, s, false);
}

Vec lz_eval_teichmuller(BModel& B, const LZSymbol& s) { return eval_impl(B, s, true); }

std::vector<ProcomplexLevel> procomplex_build(BModel& B, int k, int r, const Window& W) {
  require(k >= r + 1, "InsufficientDepth", "procomplex needs depth k >= r + 1");
  require(B.N() >= r + 2, "InsufficientPrecision", "procomplex needs precision N >= r + 2");
  require(W.e <= r, "InvalidArgument", "weights of level r have denominators dividing p^r");
  std::vector<ProcomplexLevel> out;
  auto ws = window_weights(W, B.p());
  for (int n = 0; n <= B.d(); ++n) {
    ProcomplexLevel L;
    L.r = r;
    L.n = n;
    for (const auto& a : ws) {
      L.weights.push_back(a);
      L.invariants.push_back(B.invariants(r, u_weight(a, r, B.p()), n));
    }
    out.push_back(L);
  }
  return out;
}

namespace {

LZSymbol sym(int r, const Weight& a, const Partition& P, const Poly& x) { return LZSymbol{r, a, P, x}; }

bool case1(const Partition& P) { return !P[0].empty(); }

}  // namespace

std::vector<Check> lambda_check(BModel& B, int r, int n, const Window& W) {
  long p = B.p();
  int d = B.d(), N = B.N();
  std::vector<Check> out;
  for (const auto& a : window_weights(W, p)) {
    std::string id = "lambda[r=" + std::to_string(r) + ",n=" + std::to_string(n) + ",a=" + weight_str(a, p) + "]";
    auto parts = lz_partitions(a, n, p);
    if (n > d) {
      out.push_back(make_check(id + " iso", parts.empty(), "0 -> 0", parts.empty() ? "0 -> 0" : "symbols in degree > d"));
      continue;
    }
    std::vector<long> c = u_weight(a, r, p);
    int t = r - u_of(a, p);
    const auto& H = B.H(r, c, n);
    AbelianInvariants Hi = invariants_of(H);
    if (t <= 0) {
      out.push_back(make_check(id + " iso", Hi.is_zero(), "0", Hi.str()));
      continue;
    }
    size_t bt = static_cast<size_t>(lpow(p, t) - 1);
    ZMat M(H.ngens(), parts.size() * bt);
    size_t col = 0;
    for (const auto& P : parts)
      for (size_t j = 0; j < bt; ++j) {
        auto co = H.coords(lz_eval(B, sym(r, a, P, monomial(1, j))));
        for (size_t i = 0; i < co.size(); ++i) M(i, col) = co[i];
        ++col;
      }
    ZArith z;
    AbelianInvariants src = free_zpn(p, N, parts.size() * bt);
    bool iso = parts.size() == static_cast<size_t>(binom(d, n)) && src == Hi && is_surjective(z, H, M);
    out.push_back(make_check(id + " iso", iso, src.str(), Hi.str()));

    // compatibility on basis symbols x = q^j
    bool okd = true, okF = true, okV = true, okR = true, okT = true;
    for (const auto& P : parts)
      for (size_t j = 0; j < bt; ++j) {
        Poly x = monomial(1, j);
        Vec e = lz_eval(B, sym(r, a, P, x));
        okT = okT && B.same_class(r, c, n, e, lz_eval_teichmuller(B, sym(r, a, P, x)));
        // d
        if (n < d) {
          long v0 = val_of(a, P[0], p);
          Vec want = B.zero(r, n + 1);
          if (case1(P) && v0 < kInf) {
            Partition Q{{}};
            Q.insert(Q.end(), P.begin(), P.end());
            want = lz_eval(B, sym(r, a, Q, x));
            if (v0 > 0) want = B.scale(want, ipow(Int(p), v0), r);
          }
          okd = okd && B.same_class(r, c, n + 1, B.d(r, c, n, e), want);
        }
        // V: level r -> r+1, weight a/p
        {
          Weight ap = weight_div_p(a, p);
          long v0 = case1(P) ? val_of(a, P[0], p) : val_of(a, P.size() > 1 ? P[1] : std::vector<int>{}, p);
          Vec want;
          Poly Vx = pmul(x, [&] {
            Poly f;
            for (long i = 0; i < p; ++i) f = padd(f, monomial(1, i * lpow(p, r)));
            return f;
          }());
          if (case1(P)) {
            want = (v0 <= 0) ? lz_eval(B, sym(r + 1, ap, P, x)) : lz_eval(B, sym(r + 1, ap, P, Vx));
          } else if (u_of(a, p) > 0) {
            want = B.scale(lz_eval(B, sym(r + 1, ap, P, x)), p, r + 1);
          } else if (v0 == 0) {
            want = B.scale(lz_eval(B, sym(r + 1, ap, P, x)), p, r + 1);
          } else {
            want = lz_eval(B, sym(r + 1, ap, P, Vx));
          }
          okV = okV && B.same_class(r + 1, c, n, B.V(r, n, e), want);
        }
      }
    // F: level r+1 weight a/p -> level r weight a
    {
      Weight ap = weight_div_p(a, p);
      int t1 = r + 1 - u_of(ap, p);
      size_t b1 = t1 > 0 ? static_cast<size_t>(lpow(p, t1) - 1) : 0;
      for (const auto& P : lz_partitions(ap, n, p))
        for (size_t j = 0; j < b1; ++j) {
          Poly x = monomial(1, j);
          Vec e = lz_eval(B, sym(r + 1, ap, P, x));
          Vec want;
          long v0 = val_of(ap, P[0], p);
          if (case1(P) && v0 < 0)
            want = B.scale(lz_eval(B, sym(r, a, P, x)), p, r);
          else
            want = lz_eval(B, sym(r, a, P, x));  // F x is the reduction, done by scalar()
          okF = okF && B.same_class(r, c, n, B.F(r + 1, n, e), want);
        }
    }
    // R: level r+1 weight a -> level r weight a, on x = q^{pj}
    {
      int t1 = r + 1 - u_of(a, p);
      std::vector<long> c1 = u_weight(a, r + 1, p);
      size_t b1 = t1 > 0 ? static_cast<size_t>(lpow(p, t1) - 1) : 0;
      for (const auto& P : parts)
        for (size_t j = 0; j * p < b1; ++j) {
          Vec e = lz_eval(B, sym(r + 1, a, P, monomial(1, j * p)));
          auto comps = B.R(r + 1, c1, n, e);
          okR = okR && B.same_class(r, c, n, comps[0], lz_eval(B, sym(r, a, P, monomial(1, j))));
          for (long k = 1; k < p; ++k) okR = okR && B.is_zero_class(r, c, n, comps[k]);
        }
    }
    if (n < d) out.push_back(make_check(id + " d", okd, "holds", yes(okd)));
    out.push_back(make_check(id + " F", okF, "holds", yes(okF)));
    out.push_back(make_check(id + " V", okV, "holds", yes(okV)));
    out.push_back(make_check(id + " R", okR, "holds", yes(okR)));
    out.push_back(make_check(id + " unique", okT, "holds", yes(okT)));
  }
  return out;
}

std::vector<Check> fv_identities_check(BModel& B, int r, const Window& W) {
  long p = B.p();
  int d = B.d();
  std::vector<Check> out;
  auto ws = window_weights(W, p);
  bool fv = true, fdv = true, proj = true, dd = true, leib = true;
  bool rf = true, rv = true, rmul = true, rd = true;
  auto gens = [&](int s, const std::vector<long>& c, int n) {
    std::vector<Vec> g;
    const auto& H = B.H(s, c, n);
    for (size_t i = 0; i < H.ngens(); ++i) g.push_back(H.gen(i));
    return g;
  };
  for (const auto& a : ws) {
    std::vector<long> c = u_weight(a, r, p);
    for (int n = 0; n <= d; ++n)
      for (const auto& x : gens(r, c, n)) {
        Vec vx = B.V(r, n, x);
        fv = fv && B.same_class(r, c, n, B.F(r + 1, n, vx), B.scale(x, p, r));
        if (n < d) {
          fdv = fdv && B.same_class(r, c, n + 1, B.F(r + 1, n + 1, B.d(r + 1, c, n, vx)), B.d(r, c, n, x));
          Vec dx = B.d(r, c, n, x);
          if (n + 1 < d) dd = dd && B.is_zero_class(r, c, n + 2, B.d(r, c, n + 1, dx));
        }
      }
    // level r+1 and r+2 elements of the same U-weight for R
    for (int s = r + 1; s <= r + 2; ++s) {
      if (!all_divisible(c, p)) break;
      std::vector<long> cp = vdiv(c, p);
      for (int n = 0; n <= d; ++n)
        for (const auto& x : gens(s, c, n)) {
          auto Rx = B.R(s, c, n, x);
          if (n < d) {
            auto Rdx = B.R(s, c, n + 1, B.d(s, c, n, x));
            for (long k = 0; k < p; ++k) rd = rd && B.same_class(s - 1, cp, n + 1, Rdx[k], B.d(s - 1, cp, n, Rx[k]));
          }
          if (s >= 2) {
            // RF = FR from level s to s-2
            auto RFx = B.R(s - 1, c, n, B.F(s, n, x));
            for (long k = 0; k < p; ++k) rf = rf && B.same_class(s - 2, cp, n, RFx[k], B.F(s - 1, n, Rx[k]));
          }
          // RV = VR from level s to s
          auto RVx = B.R(s + 1, c, n, B.V(s, n, x));
          for (long k = 0; k < p; ++k) rv = rv && B.same_class(s, cp, n, RVx[k], B.V(s - 1, n, Rx[k]));
        }
    }
  }
  // products: pairs of weights, first generator of each piece
  for (const auto& a1 : ws)
    for (const auto& a2 : ws) {
      std::vector<long> c1 = u_weight(a1, r, p), c2 = u_weight(a2, r, p), c12 = vadd(c1, c2);
      for (int n1 = 0; n1 <= d; ++n1)
        for (int n2 = 0; n1 + n2 <= d; ++n2) {
          auto X = gens(r + 1, c1, n1), Y = gens(r, c2, n2);
          if (X.empty() || Y.empty()) continue;
          const Vec& x = X.front();
          const Vec& y = Y.front();
          Vec lhs = B.V(r, n1 + n2, B.mul(r, n1, B.F(r + 1, n1, x), c2, n2, y));
          Vec rhs = B.mul(r + 1, n1, x, c2, n2, B.V(r, n2, y));
          proj = proj && B.same_class(r + 1, c12, n1 + n2, lhs, rhs);
          // Leibniz at level r
          auto X0 = gens(r, c1, n1);
          if (X0.empty() || n1 + n2 >= d) continue;
          const Vec& x0 = X0.front();
          Vec l = B.d(r, c12, n1 + n2, B.mul(r, n1, x0, c2, n2, y));
          Vec t1 = B.mul(r, n1 + 1, B.d(r, c1, n1, x0), c2, n2, y);
          Vec t2 = B.mul(r, n1, x0, c2, n2 + 1, B.d(r, c2, n2, y));
          if (n1 % 2) t2 = B.scale(t2, -1, r);
          leib = leib && B.same_class(r, c12, n1 + n2 + 1, l, B.add(t1, t2, r));
          // R multiplicative from level r+1 (weights stay divisible by p)
          std::vector<long> d1 = u_weight(a1, r + 1, p), d2 = u_weight(a2, r + 1, p);
          auto X1 = gens(r + 1, d1, n1), Y1 = gens(r + 1, d2, n2);
          if (X1.empty() || Y1.empty() || r + 1 < 2) continue;
          Vec xy = B.mul(r + 1, n1, X1.front(), d2, n2, Y1.front());
          auto Rxy = B.R(r + 1, vadd(d1, d2), n1 + n2, xy);
          auto prod = B.mul_w(r, n1, B.R(r + 1, d1, n1, X1.front()), vdiv(d2, p), n2, B.R(r + 1, d2, n2, Y1.front()));
          for (long k = 0; k < p; ++k) rmul = rmul && B.same_class(r, c12, n1 + n2, Rxy[k], prod[k]);
        }
    }
  // Teichmuller identity on [T^m], m integral in the window
  bool teich_ok = true;
  for (const auto& a : ws) {
    if (!is_integral(a)) continue;
    std::vector<long> m;
    for (const auto& x : a) m.push_back(x.num);
    std::vector<long> c = vscale(m, lpow(p, r)), c1 = vscale(m, lpow(p, r + 1));
    Vec lhs = B.F(r + 1, 1, B.d(r + 1, c1, 0, B.scalar(r + 1, pconst(1))));
    Vec l = B.scalar(r, pconst(1)), pw = l;
    for (long i = 1; i < p - 1; ++i) pw = B.mul(r, 0, pw, c, 0, l);
    Vec dl = B.d(r, c, 0, l);
    Vec rhs = p == 2 ? dl : B.mul(r, 0, pw, c, 1, dl);
    if (d >= 1) teich_ok = teich_ok && B.same_class(r, c1, 1, lhs, rhs);
  }
  std::string lv = "[r=" + std::to_string(r) + "]";
  out.push_back(make_check("FV=p" + lv, fv, "holds", yes(fv)));
  out.push_back(make_check("FdV=d" + lv, fdv, "holds", yes(fdv)));
  out.push_back(make_check("V(F(x)y)=xV(y)" + lv, proj, "holds", yes(proj)));
  out.push_back(make_check("dd=0" + lv, dd, "holds", yes(dd)));
  out.push_back(make_check("Leibniz" + lv, leib, "holds", yes(leib)));
  out.push_back(make_check("RF=FR" + lv, rf, "holds", yes(rf)));
  out.push_back(make_check("RV=VR" + lv, rv, "holds", yes(rv)));
  out.push_back(make_check("Rd=dR" + lv, rd, "holds", yes(rd)));
  out.push_back(make_check("R(xy)=R(x)R(y)" + lv, rmul, "holds", yes(rmul)));
  out.push_back(make_check("Teichmuller" + lv, teich_ok, "holds", yes(teich_ok)));
  return out;
}

std::vector<Check> cartier_check(BModel& B, int r, int n, const Window& W) {
  long p = B.p();
  int d = B.d();
  std::vector<Check> out;
  Int pr = ipow(Int(p), r);
  Ring Zr = Ring::mod(pr);
  Ring Zq = Ring::depth_poly(p, 0);
  RingHom h = make_hom(Zq, Zr, Zr.one());
  for (const auto& a : window_weights(W, p)) {
    std::string id = "cartier[r=" + std::to_string(r) + ",n=" + std::to_string(n) + ",a=" + weight_str(a, p) + "]";
    if (n > d) {
      out.push_back(make_check(id, true, "0", "0"));
      continue;
    }
    std::vector<long> c = u_weight(a, r, p);
    int t = std::max(0, r - u_of(a, p));
    std::vector<Elem> gi, gq;
    for (long ci : c) {
      gi.push_back(Zr.from_int(ci));
      gq.push_back(q_integer(AinfTruncation(p, 0), ci));
    }
    FreeComplex K = koszul(Zr, gi);
    AbelianInvariants cl = cohomology(K, n);
    std::vector<Int> pred(binom(d, n), ipow(Int(p), t));
    AbelianInvariants want = invariants_from_cyclic(pred);
    bool ok = cl == want;
    // q -> 1 turns the q-de Rham piece mod xi~_r into the classical complex
    bool mat = base_change(koszul(Zq, gq), h) == K;
    bool gen = true;
    if (n <= 1 && t > 0) {
      // model classes of degree n map onto the classical H^n at q = 1
      ModuleComplex mc = as_module_complex(K);
      auto Hc = mc.cohomology_sq(n);
      const auto& Hb = B.H(r, c, n);
      size_t bs = static_cast<size_t>(lpow(p, r) - 1);
      ZMat M(Hc.ngens(), Hb.ngens());
      for (size_t g = 0; g < Hb.ngens(); ++g) {
        auto x = Hb.gen(g);
        std::vector<Int> y(x.size() / bs, Int(0));
        for (size_t i = 0; i < y.size(); ++i) {
          for (size_t k = 0; k < bs; ++k) y[i] += x[i * bs + k];
          mpz_fdiv_r(y[i].get_mpz_t(), y[i].get_mpz_t(), pr.get_mpz_t());
        }
        if (!Hc.contains(y)) {
          gen = false;
          break;
        }
        auto co = Hc.coords(y);
        for (size_t i = 0; i < co.size(); ++i) M(i, g) = co[i];
      }
      ZArith z;
      gen = gen && is_surjective(z, Hc, M);
    }
    out.push_back(make_check(id, ok && mat && gen, want.str(),
                             cl.str() + (mat ? "" : " (q=1 complex differs)") + (gen ? "" : " (generators not hit)")));
  }
  return out;
}

std::vector<Check> integral_part_check(BModel& B, int r, const Window& W) {
  long p = B.p();
  int d = B.d(), N = B.N();
  std::vector<Check> out;
  size_t bs = static_cast<size_t>(lpow(p, r) - 1);
  for (const auto& a : window_weights(W, p)) {
    std::vector<long> c = u_weight(a, r, p);
    std::string id = "tau[r=" + std::to_string(r) + ",a=" + weight_str(a, p) + "]";
    if (u_of(a, p) > 0 || !is_integral(a)) {
      const auto& mc = B.piece(r, c).bc.mc;
      bool acyc = true;
      std::string obs;
      for (int n = 0; n <= d; ++n) {
        auto H = mc.cohomology(n);
        acyc = acyc && H.is_zero();
        obs += (n ? "; " : "") + H.str();
      }
      out.push_back(make_check(id + " acyclic", acyc, "0", obs));
      continue;
    }
    std::vector<long> m;
    for (const auto& x : a) m.push_back(x.num);
    // tau(x U^m dlog U_I) = x [T]^m dlog[T_i1] ... in the given order
    auto tau = [&](const Poly& x, const std::vector<int>& seq) {
      Vec acc = B.scalar(r, x);
      int deg = 0;
      for (int i : seq) {
        acc = B.mul(r, deg, acc, std::vector<long>(d, 0), 1, dlog_T(B, r, i));
        ++deg;
      }
      return acc;
    };
    bool iso = true, chain = true;
    for (int n = 0; n <= d; ++n) {
      const auto& H = B.H(r, c, n);
      auto subs = lex_subsets(d, n);
      ZMat M(H.ngens(), subs.size() * bs);
      size_t col = 0;
      for (const auto& I : subs)
        for (size_t j = 0; j < bs; ++j) {
          Poly x = monomial(1, j);
          Vec e = tau(x, I);
          auto co = H.coords(e);
          for (size_t i = 0; i < co.size(); ++i) M(i, col) = co[i];
          ++col;
          if (n < d) {
            Vec want = B.zero(r, n + 1);
            for (int k = 0; k < d; ++k) {
              if (m[k] == 0 || std::find(I.begin(), I.end(), k) != I.end()) continue;
              std::vector<int> seq{k};
              seq.insert(seq.end(), I.begin(), I.end());
              want = B.add(want, B.scale(tau(x, seq), m[k], r), r);
            }
            chain = chain && B.same_class(r, c, n + 1, B.d(r, c, n, e), want);
          }
        }
      ZArith z;
      iso = iso && invariants_of(H) == free_zpn(p, N, subs.size() * bs) && is_surjective(z, H, M);
    }
    out.push_back(make_check(id + " iso", iso, "bijective on every degree", yes(iso)));
    out.push_back(make_check(id + " chain", chain, "holds", yes(chain)));
  }
  return out;
}

std::vector<Check> improved_vs_pre_check(BModel& B, int r, const Window& W) {
  long p = B.p();
  int d = B.d();
  std::vector<Check> out;
  // Multiplication by mu^n is a zero divisor once p^N = 0, so injectivity is
  // only meaningful over Z[q]/xi~_r itself.
  BModel B0(p, d, 0);
  Poly g = xi_tilde_q(p, r);
  size_t bs = static_cast<size_t>(deg(g));
  ZArith z;
  bool sq_all = true;
  for (const auto& a : window_weights(W, p)) {
    std::vector<long> c = u_weight(a, r, p);
    std::vector<std::pair<Poly, long>> ops;
    for (long ci : c) ops.emplace_back(ci >= 0 ? psub(monomial(1, ci), pconst(1)) : psub(pconst(1), monomial(1, -ci)), ci >= 0 ? 0 : -ci);
    ModuleComplex pre = koszul_mod_g(ops, g, Int(0));
    std::string id = "pre[r=" + std::to_string(r) + ",a=" + weight_str(a, p) + "]";
    bool inj = true, inside = true;
    for (int n = 0; n <= d && inj; ++n) {
      const auto& Hi = B0.H(r, c, n);
      auto Hp = pre.cohomology_sq(n);
      ZMat mb = mult_matrix_mod(ppow({Int(-1), Int(1)}, n), g, Int(0));
      auto times_mun = [&](const std::vector<Int>& x) {
        std::vector<Int> y(x.size(), Int(0));
        for (size_t blk = 0; blk < x.size() / bs; ++blk)
          for (size_t i = 0; i < bs; ++i)
            for (size_t j = 0; j < bs; ++j) y[blk * bs + i] += mb(i, j) * x[blk * bs + j];
        return y;
      };
      // span of mu^n Z^n_pre + boundaries
      size_t amb = Hp.ambient();
      ZMat G(amb, 0);
      for (size_t k = 0; k < Hp.ngens(); ++k) G = hcat(z, G, column(z, times_mun(Hp.gen(k))));
      if (n > 0) G = hcat(z, G, pre.d[n - 1]);
      Subquotient<ZArith> span(z, amb, G, ZMat(amb, 0));
      ZMat M(Hp.ngens(), Hi.ngens());
      for (size_t k = 0; k < Hi.ngens() && inj; ++k) {
        auto y = times_mun(Hi.gen(k));
        if (!Hp.contains(y)) {
          inj = false;
          break;
        }
        inside = inside && span.contains(y);
        auto co = Hp.coords(y);
        for (size_t i = 0; i < co.size(); ++i) M(i, k) = co[i];
      }
      if (!inj) break;
      // kernel of the induced map is trivial
      ZMat Dp(Hp.ngens(), Hp.ngens()), Di(Hi.ngens(), Hi.ngens());
      for (size_t i = 0; i < Hp.ngens(); ++i) Dp(i, i) = Hp.orders()[i];
      for (size_t i = 0; i < Hi.ngens(); ++i) Di(i, i) = Hi.orders()[i];
      if (Hi.ngens()) {
        ZMat L = Hp.ngens() ? preimage(z, M, Dp) : identity(z, Hi.ngens());
        Subquotient<ZArith> K(z, Hi.ngens(), L, Di);
        inj = invariants_of(K).is_zero();
      }
    }
    out.push_back(make_check(id + " injective", inj, "holds", yes(inj)));
    out.push_back(make_check(id + " image in mu^n pre", inside, "holds", yes(inside)));
    if (d >= 2) {
      const auto& H1 = B.H(r, c, 1);
      for (size_t k = 0; k < H1.ngens(); ++k) {
        Vec x = H1.gen(k);
        sq_all = sq_all && B.is_zero_class(r, vscale(c, 2), 2, B.mul(r, 1, x, c, 1, x));
      }
    }
  }
  if (d >= 2) out.push_back(make_check("x^2=0 in degree 1 (p=" + std::to_string(p) + ")", sq_all, "holds", yes(sq_all)));
  return out;
}

std::vector<RankRow> rank_table(BModel& B, int r, int n_max, const Window& W) {
  long p = B.p();
  int d = B.d(), N = B.N();
  std::vector<RankRow> rows;
  for (const auto& a : window_weights(W, p))
    for (int n = 0; n <= n_max; ++n) {
      RankRow row;
      row.a = a;
      row.n = n;
      row.partitions = lz_partitions(a, n, p).size();
      LZModule mod = lz_module(a, r, p);
      row.u = mod.u;
      if (mod.zero() || row.partitions == 0) {
        row.predicted = "0";
      } else {
        row.predicted = mod.str();
        if (row.partitions > 1) row.predicted += "^" + std::to_string(row.partitions);
      }
      AbelianInvariants obs = n <= d ? B.invariants(r, u_weight(a, r, p), n) : AbelianInvariants{};
      row.observed = obs.str();
      size_t k = mod.zero() ? 0 : row.partitions * static_cast<size_t>(lpow(p, mod.length) - 1);
      row.match = obs == free_zpn(p, N, k) && row.partitions == static_cast<size_t>(binom(d, n));
      rows.push_back(row);
    }
  return rows;
}

std::string rank_table_csv(long p, const std::vector<RankRow>& rows) {
  std::ostringstream os;
  os << "weight,degree,partitions,u,predicted,observed,match\n";
  size_t good = 0;
  for (const auto& r : rows) {
    // "(1/2,-3)" -> "1/2;-3" so the weight stays one CSV field
    std::string w = weight_str(r.a, p);
    w = w.substr(1, w.size() - 2);
    std::replace(w.begin(), w.end(), ',', ';');
    os << w << "," << r.n << "," << r.partitions << "," << r.u << "," << r.predicted << "," << r.observed << ","
       << (r.match ? "yes" : "no") << "\n";
    good += r.match;
  }
  os << "total," << rows.size() << ",,,,," << (good == rows.size() ? "yes" : "no") << "\n";
  return os.str();
}

}  // namespace ipw
