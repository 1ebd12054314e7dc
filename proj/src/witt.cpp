#include "ipw/witt.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <cmath>
#include <set>

#include "ipw/errors.hpp"

namespace ipw {

namespace {

using Exps = std::vector<int>;

void add_term(MPoly& a, const Exps& e, const Int& c) {
  if (c == 0) return;
  auto it = a.terms.find(e);
  if (it == a.terms.end()) {
    a.terms.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) a.terms.erase(it);
  }
}

MPoly madd(const MPoly& a, const MPoly& b, const Int& cb = 1) {
  MPoly r = a;
  for (const auto& [e, c] : b.terms) add_term(r, e, c * cb);
  return r;
}

MPoly mmul(const MPoly& a, const MPoly& b) {
  MPoly r;
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      Exps e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      add_term(r, e, ca * cb);
    }
  return r;
}

MPoly mpow(MPoly a, unsigned long n, size_t nv) {
  MPoly r;
  r.terms.emplace(Exps(nv, 0), Int(1));
  while (n) {
    if (n & 1) r = mmul(r, a);
    n >>= 1;
    if (n) a = mmul(a, a);
  }
  return r;
}

// gh_n in variables off..off+n
MPoly ghost_poly(long p, int n, size_t nv, size_t off) {
  MPoly g;
  for (int j = 0; j <= n; ++j) {
    Exps x(nv, 0);
    x[off + j] = static_cast<int>(lpow(p, n - j));
    add_term(g, x, ipow(Int(p), j));
  }
  return g;
}

// Q_n with sum_j p^j Q_j^{p^{n-j}} = G_n.
std::vector<MPoly> solve_ghost(long p, const std::vector<MPoly>& G, size_t nv) {
  std::vector<MPoly> Q;
  std::vector<std::vector<MPoly>> powers;  // powers[j][m] = Q_j^{p^m}
  for (size_t n = 0; n < G.size(); ++n) {
    MPoly rest = G[n];
    for (size_t j = 0; j < n; ++j) {
      auto& pw = powers[j];
      while (pw.size() <= n - j) pw.push_back(mpow(pw.back(), p, nv));
      rest = madd(rest, pw[n - j], -ipow(Int(p), j));
    }
    Int pn = ipow(Int(p), n);
    MPoly q;
    for (const auto& [e, c] : rest.terms) {
      require(mpz_divisible_p(c.get_mpz_t(), pn.get_mpz_t()) != 0, "InternalError",
              "Witt recursion produced a non-integral coefficient");
      q.terms.emplace(e, c / pn);
    }
    Q.push_back(q);
    powers.push_back({Q.back()});
  }
  return Q;
}

std::unique_ptr<WittPolys> build_polys(long p, int r) {
  auto W = std::make_unique<WittPolys>();
  W->p = p;
  W->r = r;
  size_t n2 = 2 * r;
  std::vector<MPoly> gadd, gmul, gneg, gfrob;
  for (int n = 0; n < r; ++n) {
    MPoly gx = ghost_poly(p, n, n2, 0), gy = ghost_poly(p, n, n2, r);
    gadd.push_back(madd(gx, gy));
    gmul.push_back(mmul(gx, gy));
    MPoly g1 = ghost_poly(p, n, r, 0);
    gneg.push_back(madd(MPoly{}, g1, -1));
    if (n + 1 < r) gfrob.push_back(ghost_poly(p, n + 1, r, 0));
  }
  W->add = solve_ghost(p, gadd, n2);
  W->mul = solve_ghost(p, gmul, n2);
  W->neg = solve_ghost(p, gneg, r);
  W->frob = solve_ghost(p, gfrob, r);
  return W;
}

struct PolyCache {
  std::mutex mu;
  std::map<std::pair<long, int>, std::unique_ptr<WittPolys>> table;
};

PolyCache& cache() {
  static PolyCache c;
  return c;
}

// Nested evaluation of P at vals over R: terms are in lexicographic order, so
// the terms sharing an exponent prefix are contiguous and share the product of
// their leading powers.
using TermIt = std::map<Exps, Int>::const_iterator;

Elem eval_range(const Ring& R, TermIt lo, TermIt hi, size_t i, std::vector<std::map<int, Elem>>& pw,
                const std::vector<Elem>& vals) {
  if (i == vals.size()) return R.from_int(lo->second);
  Elem acc = R.zero();
  while (lo != hi) {
    int k = lo->first[i];
    TermIt mid = lo;
    while (mid != hi && mid->first[i] == k) ++mid;
    Elem sub = eval_range(R, lo, mid, i + 1, pw, vals);
    if (k && !R.is_zero(sub)) {
      auto it = pw[i].find(k);
      if (it == pw[i].end()) it = pw[i].emplace(k, R.pow(vals[i], k)).first;
      sub = R.mul(sub, it->second);
    }
    acc = R.add(acc, sub);
    lo = mid;
  }
  return acc;
}

Elem eval_mpoly(const Ring& R, const MPoly& P, const std::vector<Elem>& vals) {
  if (P.terms.empty()) return R.zero();
  std::vector<std::map<int, Elem>> pw(vals.size());
  return eval_range(R, P.terms.begin(), P.terms.end(), 0, pw, vals);
}

void same_shape(const WittVector& a, const WittVector& b) {
  require(a.p == b.p && a.r() == b.r() && a.ring == b.ring, "MismatchedShape", "Witt vectors of different shape");
}

}  // namespace

const WittPolys& witt_polys(long p, int r) {
  require(r >= 1, "InvalidArgument", "Witt length must be >= 1");
  auto& c = cache();
  std::lock_guard<std::mutex> lock(c.mu);
  auto key = std::make_pair(p, r);
  auto it = c.table.find(key);
  if (it == c.table.end()) it = c.table.emplace(key, build_polys(p, r)).first;
  return *it->second;
}

WittVector witt_make(long p, const Ring& R, std::vector<Elem> comps) {
  require(R.is_scalar(), "UnsupportedRing", "Witt vectors over Laurent rings are not supported");
  WittVector w;
  w.p = p;
  w.ring = R;
  for (auto& x : comps) x = R.canonicalize(x);
  w.c = std::move(comps);
  return w;
}

WittVector witt_zero(long p, const Ring& R, int r) { return witt_make(p, R, std::vector<Elem>(r, R.zero())); }

WittVector witt_one(long p, const Ring& R, int r) { return teichmuller(p, R, r, R.one()); }

WittVector teichmuller(long p, const Ring& R, int r, const Elem& x) {
  std::vector<Elem> c(r, R.zero());
  c[0] = x;
  return witt_make(p, R, c);
}

WittVector witt_from_int(long p, const Ring& R, int r, long n) {
  Ring Z = Ring::integers();
  std::vector<Elem> g(r, Z.from_int(n));
  WittVector wz = ghost_inverse(p, Z, g);
  std::vector<Elem> c;
  for (const auto& x : wz.c) c.push_back(R.from_int(x.num.empty() ? Int(0) : x.num[0]));
  return witt_make(p, R, c);
}

std::vector<Elem> ghost(const WittVector& w) {
  const Ring& R = w.ring;
  std::vector<Elem> g;
  for (size_t n = 0; n < w.r(); ++n) {
    Elem s = R.zero();
    for (size_t j = 0; j <= n; ++j)
      s = R.add(s, R.mul(R.from_int(ipow(Int(w.p), j)), R.pow(w.c[j], lpow(w.p, n - j))));
    g.push_back(s);
  }
  return g;
}

WittVector ghost_inverse(long p, const Ring& R, const std::vector<Elem>& g) {
  std::vector<Elem> c;
  for (size_t n = 0; n < g.size(); ++n) {
    Elem rest = g[n];
    for (size_t j = 0; j < n; ++j)
      rest = R.sub(rest, R.mul(R.from_int(ipow(Int(p), j)), R.pow(c[j], lpow(p, n - j))));
    try {
      c.push_back(R.divide_exact(rest, R.from_int(ipow(Int(p), n))));
    } catch (const Error& e) {
      if (e.code() == "NotDivisible") fail("NotInImage", "not a ghost vector at index " + std::to_string(n));
      throw;
    }
  }
  return witt_make(p, R, c);
}

WittVector witt_add(const WittVector& a, const WittVector& b) {
  same_shape(a, b);
  int r = static_cast<int>(a.r());
  const auto& W = witt_polys(a.p, r);
  std::vector<Elem> vals = a.c;
  vals.insert(vals.end(), b.c.begin(), b.c.end());
  std::vector<Elem> c;
  for (int n = 0; n < r; ++n) c.push_back(eval_mpoly(a.ring, W.add[n], vals));
  return witt_make(a.p, a.ring, c);
}

WittVector witt_mul(const WittVector& a, const WittVector& b) {
  same_shape(a, b);
  int r = static_cast<int>(a.r());
  const auto& W = witt_polys(a.p, r);
  std::vector<Elem> vals = a.c;
  vals.insert(vals.end(), b.c.begin(), b.c.end());
  std::vector<Elem> c;
  for (int n = 0; n < r; ++n) c.push_back(eval_mpoly(a.ring, W.mul[n], vals));
  return witt_make(a.p, a.ring, c);
}

WittVector witt_neg(const WittVector& a) {
  int r = static_cast<int>(a.r());
  const auto& W = witt_polys(a.p, r);
  std::vector<Elem> c;
  for (int n = 0; n < r; ++n) c.push_back(eval_mpoly(a.ring, W.neg[n], a.c));
  return witt_make(a.p, a.ring, c);
}

WittVector witt_sub(const WittVector& a, const WittVector& b) { return witt_add(a, witt_neg(b)); }

WittVector frobenius(const WittVector& w) {
  require(w.r() >= 2, "LengthTooShort", "Frobenius needs length >= 2");
  int r = static_cast<int>(w.r());
  const auto& W = witt_polys(w.p, r);
  std::vector<Elem> c;
  for (int n = 0; n + 1 < r; ++n) c.push_back(eval_mpoly(w.ring, W.frob[n], w.c));
  return witt_make(w.p, w.ring, c);
}

WittVector verschiebung(const WittVector& w) {
  std::vector<Elem> c{w.ring.zero()};
  c.insert(c.end(), w.c.begin(), w.c.end());
  return witt_make(w.p, w.ring, c);
}

WittVector restrict_(const WittVector& w) {
  require(w.r() >= 2, "LengthTooShort", "restriction needs length >= 2");
  return truncate(w, static_cast<int>(w.r()) - 1);
}

WittVector truncate(const WittVector& w, int r) {
  require(r >= 1 && static_cast<size_t>(r) <= w.r(), "LengthTooShort", "cannot truncate to a longer length");
  return witt_make(w.p, w.ring, std::vector<Elem>(w.c.begin(), w.c.begin() + r));
}

std::string witt_str(const WittVector& w) {
  std::string s = "(";
  for (size_t i = 0; i < w.r(); ++i) {
    if (i) s += ", ";
    s += w.ring.str(w.c[i]);
  }
  return s + ")";
}

namespace {

using Key = std::vector<Int>;

Key key_of(const WittVector& w) {
  Key k;
  for (const auto& x : w.c) {
    auto c = w.ring.coords(x);
    k.insert(k.end(), c.begin(), c.end());
  }
  return k;
}

std::vector<Elem> enumerate_ring(const Ring& S) {
  size_t n = S.lattice_rank();
  long m = S.m.get_si();
  std::vector<Elem> out;
  std::vector<Int> c(n, 0);
  while (true) {
    out.push_back(S.from_coords(c));
    size_t i = 0;
    while (i < n && c[i] == m - 1) c[i++] = 0;
    if (i == n) break;
    c[i] += 1;
  }
  return out;
}

std::vector<WittVector> enumerate_witt(long p, const Ring& S, const std::vector<Elem>& J, int r) {
  std::vector<WittVector> out;
  std::vector<size_t> idx(r, 0);
  while (true) {
    std::vector<Elem> c;
    for (int i = 0; i < r; ++i) c.push_back(J[idx[i]]);
    out.push_back(witt_make(p, S, c));
    int i = 0;
    while (i < r && idx[i] + 1 == J.size()) idx[i++] = 0;
    if (i == r) break;
    idx[i] += 1;
  }
  return out;
}

std::vector<Elem> ideal_elems(const Ring& S, const std::vector<Elem>& all, const Elem& g) {
  std::set<Key> seen;
  std::vector<Elem> out;
  for (const auto& x : all) {
    Elem y = S.mul(g, x);
    if (seen.insert(S.coords(y)).second) out.push_back(y);
  }
  return out;
}

Containment subset_check(const std::string& name, const std::vector<WittVector>& A, const std::set<Key>& B) {
  Containment c;
  c.name = name;
  c.pass = true;
  for (const auto& w : A)
    if (!B.count(key_of(w))) {
      c.pass = false;
      c.witness = witt_str(w);
      break;
    }
  return c;
}

}  // namespace

IdealReport witt_ideal_report(const Ring& S, const Elem& f0, int r, int s) {
  require(S.kind == RingKind::IntegersMod || S.kind == RingKind::FDQ, "UndecidableVariant",
          "ideal containment is decided by enumeration over finite rings only");
  require(r >= 1 && s >= 0, "InvalidArgument", "need r >= 1, s >= 0");
  long p = S.p;
  if (S.kind == RingKind::IntegersMod) {
    Int m = S.m;
    p = 0;
    for (long q = 2; q <= 1000 && p == 0; ++q)
      if (mpz_divisible_ui_p(m.get_mpz_t(), q)) p = q;
    require(p > 0 && ilog_p(m.get_si(), p) >= 0, "UndecidableVariant", "modulus must be a prime power");
  }
  double size = 1;
  for (size_t i = 0; i < S.lattice_rank(); ++i) size *= S.m.get_d();
  require(std::pow(size, r) <= 2e5, "InvalidArgument", "W_r(S) too large to enumerate");
  Elem f = S.canonicalize(f0);
  auto all = enumerate_ring(S);
  auto Wall = enumerate_witt(p, S, all, r);
  WittVector tf = teichmuller(p, S, r, f);

  auto image_set = [&](const WittVector& a) {
    std::set<Key> img;
    for (const auto& w : Wall) img.insert(key_of(witt_mul(a, w)));
    return img;
  };
  IdealReport rep;
  auto fS = image_set(tf);
  auto J1 = ideal_elems(S, all, S.pow(f, lpow(p, r - 1)));
  rep.checks.push_back(subset_check("W_r(f^{p^(r-1)} S) in [f] W_r(S)", enumerate_witt(p, S, J1, r), fS));

  {
    auto fSe = ideal_elems(S, all, f);
    std::set<Key> inside;
    for (const auto& w : enumerate_witt(p, S, fSe, r)) inside.insert(key_of(w));
    std::vector<WittVector> fW;
    for (const auto& w : Wall) fW.push_back(witt_mul(tf, w));
    rep.checks.push_back(subset_check("[f] W_r(S) in W_r(f S)", fW, inside));
  }
  {
    auto pW = image_set(witt_from_int(p, S, r, p));
    WittVector tp = teichmuller(p, S, r, S.from_int(p));
    rep.checks.push_back(subset_check("[p]^2 in p W_r(S)", {witt_mul(tp, tp)}, pW));
  }
  {
    auto J = ideal_elems(S, all, S.pow(f, lpow(p, r) * s));
    auto fs = image_set(teichmuller(p, S, r, S.pow(f, s)));
    rep.checks.push_back(subset_check("W_r(I^{p^r s}) in [f^s] W_r(S)", enumerate_witt(p, S, J, r), fs));
  }
  rep.pass = true;
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

}  // namespace ipw
