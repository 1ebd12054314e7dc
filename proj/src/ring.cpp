#include "ipw/ring.hpp"

#include <map>
#include <sstream>

#include "ipw/errors.hpp"

namespace ipw {

bool Elem::operator==(const Elem& o) const {
  return num == o.num && den == o.den && exps == o.exps && coeffs == o.coeffs;
}

namespace {

Poly trimmed(Poly a) {
  trim(a);
  return a;
}

bool is_one_poly(const Poly& a) { return a.size() == 1 && a[0] == 1; }

Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

using Terms = std::map<std::vector<long>, Elem>;

Elem from_terms(const Ring& base, const Terms& t) {
  Elem r;
  for (const auto& [ex, c] : t) {
    if (base.is_zero(c)) continue;
    r.exps.push_back(ex);
    r.coeffs.push_back(c);
  }
  return r;
}

void terms_add(const Ring& base, Terms& t, const std::vector<long>& ex, const Elem& c) {
  auto it = t.find(ex);
  if (it == t.end())
    t.emplace(ex, c);
  else
    it->second = base.add(it->second, c);
}

}  // namespace

Ring Ring::integers() { return Ring{}; }

Ring Ring::mod(const Int& m) {
  require(m >= 2, "InvalidArgument", "modulus must be >= 2");
  Ring R;
  R.kind = RingKind::IntegersMod;
  R.m = m;
  return R;
}

Ring Ring::cyclotomic(long p, int k) {
  require(p >= 2 && k >= 1, "InvalidArgument", "cyclotomic integers need p prime, k >= 1");
  Ring R;
  R.kind = RingKind::Cyclotomic;
  R.p = p;
  R.k = k;
  R.g = cyclotomic_ppow(p, k);
  return R;
}

Ring Ring::depth_poly(long p, int k) {
  require(p >= 2 && k >= 0, "InvalidArgument", "depth polynomial model needs p prime, k >= 0");
  Ring R;
  R.kind = RingKind::DepthPoly;
  R.p = p;
  R.k = k;
  return R;
}

Ring Ring::fdq(long p, int k, int N, const Poly& g) {
  require(p >= 2 && k >= 0 && N >= 1, "InvalidArgument", "finite quotient needs p prime, N >= 1");
  Poly gg = trimmed(g);
  require(gg.size() >= 2 && gg.back() == 1, "NotMonic", "quotient modulus must be monic of degree >= 1");
  Ring R;
  R.kind = RingKind::FDQ;
  R.p = p;
  R.k = k;
  R.N = N;
  R.m = ipow(Int(p), N);
  R.g = preduce_mod(gg, R.m);
  return R;
}

Ring Ring::laurent(const Ring& base, int d, int e) {
  require(d >= 1, "InvalidArgument", "Laurent dimension must be >= 1");
  require(e >= 0, "InvalidArgument", "root depth must be >= 0");
  require(base.is_scalar(), "InvalidArgument", "nested Laurent extensions are not supported");
  Ring R;
  R.kind = RingKind::Laurent;
  R.p = base.p;
  R.base = std::make_shared<const Ring>(base);
  R.d = d;
  R.e = e;
  require(e == 0 || R.p >= 2, "InvalidArgument", "fractional exponents need a prime p");
  return R;
}

bool Ring::operator==(const Ring& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case RingKind::Integers:
      return true;
    case RingKind::IntegersMod:
      return m == o.m;
    case RingKind::Cyclotomic:
    case RingKind::DepthPoly:
      return p == o.p && k == o.k;
    case RingKind::FDQ:
      return p == o.p && k == o.k && N == o.N && g == o.g;
    case RingKind::Laurent:
      return d == o.d && e == o.e && *base == *o.base;
  }
  return false;
}

std::string Ring::name() const {
  std::ostringstream os;
  switch (kind) {
    case RingKind::Integers:
      os << "Z";
      break;
    case RingKind::IntegersMod:
      os << "Z/" << m.get_str();
      break;
    case RingKind::Cyclotomic:
      os << "Z[zeta_" << p << "^" << k << "]";
      break;
    case RingKind::DepthPoly:
      os << "A(" << p << "," << k << ")";
      break;
    case RingKind::FDQ:
      os << "A(" << p << "," << k << ")/(" << p << "^" << N << "," << pstr(g) << ")";
      break;
    case RingKind::Laurent:
      os << base->name() << "[T^(1/" << p << "^" << e << ")]^" << d;
      break;
  }
  return os.str();
}

bool Ring::is_domain() const {
  switch (kind) {
    case RingKind::Integers:
    case RingKind::Cyclotomic:
    case RingKind::DepthPoly:
      return true;
    case RingKind::Laurent:
      return base->is_domain();
    default:
      return false;
  }
}

bool Ring::is_finite() const { return kind == RingKind::IntegersMod || kind == RingKind::FDQ; }

Elem Ring::zero() const { return Elem{}; }

Elem Ring::one() const { return from_int(1); }

Elem Ring::from_int(const Int& c) const {
  if (kind == RingKind::Laurent) {
    Elem b = base->from_int(c);
    if (base->is_zero(b)) return Elem{};
    Elem r;
    r.exps.push_back(std::vector<long>(d, 0));
    r.coeffs.push_back(b);
    return r;
  }
  Elem x;
  if (kind == RingKind::Integers) {
    if (c != 0) x.num.push_back(c);
    return x;
  }
  if (kind == RingKind::IntegersMod) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (r != 0) x.num.push_back(std::move(r));
    return x;
  }
  x.num = pconst(c);
  return canonicalize(x);
}

// a + b or a * b in Z/m, both canonical residues
Elem Ring::mod_op(const Elem& a, const Elem& b, bool multiply) const {
  Elem x;
  if (a.num.empty() || b.num.empty()) {
    if (!multiply) x = a.num.empty() ? b : a;
    return x;
  }
  Int r = multiply ? Int(a.num[0] * b.num[0]) : Int(a.num[0] + b.num[0]);
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  if (r != 0) x.num.push_back(std::move(r));
  return x;
}

Elem Ring::gen() const {
  if (kind == RingKind::Laurent) {
    Elem r;
    Elem b = base->gen();
    if (base->is_zero(b)) return r;
    r.exps.push_back(std::vector<long>(d, 0));
    r.coeffs.push_back(b);
    return r;
  }
  require(kind != RingKind::Integers && kind != RingKind::IntegersMod, "InvalidArgument", "ring has no generator");
  return poly(monomial(1, 1));
}

Elem Ring::poly(const Poly& a) const {
  if (kind == RingKind::Laurent) {
    Elem c = base->poly(a);
    Elem r;
    if (base->is_zero(c)) return r;
    r.exps.push_back(std::vector<long>(d, 0));
    r.coeffs.push_back(c);
    return r;
  }
  Elem x;
  x.num = a;
  return canonicalize(x);
}

Elem Ring::frac(const Poly& n, const Poly& dd) const {
  Elem x;
  x.num = n;
  x.den = dd;
  return canonicalize(x);
}

Elem Ring::monomial_T(const std::vector<long>& ex, const Elem& c) const {
  require(kind == RingKind::Laurent, "InvalidArgument", "monomial_T needs a Laurent ring");
  Elem x;
  x.exps.push_back(ex);
  x.coeffs.push_back(c);
  return canonicalize(x);
}

Elem Ring::canonicalize(const Elem& x) const {
  if (kind == RingKind::Laurent) {
    require(x.num.empty() && x.den.empty(), "MalformedElement", "Laurent element with scalar payload");
    require(x.exps.size() == x.coeffs.size(), "MalformedElement", "support/coefficient count mismatch");
    Terms t;
    for (size_t i = 0; i < x.exps.size(); ++i) {
      require(x.exps[i].size() == static_cast<size_t>(d), "MalformedElement", "wrong number of variables");
      terms_add(*base, t, x.exps[i], base->canonicalize(x.coeffs[i]));
    }
    return from_terms(*base, t);
  }
  require(x.exps.empty() && x.coeffs.empty(), "MalformedElement", "scalar element with Laurent terms");
  Poly n = trimmed(x.num);
  Poly dd = trimmed(x.den);
  bool has_den = !dd.empty() && !is_one_poly(dd);
  if (!x.den.empty()) require(!dd.empty(), "DivisionByZero", "zero denominator");
  Elem r;
  switch (kind) {
    case RingKind::Integers: {
      require(deg(n) <= 0 && deg(dd) <= 0, "MalformedElement", "integer element with a variable");
      Int c = n.empty() ? Int(0) : n[0];
      if (has_den) {
        require(mpz_divisible_p(c.get_mpz_t(), dd[0].get_mpz_t()) != 0, "NotDivisible", "fraction is not an integer");
        c /= dd[0];
      }
      r.num = pconst(c);
      return r;
    }
    case RingKind::IntegersMod: {
      require(deg(n) <= 0 && deg(dd) <= 0, "MalformedElement", "residue with a variable");
      Int c = n.empty() ? Int(0) : n[0];
      mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
      if (has_den) {
        Int inv;
        require(mpz_invert(inv.get_mpz_t(), dd[0].get_mpz_t(), m.get_mpz_t()) != 0, "NotDivisible", "denominator not a unit");
        c = (c * inv) % m;
      }
      r.num = pconst(c);
      return r;
    }
    case RingKind::Cyclotomic: {
      r.num = pmod_monic(n, g);
      if (has_den) {
        Elem de;
        de.num = pmod_monic(dd, g);
        return divide_exact(r, de);
      }
      return r;
    }
    case RingKind::FDQ: {
      r.num = preduce_mod(pmod_monic(preduce_mod(n, m), g), m);
      if (has_den) {
        Elem de;
        de.num = preduce_mod(pmod_monic(preduce_mod(dd, m), g), m);
        return mul(r, inverse(de));
      }
      return r;
    }
    case RingKind::DepthPoly: {
      if (n.empty()) return r;
      if (!has_den) {
        r.num = n;
        return r;
      }
      Poly gg = pgcd(n, dd);
      n = *pdiv_exact(n, gg);
      dd = *pdiv_exact(dd, gg);
      if (dd.back() < 0) {
        n = pneg(n);
        dd = pneg(dd);
      }
      require(gcd_int(peval(dd, 1), Int(p)) == 1, "NotInLocalization", "denominator value at 1 divisible by p");
      r.num = n;
      if (!is_one_poly(dd)) r.den = dd;
      return r;
    }
    case RingKind::Laurent:
      break;
  }
  return r;
}

Elem Ring::add(const Elem& a, const Elem& b) const {
  if (kind == RingKind::Laurent) {
    Terms t;
    for (size_t i = 0; i < a.exps.size(); ++i) terms_add(*base, t, a.exps[i], a.coeffs[i]);
    for (size_t i = 0; i < b.exps.size(); ++i) terms_add(*base, t, b.exps[i], b.coeffs[i]);
    return from_terms(*base, t);
  }
  if (kind == RingKind::DepthPoly) {
    if (a.den.empty() && b.den.empty()) {
      Elem r;
      r.num = padd(a.num, b.num);
      return r;
    }
    Poly ad = a.den.empty() ? pconst(1) : a.den;
    Poly bd = b.den.empty() ? pconst(1) : b.den;
    if (ad == bd) return frac(padd(a.num, b.num), ad);
    return frac(padd(pmul(a.num, bd), pmul(b.num, ad)), pmul(ad, bd));
  }
  if (kind == RingKind::IntegersMod) return mod_op(a, b, false);
  Elem x;
  x.num = padd(a.num, b.num);
  if (kind == RingKind::Integers || kind == RingKind::Cyclotomic) return x;
  return canonicalize(x);
}

Elem Ring::neg(const Elem& a) const {
  if (kind == RingKind::Laurent) {
    Elem r = a;
    for (auto& c : r.coeffs) c = base->neg(c);
    return r;
  }
  Elem x = a;
  x.num = pneg(a.num);
  if (kind == RingKind::IntegersMod || kind == RingKind::FDQ) return canonicalize(x);
  return x;
}

Elem Ring::sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

Elem Ring::mul(const Elem& a, const Elem& b) const {
  if (kind == RingKind::Laurent) {
    Terms t;
    for (size_t i = 0; i < a.exps.size(); ++i)
      for (size_t j = 0; j < b.exps.size(); ++j) {
        std::vector<long> ex(d);
        for (int c = 0; c < d; ++c) ex[c] = a.exps[i][c] + b.exps[j][c];
        terms_add(*base, t, ex, base->mul(a.coeffs[i], b.coeffs[j]));
      }
    return from_terms(*base, t);
  }
  if (kind == RingKind::DepthPoly) {
    if (a.den.empty() && b.den.empty()) {
      Elem r;
      r.num = pmul(a.num, b.num);
      return r;
    }
    Poly ad = a.den.empty() ? pconst(1) : a.den;
    Poly bd = b.den.empty() ? pconst(1) : b.den;
    return frac(pmul(a.num, b.num), pmul(ad, bd));
  }
  if (kind == RingKind::IntegersMod) return mod_op(a, b, true);
  Elem x;
  x.num = pmul(a.num, b.num);
  if (kind == RingKind::Integers) return x;
  return canonicalize(x);
}

Elem Ring::pow(const Elem& a, long n) const {
  if (n < 0) return pow(inverse(a), -n);
  Elem r = one(), b = a;
  while (n) {
    if (n & 1) r = mul(r, b);
    n >>= 1;
    if (n) b = mul(b, b);
  }
  return r;
}

Elem Ring::eval_poly(const Poly& f, const Elem& x) const {
  Elem r = zero();
  for (int i = deg(f); i >= 0; --i) r = add(mul(r, x), from_int(f[i]));
  return r;
}

bool Ring::is_zero(const Elem& a) const { return a.num.empty() && a.exps.empty(); }

bool Ring::is_unit(const Elem& a) const {
  switch (kind) {
    case RingKind::Integers:
      return a.num.size() == 1 && (a.num[0] == 1 || a.num[0] == -1);
    case RingKind::IntegersMod:
      return !a.num.empty() && gcd_int(a.num[0], m) == 1;
    case RingKind::Cyclotomic: {
      if (a.num.empty()) return false;
      ZArith z;
      auto s = smith(z, mult_block(a), false, false);
      if (s.rank != lattice_rank()) return false;
      for (const auto& x : s.d)
        if (x != 1) return false;
      return true;
    }
    case RingKind::DepthPoly:
      return !a.num.empty() && gcd_int(peval(a.num, 1), Int(p)) == 1;
    case RingKind::FDQ: {
      if (a.num.empty()) return false;
      ZpnArith e(p, 1);
      size_t n = lattice_rank();
      ZMat B = mult_block(a);
      Mat<ZpnArith> Bp(n, n, 0);
      for (size_t i = 0; i < n * n; ++i) Bp.a[i] = e.from_int(B.a[i]);
      return smith(e, Bp, false, false).rank == n;
    }
    case RingKind::Laurent: {
      if (a.exps.empty()) return false;
      if (base->is_domain()) return a.exps.size() == 1 && base->is_unit(a.coeffs[0]);
      // Non-reduced base: a unit modulo every maximal ideal of the base,
      // i.e. its reduction is a single unit monomial.
      if (base->kind == RingKind::IntegersMod) {
        Int mm = base->m;
        std::vector<Int> primes;
        for (Int q = 2; q * q <= mm; ++q)
          if (mm % q == 0) {
            primes.push_back(q);
            while (mm % q == 0) mm /= q;
          }
        if (mm > 1) primes.push_back(mm);
        for (const auto& q : primes) {
          int units = 0;
          for (const auto& c : a.coeffs) {
            if (c.num[0] % q == 0) continue;
            ++units;
          }
          if (units != 1) return false;
        }
        return true;
      }
      // finite depth quotient whose modulus is a power of (v-1) mod p:
      // local with residue field F_p, maximal ideal (p, v-1)
      Poly gb = preduce_mod(base->g, Int(base->p));
      Poly vm1 = preduce_mod(ppow(Poly{Int(-1), Int(1)}, deg(gb)), Int(base->p));
      require(gb == vm1, "UnsupportedRing", "unit test over this Laurent base needs a local quotient");
      int units = 0;
      for (const auto& c : a.coeffs)
        if (peval(c.num, 1) % base->p != 0) ++units;
      return units == 1;
    }
  }
  return false;
}

Elem Ring::inverse(const Elem& a) const {
  require(!is_zero(a), "DivisionByZero", "inverse of zero");
  switch (kind) {
    case RingKind::Integers:
      require(is_unit(a), "NotInvertible", "integer is not a unit");
      return a;
    case RingKind::IntegersMod: {
      Int inv;
      require(mpz_invert(inv.get_mpz_t(), a.num[0].get_mpz_t(), m.get_mpz_t()) != 0, "NotInvertible", "residue not a unit");
      return from_int(inv);
    }
    case RingKind::Cyclotomic: {
      require(is_unit(a), "NotInvertible", "cyclotomic integer is not a unit");
      return divide_exact(one(), a);
    }
    case RingKind::DepthPoly:
      require(is_unit(a), "NotInvertible", "value at 1 divisible by p");
      return frac(a.den.empty() ? pconst(1) : a.den, a.num);
    case RingKind::FDQ: {
      ZpnArith e(p, N);
      size_t n = lattice_rank();
      auto B = mult_block_zpn(a);
      auto s = smith(e, B, true, true);
      require(s.rank == n, "NotInvertible", "element of the finite quotient is not a unit");
      for (const auto& x : s.d) require(e.is_unit(x), "NotInvertible", "element of the finite quotient is not a unit");
      std::vector<int64_t> rhs(n, 0);
      rhs[0] = 1;
      auto z = matvec(e, s.P, rhs);
      for (size_t i = 0; i < n; ++i) z[i] = e.mul(z[i], e.inverse(s.d[i]));
      auto y = matvec(e, s.Q, z);
      std::vector<Int> c(n);
      for (size_t i = 0; i < n; ++i) c[i] = e.lift(y[i]);
      return from_coords(c);
    }
    case RingKind::Laurent: {
      require(a.exps.size() == 1, "NotInvertible", "only monomial Laurent units are inverted");
      std::vector<long> ex = a.exps[0];
      for (auto& x : ex) x = -x;
      return monomial_T(ex, base->inverse(a.coeffs[0]));
    }
  }
  return a;
}

Elem Ring::divide_exact(const Elem& a, const Elem& b) const {
  require(!is_zero(b), "DivisionByZero", "division by zero");
  if (is_zero(a)) return zero();
  switch (kind) {
    case RingKind::Integers: {
      require(mpz_divisible_p(a.num[0].get_mpz_t(), b.num[0].get_mpz_t()) != 0, "NotDivisible",
              a.num[0].get_str() + " is not divisible by " + b.num[0].get_str());
      Elem r;
      r.num = pconst(a.num[0] / b.num[0]);
      return r;
    }
    case RingKind::IntegersMod:
    case RingKind::FDQ:
      require(is_unit(b), "NotDivisible", "quotient by a non-unit is not unique in this ring");
      return mul(a, inverse(b));
    case RingKind::Cyclotomic: {
      if (b.num.size() == 1) {  // integer divisor: coefficientwise
        Elem q = a;
        for (auto& c : q.num) {
          require(mpz_divisible_p(c.get_mpz_t(), b.num[0].get_mpz_t()) != 0, "NotDivisible", "no quotient in Z[zeta]");
          mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), b.num[0].get_mpz_t());
        }
        return q;
      }
      ZArith z;
      size_t n = lattice_rank();
      auto s = smith(z, mult_block(b), true, true);
      auto y = matvec(z, s.P, coords(a));
      for (size_t i = 0; i < n; ++i) {
        require(mpz_divisible_p(y[i].get_mpz_t(), s.d[i].get_mpz_t()) != 0, "NotDivisible", "no quotient in Z[zeta]");
        y[i] /= s.d[i];
      }
      return from_coords(matvec(z, s.Q, y));
    }
    case RingKind::DepthPoly: {
      Poly ad = a.den.empty() ? pconst(1) : a.den;
      Poly bd = b.den.empty() ? pconst(1) : b.den;
      try {
        return frac(pmul(a.num, bd), pmul(ad, b.num));
      } catch (const Error& err) {
        if (err.code() == "NotInLocalization") fail("NotDivisible", str(b) + " does not divide " + str(a));
        throw;
      }
    }
    case RingKind::Laurent: {
      if (b.exps.size() == 1) {
        Elem r;
        for (size_t i = 0; i < a.exps.size(); ++i) {
          std::vector<long> ex(d);
          for (int c = 0; c < d; ++c) ex[c] = a.exps[i][c] - b.exps[0][c];
          r.exps.push_back(ex);
          r.coeffs.push_back(base->divide_exact(a.coeffs[i], b.coeffs[0]));
        }
        return canonicalize(r);
      }
      require(base->is_domain(), "NotDivisible", "Laurent division over a non-domain base needs a unit monomial divisor");
      std::vector<long> mina(d, 0), minb(d, 0), maxa(d, 0), maxb(d, 0);
      for (int c = 0; c < d; ++c) {
        mina[c] = maxa[c] = a.exps[0][c];
        minb[c] = maxb[c] = b.exps[0][c];
        for (const auto& ex : a.exps) {
          mina[c] = std::min(mina[c], ex[c]);
          maxa[c] = std::max(maxa[c], ex[c]);
        }
        for (const auto& ex : b.exps) {
          minb[c] = std::min(minb[c], ex[c]);
          maxb[c] = std::max(maxb[c], ex[c]);
        }
      }
      std::vector<long> bound(d);
      for (int c = 0; c < d; ++c) {
        bound[c] = (maxa[c] - mina[c]) - (maxb[c] - minb[c]);
        require(bound[c] >= 0, "NotDivisible", "exponent range too small for a quotient");
      }
      Terms rem, bt;
      for (size_t i = 0; i < a.exps.size(); ++i) {
        std::vector<long> ex(d);
        for (int c = 0; c < d; ++c) ex[c] = a.exps[i][c] - mina[c];
        rem.emplace(ex, a.coeffs[i]);
      }
      for (size_t i = 0; i < b.exps.size(); ++i) {
        std::vector<long> ex(d);
        for (int c = 0; c < d; ++c) ex[c] = b.exps[i][c] - minb[c];
        bt.emplace(ex, b.coeffs[i]);
      }
      const auto& lb = *bt.rbegin();
      Terms q;
      while (!rem.empty()) {
        auto lt = *rem.rbegin();
        std::vector<long> ex(d);
        for (int c = 0; c < d; ++c) {
          ex[c] = lt.first[c] - lb.first[c];
          require(ex[c] >= 0 && ex[c] <= bound[c], "NotDivisible", "Laurent division leaves a remainder");
        }
        Elem cq = base->divide_exact(lt.second, lb.second);
        terms_add(*base, q, ex, cq);
        for (const auto& [be, bc] : bt) {
          std::vector<long> e2(d);
          for (int c = 0; c < d; ++c) e2[c] = ex[c] + be[c];
          terms_add(*base, rem, e2, base->neg(base->mul(cq, bc)));
          auto it = rem.find(e2);
          if (base->is_zero(it->second)) rem.erase(it);
        }
      }
      Elem r;
      for (const auto& [ex, c] : q) {
        std::vector<long> e2(d);
        for (int cc = 0; cc < d; ++cc) e2[cc] = ex[cc] + mina[cc] - minb[cc];
        r.exps.push_back(e2);
        r.coeffs.push_back(c);
      }
      return canonicalize(r);
    }
  }
  return a;
}

Elem Ring::divide_exact_polynomial(const Elem& a, const Elem& b) const {
  require(kind == RingKind::DepthPoly, "InvalidArgument", "strict polynomial division is for depth polynomials");
  require(!is_zero(b), "DivisionByZero", "division by zero");
  require(a.den.empty() && b.den.empty(), "NotDivisible", "strict division needs polynomial operands");
  auto q = pdiv_exact(a.num, b.num);
  require(q.has_value(), "NotDivisible", pstr(b.num) + " does not divide " + pstr(a.num) + " in Z[v]");
  return poly(*q);
}

Elem Ring::phi(const Elem& a) const {
  require(kind == RingKind::DepthPoly, "InvalidArgument", "Frobenius lives on the depth polynomial model");
  Elem r;
  r.num = pcompose_pow(a.num, p);
  if (!a.den.empty()) r.den = pcompose_pow(a.den, p);
  return canonicalize(r);
}

Elem Ring::phi_inverse(const Elem& a) const {
  require(kind == RingKind::DepthPoly, "InvalidArgument", "Frobenius lives on the depth polynomial model");
  auto shrink = [&](const Poly& f) {
    Poly r;
    for (size_t i = 0; i < f.size(); ++i) {
      if (f[i] == 0) continue;
      require(i % static_cast<size_t>(p) == 0, "InsufficientDepth", "exponent not divisible by p in " + pstr(f));
    }
    if (f.empty()) return r;
    r.resize((f.size() - 1) / p + 1);
    for (size_t i = 0; i < r.size(); ++i) r[i] = f[i * p];
    return r;
  };
  Elem r;
  r.num = shrink(a.num);
  if (!a.den.empty()) r.den = shrink(a.den);
  return canonicalize(r);
}

size_t Ring::lattice_rank() const {
  switch (kind) {
    case RingKind::Integers:
    case RingKind::IntegersMod:
      return 1;
    case RingKind::Cyclotomic:
    case RingKind::FDQ:
      return static_cast<size_t>(deg(g));
    default:
      fail("UnsupportedRing", name() + " has no finite lattice presentation");
  }
}

std::vector<Int> Ring::coords(const Elem& a) const {
  size_t n = lattice_rank();
  std::vector<Int> c(n, 0);
  for (size_t i = 0; i < a.num.size() && i < n; ++i) c[i] = a.num[i];
  return c;
}

Elem Ring::from_coords(const std::vector<Int>& c) const {
  Elem x;
  x.num = Poly(c.begin(), c.end());
  return canonicalize(x);
}

ZMat Ring::mult_block(const Elem& a) const {
  size_t n = lattice_rank();
  ZMat B(n, n, Int(0));
  for (size_t j = 0; j < n; ++j) {
    Elem col = (kind == RingKind::Integers || kind == RingKind::IntegersMod) ? a : mul(a, poly(monomial(1, j)));
    auto c = coords(col);
    for (size_t i = 0; i < n; ++i) B(i, j) = c[i];
  }
  return B;
}

Mat<ZpnArith> Ring::mult_block_zpn(const Elem& a) const {
  require(kind == RingKind::FDQ, "InvalidArgument", "Z/p^N block needs a finite depth quotient");
  ZpnArith e(p, N);
  ZMat B = mult_block(a);
  Mat<ZpnArith> R(B.rows, B.cols, 0);
  for (size_t i = 0; i < B.a.size(); ++i) R.a[i] = e.from_int(B.a[i]);
  return R;
}

std::string Ring::str(const Elem& a) const {
  if (kind == RingKind::Laurent) {
    if (a.exps.empty()) return "0";
    std::ostringstream os;
    for (size_t i = 0; i < a.exps.size(); ++i) {
      if (i) os << " + ";
      os << "(" << base->str(a.coeffs[i]) << ")";
      for (int c = 0; c < d; ++c) {
        if (a.exps[i][c] == 0) continue;
        os << "*T" << (c + 1) << "^" << a.exps[i][c];
        if (e > 0) os << "/" << p << "^" << e;
      }
    }
    return os.str();
  }
  const char* var = kind == RingKind::Cyclotomic ? "z" : "v";
  if (a.den.empty()) return pstr(a.num, var);
  return "(" + pstr(a.num, var) + ")/(" + pstr(a.den, var) + ")";
}

RingHom make_hom(const Ring& src, const Ring& dst, const Elem& vimg) {
  require(src.kind != RingKind::Laurent, "InvalidArgument", "use make_laurent_hom for Laurent sources");
  RingHom h{src, dst, Elem{}, false, nullptr};
  if (src.kind == RingKind::Cyclotomic || src.kind == RingKind::DepthPoly || src.kind == RingKind::FDQ)
    h.vimg = dst.canonicalize(vimg);
  switch (src.kind) {
    case RingKind::IntegersMod:
      require(dst.is_zero(dst.from_int(src.m)), "IllDefined", "modulus not sent to 0");
      break;
    case RingKind::Cyclotomic:
      require(dst.is_zero(dst.eval_poly(src.g, h.vimg)), "IllDefined", "cyclotomic relation not sent to 0");
      break;
    case RingKind::FDQ:
      require(dst.is_zero(dst.from_int(src.m)), "IllDefined", "p^N not sent to 0");
      require(dst.is_zero(dst.eval_poly(src.g, h.vimg)), "IllDefined", "quotient modulus not sent to 0");
      break;
    default:
      break;
  }
  return h;
}

RingHom make_laurent_hom(const Ring& src, const Ring& dst, const RingHom& base, bool t_to_one) {
  require(src.kind == RingKind::Laurent, "InvalidArgument", "Laurent source expected");
  require(*src.base == base.src, "RingMismatch", "base map source differs from Laurent base");
  if (t_to_one) {
    require(dst == base.dst, "RingMismatch", "T -> 1 lands in the base target");
  } else {
    require(dst.kind == RingKind::Laurent && dst.d == src.d && dst.e == src.e && *dst.base == base.dst, "RingMismatch",
            "Laurent target must match dimension and root depth");
  }
  RingHom h{src, dst, Elem{}, t_to_one, std::make_shared<const RingHom>(base)};
  return h;
}

Elem hom_apply(const RingHom& h, const Elem& x) {
  const Ring& D = h.dst;
  switch (h.src.kind) {
    case RingKind::Integers:
    case RingKind::IntegersMod:
      return D.from_int(x.num.empty() ? Int(0) : x.num[0]);
    case RingKind::Cyclotomic:
    case RingKind::FDQ:
      return D.eval_poly(x.num, h.vimg);
    case RingKind::DepthPoly: {
      Elem n = D.eval_poly(x.num, h.vimg);
      if (x.den.empty()) return n;
      Elem dd = D.eval_poly(x.den, h.vimg);
      require(D.is_unit(dd), "IllDefined", "denominator " + h.src.str(Elem{x.den, {}, {}, {}}) + " not sent to a unit");
      return D.divide_exact(n, dd);
    }
    case RingKind::Laurent: {
      Elem r = D.zero();
      for (size_t i = 0; i < x.exps.size(); ++i) {
        Elem c = hom_apply(*h.base, x.coeffs[i]);
        r = D.add(r, h.t_to_one ? c : D.monomial_T(x.exps[i], c));
      }
      return r;
    }
  }
  return x;
}

RMat rmatmul(const Ring& R, const RMat& A, const RMat& B) {
  require(A.cols == B.rows, "ShapeMismatch", "ring matrix product");
  RMat C(R, A.rows, B.cols);
  for (size_t i = 0; i < A.rows; ++i)
    for (size_t k = 0; k < A.cols; ++k) {
      if (R.is_zero(A(i, k))) continue;
      for (size_t j = 0; j < B.cols; ++j)
        if (!R.is_zero(B(k, j))) C(i, j) = R.add(C(i, j), R.mul(A(i, k), B(k, j)));
    }
  return C;
}

RMat rmat_identity(const Ring& R, size_t n) {
  RMat I(R, n, n);
  for (size_t i = 0; i < n; ++i) I(i, i) = R.one();
  return I;
}

RMat rmat_scale(const Ring& R, const RMat& A, const Elem& c) {
  RMat B = A;
  for (auto& x : B.a) x = R.mul(c, x);
  return B;
}

bool rmat_is_zero(const Ring& R, const RMat& A) {
  for (const auto& x : A.a)
    if (!R.is_zero(x)) return false;
  return true;
}

RMat rmat_apply(const RingHom& h, const RMat& A) {
  RMat B(h.dst, A.rows, A.cols);
  for (size_t i = 0; i < A.a.size(); ++i) B.a[i] = hom_apply(h, A.a[i]);
  return B;
}

ZMat rmat_block(const Ring& R, const RMat& A) {
  size_t n = R.lattice_rank();
  ZMat B(A.rows * n, A.cols * n, Int(0));
  for (size_t i = 0; i < A.rows; ++i)
    for (size_t j = 0; j < A.cols; ++j) {
      if (R.is_zero(A(i, j))) continue;
      ZMat blk = R.mult_block(A(i, j));
      for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) B(i * n + a, j * n + b) = blk(a, b);
    }
  return B;
}

Mat<ZpnArith> rmat_block_zpn(const Ring& R, const RMat& A) {
  ZpnArith e(R.p, R.N);
  ZMat B = rmat_block(R, A);
  Mat<ZpnArith> C(B.rows, B.cols, 0);
  for (size_t i = 0; i < B.a.size(); ++i) C.a[i] = e.from_int(B.a[i]);
  return C;
}

}  // namespace ipw
