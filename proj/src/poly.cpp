#include "ipw/poly.hpp"

#include <sstream>

#include "ipw/errors.hpp"

namespace ipw {

Int ipow(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

long ilog_p(long n, long p) {
  if (n < 1) return -1;
  long e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return n == 1 ? e : -1;
}

long lpow(long b, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly pconst(const Int& c) {
  Poly r;
  if (c != 0) r.push_back(c);
  return r;
}

Poly monomial(const Int& c, long e) {
  if (c == 0) return {};
  Poly r(e + 1);
  r[e] = c;
  return r;
}

bool pis_zero(const Poly& a) { return a.empty(); }

Poly padd(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

Poly psub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

Poly pneg(const Poly& a) {
  Poly r = a;
  for (auto& c : r) c = -c;
  return r;
}

Poly pmul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j] != 0) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  trim(r);
  return r;
}

Poly pscale(const Poly& a, const Int& c) {
  if (c == 0) return {};
  Poly r = a;
  for (auto& x : r) x *= c;
  return r;
}

Poly ppow(const Poly& a, unsigned long e) {
  Poly r = pconst(1), b = a;
  while (e) {
    if (e & 1) r = pmul(r, b);
    e >>= 1;
    if (e) b = pmul(b, b);
  }
  return r;
}

std::pair<Poly, Poly> pdivmod_monic(const Poly& a, const Poly& b) {
  require(!b.empty(), "DivisionByZero", "polynomial division by zero");
  const Int& lc = b.back();
  require(lc == 1 || lc == -1, "NotMonic", "divisor leading coefficient must be a unit");
  Poly r = a;
  int db = deg(b);
  if (deg(r) < db) return {{}, r};
  Poly q(deg(r) - db + 1);
  for (int i = deg(r); i >= db; --i) {
    if (r[i] == 0) continue;
    Int c = (lc == 1) ? Int(r[i]) : Int(-r[i]);
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= c * b[j];
  }
  trim(q);
  trim(r);
  return {q, r};
}

Poly pmod_monic(const Poly& a, const Poly& b) { return pdivmod_monic(a, b).second; }

std::optional<Poly> pdiv_exact(const Poly& a, const Poly& b) {
  require(!b.empty(), "DivisionByZero", "polynomial division by zero");
  if (a.empty()) return Poly{};
  int db = deg(b);
  if (deg(a) < db) return std::nullopt;
  Poly r = a, q(deg(a) - db + 1);
  const Int& lc = b.back();
  for (int i = deg(r); i >= db; --i) {
    if (r[i] == 0) continue;
    if (!mpz_divisible_p(r[i].get_mpz_t(), lc.get_mpz_t())) return std::nullopt;
    Int c = r[i] / lc;
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= c * b[j];
  }
  trim(r);
  if (!r.empty()) return std::nullopt;
  trim(q);
  return q;
}

Int pcontent(const Poly& a) {
  Int g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

Poly pprimitive(const Poly& a) {
  if (a.empty()) return {};
  Int g = pcontent(a);
  if (a.back() < 0) g = -g;
  Poly r = a;
  for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return r;
}

Poly pgcd(const Poly& a, const Poly& b) {
  if (a.empty()) return pprimitive(b).empty() ? Poly{} : pscale(pprimitive(b), pcontent(b));
  if (b.empty()) return pscale(pprimitive(a), pcontent(a));
  Int c;
  Int ca = pcontent(a), cb = pcontent(b);
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  Poly A = pprimitive(a), B = pprimitive(b);
  if (deg(A) < deg(B)) std::swap(A, B);
  while (!B.empty()) {
    Poly R = A;
    while (!R.empty() && deg(R) >= deg(B)) {
      Int lr = R.back();
      R = psub(pscale(R, B.back()), pmul(monomial(lr, deg(R) - deg(B)), B));
    }
    A = B;
    B = pprimitive(R);
  }
  return pscale(pprimitive(A), c);
}

Int peval(const Poly& a, const Int& x) {
  Int r = 0;
  for (int i = deg(a); i >= 0; --i) r = r * x + a[i];
  return r;
}

Poly pcompose_pow(const Poly& a, long e) {
  if (a.empty()) return {};
  Poly r((a.size() - 1) * e + 1);
  for (size_t i = 0; i < a.size(); ++i) r[i * e] = a[i];
  return r;
}

Poly pcompose(const Poly& a, const Poly& b) {
  Poly r;
  for (int i = deg(a); i >= 0; --i) r = padd(pmul(r, b), pconst(a[i]));
  return r;
}

Poly xn_minus_1(long n) {
  if (n == 0) return {};
  Poly r(n + 1);
  r[0] = -1;
  r[n] = 1;
  return r;
}

Poly cyclotomic_ppow(long p, int k) {
  require(k >= 1, "InvalidArgument", "cyclotomic depth must be >= 1");
  long s = lpow(p, k - 1);
  Poly r((p - 1) * s + 1);
  for (long i = 0; i < p; ++i) r[i * s] = 1;
  return r;
}

Poly preduce_mod(const Poly& a, const Int& m) {
  Poly r = a;
  for (auto& c : r) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  trim(r);
  return r;
}

std::string pstr(const Poly& a, const char* var) {
  if (a.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = deg(a); i >= 0; --i) {
    if (a[i] == 0) continue;
    Int c = a[i];
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Int ac = abs(c);
    if (i == 0 || ac != 1) os << ac.get_str();
    if (i > 0) os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

}  // namespace ipw
