#pragma once
#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ipw {

using Int = mpz_class;

// Dense univariate integer polynomial, little-endian, no trailing zeros.
// The zero polynomial is the empty vector.
using Poly = std::vector<Int>;

Int ipow(const Int& b, unsigned long e);
long ilog_p(long n, long p);  // exponent e with p^e == n, or -1
long lpow(long b, int e);

void trim(Poly& a);
int deg(const Poly& a);
Poly pconst(const Int& c);
Poly monomial(const Int& c, long e);
Poly padd(const Poly& a, const Poly& b);
Poly psub(const Poly& a, const Poly& b);
Poly pneg(const Poly& a);
Poly pmul(const Poly& a, const Poly& b);
Poly pscale(const Poly& a, const Int& c);
Poly ppow(const Poly& a, unsigned long e);
bool pis_zero(const Poly& a);

// Quotient and remainder by a polynomial with leading coefficient ±1.
std::pair<Poly, Poly> pdivmod_monic(const Poly& a, const Poly& b);
Poly pmod_monic(const Poly& a, const Poly& b);
// Exact division in Z[v]; nullopt if b does not divide a.
std::optional<Poly> pdiv_exact(const Poly& a, const Poly& b);

Int pcontent(const Poly& a);  // nonnegative gcd of coefficients
Poly pprimitive(const Poly& a);
// gcd in Z[v], normalized with positive leading coefficient.
Poly pgcd(const Poly& a, const Poly& b);

Int peval(const Poly& a, const Int& x);
Poly pcompose_pow(const Poly& a, long e);  // a(v^e)
Poly pcompose(const Poly& a, const Poly& b);

// v^n - 1 and the p^k-th cyclotomic polynomial.
Poly xn_minus_1(long n);
Poly cyclotomic_ppow(long p, int k);

Poly preduce_mod(const Poly& a, const Int& m);  // coefficients in [0, m)

std::string pstr(const Poly& a, const char* var = "v");

}  // namespace ipw
