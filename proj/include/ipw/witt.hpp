#pragma once
#include <map>
#include <string>
#include <vector>

#include "ipw/ring.hpp"

namespace ipw {

// p-typical Witt vector of length r = c.size() over a scalar ring.
struct WittVector {
  long p = 2;
  Ring ring;
  std::vector<Elem> c;
  size_t r() const { return c.size(); }
  bool operator==(const WittVector& o) const { return p == o.p && ring == o.ring && c == o.c; }
  bool operator!=(const WittVector& o) const { return !(*this == o); }
};

// Integer polynomial in variables 0..nvars-1, sparse.
struct MPoly {
  std::map<std::vector<int>, Int> terms;
  size_t size() const { return terms.size(); }
};

// Universal polynomials for length r: add/mul in X_0..X_{r-1}, Y_0..Y_{r-1}
// (variables 0..r-1 and r..2r-1), neg in X, frob with frob[n] in X_0..X_{n+1}.
struct WittPolys {
  long p = 2;
  int r = 0;
  std::vector<MPoly> add, mul, neg, frob;
};

// Built once per (p, r) from the ghost recursion (every division by p^n
// is checked to be exact) and shared read-only.
const WittPolys& witt_polys(long p, int r);

WittVector witt_make(long p, const Ring& R, std::vector<Elem> comps);
WittVector witt_zero(long p, const Ring& R, int r);
WittVector witt_one(long p, const Ring& R, int r);
WittVector witt_from_int(long p, const Ring& R, int r, long n);  // n * 1
WittVector teichmuller(long p, const Ring& R, int r, const Elem& x);

std::vector<Elem> ghost(const WittVector& w);
// Components from ghost components over a p-torsion-free ring (exact
// division by p^n); NotInImage if the vector is not a ghost vector.
WittVector ghost_inverse(long p, const Ring& R, const std::vector<Elem>& g);

WittVector witt_add(const WittVector& a, const WittVector& b);
WittVector witt_mul(const WittVector& a, const WittVector& b);
WittVector witt_neg(const WittVector& a);
WittVector witt_sub(const WittVector& a, const WittVector& b);
WittVector frobenius(const WittVector& w);     // length r-1
WittVector verschiebung(const WittVector& w);  // length r+1
WittVector restrict_(const WittVector& w);     // length r-1
WittVector truncate(const WittVector& w, int r);

std::string witt_str(const WittVector& w);

struct Containment {
  std::string name;
  bool pass = false;
  std::string witness;  // first counterexample on failure
};

struct IdealReport {
  std::vector<Containment> checks;
  bool pass = false;
};

// Finite base rings only (UndecidableVariant otherwise); membership by
// enumeration of W_r(S).
IdealReport witt_ideal_report(const Ring& S, const Elem& f, int r, int s);

}  // namespace ipw
