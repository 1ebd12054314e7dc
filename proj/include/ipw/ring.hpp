#pragma once
#include <memory>
#include <string>
#include <vector>

#include "ipw/linalg.hpp"
#include "ipw/poly.hpp"

namespace ipw {

enum class RingKind { Integers, IntegersMod, Cyclotomic, DepthPoly, FDQ, Laurent };

// Ring element in canonical form. Scalar variants use `num` (and `den` for
// depth polynomials, empty meaning 1). Laurent elements list their support
// in lex order, exponents being numerators over p^e.
struct Elem {
  Poly num;
  Poly den;
  std::vector<std::vector<long>> exps;
  std::vector<Elem> coeffs;
  bool operator==(const Elem& o) const;
  bool operator!=(const Elem& o) const { return !(*this == o); }
};

struct Ring {
  RingKind kind = RingKind::Integers;
  long p = 0;
  int k = 0;
  int N = 0;
  Int m = 0;    // IntegersMod modulus, or p^N for finite depth quotients
  Poly g;       // cyclotomic or quotient modulus (monic)
  std::shared_ptr<const Ring> base;
  int d = 0, e = 0;

  static Ring integers();
  static Ring mod(const Int& m);
  static Ring cyclotomic(long p, int k);
  static Ring depth_poly(long p, int k);
  static Ring fdq(long p, int k, int N, const Poly& g);
  static Ring laurent(const Ring& base, int d, int e);

  bool operator==(const Ring& o) const;
  bool operator!=(const Ring& o) const { return !(*this == o); }
  std::string name() const;
  bool is_domain() const;
  bool is_finite() const;
  bool is_scalar() const { return kind != RingKind::Laurent; }

  Elem zero() const;
  Elem one() const;
  Elem from_int(const Int& c) const;
  Elem gen() const;  // v, or ζ for cyclotomic integers
  Elem poly(const Poly& a) const;
  Elem frac(const Poly& num, const Poly& den) const;
  // T^(exps / p^e) with coefficient c from the base
  Elem monomial_T(const std::vector<long>& exps, const Elem& c) const;

  Elem canonicalize(const Elem& x) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem mod_op(const Elem& a, const Elem& b, bool multiply) const;  // Z/m fast path
  Elem pow(const Elem& a, long n) const;
  Elem eval_poly(const Poly& f, const Elem& x) const;  // f(x)
  bool is_zero(const Elem& a) const;
  bool is_unit(const Elem& a) const;
  Elem inverse(const Elem& a) const;
  // b*q = a in the (localized) ring; NotDivisible / DivisionByZero.
  Elem divide_exact(const Elem& a, const Elem& b) const;
  // Strict division in Z[v] for depth polynomials (no localization).
  Elem divide_exact_polynomial(const Elem& a, const Elem& b) const;
  std::string str(const Elem& a) const;

  // depth polynomials only
  Elem phi(const Elem& a) const;          // v -> v^p
  Elem phi_inverse(const Elem& a) const;  // v^p -> v, InsufficientDepth

  // Additive presentation for scalar variants: Z^n (or (Z/p^N)^n, Z/m).
  size_t lattice_rank() const;
  std::vector<Int> coords(const Elem& a) const;
  Elem from_coords(const std::vector<Int>& c) const;
  ZMat mult_block(const Elem& a) const;
  Mat<ZpnArith> mult_block_zpn(const Elem& a) const;  // finite depth quotient only
};

// Ring map given by images of generators. For depth polynomials and
// cyclotomic/quotient sources: v -> vimg. For Laurent sources: `base` maps
// the coefficients and every T_i goes to T_i (Laurent target with the same
// d, e) or to 1 (t_to_one, target = base target).
struct RingHom {
  Ring src, dst;
  Elem vimg;
  bool t_to_one = false;
  std::shared_ptr<const RingHom> base;
};

RingHom make_hom(const Ring& src, const Ring& dst, const Elem& vimg);
RingHom make_laurent_hom(const Ring& src, const Ring& dst, const RingHom& base, bool t_to_one);
Elem hom_apply(const RingHom& h, const Elem& x);

struct RMat {
  size_t rows = 0, cols = 0;
  std::vector<Elem> a;
  RMat() = default;
  RMat(const Ring& R, size_t r, size_t c) : rows(r), cols(c), a(r * c, R.zero()) {}
  Elem& operator()(size_t i, size_t j) { return a[i * cols + j]; }
  const Elem& operator()(size_t i, size_t j) const { return a[i * cols + j]; }
  bool operator==(const RMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

RMat rmatmul(const Ring& R, const RMat& A, const RMat& B);
RMat rmat_identity(const Ring& R, size_t n);
RMat rmat_scale(const Ring& R, const RMat& A, const Elem& c);
bool rmat_is_zero(const Ring& R, const RMat& A);
RMat rmat_apply(const RingHom& h, const RMat& A);
// Integer block matrix of a ring matrix in the lattice presentation.
ZMat rmat_block(const Ring& R, const RMat& A);
Mat<ZpnArith> rmat_block_zpn(const Ring& R, const RMat& A);

}  // namespace ipw
