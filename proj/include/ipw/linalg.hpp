#pragma once
// Exact normal forms over two coefficient systems sharing one algorithm:
//   ZArith  - the integers (GMP),
//   ZpnArith - the chain ring Z/p^N (int64 residues).
// Everything downstream (cohomology, subquotients, isomorphism checks) is
// written once against the Arith interface.

#include <cstdint>
#include <vector>

#include "ipw/errors.hpp"
#include "ipw/poly.hpp"

namespace ipw {

struct ZArith {
  using T = Int;
  T zero() const { return 0; }
  T one() const { return 1; }
  T from(long x) const { return x; }
  T from_int(const Int& x) const { return x; }
  Int lift(const T& x) const { return x; }
  bool is_zero(const T& a) const { return a == 0; }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T neg(const T& a) const { return -a; }
  bool is_unit(const T& a) const { return a == 1 || a == -1; }
  // pivot preference: smaller is better
  bool better(const T& a, const T& b) const { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0; }
  bool divides(const T& a, const T& b) const {
    if (a == 0) return b == 0;
    return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0;
  }
  T quo(const T& b, const T& a) const {
    T q;
    mpz_divexact(q.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
    return q;
  }
  void xgcd(const T& a, const T& b, T& g, T& s, T& t) const {
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
  // unit u with u*a normalized (nonnegative)
  T normalizer(const T& a) const { return a < 0 ? T(-1) : T(1); }
  T unit_inverse(const T& u) const { return u; }
  T ann(const T&) const { return 0; }
  // canonical representative of x modulo the normalized element d
  T reduce(const T& x, const T& d) const {
    if (d == 0) return x;
    T r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    return r;
  }
  // order of the cyclic group R/dR as an abelian group (0 = infinite)
  Int cyclic_order(const T& d) const { return abs(d); }
  bool operator==(const ZArith&) const { return true; }
};

struct ZpnArith {
  using T = int64_t;
  int64_t p = 2;
  int N = 1;
  int64_t M = 2;
  ZpnArith() = default;
  ZpnArith(int64_t p_, int N_);
  T zero() const { return 0; }
  T one() const { return M == 1 ? 0 : 1; }
  T from(long x) const { return norm(static_cast<int64_t>(x)); }
  T from_int(const Int& x) const;
  Int lift(const T& x) const { return Int(static_cast<long>(x)); }
  T norm(int64_t x) const {
    x %= M;
    return x < 0 ? x + M : x;
  }
  bool is_zero(const T& a) const { return a == 0; }
  T add(const T& a, const T& b) const {
    T r = a + b;
    return r >= M ? r - M : r;
  }
  T sub(const T& a, const T& b) const {
    T r = a - b;
    return r < 0 ? r + M : r;
  }
  T mul(const T& a, const T& b) const {
    return static_cast<T>((static_cast<__int128>(a) * b) % M);
  }
  T neg(const T& a) const { return a == 0 ? 0 : M - a; }
  int val(T a) const {
    if (a == 0) return N;
    int v = 0;
    while (a % p == 0) {
      a /= p;
      ++v;
    }
    return v;
  }
  bool is_unit(const T& a) const { return a % p != 0; }
  bool better(const T& a, const T& b) const { return val(a) < val(b); }
  bool divides(const T& a, const T& b) const { return val(a) <= val(b); }
  T inverse(T a) const;  // a prime to p
  T quo(const T& b, const T& a) const;
  void xgcd(const T& a, const T& b, T& g, T& s, T& t) const {
    if (val(a) <= val(b)) {
      g = a;
      s = 1;
      t = 0;
    } else {
      g = b;
      s = 0;
      t = 1;
    }
  }
  T normalizer(const T& a) const;
  T unit_inverse(const T& u) const { return inverse(u); }
  T ann(const T& d) const;
  T reduce(const T& x, const T& d) const {
    if (d == 0) return x;
    return x % d;
  }
  Int cyclic_order(const T& d) const {
    return d == 0 ? ipow(Int(static_cast<long>(p)), N) : Int(static_cast<long>(d));
  }
  int exp_of(const T& d) const { return val(d); }  // d normalized: d == p^e
  bool operator==(const ZpnArith& o) const { return p == o.p && N == o.N; }
};

template <class E>
struct Mat {
  using T = typename E::T;
  size_t rows = 0, cols = 0;
  std::vector<T> a;
  Mat() = default;
  Mat(size_t r, size_t c, T fill = T(0)) : rows(r), cols(c), a(r * c, fill) {}
  T& operator()(size_t i, size_t j) { return a[i * cols + j]; }
  const T& operator()(size_t i, size_t j) const { return a[i * cols + j]; }
  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

using ZMat = Mat<ZArith>;

template <class E>
Mat<E> identity(const E& e, size_t n) {
  Mat<E> m(n, n, e.zero());
  for (size_t i = 0; i < n; ++i) m(i, i) = e.one();
  return m;
}

template <class E>
Mat<E> matmul(const E& e, const Mat<E>& A, const Mat<E>& B) {
  require(A.cols == B.rows, "ShapeMismatch", "matmul");
  Mat<E> C(A.rows, B.cols, e.zero());
  for (size_t i = 0; i < A.rows; ++i)
    for (size_t k = 0; k < A.cols; ++k) {
      const auto& x = A(i, k);
      if (e.is_zero(x)) continue;
      for (size_t j = 0; j < B.cols; ++j) C(i, j) = e.add(C(i, j), e.mul(x, B(k, j)));
    }
  return C;
}

template <class E>
std::vector<typename E::T> matvec(const E& e, const Mat<E>& A, const std::vector<typename E::T>& x) {
  require(A.cols == x.size(), "ShapeMismatch", "matvec");
  std::vector<typename E::T> y(A.rows, e.zero());
  for (size_t i = 0; i < A.rows; ++i)
    for (size_t k = 0; k < A.cols; ++k)
      if (!e.is_zero(A(i, k)) && !e.is_zero(x[k])) y[i] = e.add(y[i], e.mul(A(i, k), x[k]));
  return y;
}

template <class E>
Mat<E> hcat(const E& e, const Mat<E>& A, const Mat<E>& B) {
  size_t r = A.rows ? A.rows : B.rows;
  require((A.rows == r || A.cols == 0) && (B.rows == r || B.cols == 0), "ShapeMismatch", "hcat");
  Mat<E> C(r, A.cols + B.cols, e.zero());
  for (size_t i = 0; i < r; ++i) {
    for (size_t j = 0; j < A.cols; ++j) C(i, j) = A(i, j);
    for (size_t j = 0; j < B.cols; ++j) C(i, A.cols + j) = B(i, j);
  }
  return C;
}

template <class E>
Mat<E> column(const E& e, const std::vector<typename E::T>& v) {
  Mat<E> m(v.size(), 1, e.zero());
  for (size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

template <class E>
std::vector<typename E::T> col_of(const Mat<E>& m, size_t j) {
  std::vector<typename E::T> v(m.rows);
  for (size_t i = 0; i < m.rows; ++i) v[i] = m(i, j);
  return v;
}

template <class E>
bool is_zero_mat(const E& e, const Mat<E>& m) {
  for (const auto& x : m.a)
    if (!e.is_zero(x)) return false;
  return true;
}

template <class E>
Mat<E> scalar_mat(const E& e, size_t n, const typename E::T& c) {
  Mat<E> m(n, n, e.zero());
  for (size_t i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

// P * A * Q = diag(d_0, ..., d_{rank-1}, 0, ...), each d normalized,
// d_i | d_{i+1}. Pivot order is fixed so the result is reproducible.
template <class E>
struct SNF {
  std::vector<typename E::T> d;
  Mat<E> P, Pinv, Q;
  size_t rank = 0;
};

template <class E>
SNF<E> smith(const E& e, const Mat<E>& A, bool want_P = true, bool want_Q = true);

// Generators (columns) of {x : A x = 0}.
template <class E>
Mat<E> kernel(const E& e, const Mat<E>& A);

// Generators of {x : A x in span(G)}.
template <class E>
Mat<E> preimage(const E& e, const Mat<E>& A, const Mat<E>& G);

// L/L0 with L0 ⊆ L ⊆ R^n given by generator columns; carries a Smith basis
// and a coordinate map so class equality is decidable.
template <class E>
class Subquotient {
 public:
  using T = typename E::T;
  Subquotient() = default;
  Subquotient(const E& e, size_t n, const Mat<E>& Lgens, const Mat<E>& L0gens);

  size_t ambient() const { return n_; }
  size_t ngens() const { return ord_.size(); }
  const std::vector<T>& orders() const { return ord_; }
  const Mat<E>& gens() const { return gens_; }
  std::vector<T> gen(size_t i) const { return col_of(gens_, i); }
  bool contains(const std::vector<T>& x) const;
  std::vector<T> coords(const std::vector<T>& x) const;  // throws NotInSubmodule
  bool is_zero_class(const std::vector<T>& x) const;
  bool same_class(const std::vector<T>& x, const std::vector<T>& y) const;
  // free rank and elementary divisors (as abelian group orders)
  size_t free_rank() const;
  std::vector<Int> torsion() const;
  const E& arith() const { return e_; }

 private:
  std::vector<T> zcoords(const std::vector<T>& x) const;
  E e_;
  size_t n_ = 0;
  size_t rk_ = 0;
  Mat<E> P_;                 // from SNF of L generators
  std::vector<T> dL_;        // pivots of L
  Mat<E> P2_;                // rows of second SNF kept
  std::vector<T> ord_;       // orders of kept generators (0 = free)
  Mat<E> gens_;              // ambient generators
};

template <class E>
Subquotient<E> homology(const E& e, const Mat<E>& d_out, const Mat<E>& d_in, size_t n);

// Matrix of the map S1 -> S2 induced by an ambient matrix F (columns are
// coordinates of images of S1's generators).
template <class E>
Mat<E> induced_map(const E& e, const Subquotient<E>& S1, const Subquotient<E>& S2, const Mat<E>& F);

template <class E>
bool is_surjective(const E& e, const Subquotient<E>& S2, const Mat<E>& M);

template <class E>
bool same_invariants(const Subquotient<E>& a, const Subquotient<E>& b) {
  return a.free_rank() == b.free_rank() && a.torsion() == b.torsion();
}

// Lower-triangular Hermite basis of the full-rank lattice spanned by the
// columns of G: positive diagonal, 0 <= B(i,j) < B(i,i) for j < i.
ZMat hnf_basis(const ZMat& G);
// X with L X = Y for lower-triangular L; NotDivisible if X is not integral.
ZMat solve_lower(const ZMat& L, const ZMat& Y);

// Normal form of a finite list of cyclic orders (0 = Z) as invariant factors.
std::vector<Int> invariant_factors(const std::vector<Int>& cyclic_orders, size_t* free_rank);

extern template struct SNF<ZArith>;
extern template struct SNF<ZpnArith>;
extern template SNF<ZArith> smith(const ZArith&, const Mat<ZArith>&, bool, bool);
extern template SNF<ZpnArith> smith(const ZpnArith&, const Mat<ZpnArith>&, bool, bool);
extern template Mat<ZArith> kernel(const ZArith&, const Mat<ZArith>&);
extern template Mat<ZpnArith> kernel(const ZpnArith&, const Mat<ZpnArith>&);
extern template Mat<ZArith> preimage(const ZArith&, const Mat<ZArith>&, const Mat<ZArith>&);
extern template Mat<ZpnArith> preimage(const ZpnArith&, const Mat<ZpnArith>&, const Mat<ZpnArith>&);
extern template class Subquotient<ZArith>;
extern template class Subquotient<ZpnArith>;
extern template Subquotient<ZArith> homology(const ZArith&, const Mat<ZArith>&, const Mat<ZArith>&, size_t);
extern template Subquotient<ZpnArith> homology(const ZpnArith&, const Mat<ZpnArith>&, const Mat<ZpnArith>&, size_t);
extern template Mat<ZArith> induced_map(const ZArith&, const Subquotient<ZArith>&, const Subquotient<ZArith>&, const Mat<ZArith>&);
extern template Mat<ZpnArith> induced_map(const ZpnArith&, const Subquotient<ZpnArith>&, const Subquotient<ZpnArith>&, const Mat<ZpnArith>&);
extern template bool is_surjective(const ZArith&, const Subquotient<ZArith>&, const Mat<ZArith>&);
extern template bool is_surjective(const ZpnArith&, const Subquotient<ZpnArith>&, const Mat<ZpnArith>&);

}  // namespace ipw
