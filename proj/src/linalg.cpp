#include "ipw/linalg.hpp"

namespace ipw {

ZpnArith::ZpnArith(int64_t p_, int N_) : p(p_), N(N_), M(1) {
  require(p_ >= 2 && N_ >= 1, "InvalidArgument", "Z/p^N needs p >= 2, N >= 1");
  for (int i = 0; i < N_; ++i) {
    require(M < (int64_t(1) << 40) / p_, "InvalidArgument", "p^N too large for int64 engine");
    M *= p_;
  }
}

ZpnArith::T ZpnArith::from_int(const Int& x) const {
  Int r;
  Int m(static_cast<long>(M));
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r.get_si();
}

ZpnArith::T ZpnArith::inverse(T a) const {
  int64_t r0 = M, r1 = norm(a);
  int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    int64_t q = r0 / r1;
    int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  require(r0 == 1, "NotInvertible", "element not a unit mod p^N");
  return norm(s0);
}

ZpnArith::T ZpnArith::quo(const T& b, const T& a) const {
  if (b == 0) return 0;
  int va = val(a), vb = val(b);
  int64_t ua = a, ub = b;
  for (int i = 0; i < va; ++i) ua /= p;
  for (int i = 0; i < vb; ++i) ub /= p;
  T q = mul(ub, inverse(ua));
  for (int i = va; i < vb; ++i) q = mul(q, p);
  return q;
}

ZpnArith::T ZpnArith::normalizer(const T& a) const {
  if (a == 0) return 1;
  int64_t u = a;
  while (u % p == 0) u /= p;
  return inverse(u);
}

ZpnArith::T ZpnArith::ann(const T& d) const {
  if (d == 0) return 1;
  int e = val(d);
  T r = 1;
  for (int i = e; i < N; ++i) r = mul(r, p);
  return r;
}

namespace {

template <class E>
struct Reducer {
  using T = typename E::T;
  const E& e;
  Mat<E>& A;
  Mat<E>* P;
  Mat<E>* Pinv;
  Mat<E>* Q;

  void row_swap(size_t i, size_t j) {
    if (i == j) return;
    for (size_t c = 0; c < A.cols; ++c) std::swap(A(i, c), A(j, c));
    if (P)
      for (size_t c = 0; c < P->cols; ++c) std::swap((*P)(i, c), (*P)(j, c));
    if (Pinv)
      for (size_t r = 0; r < Pinv->rows; ++r) std::swap((*Pinv)(r, i), (*Pinv)(r, j));
  }
  void col_swap(size_t i, size_t j) {
    if (i == j) return;
    for (size_t r = 0; r < A.rows; ++r) std::swap(A(r, i), A(r, j));
    if (Q)
      for (size_t r = 0; r < Q->rows; ++r) std::swap((*Q)(r, i), (*Q)(r, j));
  }
  // row_i += c * row_t
  void row_addmul(size_t i, size_t t, const T& c) {
    for (size_t k = 0; k < A.cols; ++k)
      if (!e.is_zero(A(t, k))) A(i, k) = e.add(A(i, k), e.mul(c, A(t, k)));
    if (P)
      for (size_t k = 0; k < P->cols; ++k)
        if (!e.is_zero((*P)(t, k))) (*P)(i, k) = e.add((*P)(i, k), e.mul(c, (*P)(t, k)));
    if (Pinv)
      for (size_t r = 0; r < Pinv->rows; ++r)
        if (!e.is_zero((*Pinv)(r, i))) (*Pinv)(r, t) = e.sub((*Pinv)(r, t), e.mul(c, (*Pinv)(r, i)));
  }
  void col_addmul(size_t j, size_t t, const T& c) {
    for (size_t r = 0; r < A.rows; ++r)
      if (!e.is_zero(A(r, t))) A(r, j) = e.add(A(r, j), e.mul(c, A(r, t)));
    if (Q)
      for (size_t r = 0; r < Q->rows; ++r)
        if (!e.is_zero((*Q)(r, t))) (*Q)(r, j) = e.add((*Q)(r, j), e.mul(c, (*Q)(r, t)));
  }
  // [row_t; row_i] <- [[s, t2], [u, w]] [row_t; row_i], determinant 1
  void row_transform(size_t t, size_t i, const T& s, const T& t2, const T& u, const T& w) {
    auto mix = [&](T& x, T& y) {
      T nx = e.add(e.mul(s, x), e.mul(t2, y));
      T ny = e.add(e.mul(u, x), e.mul(w, y));
      x = nx;
      y = ny;
    };
    for (size_t k = 0; k < A.cols; ++k) mix(A(t, k), A(i, k));
    if (P)
      for (size_t k = 0; k < P->cols; ++k) mix((*P)(t, k), (*P)(i, k));
    if (Pinv)
      for (size_t r = 0; r < Pinv->rows; ++r) {
        T& x = (*Pinv)(r, t);
        T& y = (*Pinv)(r, i);
        T nx = e.sub(e.mul(w, x), e.mul(u, y));
        T ny = e.sub(e.mul(s, y), e.mul(t2, x));
        x = nx;
        y = ny;
      }
  }
  void col_transform(size_t t, size_t j, const T& s, const T& t2, const T& u, const T& w) {
    auto mix = [&](T& x, T& y) {
      T nx = e.add(e.mul(s, x), e.mul(t2, y));
      T ny = e.add(e.mul(u, x), e.mul(w, y));
      x = nx;
      y = ny;
    };
    for (size_t r = 0; r < A.rows; ++r) mix(A(r, t), A(r, j));
    if (Q)
      for (size_t r = 0; r < Q->rows; ++r) mix((*Q)(r, t), (*Q)(r, j));
  }
  void row_scale(size_t t, const T& u) {
    for (size_t k = 0; k < A.cols; ++k) A(t, k) = e.mul(u, A(t, k));
    if (P)
      for (size_t k = 0; k < P->cols; ++k) (*P)(t, k) = e.mul(u, (*P)(t, k));
    if (Pinv) {
      T ui = e.unit_inverse(u);
      for (size_t r = 0; r < Pinv->rows; ++r) (*Pinv)(r, t) = e.mul(ui, (*Pinv)(r, t));
    }
  }
};

}  // namespace

template <class E>
SNF<E> smith(const E& e, const Mat<E>& A0, bool want_P, bool want_Q) {
  using T = typename E::T;
  SNF<E> out;
  Mat<E> A = A0;
  if (want_P) {
    out.P = identity(e, A.rows);
    out.Pinv = identity(e, A.rows);
  }
  if (want_Q) out.Q = identity(e, A.cols);
  Reducer<E> R{e, A, want_P ? &out.P : nullptr, want_P ? &out.Pinv : nullptr, want_Q ? &out.Q : nullptr};
  size_t m = std::min(A.rows, A.cols);
  size_t t = 0;
  for (; t < m; ++t) {
    bool found = false;
    size_t pi = 0, pj = 0;
    for (size_t i = t; i < A.rows; ++i)
      for (size_t j = t; j < A.cols; ++j) {
        const T& x = A(i, j);
        if (e.is_zero(x)) continue;
        if (!found || e.better(x, A(pi, pj))) {
          found = true;
          pi = i;
          pj = j;
        }
      }
    if (!found) break;
    R.row_swap(t, pi);
    R.col_swap(t, pj);
    while (true) {
      bool dirty = false;
      for (size_t i = t + 1; i < A.rows; ++i) {
        if (e.is_zero(A(i, t))) continue;
        if (e.divides(A(t, t), A(i, t))) {
          R.row_addmul(i, t, e.neg(e.quo(A(i, t), A(t, t))));
        } else {
          T g, s, t2;
          e.xgcd(A(t, t), A(i, t), g, s, t2);
          T u = e.neg(e.quo(A(i, t), g));
          T w = e.quo(A(t, t), g);
          R.row_transform(t, i, s, t2, u, w);
        }
      }
      for (size_t j = t + 1; j < A.cols; ++j) {
        if (e.is_zero(A(t, j))) continue;
        if (e.divides(A(t, t), A(t, j))) {
          R.col_addmul(j, t, e.neg(e.quo(A(t, j), A(t, t))));
        } else {
          T g, s, t2;
          e.xgcd(A(t, t), A(t, j), g, s, t2);
          T u = e.neg(e.quo(A(t, j), g));
          T w = e.quo(A(t, t), g);
          R.col_transform(t, j, s, t2, u, w);
          dirty = true;
        }
      }
      if (dirty) continue;
      bool fixed = false;
      for (size_t i = t + 1; i < A.rows && !fixed; ++i)
        for (size_t j = t + 1; j < A.cols; ++j)
          if (!e.divides(A(t, t), A(i, j))) {
            R.row_addmul(t, i, e.one());
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    R.row_scale(t, e.normalizer(A(t, t)));
    out.d.push_back(A(t, t));
  }
  out.rank = t;
  return out;
}

template <class E>
Mat<E> kernel(const E& e, const Mat<E>& A) {
  SNF<E> s = smith(e, A, false, true);
  std::vector<std::vector<typename E::T>> cols;
  for (size_t j = 0; j < A.cols; ++j) {
    typename E::T c = j < s.rank ? e.ann(s.d[j]) : e.one();
    if (e.is_zero(c)) continue;
    std::vector<typename E::T> v(A.cols);
    for (size_t i = 0; i < A.cols; ++i) v[i] = e.mul(c, s.Q(i, j));
    cols.push_back(std::move(v));
  }
  Mat<E> K(A.cols, cols.size(), e.zero());
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i < A.cols; ++i) K(i, j) = cols[j][i];
  return K;
}

template <class E>
Mat<E> preimage(const E& e, const Mat<E>& A, const Mat<E>& G) {
  require(A.rows == G.rows || G.cols == 0, "ShapeMismatch", "preimage");
  Mat<E> AG = hcat(e, A, G);
  if (G.cols == 0) AG = A;
  Mat<E> K = kernel(e, AG);
  Mat<E> out(A.cols, K.cols, e.zero());
  for (size_t i = 0; i < A.cols; ++i)
    for (size_t j = 0; j < K.cols; ++j) out(i, j) = K(i, j);
  return out;
}

template <class E>
Subquotient<E>::Subquotient(const E& e, size_t n, const Mat<E>& L, const Mat<E>& L0) : e_(e), n_(n) {
  require(L.rows == n || L.cols == 0, "ShapeMismatch", "subquotient L");
  require(L0.rows == n || L0.cols == 0, "ShapeMismatch", "subquotient L0");
  Mat<E> Lg = L;
  if (Lg.rows != n) Lg = Mat<E>(n, 0, e.zero());
  SNF<E> s = smith(e, Lg, true, false);
  rk_ = s.rank;
  P_ = s.P;
  dL_ = s.d;
  size_t ncols = L0.cols;
  std::vector<std::vector<T>> relcols;
  for (size_t j = 0; j < ncols; ++j) relcols.push_back(zcoords(col_of(L0, j)));
  for (size_t j = 0; j < rk_; ++j) {
    T a = e.ann(dL_[j]);
    if (e.is_zero(a)) continue;
    std::vector<T> v(rk_, e.zero());
    v[j] = a;
    relcols.push_back(v);
  }
  Mat<E> Rm(rk_, relcols.size(), e.zero());
  for (size_t j = 0; j < relcols.size(); ++j)
    for (size_t i = 0; i < rk_; ++i) Rm(i, j) = relcols[j][i];
  SNF<E> s2 = smith(e, Rm, true, false);
  std::vector<size_t> kept;
  for (size_t i = 0; i < rk_; ++i) {
    if (i < s2.rank) {
      if (e.is_unit(s2.d[i])) continue;
      ord_.push_back(s2.d[i]);
    } else {
      ord_.push_back(e.zero());
    }
    kept.push_back(i);
  }
  P2_ = Mat<E>(kept.size(), rk_, e.zero());
  for (size_t a = 0; a < kept.size(); ++a)
    for (size_t j = 0; j < rk_; ++j) P2_(a, j) = s2.P(kept[a], j);
  gens_ = Mat<E>(n, kept.size(), e.zero());
  for (size_t a = 0; a < kept.size(); ++a) {
    for (size_t j = 0; j < rk_; ++j) {
      T zj = s2.Pinv(j, kept[a]);
      if (e.is_zero(zj)) continue;
      T c = e.mul(zj, dL_[j]);
      for (size_t i = 0; i < n; ++i) gens_(i, a) = e.add(gens_(i, a), e.mul(c, s.Pinv(i, j)));
    }
  }
}

template <class E>
std::vector<typename E::T> Subquotient<E>::zcoords(const std::vector<T>& x) const {
  require(x.size() == n_, "ShapeMismatch", "subquotient coords");
  std::vector<T> y = matvec(e_, P_, x);
  std::vector<T> z(rk_);
  for (size_t j = 0; j < n_; ++j) {
    if (j < rk_) {
      require(e_.divides(dL_[j], y[j]), "NotInSubmodule", "vector outside the submodule");
      z[j] = e_.quo(y[j], dL_[j]);
    } else {
      require(e_.is_zero(y[j]), "NotInSubmodule", "vector outside the submodule");
    }
  }
  return z;
}

template <class E>
bool Subquotient<E>::contains(const std::vector<T>& x) const {
  std::vector<T> y = matvec(e_, P_, x);
  for (size_t j = 0; j < n_; ++j) {
    if (j < rk_) {
      if (!e_.divides(dL_[j], y[j])) return false;
    } else if (!e_.is_zero(y[j])) {
      return false;
    }
  }
  return true;
}

template <class E>
std::vector<typename E::T> Subquotient<E>::coords(const std::vector<T>& x) const {
  std::vector<T> z = zcoords(x);
  std::vector<T> c = matvec(e_, P2_, z);
  for (size_t i = 0; i < c.size(); ++i) c[i] = e_.reduce(c[i], ord_[i]);
  return c;
}

template <class E>
bool Subquotient<E>::is_zero_class(const std::vector<T>& x) const {
  for (const auto& c : coords(x))
    if (!e_.is_zero(c)) return false;
  return true;
}

template <class E>
bool Subquotient<E>::same_class(const std::vector<T>& x, const std::vector<T>& y) const {
  std::vector<T> d(x.size());
  for (size_t i = 0; i < x.size(); ++i) d[i] = e_.sub(x[i], y[i]);
  return is_zero_class(d);
}

template <class E>
size_t Subquotient<E>::free_rank() const {
  size_t r = 0;
  for (const auto& o : ord_)
    if (e_.is_zero(o)) ++r;
  return r;
}

template <class E>
std::vector<Int> Subquotient<E>::torsion() const {
  std::vector<Int> t;
  for (const auto& o : ord_)
    if (!e_.is_zero(o)) t.push_back(e_.cyclic_order(o));
  return t;
}

template <class E>
Subquotient<E> homology(const E& e, const Mat<E>& d_out, const Mat<E>& d_in, size_t n) {
  Mat<E> K = d_out.rows == 0 ? identity(e, n) : kernel(e, d_out);
  Mat<E> B = d_in.cols == 0 ? Mat<E>(n, 0, e.zero()) : d_in;
  return Subquotient<E>(e, n, K, B);
}

template <class E>
Mat<E> induced_map(const E& e, const Subquotient<E>& S1, const Subquotient<E>& S2, const Mat<E>& F) {
  Mat<E> M(S2.ngens(), S1.ngens(), e.zero());
  for (size_t j = 0; j < S1.ngens(); ++j) {
    auto y = matvec(e, F, S1.gen(j));
    auto c = S2.coords(y);
    for (size_t i = 0; i < c.size(); ++i) M(i, j) = c[i];
  }
  return M;
}

template <class E>
bool is_surjective(const E& e, const Subquotient<E>& S2, const Mat<E>& M) {
  size_t k = S2.ngens();
  if (k == 0) return true;
  Mat<E> D(k, k, e.zero());
  for (size_t i = 0; i < k; ++i) D(i, i) = S2.orders()[i];
  Mat<E> A = M.cols ? hcat(e, M, D) : D;
  SNF<E> s = smith(e, A, false, false);
  if (s.rank != k) return false;
  for (const auto& d : s.d)
    if (!e.is_unit(d)) return false;
  return true;
}

std::vector<Int> invariant_factors(const std::vector<Int>& cyc, size_t* free_rank) {
  ZArith z;
  ZMat D(cyc.size(), cyc.size(), Int(0));
  for (size_t i = 0; i < cyc.size(); ++i) D(i, i) = cyc[i];
  SNF<ZArith> s = smith(z, D, false, false);
  std::vector<Int> t;
  for (const auto& d : s.d)
    if (d != 1) t.push_back(d);
  if (free_rank) *free_rank = cyc.size() - s.rank;
  return t;
}

ZMat hnf_basis(const ZMat& G) {
  size_t n = G.rows;
  ZMat A = G;
  ZArith z;
  Reducer<ZArith> R{z, A, nullptr, nullptr, nullptr};
  for (size_t i = 0; i < n; ++i) {
    require(i < A.cols, "NotFullRank", "lattice is not of full rank");
    while (true) {
      size_t piv = A.cols;
      for (size_t j = i; j < A.cols; ++j)
        if (A(i, j) != 0 && (piv == A.cols || z.better(A(i, j), A(i, piv)))) piv = j;
      require(piv < A.cols, "NotFullRank", "lattice is not of full rank");
      R.col_swap(i, piv);
      bool clean = true;
      for (size_t j = i + 1; j < A.cols; ++j) {
        if (A(i, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), A(i, j).get_mpz_t(), A(i, i).get_mpz_t());
        R.col_addmul(j, i, -q);
        if (A(i, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (A(i, i) < 0)
      for (size_t r = 0; r < n; ++r) A(r, i) = -A(r, i);
    for (size_t j = 0; j < i; ++j) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), A(i, j).get_mpz_t(), A(i, i).get_mpz_t());
      if (q != 0) R.col_addmul(j, i, -q);
    }
  }
  ZMat B(n, n, Int(0));
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < n; ++c) B(r, c) = A(r, c);
  return B;
}

ZMat solve_lower(const ZMat& L, const ZMat& Y) {
  size_t n = L.rows;
  require(L.cols == n && Y.rows == n, "ShapeMismatch", "triangular solve");
  ZMat X(n, Y.cols, Int(0));
  for (size_t c = 0; c < Y.cols; ++c)
    for (size_t i = 0; i < n; ++i) {
      Int s = Y(i, c);
      for (size_t j = 0; j < i; ++j) s -= L(i, j) * X(j, c);
      require(mpz_divisible_p(s.get_mpz_t(), L(i, i).get_mpz_t()) != 0, "NotDivisible", "triangular solve not integral");
      mpz_divexact(X(i, c).get_mpz_t(), s.get_mpz_t(), L(i, i).get_mpz_t());
    }
  return X;
}

template struct SNF<ZArith>;
template struct SNF<ZpnArith>;
template SNF<ZArith> smith(const ZArith&, const Mat<ZArith>&, bool, bool);
template SNF<ZpnArith> smith(const ZpnArith&, const Mat<ZpnArith>&, bool, bool);
template Mat<ZArith> kernel(const ZArith&, const Mat<ZArith>&);
template Mat<ZpnArith> kernel(const ZpnArith&, const Mat<ZpnArith>&);
template Mat<ZArith> preimage(const ZArith&, const Mat<ZArith>&, const Mat<ZArith>&);
template Mat<ZpnArith> preimage(const ZpnArith&, const Mat<ZpnArith>&, const Mat<ZpnArith>&);
template class Subquotient<ZArith>;
template class Subquotient<ZpnArith>;
template Subquotient<ZArith> homology(const ZArith&, const Mat<ZArith>&, const Mat<ZArith>&, size_t);
template Subquotient<ZpnArith> homology(const ZpnArith&, const Mat<ZpnArith>&, const Mat<ZpnArith>&, size_t);
template Mat<ZArith> induced_map(const ZArith&, const Subquotient<ZArith>&, const Subquotient<ZArith>&, const Mat<ZArith>&);
template Mat<ZpnArith> induced_map(const ZpnArith&, const Subquotient<ZpnArith>&, const Subquotient<ZpnArith>&, const Mat<ZpnArith>&);
template bool is_surjective(const ZArith&, const Subquotient<ZArith>&, const Mat<ZArith>&);
template bool is_surjective(const ZpnArith&, const Subquotient<ZpnArith>&, const Mat<ZpnArith>&);

}  // namespace ipw
