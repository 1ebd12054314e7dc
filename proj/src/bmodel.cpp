#include "ipw/bmodel.hpp"

#include <algorithm>
#include <sstream>

#include "ipw/errors.hpp"
#include "ipw/ring.hpp"

namespace ipw {

Poly xi_tilde_q(long p, int s) {
  Poly f(static_cast<size_t>(lpow(p, s) - 1) + 1, Int(1));
  if (s == 0) return pconst(1);
  return f;
}

long v_p(long x, long p) {
  if (x == 0) return 1L << 40;
  long v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

std::string weight_str(const std::vector<long>& c) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ")";
  return os.str();
}

BModel::BModel(long p, int d, int N) : p_(p), d_(d), N_(N) {
  require(p >= 2 && d >= 0 && N >= 0, "InvalidArgument", "B-model needs p prime, d >= 0, N >= 0");
  M_ = N >= 1 ? ipow(Int(p), N) : Int(0);
  for (int n = 0; n <= d; ++n) subsets_.push_back(lex_subsets(d, n));
}

size_t BModel::len(int s, int n) const {
  if (n < 0 || n > d_) return 0;
  return subsets_[n].size() * static_cast<size_t>(lpow(p_, s) - 1);
}

Poly BModel::red(const Poly& a, int s) const {
  if (s == 0) return {};
  Poly r = pmod_monic(a, xi_tilde_q(p_, s));
  return N_ >= 1 ? preduce_mod(r, M_) : r;
}

Poly BModel::to_poly(const Vec& x, int s, size_t blk) const {
  size_t b = static_cast<size_t>(lpow(p_, s) - 1);
  Poly f(x.begin() + blk * b, x.begin() + (blk + 1) * b);
  trim(f);
  return f;
}

Vec BModel::reduce(int s, const Poly* blocks, size_t nblocks) const {
  size_t b = static_cast<size_t>(lpow(p_, s) - 1);
  Vec out(nblocks * b, Int(0));
  for (size_t i = 0; i < nblocks; ++i) {
    Poly r = red(blocks[i], s);
    for (size_t t = 0; t < r.size(); ++t) out[i * b + t] = r[t];
  }
  return out;
}

Vec BModel::reduce_vec(int s, const Vec& x) const {
  size_t b = static_cast<size_t>(lpow(p_, s) - 1);
  if (b == 0) return {};
  std::vector<Poly> bl;
  for (size_t i = 0; i < x.size() / b; ++i) bl.push_back(to_poly(x, s, i));
  return reduce(s, bl.data(), bl.size());
}

Vec BModel::scalar(int s, const Poly& x) const { return basis(s, 0, 0, x); }

Vec BModel::basis(int s, int n, size_t subset, const Poly& x) const {
  std::vector<Poly> bl(subsets_[n].size());
  bl[subset] = x;
  return reduce(s, bl.data(), bl.size());
}

Vec BModel::add(const Vec& a, const Vec& b, int s) const {
  require(a.size() == b.size(), "ShapeMismatch", "B-model add");
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return reduce_vec(s, r);
}

Vec BModel::scale(const Vec& a, const Int& k, int s) const {
  Vec r = a;
  for (auto& x : r) x *= k;
  return reduce_vec(s, r);
}

Vec BModel::mul_poly(int s, const Poly& f, const Vec& x) const {
  size_t b = static_cast<size_t>(lpow(p_, s) - 1);
  if (b == 0) return {};
  std::vector<Poly> bl;
  for (size_t i = 0; i < x.size() / b; ++i) bl.push_back(pmul(f, to_poly(x, s, i)));
  return reduce(s, bl.data(), bl.size());
}

const LevelPiece& BModel::piece(int s, const std::vector<long>& c) {
  require(static_cast<int>(c.size()) == d_, "ShapeMismatch", "weight has the wrong dimension");
  require(s >= 0, "InvalidArgument", "level must be >= 0");
  auto key = std::make_pair(s, c);
  auto it = cache_.find(key);
  if (it != cache_.end()) return *it->second;
  auto P = std::make_unique<LevelPiece>();
  P->s = s;
  P->c = c;
  P->block = static_cast<size_t>(lpow(p_, s) - 1);
  ZArith z;
  if (s == 0) {
    P->bc.mc.lo = 0;
    for (int n = 0; n <= d_; ++n) {
      P->bc.H.emplace_back(z, 0, ZMat(0, 0), ZMat(0, 0));
      P->bc.mc.orders.push_back({});
      if (n < d_) P->bc.mc.d.emplace_back(0, 0);
    }
    P->bc.block = 0;
  } else {
    Ring R = Ring::depth_poly(p_, 0);
    std::vector<Elem> g;
    for (long ci : c) {
      if (ci >= 0) {
        g.push_back(R.poly(*pdiv_exact(xn_minus_1(ci), xn_minus_1(1))));
      } else {
        Poly qi = *pdiv_exact(xn_minus_1(-ci), xn_minus_1(1));
        g.push_back(R.frac(pneg(qi), monomial(1, -ci)));
      }
    }
    P->bc = bockstein_complex(koszul(R, g), R.poly(xi_tilde_q(p_, s)), N_);
  }
  return *cache_.emplace(key, std::move(P)).first->second;
}

const Subquotient<ZArith>& BModel::H(int s, const std::vector<long>& c, int n) {
  require(n >= 0 && n <= d_, "InvalidArgument", "degree out of range");
  return piece(s, c).bc.H[n];
}

AbelianInvariants BModel::invariants(int s, const std::vector<long>& c, int n) {
  if (n < 0 || n > d_) return {};
  return invariants_of(H(s, c, n));
}

Vec BModel::d(int s, const std::vector<long>& c, int n, const Vec& x) {
  if (n >= d_ || s == 0) return zero(s, n + 1);
  const LevelPiece& P = piece(s, c);
  const auto& S = P.bc.H[n];
  const auto& T = P.bc.H[n + 1];
  auto co = S.coords(x);
  const ZMat& D = P.bc.mc.d[n];
  Vec y(T.ambient(), Int(0));
  for (size_t r = 0; r < D.rows; ++r) {
    Int a = 0;
    for (size_t j = 0; j < D.cols; ++j) a += D(r, j) * co[j];
    if (a == 0) continue;
    auto g = T.gen(r);
    for (size_t t = 0; t < y.size(); ++t) y[t] += a * g[t];
  }
  return reduce_vec(s, y);
}

Vec BModel::F(int s, int n, const Vec& x) const {
  require(s >= 1, "InvalidArgument", "F needs level >= 1");
  size_t b = static_cast<size_t>(lpow(p_, s) - 1);
  std::vector<Poly> bl;
  for (size_t i = 0; i < x.size() / b; ++i) bl.push_back(to_poly(x, s, i));
  (void)n;
  return reduce(s - 1, bl.data(), bl.size());
}

Vec BModel::V(int s, int n, const Vec& x) const {
  Poly f;
  for (long i = 0; i < p_; ++i) f = padd(f, monomial(1, i * lpow(p_, s)));
  size_t nb = subsets_[n].size();
  if (s == 0) return zero(s + 1, n);
  std::vector<Poly> bl;
  for (size_t i = 0; i < nb; ++i) bl.push_back(pmul(f, to_poly(x, s, i)));
  return reduce(s + 1, bl.data(), bl.size());
}

std::vector<Vec> BModel::R(int s, const std::vector<long>& c, int n, const Vec& x) const {
  require(s >= 1, "InvalidArgument", "R needs level >= 1");
  std::vector<Vec> out(p_, zero(s - 1, n));
  bool divisible = std::all_of(c.begin(), c.end(), [&](long ci) { return ci % p_ == 0; });
  if (!divisible || s == 1) return out;
  size_t nb = subsets_[n].size();
  for (long j = 0; j < p_; ++j) {
    std::vector<Poly> bl;
    for (size_t i = 0; i < nb; ++i) {
      Poly X = to_poly(x, s, i), Y;
      for (size_t e = static_cast<size_t>(j); e < X.size(); e += p_) {
        if (Y.size() <= e / p_) Y.resize(e / p_ + 1);
        Y[e / p_] = X[e];
      }
      trim(Y);
      bl.push_back(Y);
    }
    out[j] = reduce(s - 1, bl.data(), bl.size());
  }
  return out;
}

Vec BModel::mul(int s, int n1, const Vec& x, const std::vector<long>& c2, int n2, const Vec& y) const {
  int n = n1 + n2;
  if (n > d_ || s == 0) return zero(s, n > d_ ? d_ + 1 : n);
  const auto& S1 = subsets_[n1];
  const auto& S2 = subsets_[n2];
  std::map<std::vector<int>, size_t> idx;
  for (size_t i = 0; i < subsets_[n].size(); ++i) idx[subsets_[n][i]] = i;
  std::vector<Poly> out(subsets_[n].size());
  long per = lpow(p_, s);  // q^{p^s} = 1 mod xi~_s
  for (size_t a = 0; a < S1.size(); ++a) {
    Poly X = to_poly(x, s, a);
    if (X.empty()) continue;
    const auto& I = S1[a];
    long tw = 0;
    for (int i : I) tw += c2[i];
    tw = ((tw % per) + per) % per;
    for (size_t b = 0; b < S2.size(); ++b) {
      const auto& J = S2[b];
      bool disjoint = true;
      int inv = 0;
      for (int i : I)
        for (int j : J) {
          if (i == j) disjoint = false;
          if (i > j) ++inv;
        }
      if (!disjoint) continue;
      Poly Y = to_poly(y, s, b);
      if (Y.empty()) continue;
      std::vector<int> U = I;
      U.insert(U.end(), J.begin(), J.end());
      std::sort(U.begin(), U.end());
      Poly t = pmul(pmul(X, Y), monomial(inv % 2 ? -1 : 1, tw));
      out[idx[U]] = padd(out[idx[U]], t);
    }
  }
  return reduce(s, out.data(), out.size());
}

std::vector<Vec> BModel::mul_w(int s, int n1, const std::vector<Vec>& x, const std::vector<long>& c2, int n2,
                               const std::vector<Vec>& y) const {
  int n = n1 + n2;
  std::vector<Vec> out(p_, zero(s, n));
  for (long i = 0; i < p_; ++i)
    for (long j = 0; j < p_; ++j) {
      Vec t = mul(s, n1, x[i], c2, n2, y[j]);
      long k = i + j;
      if (k >= p_) {
        t = mul_poly(s, monomial(1, 1), t);
        k -= p_;
      }
      out[k] = add(out[k], t, s);
    }
  return out;
}

bool BModel::same_class(int s, const std::vector<long>& c, int n, const Vec& x, const Vec& y) {
  if (n > d_ || s == 0) return true;
  return H(s, c, n).same_class(x, y);
}

bool BModel::is_zero_class(int s, const std::vector<long>& c, int n, const Vec& x) {
  if (n > d_ || s == 0) return true;
  return H(s, c, n).is_zero_class(x);
}

}  // namespace ipw
