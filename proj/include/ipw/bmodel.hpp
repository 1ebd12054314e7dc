#pragma once
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ipw/complex.hpp"
#include "ipw/linalg.hpp"
#include "ipw/poly.hpp"

namespace ipw {

// Bockstein model of the F-V-procomplex of the torus over the depth-0
// summand B_s = Z[q]/xi~_s (mod p^N, or exact when N = 0). A piece is fixed
// by a level s and an integral U-weight c in Z^d; its degree-n term is
// H^n(K([c_1]_q..[c_d]_q) / xi~_s) and the differential is the Bockstein.
//
// Elements are cocycle representatives: C(d,n) blocks (subsets in lex order)
// of p^s - 1 coefficients of a polynomial in q reduced mod xi~_s.
using Vec = std::vector<Int>;

Poly xi_tilde_q(long p, int s);  // 1 + q + ... + q^{p^s - 1}
long v_p(long x, long p);        // valuation, large sentinel for 0

struct LevelPiece {
  int s = 0;
  std::vector<long> c;
  size_t block = 0;  // p^s - 1
  BocksteinComplex bc;
  bool zero_ring() const { return block == 0; }
};

class BModel {
 public:
  BModel(long p, int d, int N);

  long p() const { return p_; }
  int d() const { return d_; }
  int N() const { return N_; }

  const LevelPiece& piece(int s, const std::vector<long>& c);
  size_t len(int s, int n) const;  // representative length
  const Subquotient<ZArith>& H(int s, const std::vector<long>& c, int n);
  AbelianInvariants invariants(int s, const std::vector<long>& c, int n);

  Vec zero(int s, int n) const { return Vec(len(s, n), Int(0)); }
  Vec scalar(int s, const Poly& x) const;  // x e_emptyset at any weight
  Vec basis(int s, int n, size_t subset, const Poly& x) const;
  Vec reduce(int s, const Poly* blocks, size_t nblocks) const;
  Vec reduce_vec(int s, const Vec& x) const;
  Vec add(const Vec& a, const Vec& b, int s) const;
  Vec scale(const Vec& a, const Int& k, int s) const;
  Vec mul_poly(int s, const Poly& f, const Vec& x) const;  // coefficientwise

  Vec d(int s, const std::vector<long>& c, int n, const Vec& x);
  Vec F(int s, int n, const Vec& x) const;  // level s -> s-1
  Vec V(int s, int n, const Vec& x) const;  // level s -> s+1
  // level s, weight c -> p components (coefficient of w^j, w^p = q) at level
  // s-1, weight c/p; all zero unless p divides c.
  std::vector<Vec> R(int s, const std::vector<long>& c, int n, const Vec& x) const;
  // (x at weight c1, degree n1) * (y at weight c2, degree n2)
  Vec mul(int s, int n1, const Vec& x, const std::vector<long>& c2, int n2, const Vec& y) const;
  // product of w-component vectors at level s (depth-1 coefficients)
  std::vector<Vec> mul_w(int s, int n1, const std::vector<Vec>& x, const std::vector<long>& c2, int n2,
                         const std::vector<Vec>& y) const;

  bool same_class(int s, const std::vector<long>& c, int n, const Vec& x, const Vec& y);
  bool is_zero_class(int s, const std::vector<long>& c, int n, const Vec& x);

  Poly to_poly(const Vec& x, int s, size_t blk) const;

 private:
  Poly red(const Poly& a, int s) const;
  long p_;
  int d_;
  int N_;
  Int M_;
  std::vector<std::vector<std::vector<int>>> subsets_;  // per degree
  std::map<std::pair<int, std::vector<long>>, std::unique_ptr<LevelPiece>> cache_;
};

std::string weight_str(const std::vector<long>& c);

}  // namespace ipw
