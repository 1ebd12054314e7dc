#pragma once
#include <string>
#include <vector>

#include "ipw/cert.hpp"
#include "ipw/complex.hpp"
#include "ipw/eta.hpp"
#include "ipw/theta.hpp"

namespace ipw {

// One coordinate of a weight: num / p^den_exp, normalized so that p does not
// divide num unless den_exp == 0.
struct QRat {
  long num = 0;
  int den_exp = 0;
  bool operator==(const QRat& o) const { return num == o.num && den_exp == o.den_exp; }
  bool operator<(const QRat& o) const;
};
QRat qrat(long num, int den_exp, long p);

using Weight = std::vector<QRat>;
bool is_integral(const Weight& a);
int den_exp(const Weight& a);  // max over coordinates
std::string weight_str(const Weight& a, long p);  // "(1/2,-3)"
Weight scale_weight(const Weight& a, long p);  // p * a

// Box of numerators over a common denominator p^e.
struct Window {
  int e = 0;
  std::vector<long> lo, hi;
  size_t dim() const { return lo.size(); }
  bool contains(const Weight& a, long p) const;
};
Window cube_window(int d, int e, long lo, long hi);
std::vector<Weight> window_weights(const Window& W, long p);  // lex order of numerators

Elem q_integer(const AinfTruncation& A, long n);
Elem q_power(const AinfTruncation& A, const QRat& a);  // v^{p^k a}; DepthExceeded

// Elements of Ring::laurent(A.ring(), d, 0).
Elem q_derivative(const AinfTruncation& A, const Ring& L, const Elem& f, int i);  // dlog normalization
Elem gamma_shift(const AinfTruncation& A, const Ring& L, const Elem& f, int i);   // T_i -> q T_i

struct WeightedComplex {
  AinfTruncation A;
  int d = 0;
  Window window;
  std::vector<Weight> weights;
  std::vector<FreeComplex> pieces;
  std::vector<bool> integral;
};

FreeComplex torus_piece(const AinfTruncation& A, const Weight& a);  // K(q^{a_i} - 1)
FreeComplex qdr_piece(const AinfTruncation& A, const Weight& a);    // K([a_i]_q), a integral
WeightedComplex torus_koszul(const AinfTruncation& A, int d, const Window& W);
// integral weights only
WeightedComplex qdr_complex(const AinfTruncation& A, int d, const Window& W);

struct EtaTorus {
  std::vector<Weight> weights;
  std::vector<EtaResult> eta;
};
EtaTorus eta_mu_torus(const WeightedComplex& W);

// Per-weight records: ClosedForm equal to the q-de Rham piece, or Acyclic
// with a checked homotopy.
std::vector<Check> qdr_identification(const AinfTruncation& A, int d, const Window& W);

// v -> 1 on every q-de Rham piece against the classical K(a_1..a_d) over Z.
std::vector<Check> specialize_q1_check(const AinfTruncation& A, int d, const Window& W);
FreeComplex specialize_q1(const FreeComplex& Q);

// phi-linear chain map K([a]_q) -> K([pa]_q), x e_I -> xi~^n phi(x) e_I, and
// its factorization through eta_{xi~}. WindowOverflow if pa leaves W.
struct FrobeniusQdr {
  Weight a, pa;
  ChainMap map;          // phi applied to the source already
  EtaResult eta_target;  // eta_{xi~} K([pa]_q)
};
FrobeniusQdr frobenius_qdr(const AinfTruncation& A, const Window& W, const Weight& a);
std::vector<Check> frobenius_check(const AinfTruncation& A, int d, const Window& W);

// Q(d1) (x) Q(d2) against Q(d1 + d2) on the product window W (dim d1 + d2).
std::vector<Check> kunneth_check(const AinfTruncation& A, int d1, int d2, const Window& W);

// Cohomology of every nonintegral weight piece over Z[v]/(xi~_1, p^N) is
// killed by mu.
std::vector<Check> compcontcohom_check(const AinfTruncation& A, int d, const Window& W, int N);

// x_i r = gamma_i(r) x_i and the twisted Leibniz rule on random homogeneous
// Laurent elements (seeded).
std::vector<Check> qdga_check(const AinfTruncation& A, int d, int samples, unsigned long seed);

// Matrix of multiplication by h on Z[q]/g in the basis 1..q^{deg g - 1},
// entries reduced mod M when M != 0.
ZMat mult_matrix_mod(const Poly& h, const Poly& g, const Int& M);

// Koszul complex of the operators f * q^{-e} on Z[q]/g, or (Z/M)[q]/g when
// M != 0. g monic with g(0) = 1.
ModuleComplex koszul_mod_g(const std::vector<std::pair<Poly, long>>& ops, const Poly& g, const Int& M);

struct JunkTorsion {
  int degree = 0;
  AbelianInvariants eta_side;    // H^i(K([c]_q) over Z[q]/g) at precision N
  AbelianInvariants drw_side;    // coker(V^r on H^i) + ker(V^r on H^{i+1})
  AbelianInvariants quotient;    // coker(V^r on H^i) alone
  AbelianInvariants eta_exact;   // over Z
  AbelianInvariants quot_exact;  // over Z
  bool match = false;            // eta_side == drw_side and eta_exact == quot_exact
};
std::vector<JunkTorsion> junk_torsion(const AinfTruncation& A, int r, int s, const Weight& a, int N);

}  // namespace ipw
