#pragma once
#include <string>
#include <vector>

#include "ipw/linalg.hpp"
#include "ipw/ring.hpp"

namespace ipw {

struct AbelianInvariants {
  size_t free_rank = 0;
  std::vector<Int> torsion;  // elementary divisors > 1, each dividing the next
  bool operator==(const AbelianInvariants& o) const { return free_rank == o.free_rank && torsion == o.torsion; }
  bool operator!=(const AbelianInvariants& o) const { return !(*this == o); }
  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  std::string str() const;  // "0", "Z^2 + Z/2 + Z/4"
};

AbelianInvariants invariants_of(const Subquotient<ZArith>& S);
// normal form of a direct sum of cyclic groups (0 = Z)
AbelianInvariants invariants_from_cyclic(const std::vector<Int>& orders);

// Cochain complex of finite free modules in degrees lo .. lo+ranks.size()-1.
// d[i] maps degree lo+i to lo+i+1.
struct FreeComplex {
  Ring ring;
  int lo = 0;
  std::vector<size_t> ranks;
  std::vector<RMat> d;

  int hi() const { return lo + static_cast<int>(ranks.size()) - 1; }
  size_t rank(int deg) const;
  RMat diff(int deg) const;  // zero matrix of the right shape outside the range
  void validate() const;     // ShapeMismatch / NotAComplex
  bool operator==(const FreeComplex& o) const {
    return ring == o.ring && lo == o.lo && ranks == o.ranks && d == o.d;
  }
};

FreeComplex make_complex(const Ring& R, int lo, std::vector<size_t> ranks, std::vector<RMat> d);
FreeComplex shift(const FreeComplex& C, int s);  // C[s]: degree i of C sits in degree i - s
FreeComplex pad(const FreeComplex& C, int lo, int hi);
FreeComplex base_change(const FreeComplex& C, const RingHom& h);

struct ChainMap {
  FreeComplex src, dst;
  std::vector<RMat> f;  // per degree of the common range
};
ChainMap make_chain_map(const FreeComplex& src, const FreeComplex& dst, std::vector<RMat> f);
ChainMap identity_map(const FreeComplex& C);

// Subsets of {0..d-1} of size k in lexicographic order.
std::vector<std::vector<int>> lex_subsets(int d, int k);

// Koszul complex of commuting endomorphisms of R^m. Adding j to I carries the
// sign (-1)^{#{i in I : i < j}}.
FreeComplex koszul(const Ring& R, size_t m, const std::vector<RMat>& ops);
FreeComplex koszul(const Ring& R, const std::vector<Elem>& g);

// Total complex; basis in degree n ordered by C-degree descending, then
// (c, d) with c major. d(c x d) = dc x d + (-1)^|c| c x dd.
FreeComplex tensor_total(const FreeComplex& C, const FreeComplex& D);

// Componentwise a (x) b between the tensor_total complexes.
std::vector<RMat> tensor_maps(const Ring& R, const FreeComplex& C1, const FreeComplex& D1, const FreeComplex& C2,
                              const FreeComplex& D2, const std::vector<RMat>& a, const std::vector<RMat>& b);

// Complex of finitely presented groups Z^{g_i} / diag(orders_i) (order 0 is
// a free summand) with differentials in generator coordinates.
struct ModuleComplex {
  int lo = 0;
  std::vector<std::vector<Int>> orders;
  std::vector<ZMat> d;
  int hi() const { return lo + static_cast<int>(orders.size()) - 1; }
  size_t gens(int deg) const;
  Subquotient<ZArith> cohomology_sq(int deg) const;
  AbelianInvariants cohomology(int deg) const;
  bool d_squared_zero() const;
};

// Lattice presentation: Integers/Cyclotomic as Z^n, IntegersMod and finite
// quotients with the obvious relations. UnsupportedRing otherwise.
ModuleComplex as_module_complex(const FreeComplex& C);
std::vector<Int> ring_lattice_orders(const Ring& R, size_t rank);

AbelianInvariants cohomology(const FreeComplex& C, int deg);

struct DegreeRecord {
  int degree = 0;
  std::string lhs, rhs;
  bool match = false;
};

struct QICert {
  std::vector<DegreeRecord> per_degree;
  bool pass = false;
};

// F[i] maps generators of A in degree A.lo+i to generator coordinates of B.
// Pass iff every induced map on cohomology is an isomorphism (surjective
// between groups with equal invariants).
QICert compare_module_complexes(const ModuleComplex& A, const ModuleComplex& B, const std::vector<ZMat>& F);
QICert certify_quasi_iso(const ChainMap& phi);

// Bockstein complex of C for a non-zero-divisor f: degree-i term H^i(C/f),
// differential the connecting map of 0 -> C/f -> C/f^2 -> C/f -> 0.
// Over the integers f is an integer. Over a depth polynomial model f must be
// monic; the computation runs modulo p^N, or exactly over Z[v]/f when N = 0.
struct BocksteinComplex {
  ModuleComplex mc;
  std::vector<Subquotient<ZArith>> H;  // H^i(C/f) inside the lattice of C^i/f
  size_t block = 1;                    // lattice rank of one copy of R/f
};
BocksteinComplex bockstein_complex(const FreeComplex& C, const Elem& f, int N = 0);

}  // namespace ipw
