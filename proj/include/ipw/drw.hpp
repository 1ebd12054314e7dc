#pragma once
#include <string>
#include <vector>

#include "ipw/bmodel.hpp"
#include "ipw/cert.hpp"
#include "ipw/io.hpp"
#include "ipw/qtorus.hpp"

namespace ipw {

// Langer-Zink side. Weights a: {0..d-1} -> p^{-r} Z, stored as Weight; at
// level r the model weight (U-weight) of a is c = p^r a.

long val_of(const QRat& x, long p);    // v_p, large sentinel for 0
long val_of(const Weight& a, const std::vector<int>& I, long p);
int u_of(const Weight& a, long p);     // max(-v(a), 0)
std::vector<long> u_weight(const Weight& a, int r, long p);  // p^r a; NonIntegralExponent

// Indices sorted by (valuation, index), zero coordinates last.
std::vector<int> lz_order(const Weight& a, long p);

using Partition = std::vector<std::vector<int>>;  // I_0, ..., I_n
// Consecutive segments of lz_order: I_0 possibly empty, I_1..I_n nonempty.
std::vector<Partition> lz_partitions(const Weight& a, int n, long p);

struct LZModule {
  int u = 0;
  int length = 0;  // r - u(a); the module is zero when <= 0
  bool zero() const { return length <= 0; }
  std::string str() const;  // "V^1 W_1(A)"
};
LZModule lz_module(const Weight& a, int r, long p);

// e(x, a, I_0..I_n) with x in W_{r-u}(A) modeled by a polynomial in q modulo
// xi~_{r-u}.
struct LZSymbol {
  int r = 1;
  Weight a;
  Partition part;
  Poly coeff;
  int degree() const { return static_cast<int>(part.size()) - 1; }
};

Json lz_symbol_to_json(long p, const LZSymbol& s);  // coefficient through theta~
LZSymbol lz_symbol_from_json(long p, const Json& j);

// Element of H^n at level r, U-weight p^r a. WindowMiss if W is given and
// does not contain a.
Vec lz_eval(BModel& B, const LZSymbol& s, const Window* W = nullptr);
// Same element with every F^v d [T]^b rewritten as [T]^{b(p^v - 1)} d[T]^b.
Vec lz_eval_teichmuller(BModel& B, const LZSymbol& s);

// Teichmuller class lambda_s([T]^m) (U-weight p^s m) and dlog[T_i].
Vec teich(BModel& B, int s, const std::vector<long>& m);
Vec dlog_T(BModel& B, int s, int i);

struct ProcomplexLevel {
  int r = 0, n = 0;
  std::vector<Weight> weights;
  std::vector<AbelianInvariants> invariants;
};
// Depth k >= r + 1 and N >= r + 2 are enforced; see BModel for the reduction
// to the depth-0 summand.
std::vector<ProcomplexLevel> procomplex_build(BModel& B, int k, int r, const Window& W);

std::vector<Check> lambda_check(BModel& B, int r, int n, const Window& W);
std::vector<Check> fv_identities_check(BModel& B, int r, const Window& W);
std::vector<Check> cartier_check(BModel& B, int r, int n, const Window& W);
std::vector<Check> integral_part_check(BModel& B, int r, const Window& W);
// Map to the complex without decalage: injective, image in mu^n times it,
// and x^2 = 0 on degree-one classes.
std::vector<Check> improved_vs_pre_check(BModel& B, int r, const Window& W);

struct RankRow {
  Weight a;
  int n = 0;
  size_t partitions = 0;
  int u = 0;
  std::string predicted;
  std::string observed;
  bool match = false;
};
std::vector<RankRow> rank_table(BModel& B, int r, int n_max, const Window& W);
std::string rank_table_csv(long p, const std::vector<RankRow>& rows);

}  // namespace ipw
