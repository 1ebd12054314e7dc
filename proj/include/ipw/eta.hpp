#pragma once
#include <optional>
#include <string>
#include <vector>

#include "ipw/complex.hpp"

namespace ipw {

enum class EtaKind { ClosedForm, Generic, Acyclic };
const char* eta_kind_name(EtaKind k);

// eta_f C presented in its own free basis. incl[i] has the images of the basis
// in C^i as columns (they lie in f^i C^i), so incl is a chain map into C.
// For acyclic results the complex is zero and `homotopy` holds H^i: C^i ->
// C^{i-1} with dH + Hd = f on C.
struct EtaResult {
  EtaKind kind = EtaKind::Generic;
  Elem f;
  FreeComplex complex;
  std::vector<RMat> incl;
  std::vector<RMat> homotopy;
};

// Lattice algorithm over the integers. Basis of (eta_f C)^i: f^i times the
// Hermite basis of {y in C^i : dy in f C^{i+1}}. Asserts the cohomology
// formula H(eta_f C) = H(C)/H(C)[f].
EtaResult eta_generic(const FreeComplex& C, const Int& f);

// H/H[f] computed from invariants.
AbelianInvariants kill_f_torsion(const AbelianInvariants& H, const Int& f);

// Closed form for Koszul complexes K_R(g_1..g_m), optionally twisted by a
// complex M over the integers (result computed for M (x) K(g)).
EtaResult eta_koszul(const Ring& R, const Elem& f, const std::vector<Elem>& g,
                     const FreeComplex* twist = nullptr);

// dH + Hd = f in every degree.
bool homotopy_ok(const FreeComplex& C, const std::vector<RMat>& H, const Elem& f);

struct EtaCheck {
  bool pass = true;
  std::vector<DegreeRecord> per_degree;
  std::string note;
};

// eta_{fg} C versus eta_f(eta_g C): cohomology and lattice equality in C.
EtaCheck eta_compose_check(const FreeComplex& C, const Int& f, const Int& g);

// (eta_f C)/f -> Bockstein complex of C, certified quasi-isomorphism.
QICert bockstein_comparison(const FreeComplex& C, const Elem& f, int N = 0);
QICert bockstein_comparison(const EtaResult& E, const FreeComplex& C, int N = 0);

// Composites on H^i, n <= i <= m, of f^m tau C -> tau eta_f C -> f^n tau C:
// both are multiplication by f^(m-n). Requires H^n(C)[f] = 0.
EtaCheck truncation_maps_check(const FreeComplex& C, const Int& f, int n, int m);

// eta_f C (x) eta_f D -> eta_f(C (x) D) over the integers.
ChainMap lax_monoidal_map(const FreeComplex& C, const FreeComplex& D, const Int& f);

}  // namespace ipw
