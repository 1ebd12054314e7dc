#include "ipw/io.hpp"

#include <fstream>
#include <sstream>

#include "ipw/errors.hpp"

namespace ipw {

namespace {

[[noreturn]] void schema(const std::string& msg) { fail("SchemaMismatch", msg); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field '") + key + "'");
  return j.at(key);
}

long get_long(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) schema(std::string("field '") + key + "' must be an integer");
  return v.get<long>();
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (!j.is_string()) schema("integers are decimal strings");
  Int x;
  if (x.set_str(j.get<std::string>(), 10) != 0) schema("bad integer '" + j.get<std::string>() + "'");
  return x;
}

Json poly_to_json(const Poly& a) {
  Json arr = Json::array();
  for (const auto& c : a) arr.push_back(c.get_str());
  return arr;
}

Poly poly_from_json(const Json& j) {
  if (!j.is_array()) schema("coefficient list must be an array");
  Poly a;
  for (const auto& c : j) a.push_back(int_from_json(c));
  trim(a);
  return a;
}

const char* variant_name(RingKind k) {
  switch (k) {
    case RingKind::Integers: return "Integers";
    case RingKind::IntegersMod: return "IntegersMod";
    case RingKind::Cyclotomic: return "CyclotomicIntegers";
    case RingKind::DepthPoly: return "DepthPolynomial";
    case RingKind::FDQ: return "FiniteDepthQuotient";
    case RingKind::Laurent: return "Laurent";
  }
  return "?";
}

}  // namespace

Json ring_to_json(const Ring& R) {
  Json j;
  j["variant"] = variant_name(R.kind);
  switch (R.kind) {
    case RingKind::Integers:
      break;
    case RingKind::IntegersMod:
      j["modulus"] = R.m.get_str();
      break;
    case RingKind::Cyclotomic:
    case RingKind::DepthPoly:
      j["p"] = R.p;
      j["k"] = R.k;
      break;
    case RingKind::FDQ:
      j["p"] = R.p;
      j["k"] = R.k;
      j["N"] = R.N;
      j["modulus"] = poly_to_json(R.g);
      break;
    case RingKind::Laurent:
      j["base"] = ring_to_json(*R.base);
      j["d"] = R.d;
      j["e"] = R.e;
      break;
  }
  return j;
}

Ring ring_from_json(const Json& j) {
  const Json& v = field(j, "variant");
  if (!v.is_string()) schema("variant must be a string");
  std::string s = v.get<std::string>();
  if (s == "Integers") return Ring::integers();
  if (s == "IntegersMod") return Ring::mod(int_from_json(field(j, "modulus")));
  if (s == "CyclotomicIntegers") return Ring::cyclotomic(get_long(j, "p"), static_cast<int>(get_long(j, "k")));
  if (s == "DepthPolynomial") return Ring::depth_poly(get_long(j, "p"), static_cast<int>(get_long(j, "k")));
  if (s == "FiniteDepthQuotient")
    return Ring::fdq(get_long(j, "p"), static_cast<int>(get_long(j, "k")), static_cast<int>(get_long(j, "N")),
                     poly_from_json(field(j, "modulus")));
  if (s == "Laurent")
    return Ring::laurent(ring_from_json(field(j, "base")), static_cast<int>(get_long(j, "d")),
                         static_cast<int>(get_long(j, "e")));
  schema("unknown ring variant '" + s + "'");
}

Json elem_to_json(const Ring& R, const Elem& x0) {
  Elem x = R.canonicalize(x0);
  if (R.kind == RingKind::Laurent) {
    Json terms = Json::array();
    for (size_t i = 0; i < x.exps.size(); ++i) terms.push_back({{"exp", x.exps[i]}, {"coeff", elem_to_json(*R.base, x.coeffs[i])}});
    return terms;
  }
  if (!x.den.empty()) return Json{{"num", poly_to_json(x.num)}, {"den", poly_to_json(x.den)}};
  return poly_to_json(x.num);
}

Elem elem_from_json(const Ring& R, const Json& j) {
  if (R.kind == RingKind::Laurent) {
    if (!j.is_array()) schema("Laurent element must be a term list");
    Elem r = R.zero();
    for (const auto& t : j) {
      const Json& e = field(t, "exp");
      if (!e.is_array() || e.size() != static_cast<size_t>(R.d)) schema("Laurent exponent has the wrong length");
      std::vector<long> ex;
      for (const auto& c : e) {
        if (!c.is_number_integer()) schema("Laurent exponents are integers");
        ex.push_back(c.get<long>());
      }
      r = R.add(r, R.monomial_T(ex, elem_from_json(*R.base, field(t, "coeff"))));
    }
    return r;
  }
  if (j.is_object()) {
    if (R.kind != RingKind::DepthPoly) schema("fractions only exist in depth polynomial rings");
    return R.frac(poly_from_json(field(j, "num")), poly_from_json(field(j, "den")));
  }
  Elem x;
  x.num = poly_from_json(j);
  return R.canonicalize(x);
}

Json complex_to_json(const FreeComplex& C) {
  Json j;
  j["ring"] = ring_to_json(C.ring);
  j["degrees"] = {C.lo, C.hi()};
  j["ranks"] = C.ranks;
  Json ds = Json::array();
  for (const auto& M : C.d) {
    Json rows = Json::array();
    for (size_t i = 0; i < M.rows; ++i) {
      Json row = Json::array();
      for (size_t k = 0; k < M.cols; ++k) row.push_back(elem_to_json(C.ring, M(i, k)));
      rows.push_back(row);
    }
    ds.push_back(rows);
  }
  j["differentials"] = ds;
  return j;
}

FreeComplex complex_from_json(const Json& j) {
  Ring R = ring_from_json(field(j, "ring"));
  const Json& deg = field(j, "degrees");
  if (!deg.is_array() || deg.size() != 2 || !deg[0].is_number_integer() || !deg[1].is_number_integer())
    schema("degrees must be [a, b]");
  int lo = deg[0].get<int>(), hi = deg[1].get<int>();
  if (hi < lo) schema("empty degree range");
  const Json& rk = field(j, "ranks");
  if (!rk.is_array() || rk.size() != static_cast<size_t>(hi - lo + 1)) schema("one rank per degree expected");
  std::vector<size_t> ranks;
  for (const auto& r : rk) {
    if (!r.is_number_unsigned()) schema("ranks are non-negative integers");
    ranks.push_back(r.get<size_t>());
  }
  const Json& ds = field(j, "differentials");
  if (!ds.is_array() || ds.size() != ranks.size() - 1) schema("one differential per pair of adjacent degrees expected");
  std::vector<RMat> d;
  for (size_t i = 0; i < ds.size(); ++i) {
    const Json& rows = ds[i];
    size_t nr = ranks[i + 1], nc = ranks[i];
    if (!rows.is_array() || rows.size() != nr) schema("differential " + std::to_string(i) + ": wrong row count");
    RMat M(R, nr, nc);
    for (size_t a = 0; a < nr; ++a) {
      if (!rows[a].is_array() || rows[a].size() != nc) schema("differential " + std::to_string(i) + ": wrong column count");
      for (size_t b = 0; b < nc; ++b) M(a, b) = elem_from_json(R, rows[a][b]);
    }
    d.push_back(M);
  }
  return make_complex(R, lo, ranks, d);
}

Json eta_to_json(const EtaResult& E) {
  Json j = complex_to_json(E.complex);
  j["kind"] = eta_kind_name(E.kind);
  j["f"] = elem_to_json(E.complex.ring, E.f);
  return j;
}

Json witt_to_json(const WittVector& w) {
  Json comps = Json::array();
  for (const auto& c : w.c) comps.push_back(elem_to_json(w.ring, c));
  return Json{{"p", w.p}, {"r", w.r()}, {"ring", ring_to_json(w.ring)}, {"components", comps}};
}

WittVector witt_from_json(const Json& j) {
  long p = get_long(j, "p");
  long r = get_long(j, "r");
  Ring R = j.contains("ring") ? ring_from_json(j.at("ring")) : Ring::integers();
  const Json& cs = field(j, "components");
  if (!cs.is_array() || static_cast<long>(cs.size()) != r) schema("component count differs from r");
  std::vector<Elem> c;
  for (const auto& x : cs) c.push_back(elem_from_json(R, x));
  return witt_make(p, R, c);
}

Json ainf_to_json(const AinfTruncation& A) { return Json{{"p", A.p}, {"k", A.k}}; }

AinfTruncation ainf_from_json(const Json& j) {
  return AinfTruncation(get_long(j, "p"), static_cast<int>(get_long(j, "k")));
}

Json invariants_to_json(const AbelianInvariants& H) {
  Json t = Json::array();
  for (const auto& x : H.torsion) t.push_back(x.get_str());
  return Json{{"free_rank", H.free_rank}, {"torsion", t}};
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("IOError", "cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
  if (!out) fail("IOError", "write to '" + path + "' failed");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("IOError", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    fail("SchemaMismatch", std::string("not valid JSON: ") + e.what());
  }
}

void export_complex(const FreeComplex& C, const std::string& path) { write_json_file(path, complex_to_json(C)); }

FreeComplex import_complex(const std::string& path) {
  Json j = read_json_file(path);
  try {
    return complex_from_json(j);
  } catch (const Error& e) {
    if (e.code() == "ShapeMismatch" || e.code() == "NotAComplex") fail("SchemaMismatch", e.what());
    throw;
  } catch (const nlohmann::json::exception& e) {
    fail("SchemaMismatch", e.what());
  }
}

}  // namespace ipw
