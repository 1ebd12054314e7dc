#pragma once
#include <string>

#include "json.hpp"

#include "ipw/complex.hpp"
#include "ipw/eta.hpp"
#include "ipw/ring.hpp"
#include "ipw/theta.hpp"
#include "ipw/witt.hpp"

namespace ipw {

// Insertion-ordered JSON keeps serialized certificates in a fixed layout.
using Json = nlohmann::ordered_json;

// Malformed input raises SchemaMismatch; file problems raise IOError.
Json ring_to_json(const Ring& R);
Ring ring_from_json(const Json& j);
Json elem_to_json(const Ring& R, const Elem& x);
Elem elem_from_json(const Ring& R, const Json& j);

Json complex_to_json(const FreeComplex& C);
FreeComplex complex_from_json(const Json& j);

Json eta_to_json(const EtaResult& E);
Json witt_to_json(const WittVector& w);
WittVector witt_from_json(const Json& j);
Json ainf_to_json(const AinfTruncation& A);
AinfTruncation ainf_from_json(const Json& j);

Json invariants_to_json(const AbelianInvariants& H);

void write_json_file(const std::string& path, const Json& j);
Json read_json_file(const std::string& path);

void export_complex(const FreeComplex& C, const std::string& path);
FreeComplex import_complex(const std::string& path);

}  // namespace ipw
