#pragma once
#include <random>
#include <string>
#include <vector>

#include "ipw/cert.hpp"
#include "ipw/complex.hpp"
#include "ipw/io.hpp"
#include "ipw/qtorus.hpp"

namespace ipw {

inline constexpr const char* kToolVersion = "1.0.0";

const std::vector<std::string>& suite_names();

// Negative fields mean "use the suite default"; resolve_spec fills them in
// and range-checks everything (ParameterOutOfRange, UnknownSuite).
struct SuiteSpec {
  std::string suite;
  long p = 2;
  int depth = -1;      // default r + 2
  int r = 1;
  int dim = 1;
  long window = -1;    // numerator bound, default 4
  int precision = -1;  // default r + 3
  long long seed = -1;
  int samples = -1;
};

SuiteSpec resolve_spec(const SuiteSpec& s);

// The weight window a suite runs on: numerators |n| <= window over p^e, with
// e = depth (q-torus suites), r (de Rham-Witt suites) or depth - r (junk).
Window suite_window(const SuiteSpec& resolved);

std::vector<Check> run_checks(const SuiteSpec& resolved);
Json certificate(const SuiteSpec& resolved, const std::vector<Check>& checks);
Json run_suite(const SuiteSpec& spec);  // resolves, runs, assembles

// Certificate of a run at higher precision and/or on a larger window, cut
// down to `target`: checks for weights outside the target window dropped,
// finite cyclic orders reduced to at most p^N, params replaced.
Json restrict_certificate(const Json& cert, const SuiteSpec& target);

std::string dump_certificate(const Json& cert);  // canonical text, trailing newline

// Seeded integer cochain complex in degrees 0..len-1, ranks <= max_rank and
// entries bounded by `bound`.
FreeComplex random_integer_complex(std::mt19937_64& rng, int len, int max_rank, long bound);

}  // namespace ipw
