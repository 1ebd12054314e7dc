// One line per acceptance criterion; exit status 0 iff all of them pass.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ipw/errors.hpp"
#include "ipw/suites.hpp"

using namespace ipw;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

SuiteSpec spec(const std::string& suite, long p, int depth, int r, int dim, long window, int N = -1) {
  SuiteSpec s;
  s.suite = suite;
  s.p = p;
  s.depth = depth;
  s.r = r;
  s.dim = dim;
  s.window = window;
  s.precision = N;
  return s;
}

std::string label(const SuiteSpec& s) {
  std::ostringstream os;
  os << s.suite << "(p=" << s.p << ",k=" << s.depth << ",r=" << s.r << ",d=" << s.dim << ",B=" << s.window
     << ",N=" << s.precision << ")";
  return os.str();
}

// Runs every spec; fails on the first failing check of any run.
Outcome run_all(const std::vector<SuiteSpec>& specs, std::vector<Json>* certs = nullptr) {
  Outcome o;
  size_t checks = 0;
  for (const auto& sp : specs) {
    Json c;
    try {
      c = run_suite(sp);
    } catch (const Error& e) {
      o.pass = false;
      o.note = label(sp) + " raised " + e.what();
      return o;
    }
    checks += c["checks"].size();
    if (!c["pass"].get<bool>()) {
      o.pass = false;
      for (const auto& ch : c["checks"])
        if (!ch["pass"].get<bool>()) {
          o.note = label(sp) + ": " + ch["id"].get<std::string>() + " expected " + ch["expected"].get<std::string>() +
                   ", observed " + ch["observed"].get<std::string>();
          break;
        }
      return o;
    }
    if (certs) certs->push_back(c);
  }
  o.note = std::to_string(specs.size()) + " runs, " + std::to_string(checks) + " checks";
  return o;
}

const Json* find_check(const Json& cert, const std::string& prefix) {
  for (const auto& c : cert["checks"])
    if (c["id"].get<std::string>().rfind(prefix, 0) == 0) return &c;
  return nullptr;
}

std::vector<SuiteSpec> qdr_specs() {
  std::vector<SuiteSpec> v;
  for (long p : {2L, 3L})
    for (int d : {1, 2})
      for (int k : {1, 2}) {
        long P = 1;
        for (int i = 0; i < k; ++i) P *= p;
        v.push_back(spec("qdr-identification", p, k, 1, d, 2 * P));
      }
  return v;
}

std::vector<SuiteSpec> drw_specs(const std::string& suite) {
  std::vector<SuiteSpec> v;
  for (long p : {2L, 3L})
    for (int d : {1, 2})
      for (int r : {1, 2}) v.push_back(spec(suite, p, r + 2, r, d, 4, r + 3));
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit;
    std::function<Outcome()> run;
  };

  Json eta_cert;
  std::vector<Criterion> crits = {
      {1, "Witt identities", 10,
       [] {
         return run_all({spec("witt-identities", 2, 0, 4, 1, 0), spec("witt-identities", 3, 0, 4, 1, 0)});
       }},
      {2, "theta maps", 30,
       [] { return run_all({spec("theta-maps", 2, 3, 3, 1, 0), spec("theta-maps", 3, 3, 3, 1, 0)}); }},
      {3, "eta core", 60,
       [&] {
         std::vector<Json> c;
         Outcome o = run_all({spec("eta-core", 2, 0, 1, 1, 0)}, &c);
         if (!c.empty()) eta_cert = c[0];
         if (o.pass) {
           const Json* comp = find_check(eta_cert, "eta_fg = eta_f eta_g");
           o.pass = comp && (*comp)["observed"] == "500/500";
           if (!o.pass) o.note = "composition check did not cover 500 complexes";
         }
         return o;
       }},
      {4, "Bockstein comparison", 60,
       [&] {
         Outcome o;
         const Json* b = eta_cert.is_null() ? nullptr : find_check(eta_cert, "bockstein quasi-isomorphism");
         o.pass = b && (*b)["pass"].get<bool>() && (*b)["observed"] == "200/200";
         o.note = b ? "bockstein " + (*b)["observed"].get<std::string>() + " (same run as criterion 3)" : "no record";
         return o;
       }},
      {5, "q-de Rham identification", 120, [] { return run_all(qdr_specs()); }},
      {6, "Kunneth and Frobenius", 60,
       [] {
         std::vector<SuiteSpec> v;
         for (long p : {2L, 3L}) {
           for (int k : {1, 2}) {
             long P = k == 1 ? p : p * p;
             v.push_back(spec("kunneth", p, k, 1, 2, 2 * P));
             v.push_back(spec("kunneth", p, k, 1, 3, P));
             for (int d : {1, 2}) v.push_back(spec("frobenius", p, k, 1, d, 2 * P));
           }
         }
         return run_all(v);
       }},
      {7, "Langer-Zink comparison", 600, [] { return run_all(drw_specs("lz-lambda")); }},
      {8, "F-V-procomplex laws", 120,
       [] {
         std::vector<SuiteSpec> v;
         for (auto [p, r] : std::vector<std::pair<long, int>>{{2, 1}, {2, 2}, {3, 1}})
           for (int d : {1, 2}) v.push_back(spec("fv-laws", p, r + 2, r, d, 4, r + 3));
         return run_all(v);
       }},
      {9, "Cartier check", 120, [] { return run_all(drw_specs("cartier")); }},
      {10, "stability in precision and window", 900,
       [] {
         Outcome o;
         std::vector<SuiteSpec> base = qdr_specs();
         for (const auto& s : drw_specs("lz-lambda")) base.push_back(s);
         for (const auto& s : drw_specs("cartier")) base.push_back(s);
         for (auto s : base) {
           SuiteSpec r0 = resolve_spec(s);
           SuiteSpec big = r0;
           big.precision = r0.precision + 1;
           big.window = r0.window + 1;
           std::string a = dump_certificate(run_suite(r0));
           std::string b = dump_certificate(restrict_certificate(run_suite(big), r0));
           if (a != b) {
             o.pass = false;
             o.note = label(r0) + " differs after restriction";
             return o;
           }
         }
         o.note = std::to_string(base.size()) + " certificates identical after restriction";
         return o;
       }},
  };

  bool all = true;
  for (const auto& c : crits) {
    auto t = std::chrono::steady_clock::now();
    Outcome o = c.run();
    double s = seconds_since(t);
    bool in_time = s < c.limit;
    bool ok = o.pass && in_time;
    all = all && ok;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f s / %.0f s", s, c.limit);
    std::cout << "criterion " << c.id << " [" << c.title << "]: " << (ok ? "PASS" : "FAIL") << " (" << buf << "; "
              << o.note << (in_time ? "" : "; over the time limit") << ")" << std::endl;
  }
  return all ? 0 : 1;
}
