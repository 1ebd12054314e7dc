#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "ipw/bmodel.hpp"
#include "ipw/drw.hpp"
#include "ipw/errors.hpp"
#include "ipw/io.hpp"
#include "ipw/qtorus.hpp"
#include "ipw/suites.hpp"

using namespace ipw;

namespace {

// 0 pass, 1 failed check, 2 usage, 3 unreadable or malformed data
constexpr int kPass = 0, kFail = 1, kUsage = 2, kData = 3;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) fail("IOError", "cannot write " + path);
  f << text;
}

int usage_or_data(const Error& e) {
  std::cerr << "ipw: " << e.what() << "\n";
  const std::string& c = e.code();
  if (c == "UnknownSuite" || c == "ParameterOutOfRange" || c == "InvalidArgument") return kUsage;
  if (c == "IOError" || c == "SchemaMismatch") return kData;
  return kFail;
}

std::vector<long> parse_longs(const std::string& s) {
  std::vector<long> v;
  std::stringstream ss(s);
  std::string t;
  while (std::getline(ss, t, ',')) v.push_back(std::stol(t));
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact checks for integral p-adic Hodge theory at finite level"};
  app.require_subcommand(1);

  SuiteSpec spec;
  std::string out;
  auto* verify = app.add_subcommand("verify", "run a verification suite and write its certificate");
  verify->add_option("--suite", spec.suite, "suite name")->required();
  verify->add_option("--p", spec.p, "prime");
  verify->add_option("--depth", spec.depth, "A_inf depth k (default r+2)");
  verify->add_option("--r", spec.r, "Witt length / de Rham-Witt level");
  verify->add_option("--dim", spec.dim, "torus dimension d");
  verify->add_option("--window", spec.window, "weight numerator bound");
  verify->add_option("--precision", spec.precision, "p-adic precision N (default r+3)");
  verify->add_option("--seed", spec.seed, "random seed (default fixed per suite)");
  verify->add_option("--samples", spec.samples, "random sample count");
  verify->add_option("--out", out, "certificate path (default stdout)");

  std::string kind;
  SuiteSpec tspec;
  tspec.suite = "lz-lambda";
  int nmax = -1;
  std::string tout;
  auto* table = app.add_subcommand("table", "print a CSV table");
  table->add_option("--kind", kind, "table kind (lz-ranks)")->required();
  table->add_option("--p", tspec.p, "prime");
  table->add_option("--depth", tspec.depth, "A_inf depth k (default r+2)");
  table->add_option("--r", tspec.r, "level");
  table->add_option("--dim", tspec.dim, "torus dimension d");
  table->add_option("--window", tspec.window, "weight numerator bound");
  table->add_option("--precision", tspec.precision, "p-adic precision N (default r+3)");
  table->add_option("--nmax", nmax, "largest degree (default d)");
  table->add_option("--out", tout, "CSV path (default stdout)");

  auto* cx = app.add_subcommand("complex", "export or import a complex as JSON");
  cx->require_subcommand(1);
  std::string efile, ifile, weight;
  long long eseed = 1;
  int elen = 3, erank = 3;
  long ep = 2;
  int ek = 1;
  auto* ex = cx->add_subcommand("export", "write a seeded random integer complex, or a q-de Rham piece");
  ex->add_option("file", efile, "output path")->required();
  ex->add_option("--seed", eseed, "seed for the random complex");
  ex->add_option("--len", elen, "number of terms (2..5)");
  ex->add_option("--max-rank", erank, "largest rank (1..6)");
  ex->add_option("--weight", weight, "integral weight a1,...,ad: export K([a]_q) instead");
  ex->add_option("--p", ep, "prime for --weight");
  ex->add_option("--depth", ek, "depth for --weight");
  auto* im = cx->add_subcommand("import", "read, validate and summarize a complex");
  im->add_option("file", ifile, "input path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*verify) {
      SuiteSpec s = resolve_spec(spec);
      Json cert = certificate(s, run_checks(s));
      std::string text = dump_certificate(cert);
      if (out.empty()) {
        std::cout << text;
      } else {
        write_text(out, text);
        size_t bad = 0;
        for (const auto& c : cert["checks"]) bad += !c["pass"].get<bool>();
        std::cout << s.suite << ": " << (cert["pass"].get<bool>() ? "pass" : "FAIL") << " (" << cert["checks"].size()
                  << " checks, " << bad << " failed)\n";
      }
      return cert["pass"].get<bool>() ? kPass : kFail;
    }
    if (*table) {
      if (kind != "lz-ranks") {
        std::cerr << "ipw: unknown table kind '" << kind << "'\n";
        return kUsage;
      }
      SuiteSpec s = resolve_spec(tspec);
      if (nmax < 0) nmax = s.dim;
      if (nmax > s.dim) fail("ParameterOutOfRange", "nmax must be <= dim");
      BModel B(s.p, s.dim, s.precision);
      Window W = suite_window(s);
      procomplex_build(B, s.depth, s.r, W);
      auto rows = rank_table(B, s.r, nmax, W);
      write_text(tout, rank_table_csv(s.p, rows));
      for (const auto& r : rows)
        if (!r.match) return kFail;
      return kPass;
    }
    if (*ex) {
      FreeComplex C;
      if (!weight.empty()) {
        if (ek < 0 || ek > 4) fail("ParameterOutOfRange", "depth must lie in 0..4");
        Weight a;
        for (long x : parse_longs(weight)) a.push_back(QRat{x, 0});
        C = qdr_piece(AinfTruncation(ep, ek), a);
      } else {
        if (elen < 2 || elen > 5 || erank < 1 || erank > 6) fail("ParameterOutOfRange", "len in 2..5, max-rank in 1..6");
        std::mt19937_64 rng(static_cast<unsigned long long>(eseed));
        C = random_integer_complex(rng, elen, erank, 9);
      }
      export_complex(C, efile);
      return kPass;
    }
    if (*im) {
      FreeComplex C = import_complex(ifile);
      Json j;
      j["ring"] = C.ring.name();
      j["degrees"] = {C.lo, C.hi()};
      j["ranks"] = C.ranks;
      if (C.ring.kind != RingKind::DepthPoly && C.ring.kind != RingKind::Laurent) {
        Json h = Json::array();
        for (int n = C.lo; n <= C.hi(); ++n) h.push_back(cohomology(C, n).str());
        j["cohomology"] = h;
      }
      std::cout << j.dump() << "\n";
      return kPass;
    }
  } catch (const Error& e) {
    return usage_or_data(e);
  } catch (const std::exception& e) {
    std::cerr << "ipw: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
