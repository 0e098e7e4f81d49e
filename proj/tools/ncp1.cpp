// ncp1 command-line tool: duals, truncated symmetric algebras, Z-algebra
// operations, the Witt harness, base change and isomorphism search.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "ncp1/cli/commands.hpp"

namespace {

using ncp1::cli::CommandResult;
using ncp1::cli::json;

struct Output {
  std::string out_path;
  bool no_timing = false;
  bool tsv = false;
};

int emit(CommandResult r, double seconds, const Output& o) {
  r.report.seconds = seconds;
  const std::string doc = r.report.dump(!o.no_timing);
  if (o.out_path.empty()) {
    std::cout << doc;
  } else {
    std::ofstream f(o.out_path);
    f << doc;
  }
  if (o.tsv) std::cerr << r.text;
  return r.exit_code;
}

std::vector<ncp1::witt::WittPair> pair_catalog(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw ncp1::ValidationError("--pair expects a,b");
  const long a = std::stol(s.substr(0, comma)), b = std::stol(s.substr(comma + 1));
  if (a == 0 || b == 0) throw ncp1::ValidationError("pair entries must be nonzero");
  return {{a, b}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with bimodule duals, truncated noncommutative symmetric algebras and quaternion "
               "algebras over Q"};
  app.require_subcommand(1);
  Output o;
  app.add_option("-o,--out", o.out_path, "write the JSON report here instead of stdout");
  app.add_flag("--no-timing", o.no_timing, "omit timing from the report");
  app.add_flag("--tsv", o.tsv, "print tables as TSV on stderr");

  std::string spec, spec_b, dump_path, catalog_path, pair;
  int level = 1;
  ncp1::cli::SymalgOptions sym;
  ncp1::cli::ZopsOptions zo;
  int shift_s = 0, period_s = 0;
  bool def_catalog = false, check_duals = false;
  unsigned jobs = 1;
  std::optional<std::size_t> flip;
  std::string d_arg = "-1";

  auto* dual = app.add_subcommand("dual", "iterated dual N^{i*}");
  dual->add_option("spec", spec, "bimodule JSON file, inline JSON, quaternion:a,b or free:n")->required();
  dual->add_option("-i,--level", level, "dual level (negative for left duals)");

  auto* symalg = app.add_subcommand("symalg", "truncated noncommutative symmetric algebra");
  symalg->add_option("spec", spec, "bimodule")->required();
  symalg->add_option("--window", sym.width, "window width");
  symalg->add_option("--lo", sym.lo, "first index of the window");
  symalg->add_flag("--dump", sym.dump, "include the full Z-algebra document");
  symalg->add_flag("--check-shift-dual", sym.check_shift_dual, "compare Sym(N)(1) with Sym(N*)");

  auto* zops = app.add_subcommand("zops", "operations on a dumped Z-algebra");
  zops->add_option("dump", dump_path, "Z-algebra JSON (a symalg --dump report also works)")->required();
  auto* sh = zops->add_option("--shift", shift_s, "shift by s");
  zops->add_flag("--veronese2", zo.veronese2, "2-Veronese");
  auto* pe = zops->add_option("--periodicity", period_s, "search for an isomorphism with the shift by s");

  auto* wittc = app.add_subcommand("witt", "Witt correspondence harness");
  wittc->add_flag("--default", def_catalog, "use the default catalog");
  wittc->add_option("--catalog", catalog_path, "catalog file with one 'a b' pair per line");
  wittc->add_option("--pair", pair, "single pair a,b");
  wittc->add_option("--jobs", jobs, "worker threads");
  wittc->add_option("--flip-symbol", flip, "fault injection: flip one local symbol of the given record");

  auto* bc = app.add_subcommand("basechange", "base change to k(sqrt d) and Morita reduction");
  bc->add_option("spec", spec, "bimodule")->required();
  bc->add_option("--d", d_arg, "nonsquare d");
  bc->add_flag("--check-duals", check_duals, "check compatibility of base change with duals");

  auto* iso = app.add_subcommand("iso", "isomorphism with twists");
  iso->add_option("a", spec, "first bimodule")->required();
  iso->add_option("b", spec_b, "second bimodule")->required();

  auto* self = app.add_subcommand("selftest", "quick end-to-end checks");

  CLI11_PARSE(app, argc, argv);

  ncp1::io::Stopwatch clock;
  try {
    if (*dual) return emit(ncp1::cli::cmd_dual(ncp1::cli::spec_document(spec), level), clock.seconds(), o);
    if (*symalg) return emit(ncp1::cli::cmd_symalg(ncp1::cli::spec_document(spec), sym), clock.seconds(), o);
    if (*zops) {
      json doc = json::parse(ncp1::cli::read_file(dump_path));
      if (doc.contains("outputs")) doc = doc.at("outputs").at("zalgebra");
      if (*sh) zo.shift = shift_s;
      if (*pe) zo.periodicity = period_s;
      return emit(ncp1::cli::cmd_zops(doc, zo), clock.seconds(), o);
    }
    if (*wittc) {
      ncp1::cli::WittOptions w;
      const int sources = (def_catalog ? 1 : 0) + (catalog_path.empty() ? 0 : 1) + (pair.empty() ? 0 : 1);
      if (sources != 1) throw ncp1::DomainError("choose exactly one of --default, --catalog, --pair");
      if (def_catalog) w.catalog = ncp1::witt::default_catalog();
      if (!catalog_path.empty()) {
        w.catalog = ncp1::cli::parse_catalog(ncp1::cli::read_file(catalog_path));
        w.catalog_name = catalog_path;
      }
      if (!pair.empty()) {
        w.catalog = pair_catalog(pair);
        w.catalog_name = "pair";
      }
      w.jobs = jobs;
      w.flip_symbol = flip;
      return emit(ncp1::cli::cmd_witt(w), clock.seconds(), o);
    }
    if (*bc) {
      mpq_class d;
      if (d.set_str(d_arg, 10) != 0) throw ncp1::ValidationError("--d must be a rational");
      d.canonicalize();
      return emit(ncp1::cli::cmd_basechange(ncp1::cli::spec_document(spec), d, check_duals), clock.seconds(), o);
    }
    if (*iso)
      return emit(ncp1::cli::cmd_iso(ncp1::cli::spec_document(spec), ncp1::cli::spec_document(spec_b)),
                  clock.seconds(), o);
    if (*self) {
      int failures = 0;
      auto check = [&](const char* name, bool ok) {
        std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
        failures += ok ? 0 : 1;
      };
      ncp1::cli::SymalgOptions s4;
      s4.width = 4;
      const auto k2 = ncp1::cli::cmd_symalg(ncp1::cli::spec_document("free:2"), s4);
      check("free:2 width 4 row 1,2,3,4",
            k2.report.outputs["hilbert"]["entries"][0] == json::array({1, 2, 3, 4}));
      ncp1::cli::SymalgOptions s3;
      s3.width = 3;
      const auto qd = ncp1::cli::cmd_symalg(ncp1::cli::spec_document("quaternion:-1,-1"), s3);
      check("quaternion:-1,-1 A01 = 4, A02 = 12", qd.report.outputs["hilbert"]["entries"][0] == json::array({4, 4, 12}));
      const auto wi = ncp1::cli::cmd_witt({{{-1, -1}, {1, 1}, {2, -1}}, "selftest", 1, std::nullopt});
      check("witt harness on three pairs", wi.exit_code == 0);
      const auto is = ncp1::cli::cmd_iso(ncp1::cli::spec_document("quaternion:-1,-1"),
                                         ncp1::cli::spec_document("quaternion:-1,-4"));
      check("(-1,-1) ~ (-1,-4) with verified triple", is.report.outputs["verified"] == true);
      return failures == 0 ? 0 : ncp1::cli::kHarnessFailure;
    }
  } catch (const ncp1::ResourceGuard& e) {
    std::cerr << "resource guard: " << e.what() << " (offending dimension " << e.offending() << ")\n";
    return ncp1::cli::kResourceGuard;
  } catch (const ncp1::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ncp1::cli::kValidation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed document: " << e.what() << "\n";
    return ncp1::cli::kValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ncp1::cli::kValidation;
  }
  return 0;
}
