#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ncp1/basechange.hpp"
#include "ncp1/io/json.hpp"
#include "ncp1/io/report.hpp"
#include "ncp1/isomorphism.hpp"
#include "ncp1/symalg.hpp"
#include "ncp1/witt/harness.hpp"

namespace ncp1::cli {

using io::json;

enum ExitCode : int { kOk = 0, kValidation = 1, kResourceGuard = 2, kHarnessFailure = 3 };

struct CommandResult {
  int exit_code = kOk;
  io::RunReport report;
  std::string text;  // human-readable extra (TSV tables)
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A bimodule argument: inline JSON, the shortcuts "quaternion:a,b"
/// (regular bimodule of (a,b) over Q) and "free:n" (k^n over (Q,Q)), or a file.
inline json spec_document(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return json::parse(arg);
  if (arg.rfind("quaternion:", 0) == 0) {
    const std::string rest = arg.substr(11);
    const auto comma = rest.find(',');
    if (comma == std::string::npos) throw ValidationError("expected quaternion:a,b");
    return {{"named", "regular"},
            {"field", {{"kind", "rationals"}}},
            {"algebra", {{"name", "quaternion"}, {"a", rest.substr(0, comma)}, {"b", rest.substr(comma + 1)}}}};
  }
  if (arg.rfind("free:", 0) == 0)
    return {{"named", "free"}, {"field", {{"kind", "rationals"}}}, {"n", std::stoul(arg.substr(5))}};
  return json::parse(read_file(arg));
}

inline json places_json(const witt::RamificationSet& r) {
  json out = json::array();
  for (const auto& v : r.places) out.push_back(v.to_string());
  return out;
}

inline json point_json(const std::optional<witt::ProjectivePoint>& p) {
  if (!p) return nullptr;
  return json::array({(*p)[0].get_str(), (*p)[1].get_str(), (*p)[2].get_str()});
}

// ---------------------------------------------------------------------------

inline CommandResult cmd_dual(const json& spec, int i) {
  CommandResult r;
  r.report.command = "dual";
  r.report.inputs = {{"spec", spec}, {"i", i}};
  const Bimodule n = io::bimodule_from_json(spec);
  const Bimodule d = iterated_dual(n, i);
  r.report.outputs = {{"bimodule", io::bimodule_to_json(d)}, {"dimension_pair", dimension_pair(d).to_string()}};
  r.text = "dimension pair " + dimension_pair(d).to_string() + "\n";
  return r;
}

struct SymalgOptions {
  int lo = 0;
  int width = 4;
  bool dump = false;
  bool check_shift_dual = false;
};

inline CommandResult cmd_symalg(const json& spec, const SymalgOptions& opt) {
  CommandResult r;
  r.report.command = "symalg";
  r.report.inputs = {{"spec", spec}, {"lo", opt.lo}, {"width", opt.width}, {"check_shift_dual", opt.check_shift_dual}};
  if (opt.width < 1) throw DomainError("window width must be at least 1");
  const Bimodule n = io::bimodule_from_json(spec);
  const int hi = opt.lo + opt.width - 1;
  const SymConstruction s = sym_algebra(n, opt.lo, hi);
  const HilbertTable t = hilbert_table(s.algebra);
  const AxiomReport ax = check_axioms(s.algebra);
  json q = json::array();
  for (const auto& [i, sub] : s.unit_images) q.push_back({{"i", i}, {"dim", sub.dim()}});
  r.report.outputs = {{"hilbert", io::hilbert_to_json(t)}, {"axioms", io::axioms_to_json(ax)}, {"unit_images", q}};
  if (opt.dump) r.report.outputs["zalgebra"] = io::zalgebra_to_json(s.algebra);
  r.text = t.to_tsv();
  if (opt.check_shift_dual) {
    const ShiftDualReport sd = shift_dual_check(n, opt.lo, hi);
    r.report.outputs["shift_dual"] = {{"tables_equal", sd.tables_equal},
                                      {"shifted", io::hilbert_to_json(sd.shifted)},
                                      {"dual", io::hilbert_to_json(sd.dual)},
                                      {"witness", to_string(sd.witness.status)},
                                      {"witness_reason", sd.witness.reason}};
    if (!sd.tables_equal) r.exit_code = kHarnessFailure;
  }
  if (!ax.ok) r.exit_code = kHarnessFailure;
  return r;
}

struct ZopsOptions {
  std::optional<int> shift;
  bool veronese2 = false;
  std::optional<int> periodicity;
};

inline CommandResult cmd_zops(const json& dump, const ZopsOptions& opt) {
  CommandResult r;
  r.report.command = "zops";
  r.report.inputs = {{"zalgebra", dump}};
  const TruncatedZAlgebra z = io::zalgebra_from_json(dump);
  const int ops = (opt.shift ? 1 : 0) + (opt.veronese2 ? 1 : 0) + (opt.periodicity ? 1 : 0);
  if (ops != 1) throw DomainError("choose exactly one of --shift, --veronese2, --periodicity");
  if (opt.shift || opt.veronese2) {
    const TruncatedZAlgebra out = opt.shift ? shift(z, *opt.shift) : veronese2(z);
    r.report.inputs["op"] = opt.shift ? json{{"shift", *opt.shift}} : json("veronese2");
    const AxiomReport ax = check_axioms(out);
    r.report.outputs = {{"zalgebra", io::zalgebra_to_json(out)},
                        {"hilbert", io::hilbert_to_json(hilbert_table(out))},
                        {"axioms", io::axioms_to_json(ax)}};
    r.text = hilbert_table(out).to_tsv();
    if (!ax.ok) r.exit_code = kHarnessFailure;
    return r;
  }
  r.report.inputs["op"] = {{"periodicity", *opt.periodicity}};
  const ZIsomorphism w = periodicity_check(z, *opt.periodicity);
  r.report.outputs = {{"verdict", to_string(w.status)}, {"scope", "at truncation"}, {"reason", w.reason}};
  if (w.status == IsoStatus::Found) r.report.outputs["witness"] = io::zmaps_to_json(w.maps);
  r.text = std::string(to_string(w.status)) + " at truncation: " + w.reason + "\n";
  return r;
}

struct WittOptions {
  std::vector<witt::WittPair> catalog;
  std::string catalog_name = "default";
  unsigned jobs = 1;
  std::optional<std::size_t> flip_symbol;
};

/// Catalog file: one "a b" pair per line, '#' starts a comment.
inline std::vector<witt::WittPair> parse_catalog(const std::string& text) {
  std::vector<witt::WittPair> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    long a = 0, b = 0;
    if (!(ls >> a)) continue;
    if (!(ls >> b) || a == 0 || b == 0) throw ValidationError("catalog lines must hold two nonzero integers: " + line);
    out.push_back({a, b});
  }
  return out;
}

inline CommandResult cmd_witt(const WittOptions& opt) {
  CommandResult r;
  r.report.command = "witt";
  json cat = json::array();
  for (const auto& p : opt.catalog) cat.push_back({p.a, p.b});
  r.report.inputs = {{"catalog", opt.catalog_name}, {"pairs", cat}};
  if (opt.flip_symbol) r.report.inputs["flip_symbol"] = *opt.flip_symbol;
  witt::HarnessOptions ho;
  ho.jobs = opt.jobs;
  ho.flip_symbol = opt.flip_symbol;
  const witt::WittReport rep = witt::witt_harness(opt.catalog, ho);
  json recs = json::array();
  std::string tsv = "a\tb\tramification\tlocally_solvable\tpoint\tclass\n";
  for (const auto& rec : rep.records) {
    json loc = json::object();
    for (const auto& [v, ok] : rec.local.places) loc[v.to_string()] = ok;
    recs.push_back({{"a", rec.pair.a},
                    {"b", rec.pair.b},
                    {"ramification", places_json(rec.ramification)},
                    {"locally_solvable", loc},
                    {"point", point_json(rec.point)},
                    {"class_id", rec.class_id},
                    {"iso_verified", rec.iso_verified}});
    tsv += std::to_string(rec.pair.a) + "\t" + std::to_string(rec.pair.b) + "\t" + rec.ramification.to_string() +
           "\t" + (rec.local.globally_solvable ? "yes" : "no") + "\t" +
           (rec.point ? (*rec.point)[0].get_str() + ":" + (*rec.point)[1].get_str() + ":" + (*rec.point)[2].get_str()
                      : std::string("-")) +
           "\t" + std::to_string(rec.class_id) + "\n";
  }
  json asserts = json::array();
  for (const auto& a : rep.assertions) asserts.push_back({{"name", a.name}, {"ok", a.ok}, {"detail", a.detail}});
  json classes = json::array();
  for (std::size_t c = 0; c < rep.classes.size(); ++c) {
    json members = json::array();
    for (const auto& rec : rep.records)
      if (rec.class_id == static_cast<int>(c)) members.push_back({rec.pair.a, rec.pair.b});
    classes.push_back({{"class_id", c}, {"ramification", places_json(rep.classes[c])}, {"members", members}});
  }
  r.report.outputs = {{"records", recs},
                      {"assertions", asserts},
                      {"classes", classes},
                      {"triples_verified", rep.triples_verified},
                      {"passed", rep.passed},
                      {"failure", rep.failure}};
  r.text = tsv;
  if (!rep.passed) r.exit_code = kHarnessFailure;
  return r;
}

inline CommandResult cmd_basechange(const json& spec, const mpq_class& d, bool check_duals) {
  CommandResult r;
  r.report.command = "basechange";
  r.report.inputs = {{"spec", spec}, {"d", d.get_str()}, {"check_duals", check_duals}};
  const Bimodule n = io::bimodule_from_json(spec);
  const BaseChangeReport b = base_change_analysis(n, d, check_duals);
  const Field& kp = b.extension;
  json out = {{"field", io::field_to_json(kp)},
              {"changed", io::bimodule_to_json(b.changed)},
              {"dimension_pair", dimension_pair(b.changed).to_string()},
              {"verdict", b.split ? "split" : (b.method == "field" ? "field" : "division")},
              {"method", b.method}};
  if (b.zero_divisor) out["zero_divisor"] = io::vec_to_json(kp, b.zero_divisor->coords);
  if (b.idempotent) out["idempotent"] = io::vec_to_json(kp, b.idempotent->coords);
  if (b.reduced) {
    out["reduced"] = io::bimodule_to_json(*b.reduced);
    out["reduced_dimension_pair"] = dimension_pair(*b.reduced).to_string();
  }
  if (b.duals) {
    out["duals_compatible"] = b.duals->ok;
    out["duals_reason"] = b.duals->reason;
    if (!b.duals->ok) r.exit_code = kHarnessFailure;
  }
  r.report.outputs = out;
  r.text = std::string("verdict ") + out["verdict"].get<std::string>() + "\n";
  return r;
}

inline CommandResult cmd_iso(const json& a, const json& b) {
  CommandResult r;
  r.report.command = "iso";
  r.report.inputs = {{"a", a}, {"b", b}};
  const Bimodule m = io::bimodule_from_json(a), n = io::bimodule_from_json(b);
  const TwistSearchResult s = iso_with_twists_search(m, n);
  json out = {{"verdict", to_string(s.status)}, {"certified", s.certified}, {"reason", s.reason}};
  if (s.status == IsoStatus::Found) {
    out["phi1"] = io::matrix_to_json(*s.phi1);
    out["phi2"] = io::matrix_to_json(*s.phi2);
    out["psi"] = io::matrix_to_json(*s.psi);
    out["verified"] = iso_with_twists_verify(m, n, *s.phi1, *s.phi2, *s.psi).ok;
  }
  r.report.outputs = out;
  r.text = std::string(to_string(s.status)) + ": " + s.reason + "\n";
  return r;
}

}  // namespace ncp1::cli
