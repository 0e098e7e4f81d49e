#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ncp1/bimodule.hpp"
#include "ncp1/witt/local.hpp"
#include "ncp1/witt/quaternion_iso.hpp"

namespace ncp1::witt {

struct WittPair {
  long a = 1;
  long b = 1;
  std::string to_string() const { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }
  friend bool operator==(const WittPair& x, const WittPair& y) { return x.a == y.a && x.b == y.b; }
};

/// All ordered pairs with entries in {+-1, +-2, +-3, +-5, +-6, +-7, +-10, +-11}.
inline std::vector<WittPair> default_catalog() {
  const std::vector<long> base{1, 2, 3, 5, 6, 7, 10, 11};
  std::vector<long> vals;
  for (long v : base) {
    vals.push_back(v);
    vals.push_back(-v);
  }
  std::vector<WittPair> out;
  for (long a : vals)
    for (long b : vals) out.push_back({a, b});
  return out;
}

struct PairRecord {
  WittPair pair;
  RamificationSet ramification;          // assembled from the local symbols
  LocalReport local;
  std::optional<ProjectivePoint> point;  // on the normalised conic
  int class_id = -1;                     // by explicit quaternion_iso to class representatives
  int fiber_id = -1;                     // by ramification set
  bool iso_constructed = false;          // explicit algebra isomorphism to the representative
  bool iso_verified = false;             // iso_with_twists_verify on the induced triple
};

struct HarnessAssertion {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct WittReport {
  std::vector<PairRecord> records;
  std::vector<HarnessAssertion> assertions;  // (i) .. (iv)
  std::vector<RamificationSet> classes;      // representative set per class id
  std::size_t triples_verified = 0;
  bool passed = false;
  std::string failure;  // first failing assertion with the offending pair
};

struct HarnessOptions {
  unsigned jobs = 1;
  std::optional<std::size_t> flip_symbol;  // fault injection: flip the first local symbol of this record
  long iso_bound = 40;
};

namespace detail {

inline PairRecord evaluate_pair(const WittPair& p) {
  PairRecord r;
  r.pair = p;
  const Conic c = Conic::from_rationals(mpq_class(p.a), mpq_class(p.b));
  r.local = conic_locally_solvable(c);
  for (const Place& v : relevant_places(mpq_class(p.a), mpq_class(p.b)))
    if (hilbert_symbol(mpq_class(p.a), mpq_class(p.b), v) == -1) r.ramification.places.push_back(v);
  r.point = conic_point_search(c);
  return r;
}

}  // namespace detail

/// Runs the four catalog assertions: (i) point found iff locally solvable
/// everywhere iff empty ramification set; (ii) even ramification sets;
/// (iii) quaternion_iso classes equal ramification fibers; (iv) every
/// explicit algebra isomorphism to a class representative induces a triple
/// (phi1, id, phi1) on the regular bimodules that passes the verifier.
/// Stops at the first failing assertion, naming the pair.
inline WittReport witt_harness(const std::vector<WittPair>& catalog, const HarnessOptions& opt = {}) {
  WittReport rep;
  rep.records.resize(catalog.size());
  const unsigned jobs = std::max(1u, opt.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < catalog.size(); ++i) rep.records[i] = detail::evaluate_pair(catalog[i]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < catalog.size(); i += jobs) rep.records[i] = detail::evaluate_pair(catalog[i]);
      });
    for (auto& th : pool) th.join();
  }
  if (opt.flip_symbol && *opt.flip_symbol < rep.records.size()) {
    LocalReport& l = rep.records[*opt.flip_symbol].local;
    if (!l.places.empty()) l.places.front().second = !l.places.front().second;
    l.globally_solvable = true;
    for (const auto& [v, ok] : l.places) l.globally_solvable = l.globally_solvable && ok;
  }

  auto fail = [&](HarnessAssertion& a, const PairRecord& r, const std::string& why) {
    a.ok = false;
    a.detail = "pair " + r.pair.to_string() + ": " + why;
    rep.failure = a.name + " fails at " + a.detail;
  };

  HarnessAssertion a1{"(i) point <=> local solvability <=> empty ramification", true, ""};
  for (const PairRecord& r : rep.records) {
    const bool pt = r.point.has_value(), loc = r.local.globally_solvable, unram = r.ramification.empty();
    if (pt != loc || loc != unram) {
      fail(a1, r,
           std::string("point ") + (pt ? "found" : "none") + ", locally " + (loc ? "solvable" : "unsolvable") +
               ", ramification " + r.ramification.to_string());
      break;
    }
  }
  rep.assertions.push_back(a1);
  if (!a1.ok) return rep;

  HarnessAssertion a2{"(ii) even ramification sets", true, ""};
  for (const PairRecord& r : rep.records)
    if (r.ramification.size() % 2 != 0) {
      fail(a2, r, "ramification " + r.ramification.to_string() + " has odd size");
      break;
    }
  rep.assertions.push_back(a2);
  if (!a2.ok) return rep;

  // classes by explicit isomorphism test against representatives, fibers by set
  HarnessAssertion a3{"(iii) isomorphism classes = ramification fibers", true, ""};
  std::vector<std::size_t> reps;
  std::map<RamificationSet, int> fibers;
  for (PairRecord& r : rep.records) {
    const mpq_class a(r.pair.a), b(r.pair.b);
    for (std::size_t c = 0; c < reps.size() && r.class_id < 0; ++c) {
      const WittPair& q = rep.records[reps[c]].pair;
      if (quaternion_iso(mpq_class(q.a), mpq_class(q.b), a, b)) r.class_id = static_cast<int>(c);
    }
    if (r.class_id < 0) {
      r.class_id = static_cast<int>(reps.size());
      reps.push_back(static_cast<std::size_t>(&r - rep.records.data()));
      rep.classes.push_back(r.ramification);
    }
    auto it = fibers.find(r.ramification);
    if (it == fibers.end()) it = fibers.emplace(r.ramification, static_cast<int>(fibers.size())).first;
    r.fiber_id = it->second;
  }
  for (std::size_t i = 0; i < rep.records.size() && a3.ok; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const PairRecord& x = rep.records[i];
      const PairRecord& y = rep.records[j];
      if ((x.class_id == y.class_id) != (x.fiber_id == y.fiber_id)) {
        fail(a3, x, "classes and fibers disagree against " + y.pair.to_string());
        break;
      }
    }
  rep.assertions.push_back(a3);
  if (!a3.ok) return rep;

  HarnessAssertion a4{"(iv) induced triples pass the twist verifier", true, ""};
  const Field q = Field::rationals();
  const Matrix id1 = Matrix::identity(q, 1);
  for (PairRecord& r : rep.records) {
    const WittPair& s = rep.records[reps[static_cast<std::size_t>(r.class_id)]].pair;
    auto m = explicit_quaternion_iso(mpq_class(s.a), mpq_class(s.b), mpq_class(r.pair.a), mpq_class(r.pair.b),
                                     opt.iso_bound);
    if (!m) continue;
    r.iso_constructed = true;
    const Bimodule d1 = regular_bimodule(make_quaternion(q, s.a, s.b));
    const Bimodule d2 = regular_bimodule(make_quaternion(q, r.pair.a, r.pair.b));
    const TwistVerdict v = iso_with_twists_verify(d1, d2, *m, id1, *m);
    r.iso_verified = v.ok;
    if (!v.ok) {
      fail(a4, r, "triple from " + s.to_string() + " rejected: " + v.reason);
      break;
    }
    ++rep.triples_verified;
  }
  rep.assertions.push_back(a4);
  rep.passed = a4.ok;
  return rep;
}

struct OracleAgreement {
  std::size_t checked = 0;
  std::size_t at_two = 0;
  std::vector<std::string> mismatches;
};

/// hilbert_symbol against the exhaustive local oracle on every relevant place
/// of every catalog pair.
inline OracleAgreement symbol_oracle_agreement(const std::vector<WittPair>& catalog) {
  OracleAgreement out;
  for (const WittPair& p : catalog) {
    const mpq_class a(p.a), b(p.b);
    for (const Place& v : relevant_places(a, b)) {
      ++out.checked;
      if (!v.infinite && v.p == 2) ++out.at_two;
      const int s = hilbert_symbol(a, b, v), o = hilbert_symbol_oracle(a, b, v);
      if (s != o)
        out.mismatches.push_back(p.to_string() + " at " + v.to_string() + ": formula " + std::to_string(s) +
                                 ", oracle " + std::to_string(o));
    }
  }
  return out;
}

}  // namespace ncp1::witt
