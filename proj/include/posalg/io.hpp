#pragma once

#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "posalg/algebra.hpp"
#include "posalg/dimension.hpp"
#include "posalg/errors.hpp"
#include "posalg/hahn.hpp"
#include "posalg/morphism.hpp"
#include "posalg/poset.hpp"
#include "posalg/truncation.hpp"
#include "posalg/truncation_checks.hpp"

namespace posalg {


using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(where + ": missing field '" + key + "'");
  return *it;
}

inline std::string string_at(const Json& j, const std::string& where) {
  if (!j.is_string()) throw SchemaError(where + ": expected a string");
  return j.get<std::string>();
}

inline Json labels_json(const Poset& p, Subset s) {
  Json a = Json::array();
  for (const auto& l : p.labels_of(s)) a.push_back(l);
  return a;
}

inline std::vector<std::string> string_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(string_at(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parses JSON text, reporting syntax errors with line numbers.
inline Json parse_text(const std::string& text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t k = 0; k < e.byte && k < text.size(); ++k)
      if (text[k] == '\n') ++line;
    throw SchemaError(where + ": line " + std::to_string(line) + ": malformed JSON");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Posets.

/// {"name", "elements", "le"}: `le` lists the covering pairs.
inline Json to_json(const Poset& p) {
  Json j;
  j["name"] = p.name();
  j["elements"] = p.labels();
  Json le = Json::array();
  for (const auto& [a, b] : covering_pairs(p)) le.push_back({p.label(a), p.label(b)});
  j["le"] = le;
  return j;
}

/// Reads {"name", "elements", "le"}; `le` is a generating set of the order.
inline Poset poset_from_json(const Json& j, const std::string& where = "poset") {
  const std::string name = j.contains("name") ? detail::string_at(j["name"], where + ".name") : std::string("poset");
  auto elems = detail::string_list(detail::field(j, "elements", where), where + ".elements");
  std::vector<std::pair<std::string, std::string>> rel;
  if (j.contains("le")) {
    const Json& le = j["le"];
    if (!le.is_array()) throw SchemaError(where + ".le: expected an array");
    for (std::size_t k = 0; k < le.size(); ++k) {
      const std::string w = where + ".le[" + std::to_string(k) + "]";
      if (!le[k].is_array() || le[k].size() != 2) throw SchemaError(w + ": expected a pair of labels");
      rel.emplace_back(detail::string_at(le[k][0], w), detail::string_at(le[k][1], w));
    }
  }
  try {
    return Poset::make(name, std::move(elems), rel);
  } catch (const CycleError& e) {
    throw SchemaError(where + ".le: Cycle: " + e.what());
  } catch (const UnknownLabel& e) {
    throw SchemaError(where + ".le: UnknownLabel: " + e.what());
  } catch (const DuplicateLabel& e) {
    throw SchemaError(where + ".elements: DuplicateLabel: " + e.what());
  } catch (const PosetTooLarge& e) {
    throw SchemaError(where + ".elements: PosetTooLarge: " + e.what());
  }
}

inline Poset load_poset(const std::string& path) {
  return poset_from_json(detail::parse_text(detail::read_file(path), path), path);
}

// ---------------------------------------------------------------------------
// Morphisms.

inline Json to_json(const PosetMorphism& f) {
  Json j;
  j["from"] = to_json(*f.source);
  j["to"] = to_json(*f.target);
  Json m = Json::object();
  for (std::size_t i = 0; i < f.map.size(); ++i) m[f.source->label(i)] = f.target->label(f(i));
  j["map"] = m;
  return j;
}

inline PosetMorphism morphism_from_json(const Json& j, const std::string& where = "morphism") {
  auto src = share(poset_from_json(detail::field(j, "from", where), where + ".from"));
  auto tgt = share(poset_from_json(detail::field(j, "to", where), where + ".to"));
  const Json& m = detail::field(j, "map", where);
  if (!m.is_object()) throw SchemaError(where + ".map: expected an object");
  std::map<std::string, std::string> labels;
  for (auto it = m.begin(); it != m.end(); ++it)
    labels[it.key()] = detail::string_at(it.value(), where + ".map." + it.key());
  try {
    return PosetMorphism::make(src, tgt, labels);
  } catch (const UnknownLabel& e) {
    throw SchemaError(where + ".map: " + e.what());
  }
}

inline PosetMorphism load_morphism(const std::string& path) {
  return morphism_from_json(detail::parse_text(detail::read_file(path), path), path);
}

// ---------------------------------------------------------------------------
// Hahn elements.

inline Json to_json(const HahnElement<BigInt>& x) {
  Json c = Json::object();
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
    const BigInt& v = x[i];
    if (v == 0) continue;
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
      c[x.poset().label(i)] = static_cast<std::int64_t>(v);
    else
      c[x.poset().label(i)] = v.str();
  }
  Json j;
  j["coeffs"] = c;
  return j;
}

inline HahnElement<BigInt> hahn_from_json(const PosetPtr& parent, const Json& j, const std::string& where = "element") {
  const Json& c = detail::field(j, "coeffs", where);
  if (!c.is_object()) throw SchemaError(where + ".coeffs: expected an object");
  HahnElement<BigInt> x(parent);
  for (auto it = c.begin(); it != c.end(); ++it) {
    const auto idx = parent->find(it.key());
    if (!idx) throw SchemaError(where + ".coeffs: unknown label '" + it.key() + "'");
    if (it.value().is_number_integer()) x.set(*idx, BigInt(it.value().get<std::int64_t>()));
    else if (it.value().is_string()) {
      try {
        x.set(*idx, BigInt(it.value().get<std::string>()));
      } catch (const std::exception&) {
        throw SchemaError(where + ".coeffs." + it.key() + ": not an integer");
      }
    } else
      throw SchemaError(where + ".coeffs." + it.key() + ": expected an integer");
  }
  return x;
}

// ---------------------------------------------------------------------------
// Matrices.

template <class F>
Json matrix_dump(const TruncationSpace& s, const SparseMat<F>& m) {
  Json j;
  j["space"] = {{"poset", to_json(s.poset())}, {"n", s.n()}, {"points", s.size()}};
  Json e = Json::array();
  m.for_each([&](std::size_t r, std::size_t c, const F& v) { e.push_back({r, c, FieldTraits<F>::str(v)}); });
  j["entries"] = e;
  return j;
}

// ---------------------------------------------------------------------------
// Analysis reports.

/// A boolean claim with the scope at which it was verified.
struct Claim {
  std::string name;
  bool value = false;
  std::string scope;
  std::uint64_t instances = 0;
  std::string detail;
  bool operator==(const Claim&) const = default;
};

struct AnalysisReport {
  Poset poset;
  std::vector<std::vector<std::string>> ideals;
  std::vector<std::vector<std::string>> loewy;
  bool prime = false;
  bool primitive = false;
  bool semiartinian = false;
  std::vector<std::vector<std::string>> spectrum;
  std::vector<std::string> k0_basis;
  std::string order_unit;
  std::vector<Claim> checks;
  std::size_t truncation_n = 0;

  bool operator==(const AnalysisReport& o) const {
    return poset == o.poset && ideals == o.ideals && loewy == o.loewy && prime == o.prime &&
           primitive == o.primitive && semiartinian == o.semiartinian && spectrum == o.spectrum &&
           k0_basis == o.k0_basis && order_unit == o.order_unit && checks == o.checks &&
           truncation_n == o.truncation_n;
  }
  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Claim& c) { return c.value; });
  }
};

inline Json to_json(const Claim& c) {
  return Json{{"name", c.name}, {"value", c.value}, {"verified", c.scope}, {"instances", c.instances},
              {"detail", c.detail}};
}

inline Json to_json(const AnalysisReport& r) {
  Json j;
  j["poset"] = to_json(r.poset);
  j["ideal_count"] = r.ideals.size();
  j["ideals"] = r.ideals;
  j["loewy"] = r.loewy;
  j["prime"] = r.prime;
  j["primitive"] = r.primitive;
  j["semiartinian"] = r.semiartinian;
  j["spectrum"] = r.spectrum;
  j["k0_basis"] = r.k0_basis;
  j["order_unit"] = r.order_unit;
  Json cs = Json::array();
  for (const auto& c : r.checks) cs.push_back(to_json(c));
  j["checks"] = cs;
  j["truncation_n"] = r.truncation_n;
  return j;
}

inline AnalysisReport report_from_json(const Json& j, const std::string& where = "report") {
  AnalysisReport r;
  r.poset = poset_from_json(detail::field(j, "poset", where), where + ".poset");
  auto lists = [&](const char* key) {
    const Json& a = detail::field(j, key, where);
    if (!a.is_array()) throw SchemaError(where + "." + key + ": expected an array");
    std::vector<std::vector<std::string>> out;
    for (std::size_t k = 0; k < a.size(); ++k)
      out.push_back(detail::string_list(a[k], where + "." + key + "[" + std::to_string(k) + "]"));
    return out;
  };
  auto flag = [&](const char* key) {
    const Json& b = detail::field(j, key, where);
    if (!b.is_boolean()) throw SchemaError(where + "." + key + ": expected a boolean");
    return b.get<bool>();
  };
  r.ideals = lists("ideals");
  r.loewy = lists("loewy");
  r.prime = flag("prime");
  r.primitive = flag("primitive");
  r.semiartinian = flag("semiartinian");
  r.spectrum = lists("spectrum");
  r.k0_basis = detail::string_list(detail::field(j, "k0_basis", where), where + ".k0_basis");
  r.order_unit = detail::string_at(detail::field(j, "order_unit", where), where + ".order_unit");
  const Json& cs = detail::field(j, "checks", where);
  if (!cs.is_array()) throw SchemaError(where + ".checks: expected an array");
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const std::string w = where + ".checks[" + std::to_string(k) + "]";
    Claim c;
    c.name = detail::string_at(detail::field(cs[k], "name", w), w + ".name");
    const Json& v = detail::field(cs[k], "value", w);
    if (!v.is_boolean()) throw SchemaError(w + ".value: expected a boolean");
    c.value = v.get<bool>();
    c.scope = detail::string_at(detail::field(cs[k], "verified", w), w + ".verified");
    const Json& n = detail::field(cs[k], "instances", w);
    if (!n.is_number_unsigned() && !n.is_number_integer()) throw SchemaError(w + ".instances: expected an integer");
    c.instances = n.get<std::uint64_t>();
    c.detail = detail::string_at(detail::field(cs[k], "detail", w), w + ".detail");
    r.checks.push_back(std::move(c));
  }
  const Json& tn = detail::field(j, "truncation_n", where);
  if (!tn.is_number_integer()) throw SchemaError(where + ".truncation_n: expected an integer");
  r.truncation_n = tn.get<std::size_t>();
  return r;
}

inline Claim claim_from(const CheckResult& c) {
  return {c.property, c.passed,
          std::string(c.exhaustive ? "exhaustive" : "sampled") + " at bound " + std::to_string(c.bound), c.instances,
          c.detail};
}

inline Claim claim_from(const LabCheck& c, std::size_t n) {
  return {c.name, c.passed, "n = " + std::to_string(n), c.instances, c.detail};
}

struct AnalyzeOptions {
  SearchPolicy policy;
  std::size_t truncation_n = 2;
  /// Truncation checks are skipped when the space has more points than this.
  std::size_t truncation_point_limit = 64;
  std::uint64_t seed = kDefaultSeed;
};

inline AnalysisReport analyze(const PosetPtr& p, const AnalyzeOptions& opt = {}) {
  AnalysisReport r;
  r.poset = *p;
  const auto alg = AlgebraHandle::whole(p);
  for (Subset s : ideal_lattice(alg).ideals) r.ideals.push_back(p->labels_of(s));
  for (Subset s : krull_filtration(*p).layers) r.loewy.push_back(p->labels_of(s));
  r.prime = is_prime(alg);
  r.primitive = is_primitive(alg);
  r.semiartinian = is_semiartinian(alg);
  for (Subset s : primitive_spectrum(p).primitive_ideals) r.spectrum.push_back(p->labels_of(s));
  if (!p->empty()) {
    const K0Model<BigInt> k(p);
    r.k0_basis = k.basis_tags();
    r.order_unit = order_unit<BigInt>(p).to_string();
  }
  r.checks.push_back({"ideal lattice is distributive", ideal_lattice(alg).check_distributive(), "exact",
                      r.ideals.size(), ""});
  r.checks.push_back({"prime iff downward directed iff coinitial chain iff coinitial family",
                      r.prime == has_coinitial_chain(*p) &&
                          r.prime == coinitial_family_condition(*p) && r.primitive == r.prime,
                      "exact, families up to size 2", 4, ""});
  if (!p->empty())
    for (const auto& c : dimension_group_suite(*p, opt.policy)) r.checks.push_back(claim_from(c));
  if (opt.truncation_n >= 2) {
    const TruncationSpace s(p, opt.truncation_n);
    if (s.size() <= opt.truncation_point_limit) {
      r.truncation_n = opt.truncation_n;
      TruncationSuiteOptions to;
      to.seed = opt.seed;
      to.separation = false;
      for (const auto& c : truncation_suite<Rational>(s, to)) r.checks.push_back(claim_from(c, opt.truncation_n));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// DOT.

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

/// Hasse diagram: one edge per covering pair, pointing upward.
inline std::string hasse_dot(const Poset& p) {
  std::ostringstream os;
  os << "digraph " << dot_quote(p.name()) << " {\n  rankdir=BT;\n";
  for (const auto& l : p.labels()) os << "  " << dot_quote(l) << ";\n";
  for (const auto& [a, b] : covering_pairs(p)) os << "  " << dot_quote(p.label(a)) << " -> " << dot_quote(p.label(b)) << ";\n";
  os << "}\n";
  return os.str();
}

/// Ideal lattice: nodes are lower sets, edges are covering inclusions.
inline std::string ideal_lattice_dot(const IdealLattice& lat) {
  const Poset& p = *lat.algebra.base;
  auto name = [&](Subset s) { return dot_quote("{" + join(p.labels_of(s)) + "}"); };
  std::ostringstream os;
  os << "digraph " << dot_quote("ideals of " + p.name()) << " {\n  rankdir=BT;\n";
  for (Subset s : lat.ideals) os << "  " << name(s) << ";\n";
  for (const auto& [a, b] : lat.covers()) os << "  " << name(lat.ideals[a]) << " -> " << name(lat.ideals[b]) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace posalg
