#pragma once

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "posalg/algebra.hpp"
#include "posalg/dimension.hpp"
#include "posalg/fixtures.hpp"
#include "posalg/functors.hpp"
#include "posalg/io.hpp"
#include "posalg/truncation_checks.hpp"

namespace posalg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCounterexample = 1;
inline constexpr int kExitInputError = 2;

namespace cli_detail {

inline int verdict(bool ok) { return ok ? kExitOk : kExitCounterexample; }

inline Json check_json(const CheckResult& c) {
  Json j = to_json(claim_from(c));
  Json ce = Json::array();
  for (const auto& [role, x] : c.counterexample) ce.push_back({{"role", role}, {"element", x.to_string()}, {"json", to_json(x)}});
  j["counterexample"] = ce;
  return j;
}

inline int cmd_analyze(const std::string& path, bool as_json, bool as_dot, std::size_t n, std::uint64_t seed,
                       std::ostream& out) {
  auto p = share(load_poset(path));
  if (as_dot) {
    out << hasse_dot(*p) << ideal_lattice_dot(ideal_lattice(AlgebraHandle::whole(p)));
    return kExitOk;
  }
  AnalyzeOptions opt;
  opt.truncation_n = n;
  opt.seed = seed;
  opt.policy.seed = seed;
  const auto r = analyze(p, opt);
  if (as_json) {
    out << to_json(r).dump(2) << "\n";
  } else {
    out << "poset " << p->name() << ": " << p->size() << " elements, " << r.ideals.size() << " ideals\n";
    out << "loewy length " << r.loewy.size() << ", prime " << (r.prime ? "yes" : "no") << ", primitive "
        << (r.primitive ? "yes" : "no") << ", semiartinian " << (r.semiartinian ? "yes" : "no") << "\n";
    out << "order unit " << (r.order_unit.empty() ? "(none)" : r.order_unit) << "\n";
    for (const auto& c : r.checks)
      out << (c.value ? "[ok]   " : "[FAIL] ") << c.name << " (" << c.scope << ", " << c.instances
          << " instances)" << (c.detail.empty() ? "" : "; " + c.detail) << "\n";
  }
  return verdict(r.all_passed());
}

inline int cmd_spectrum(const std::string& path, std::ostream& out) {
  auto p = share(load_poset(path));
  const auto s = primitive_spectrum(p);
  Json j;
  Json prim = Json::array();
  for (Subset x : s.primitive_ideals) prim.push_back(detail::labels_json(*p, x));
  j["primitive_ideals"] = prim;
  Json psi = Json::object();
  for (std::size_t i = 0; i < p->size(); ++i) psi[p->label(i)] = detail::labels_json(*p, s.psi[i]);
  j["psi"] = psi;
  j["psi_is_order_isomorphism"] = s.psi_is_iso;
  j["verified"] = "exact";
  out << j.dump(2) << "\n";
  return verdict(s.psi_is_iso);
}

inline int cmd_k0(const std::string& path, int bound, std::ostream& out) {
  auto p = share(load_poset(path));
  const K0Model<BigInt> k(p);
  bool order_ok = true;
  for (std::size_t i = 0; i < p->size(); ++i)
    for (std::size_t j = 0; j < p->size(); ++j) order_ok = order_ok && k.basis_leq(i, j) == p->le(i, j);
  Json j;
  j["basis"] = k.basis_tags();
  Json ident = Json::array();
  for (const auto& [tag, v] : k.class_of_identity()) ident.push_back({tag, v.str()});
  j["class_of_identity"] = ident;
  j["order_unit"] = order_unit<BigInt>(p).to_string();
  j["basis_order_matches_poset"] = order_ok;
  SearchPolicy pol;
  pol.bound = bound;
  const auto ou = check_order_unit(*p, pol);
  j["order_unit_check"] = check_json(ou);
  out << j.dump(2) << "\n";
  return verdict(order_ok && ou.passed);
}

inline int cmd_hahn(const std::string& path, const std::string& check, int bound, std::uint64_t seed,
                    std::ostream& out) {
  auto p = share(load_poset(path));
  SearchPolicy pol;
  pol.bound = bound;
  pol.seed = seed;
  CheckResult r;
  Json j;
  if (check == "interpolation") r = check_interpolation(*p, pol);
  else if (check == "unperforation") r = check_unperforation(*p, pol);
  else if (check == "ideals") r = check_group_ideals(*p, pol);
  else {
    r = check_primes(*p, pol);
    j["primes"] = prime_basis_elements(p, bound);
  }
  j["check"] = check;
  j["result"] = check_json(r);
  out << j.dump(2) << "\n";
  return verdict(r.passed);
}

inline int cmd_truncate(const std::string& path, std::size_t n, const std::string& verify, std::uint64_t seed,
                        std::ostream& out) {
  auto p = share(load_poset(path));
  const TruncationSpace s(p, n);
  std::mt19937_64 rng(seed);
  Json j;
  j["poset"] = p->name();
  j["n"] = n;
  j["points"] = s.size();
  std::vector<LabCheck> checks;
  bool ok = true;
  if (verify == "all") {
    TruncationSuiteOptions opt;
    opt.seed = seed;
    checks = truncation_suite<Rational>(s, opt);
  } else if (verify == "phi") {
    for (std::size_t i = 0; i < p->size(); ++i) checks.push_back(check_phi<Rational>(s, i, rng));
  } else if (verify == "psi") {
    for (std::size_t i = 0; i < p->size(); ++i) checks.push_back(check_psi<Rational>(s, i, rng));
  } else if (verify == "products") {
    for (std::size_t i = 0; i < p->size(); ++i)
      for (std::size_t k = i; k < p->size(); ++k) checks.push_back(product_laws<Rational>(s, i, k, rng));
  } else if (verify == "unit") {
    const auto u = unit_check<Rational>(s, p->all());
    j["unit"] = {{"passed", u.passed},
                 {"finitely_sheltered", u.sheltered},
                 {"u_equals_zeta_X_IJ", u.u_is_zeta_XJ},
                 {"generators_checked", u.generators_checked},
                 {"detail", u.detail}};
    j["unit"]["u"] = matrix_dump(s, u.u);
    ok = u.passed;
  } else {
    const auto r = independence_probe<Rational>(s);
    j["independence"] = {{"witness_found", r.witness_found},
                         {"combinations_tried", r.combinations_tried},
                         {"verified", r.verified}};
    if (r.witness_found) {
      j["independence"]["lower_element"] = r.lower;
      j["independence"]["maximal_terms"] = r.maximal_terms;
      j["independence"]["witness_is_identity"] = r.witness_is_identity;
      j["independence"]["witness"] = matrix_dump(s, r.witness);
      j["independence"]["note"] = "nonzero element in two truncated components; independence needs infinite index sets";
    }
    ok = !r.witness_found;
  }
  Json cs = Json::array();
  for (const auto& c : checks) {
    cs.push_back(to_json(claim_from(c, n)));
    ok = ok && c.passed;
  }
  if (!checks.empty()) j["checks"] = cs;
  out << j.dump(2) << "\n";
  return verdict(ok);
}

inline int cmd_morphism(const std::string& path, const std::string& check, std::ostream& out) {
  const auto f = load_morphism(path);
  Json j;
  j["check"] = check;
  bool ok = true;
  if (check == "pos") {
    const auto m = is_pos_morphism(f);
    ok = m.ok;
    j["pos_morphism"] = m.ok;
    j["diagnosis"] = to_string(m.diagnosis);
  } else if (check == "ck") {
    try {
      ok = ck_check(associated_morphism(f));
      j["strict_ck"] = ok;
    } catch (const NotGraphMorphism& e) {
      ok = false;
      j["strict_ck"] = false;
      j["diagnosis"] = e.what();
    }
  } else if (check == "g" || check == "gstar") {
    const bool star = check == "gstar";
    std::optional<GroupHom> h;
    try {
      h = star ? G_star_of(f) : G_of(f);
    } catch (const Error& e) {
      j["rejected"] = e.what();
      h = star ? G_star_of(f, EvalMode::Forced) : G_of(f, EvalMode::Forced);
      j["mode"] = "forced";
    }
    std::uint64_t scanned = 0;
    const auto ce = cone_counterexample(*h, 2, &scanned);
    j["verified"] = "bound 2 (exhaustive, " + std::to_string(scanned) + " instances)";
    ok = !ce && !j.contains("rejected");
    if (ce) {
      j["counterexample"] = {{"x", ce->x.to_string()}, {"image", ce->image.to_string()},
                             {"x_json", to_json(ce->x)}, {"image_json", to_json(ce->image)}};
    }
  } else {
    require_pos_morphism(f);
    const std::size_t tn = TruncationSpace(f.target, 2).size() <= 256 ? 2 : 0;
    const auto r = naturality_check(f, tn);
    ok = r.passed();
    j["covariant_square"] = r.covariant;
    j["contravariant_square"] = r.contravariant;
    if (r.truncation) j["truncation_cross_check"] = {{"passed", *r.truncation}, {"verified", "n = 2"}};
    j["basis_elements_checked"] = r.basis_checked;
    j["detail"] = r.detail;
  }
  out << j.dump(2) << "\n";
  return verdict(ok);
}

inline int cmd_fixtures(const std::string& action, const std::string& name, std::ostream& out, std::ostream& err) {
  if (action == "list") {
    for (const auto& e : fixtures::catalog()) out << e.name << "\t" << e.description << "\n";
    return kExitOk;
  }
  const auto p = fixtures::by_name(name);
  if (!p) {
    err << "error: unknown fixture '" << name << "'\n";
    return kExitInputError;
  }
  out << to_json(*p).dump(2) << "\n";
  return kExitOk;
}

}  // namespace cli_detail

/// Runs the command-line interface; `args` excludes the program name.
/// Returns 0 when every check passes, 1 on a counterexample, 2 on input errors.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Poset algebra toolkit", "posalg"};
  app.require_subcommand(1);
  std::uint64_t seed = kDefaultSeed;
  app.add_option("--seed", seed, "Seed for all randomized sampling");

  std::string path, check, verify = "all", action, name;
  bool as_json = false, as_dot = false;
  int bound = 3;
  std::size_t n = 2;

  auto* analyze_cmd = app.add_subcommand("analyze", "Full report for a poset");
  analyze_cmd->add_option("poset", path, "Poset JSON file")->required();
  auto* fmt = analyze_cmd->add_option_group("format");
  fmt->add_flag("--json", as_json, "JSON report");
  fmt->add_flag("--dot", as_dot, "DOT of the Hasse diagram and the ideal lattice");
  fmt->require_option(0, 1);
  analyze_cmd->add_option("--n", n, "Truncation size")->check(CLI::PositiveNumber);

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Primitive spectrum");
  spectrum_cmd->add_option("poset", path, "Poset JSON file")->required();

  auto* k0_cmd = app.add_subcommand("k0", "K0 realization");
  k0_cmd->add_option("poset", path, "Poset JSON file")->required();
  k0_cmd->add_option("--bound", bound, "Coefficient bound")->check(CLI::Range(0, 50));

  auto* hahn_cmd = app.add_subcommand("hahn", "Dimension-group checks");
  hahn_cmd->add_option("poset", path, "Poset JSON file")->required();
  hahn_cmd->add_option("--check", check, "Property")
      ->required()
      ->check(CLI::IsMember({"interpolation", "unperforation", "primes", "ideals"}));
  hahn_cmd->add_option("--bound", bound, "Coefficient bound")->check(CLI::Range(0, 50));

  auto* trunc_cmd = app.add_subcommand("truncate", "Finite matrix model checks");
  trunc_cmd->add_option("poset", path, "Poset JSON file")->required();
  trunc_cmd->add_option("--n", n, "Truncation size");
  trunc_cmd->add_option("--verify", verify, "Checks to run")
      ->check(CLI::IsMember({"all", "phi", "psi", "products", "unit", "independence"}));

  auto* morph_cmd = app.add_subcommand("morphism", "Morphism checks");
  morph_cmd->add_option("morphism", path, "Morphism JSON file")->required();
  morph_cmd->add_option("--check", check, "Check")
      ->required()
      ->check(CLI::IsMember({"pos", "ck", "g", "gstar", "naturality"}));

  auto* fix_cmd = app.add_subcommand("fixtures", "Named fixture posets");
  fix_cmd->add_option("action", action, "list or emit")->required()->check(CLI::IsMember({"list", "emit"}));
  fix_cmd->add_option("name", name, "Fixture name for emit");

  std::vector<std::string> argv_store{"posalg"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*analyze_cmd) return cli_detail::cmd_analyze(path, as_json, as_dot, n, seed, out);
    if (*spectrum_cmd) return cli_detail::cmd_spectrum(path, out);
    if (*k0_cmd) return cli_detail::cmd_k0(path, bound, out);
    if (*hahn_cmd) return cli_detail::cmd_hahn(path, check, bound, seed, out);
    if (*trunc_cmd) return cli_detail::cmd_truncate(path, n, verify, seed, out);
    if (*morph_cmd) return cli_detail::cmd_morphism(path, check, out);
    if (*fix_cmd) {
      if (action == "emit" && name.empty()) {
        err << "error: fixtures emit needs a name\n";
        return kExitInputError;
      }
      return cli_detail::cmd_fixtures(action, name, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace posalg
