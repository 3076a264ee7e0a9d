// Acceptance run: one PASS/FAIL line per criterion with its wall time and limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "posalg/algebra.hpp"
#include "posalg/dimension.hpp"
#include "posalg/fixtures.hpp"
#include "posalg/functors.hpp"
#include "posalg/truncation_checks.hpp"

using namespace posalg;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& why) {
    if (!ok && pass) detail = why;
    pass = pass && ok;
  }
};

std::vector<PosetPtr> corpus() {
  std::vector<PosetPtr> out;
  for (auto& p : posets_up_to(5)) out.push_back(share(std::move(p)));
  for (auto& p : random_corpus(200, 6, 8, kDefaultSeed)) out.push_back(share(std::move(p)));
  return out;
}

oracle::Mask bits(Subset s) { return s.bits(); }

Outcome criterion_ideals(const std::vector<PosetPtr>& ps) {
  Outcome o;
  std::vector<std::size_t> per_size(6, 0);
  for (const auto& p : ps) {
    if (p->size() <= 5) ++per_size[p->size()];
    const auto lat = ideal_lattice(AlgebraHandle::whole(p));
    std::set<oracle::Mask> got;
    for (Subset s : lat.ideals) got.insert(bits(s));
    const auto want = oracle::down_sets(*p);
    o.require(got == want, p->name() + ": ideals differ from down-sets");
    o.require(lat.size() == oracle::antichain_count(*p), p->name() + ": ideal count differs from antichain count");
    o.require(lat.check_distributive(), p->name() + ": ideal lattice not distributive");
  }
  const std::vector<std::size_t> iso_counts{1, 1, 2, 5, 16, 63};
  o.require(per_size == iso_counts, "isomorphism-class counts up to 5 differ from 1,1,2,5,16,63");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(ps.size()) + " posets";
  return o;
}

Outcome criterion_loewy(const std::vector<PosetPtr>& ps) {
  Outcome o;
  for (const auto& p : ps) {
    const auto alg = AlgebraHandle::whole(p);
    const auto soc = socle_series(alg);
    const auto layers = oracle::height_layers(*p);
    o.require(soc.size() == layers.size(), p->name() + ": socle length differs from Krull length");
    oracle::Mask cum = 0;
    for (std::size_t k = 0; k < soc.size() && k < layers.size(); ++k) {
      cum |= layers[k];
      o.require(bits(soc[k].lower_set) == cum, p->name() + ": Soc_" + std::to_string(k + 1) + " differs");
      // The socle of the quotient by Soc_k is the next Krull layer.
      if (k + 1 < soc.size()) {
        const auto q = quotient(alg, soc[k]);
        const auto qs = socle_series(q);
        o.require(!qs.empty() && bits(qs.front().lower_set) == layers[k + 1],
                  p->name() + ": socle of a quotient is not the next layer");
      }
    }
    o.require(is_semiartinian(alg), p->name() + ": not semiartinian");
    o.require(loewy_length(alg) == layers.size(), p->name() + ": Loewy length differs");
  }
  return o;
}

Outcome criterion_prime(const std::vector<PosetPtr>& ps) {
  Outcome o;
  for (const auto& p : ps) {
    const auto alg = AlgebraHandle::whole(p);
    const bool prime = is_prime(alg);
    const bool directed = is_downward_directed(*p);
    const bool chain = has_coinitial_chain(*p);
    const bool family = coinitial_family_condition(*p);
    o.require(prime == directed && directed == chain && chain == family,
              p->name() + ": prime / directed / coinitial chain / family disagree");
    o.require(directed == oracle::downward_directed(*p), p->name() + ": directedness differs from oracle");
    o.require(chain == oracle::coinitial_chain(*p), p->name() + ": coinitial chain differs from oracle");
    o.require(is_primitive(alg) == chain, p->name() + ": primitivity differs from coinitial chain");
    const auto sp = primitive_spectrum(p);
    std::set<oracle::Mask> got;
    for (Subset s : sp.primitive_ideals) got.insert(bits(s));
    o.require(got == oracle::primitive_ideals(*p), p->name() + ": primitive ideals differ from oracle");
    std::set<oracle::Mask> image;
    for (Subset s : sp.psi_image) image.insert(bits(s));
    o.require(image == got, p->name() + ": psi image differs from the spectrum");
    for (std::size_t i = 0; i < p->size(); ++i)
      for (std::size_t j = 0; j < p->size(); ++j)
        o.require(sp.psi[i].subset_of(sp.psi[j]) == p->le(i, j), p->name() + ": psi does not match the order");
    o.require(sp.psi_is_iso, p->name() + ": psi is not an order isomorphism");
  }
  return o;
}

Outcome criterion_dimension(const std::vector<PosetPtr>& ps) {
  Outcome o;
  std::uint64_t instances = 0, exhaustive = 0, sampled = 0;
  for (const auto& p : ps) {
    if (p->empty()) continue;
    for (const auto& c : dimension_group_suite(*p)) {
      o.require(c.passed, p->name() + ": " + c.summary());
      o.require(c.bound == 3, p->name() + ": bound is not 3");
      instances += c.instances;
      (c.exhaustive ? exhaustive : sampled) += 1;
    }
    std::vector<std::string> mins;
    for (std::size_t m : minimal_elements(*p)) mins.push_back(p->label(m));
    o.require(prime_basis_elements(p, 3) == mins, p->name() + ": primes are not the minimal elements");
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(instances) + " instances, " +
              std::to_string(exhaustive) + " checks exhaustive, " + std::to_string(sampled) + " sampled";
  return o;
}

Outcome criterion_k0(const std::vector<PosetPtr>& ps) {
  Outcome o;
  std::mt19937_64 rng(kDefaultSeed);
  std::uniform_int_distribution<std::int64_t> coef(-3, 3);
  std::uint64_t evaluated = 0;
  std::size_t sampled_posets = 0;
  for (const auto& p : ps) {
    if (p->empty()) continue;
    const K0Model<std::int64_t> k(p);
    for (std::size_t i = 0; i < p->size(); ++i)
      for (std::size_t j = 0; j < p->size(); ++j)
        o.require(k.basis_leq(i, j) == p->le(i, j), p->name() + ": basis order differs from poset order");
    auto agree = [&](const std::vector<std::int64_t>& x) {
      K0Model<std::int64_t>::Combination c;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) c.emplace_back(k.rho(i), x[i]);
      ++evaluated;
      o.require(k.is_positive(c) == oracle::naive_positive(*p, x), p->name() + ": positivity disagrees");
    };
    std::vector<std::int64_t> x(p->size(), -3);
    if (p->size() <= 5) {
      while (true) {
        agree(x);
        std::size_t t = 0;
        while (t < x.size() && x[t] == 3) x[t++] = -3;
        if (t == x.size()) break;
        ++x[t];
      }
    } else {
      ++sampled_posets;
      for (int s = 0; s < 20000; ++s) {
        for (auto& v : x) v = coef(rng);
        agree(x);
      }
    }
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(evaluated) +
              " combinations (exhaustive up to 5 elements, 20000 sampled per poset on " +
              std::to_string(sampled_posets) + " larger posets)";
  return o;
}

Outcome criterion_truncation() {
  Outcome o;
  std::uint64_t instances = 0;
  for (const char* name : {"chain2", "chain3", "V", "lambda", "diamond", "antichain2", "zigzag_prefix(1)"}) {
    auto p = share(*fixtures::by_name(name));
    const TruncationSpace s(p, 2);
    for (const auto& c : truncation_suite<Rational>(s)) {
      o.require(c.passed, std::string(name) + ": " + c.summary(2));
      instances += c.instances;
    }
  }
  // A non-sheltered J has no identity built from its maximal elements.
  auto c2 = share(fixtures::chain(2));
  const TruncationSpace s(c2, 2);
  const auto u = unit_check<Rational>(s, Subset::single(0));
  o.require(!u.passed && u.failing_generator.has_value(), "unit check passes for J = {a} in a<b");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(instances) + " instances";
  return o;
}

Outcome criterion_independence() {
  Outcome o;
  auto p = share(fixtures::chain(2));
  for (std::size_t n : {2, 3}) {
    const TruncationSpace s(p, n);
    const auto r = independence_probe<Rational>(s);
    o.require(r.witness_found && r.verified && r.witness_is_identity,
              "no verified identity witness at n = " + std::to_string(n));
  }
  o.detail = "witness 1 at n = 2, 3 (independence needs infinite index sets)";
  return o;
}

Outcome criterion_functors() {
  Outcome o;
  std::vector<PosetPtr> ps;
  for (auto& p : posets_up_to(4)) ps.push_back(share(std::move(p)));
  std::uint64_t maps = 0, pos = 0, pairs = 0;
  std::vector<PosetMorphism> pos_maps;
  std::vector<PosetMorphism> inj_maps;
  for (const auto& a : ps) {
    o.require(G_of(PosetMorphism::identity(a)) == GroupHom::identity(a), "G(1) != 1");
    o.require(G_star_of(PosetMorphism::identity(a)) == GroupHom::identity(a), "1* != 1");
    o.require(B_of(PosetMorphism::identity(a)) == identity_algebra_map(a, true), "B(1) != 1");
    o.require(B_star_of(PosetMorphism::identity(a)) == identity_algebra_map(a, false), "B*(1) != 1");
    for (const auto& b : ps)
      for (const auto& f : injective_isotone_maps(a, b)) {
        ++maps;
        inj_maps.push_back(f);
        const bool is_pos = is_pos_morphism(f).ok;
        const bool star_isotone = !cone_counterexample(G_star_of(f), 2).has_value();
        o.require(is_pos == star_isotone, "f* isotone differs from Pos-morphism");
        o.require(!cone_counterexample(G_of(f), 2).has_value(), "G(f) not isotone for injective isotone f");
        o.require(ck_check(associated_morphism(f)) == is_pos, "strict CK differs from Pos-morphism");
        if (is_pos) {
          ++pos;
          pos_maps.push_back(f);
          const auto r = naturality_check(f, 2);
          o.require(r.passed(), "naturality fails: " + r.detail);
        }
      }
  }
  for (const auto& f : inj_maps)
    for (const auto& g : inj_maps) {
      if (f.target != g.source) continue;
      ++pairs;
      const auto gf = compose(g, f);
      o.require(G_of(gf) == compose(G_of(g), G_of(f)), "G(gf) != G(g)G(f)");
      o.require(G_star_of(gf) == compose(G_star_of(f), G_star_of(g)), "(gf)* != f* g*");
      if (is_pos_morphism(f).ok && is_pos_morphism(g).ok) {
        o.require(B_of(gf) == compose(B_of(g), B_of(f)), "B(gf) != B(g)B(f)");
        o.require(B_star_of(gf) == compose(B_star_of(f), B_star_of(g)), "B*(gf) != B*(f)B*(g)");
        for (Subset l : lower_sets(*f.source))
          o.require(B_of(gf).on_ideal({l}) == B_of(g).on_ideal(B_of(f).on_ideal({l})), "B on ideals not functorial");
        for (Subset l : lower_sets(*g.target))
          o.require(B_star_of(gf).on_ideal({l}) == B_star_of(f).on_ideal(B_star_of(g).on_ideal({l})),
                    "B* on ideals not functorial");
      }
    }
  // Forced evaluation of the two excluded non-injective maps.
  auto I = share(Poset::make("I", {"i", "j", "k"}, {{"i", "j"}, {"i", "k"}}));
  auto J = share(Poset::make("J", {"u", "v"}, {{"u", "v"}}));
  const auto f71 = PosetMorphism::make(I, J, {{"i", "u"}, {"j", "u"}, {"k", "v"}});
  bool rejected = false;
  try {
    G_star_of(f71);
  } catch (const NotInjective&) {
    rejected = true;
  }
  const auto fx = G_star_of(f71, EvalMode::Forced)(HahnElement<BigInt>::from_labels(J, {{"v", 1}, {"u", -1}}));
  o.require(rejected && fx.to_string() == "-i-j+k" && !is_positive(fx).positive, "f*(v-u) is not -i-j+k outside M(I)");
  auto H = share(Poset::make("H", {"h", "k"}, {{"h", "k"}}));
  auto K = share(Poset::make("K", {"j"}, {}));
  const auto f2 = PosetMorphism::make(H, K, {{"h", "j"}, {"k", "j"}});
  rejected = false;
  try {
    G_of(f2);
  } catch (const NotInjective&) {
    rejected = true;
  }
  const auto x2 = HahnElement<BigInt>::from_labels(H, {{"h", -2}, {"k", 1}});
  const auto gx = G_of(f2, EvalMode::Forced)(x2);
  o.require(rejected && is_positive(x2).positive && gx.to_string() == "-j" && !is_positive(gx).positive,
            "G(f)(-2h+k) is not -j outside M(J)");
  // f-hat multiplicativity on morphism fixtures.
  auto chain2 = share(fixtures::chain(2)), chain3 = share(fixtures::chain(3)), vee = share(fixtures::vee());
  auto diamond = share(fixtures::diamond());
  auto one_b = share(Poset::make("b", {"b"}, {}));
  auto bc = share(Poset::make("bc", {"b", "c"}, {{"b", "c"}}));
  auto abc = share(Poset::make("ab+c", {"a", "b", "c"}, {{"a", "b"}}));
  const std::vector<PosetMorphism> fixtures_f{
      PosetMorphism::identity(vee),
      PosetMorphism::make(one_b, chain2, {{"b", "b"}}),
      PosetMorphism::make(bc, chain3, {{"b", "b"}, {"c", "c"}}),
      PosetMorphism::make(one_b, vee, {{"b", "b"}}),
      PosetMorphism::make(chain2, diamond, {{"a", "b"}, {"b", "d"}}),
      PosetMorphism::make(one_b, abc, {{"b", "b"}}),
  };
  for (std::size_t t = 0; t < fixtures_f.size(); ++t) {
    std::string why;
    o.require(f_hat_multiplicative(fixtures_f[t], 2, 50, kDefaultSeed + t, &why), "f-hat not multiplicative: " + why);
    o.require(naturality_check(fixtures_f[t], 2).passed(), "naturality fails on a morphism fixture");
  }
  o.require(!B_of(fixtures_f.back()).unital, "B(f) flagged unital although a maximal element is missed");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(maps) + " injective isotone maps, " +
              std::to_string(pos) + " Pos-morphisms, " + std::to_string(pairs) + " composable pairs";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const auto t_corpus = std::chrono::steady_clock::now();
  const auto ps = corpus();
  const double corpus_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_corpus).count();
  std::printf("corpus: %zu posets built in %.2f s\n", ps.size(), corpus_s);
  const std::vector<Criterion> cs{
      {1, "ideal lattice equals down-set lattice", 60, [&] { return criterion_ideals(ps); }},
      {2, "socle series equals Krull filtration", 30, [&] { return criterion_loewy(ps); }},
      {3, "prime, primitive and spectrum characterizations", 120, [&] { return criterion_prime(ps); }},
      {4, "dimension-group suite at bound 3", 300, [&] { return criterion_dimension(ps); }},
      {5, "K0 realization and positivity", 30, [&] { return criterion_k0(ps); }},
      {6, "truncation identities", 600, [] { return criterion_truncation(); }},
      {7, "truncation independence failure", 10, [] { return criterion_independence(); }},
      {8, "functoriality and naturality", 300, [] { return criterion_functors(); }},
  };
  int failures = 0;
  for (const auto& c : cs) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = o.pass && dt < c.limit_s;
    if (o.pass && !ok) o.detail += "; over time limit";
    failures += ok ? 0 : 1;
    std::printf("%s criterion %d: %s (%.2f s, limit %.0f s) %s\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(), dt,
                c.limit_s, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
