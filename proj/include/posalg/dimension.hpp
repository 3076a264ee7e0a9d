#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "posalg/fixtures.hpp"
#include "posalg/hahn.hpp"
#include "posalg/poset.hpp"

namespace posalg {

using Vec = std::vector<std::int64_t>;

/// Bounds and budgets for the bounded verification of universally quantified
/// statements about G(I). An enumeration is exhaustive when its size fits the
/// relevant limit, and a seeded sample of the same box otherwise.
struct SearchPolicy {
  int bound = 3;
  int n_max = 3;
  /// 0 means 2*bound + 2.
  int k_max = 0;
  /// Instances for loops whose body is a handful of cone evaluations.
  std::uint64_t exhaustive_limit = 8'000'000;
  /// Instances for loops whose body runs the cone-system solver.
  std::uint64_t solver_limit = 400'000;
  /// Instances drawn when a solver loop is sampled.
  std::uint64_t samples = 2000;
  std::uint64_t seed = kDefaultSeed;
};

struct CheckResult {
  std::string property;
  bool passed = true;
  int bound = 0;
  bool exhaustive = true;
  std::uint64_t instances = 0;
  std::vector<std::pair<std::string, HahnElement<BigInt>>> counterexample;
  std::string detail;

  std::string summary() const {
    std::string s = property + ": " + (passed ? "verified" : "FAILED") + " at bound " + std::to_string(bound) +
                    " (" + (exhaustive ? "exhaustive" : "sampled") + ", " + std::to_string(instances) +
                    " instances)";
    if (!detail.empty()) s += "; " + detail;
    for (const auto& [name, x] : counterexample) s += "; " + name + " = " + x.to_string();
    return s;
  }
};

inline HahnElement<BigInt> to_hahn(const PosetPtr& p, const Vec& v) {
  std::vector<BigInt> c(v.begin(), v.end());
  return HahnElement<BigInt>(p, std::move(c));
}

inline std::uint64_t box_size(std::size_t n, int bound) {
  double e = std::pow(2.0 * bound + 1.0, static_cast<double>(n));
  return e > 1e18 ? UINT64_MAX : static_cast<std::uint64_t>(e);
}

inline double box_size_d(std::size_t n, int bound) { return std::pow(2.0 * bound + 1.0, static_cast<double>(n)); }

/// Odometer over [lo, hi]^n restricted to coordinates in `free` (others stay 0).
/// `f` returns false to stop early; the return value reports whether the loop completed.
template <class F>
bool for_each_in_box(std::size_t n, std::int64_t lo, std::int64_t hi, Subset free, F&& f) {
  Vec v(n, 0);
  std::vector<std::size_t> slots(free.begin(), free.end());
  for (auto s : slots) v[s] = lo;
  while (true) {
    if (!f(static_cast<const Vec&>(v))) return false;
    std::size_t k = slots.size();
    while (k > 0) {
      --k;
      if (v[slots[k]] < hi) {
        ++v[slots[k]];
        break;
      }
      v[slots[k]] = lo;
      if (k == 0) return true;
    }
    if (slots.empty()) return true;
  }
}

template <class Rng>
Vec random_in_box(std::size_t n, std::int64_t lo, std::int64_t hi, Subset free, Rng& rng) {
  std::uniform_int_distribution<std::int64_t> d(lo, hi);
  Vec v(n, 0);
  for (std::size_t i : free) v[i] = d(rng);
  return v;
}

namespace detail {

/// Fixed-capacity candidate list for one solver level.
struct SmallVec {
  std::array<std::int64_t, 16> data{};
  std::size_t len = 0;
  void push_back(std::int64_t v) { data[len++] = v; }
  const std::int64_t* begin() const { return data.data(); }
  const std::int64_t* end() const { return data.data() + len; }
};

}  // namespace detail

/// Finds v with lo <= v <= hi such that offset_k + sign_k * v lies in the positive
/// cone for every constraint k. Coordinates are fixed from the top of the poset
/// downward, so whether an element is maximal in the support of a constraint vector
/// is known when its coordinate is chosen. Only the zero pattern of a coordinate
/// affects later choices, so one representative per pattern is tried unless a random
/// generator is supplied, in which case every value is tried in random order.
class ConeSolver {
 public:
  struct Constraint {
    const Vec* offset;
    int sign;
  };

  explicit ConeSolver(const Poset& p) : p_(p) {
    order_.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) order_[i] = i;
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return p.up(a).size() < p.up(b).size(); });
  }

  template <class Rng = std::mt19937_64>
  std::optional<Vec> solve(std::span<const Constraint> cons, const Vec& lo, const Vec& hi, Subset nonzero = {},
                           Rng* rng = nullptr) {
    if (cons.size() > kMaxConstraints) throw std::invalid_argument("too many cone constraints");
    cons_ = cons;
    lo_ = &lo;
    hi_ = &hi;
    nonzero_ = nonzero;
    v_.assign(p_.size(), 0);
    std::array<std::uint64_t, kMaxConstraints> nz{};
    bool found = rng ? rec(0, nz, rng) : rec<Rng>(0, nz, nullptr);
    if (!found) return std::nullopt;
    Vec d(p_.size());
    for (const auto& c : cons) {
      for (std::size_t i = 0; i < p_.size(); ++i) d[i] = (*c.offset)[i] + c.sign * v_[i];
      if (!in_cone(p_, d.data())) throw std::logic_error("cone solver returned an infeasible vector");
    }
    return v_;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  static constexpr std::size_t kMaxConstraints = 8;

  template <class Rng>
  bool rec(std::size_t t, std::array<std::uint64_t, kMaxConstraints>& nz, Rng* rng) {
    if (t == order_.size()) return true;
    ++nodes_;
    const std::size_t e = order_[t];
    const std::uint64_t above = p_.strictly_above(e).bits();
    std::int64_t lo = (*lo_)[e], hi = (*hi_)[e];
    std::array<std::int64_t, kMaxConstraints> breakpoint{};
    for (std::size_t k = 0; k < cons_.size(); ++k) {
      const std::int64_t off = (*cons_[k].offset)[e];
      const int s = cons_[k].sign;
      breakpoint[k] = -s * off;
      if ((nz[k] & above) == 0) {
        if (s > 0) lo = std::max(lo, -off);
        else hi = std::min(hi, off);
      }
    }
    if (lo > hi) return false;
    const bool forbid_zero = nonzero_.contains(e);
    detail::SmallVec cand;
    std::vector<std::int64_t> shuffled;
    if (rng) {
      for (std::int64_t v = lo; v <= hi; ++v)
        if (!(forbid_zero && v == 0)) shuffled.push_back(v);
      std::shuffle(shuffled.begin(), shuffled.end(), *rng);
    } else {
      auto is_bp = [&](std::int64_t v) {
        for (std::size_t k = 0; k < cons_.size(); ++k)
          if (breakpoint[k] == v) return true;
        return false;
      };
      for (std::int64_t v = lo; v <= hi; ++v)
        if (!is_bp(v) && !(forbid_zero && v == 0)) {
          cand.push_back(v);
          break;
        }
      for (std::size_t k = 0; k < cons_.size(); ++k) {
        const std::int64_t b = breakpoint[k];
        if (b < lo || b > hi || (forbid_zero && b == 0)) continue;
        if (std::find(cand.begin(), cand.end(), b) == cand.end()) cand.push_back(b);
      }
    }
    const std::uint64_t bit = std::uint64_t{1} << e;
    auto try_value = [&](std::int64_t v) {
      std::array<std::uint64_t, kMaxConstraints> next = nz;
      for (std::size_t k = 0; k < cons_.size(); ++k)
        if (v != breakpoint[k]) next[k] |= bit;
      v_[e] = v;
      return rec(t + 1, next, rng);
    };
    for (std::int64_t v : shuffled)
      if (try_value(v)) return true;
    for (std::int64_t v : cand)
      if (try_value(v)) return true;
    v_[e] = 0;
    return false;
  }

  const Poset& p_;
  std::vector<std::size_t> order_;
  std::span<const Constraint> cons_;
  const Vec* lo_ = nullptr;
  const Vec* hi_ = nullptr;
  Subset nonzero_;
  Vec v_;
  std::uint64_t nodes_ = 0;
};

namespace detail {

inline Vec add(const Vec& a, const Vec& b) {
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}
inline Vec sub(const Vec& a, const Vec& b) {
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}
inline Vec scaled(std::int64_t k, const Vec& a) {
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = k * a[i];
  return c;
}
inline bool vleq(const Poset& p, const Vec& x, const Vec& y) {
  Vec d = sub(y, x);
  return in_cone(p, d.data());
}
inline bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t c) { return c == 0; });
}

/// Per-coordinate [min - bound, max + bound] over the given vectors.
inline std::pair<Vec, Vec> envelope(std::size_t n, std::initializer_list<const Vec*> vs, int bound) {
  Vec lo(n, 0), hi(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t mn = (*vs.begin())->at(i), mx = mn;
    for (const Vec* v : vs) {
      mn = std::min(mn, (*v)[i]);
      mx = std::max(mx, (*v)[i]);
    }
    lo[i] = mn - bound;
    hi[i] = mx + bound;
  }
  return {lo, hi};
}

inline std::vector<Vec> box_vectors(std::size_t n, int bound, Subset free) {
  std::vector<Vec> out;
  for_each_in_box(n, -bound, bound, free, [&](const Vec& v) {
    out.push_back(v);
    return true;
  });
  return out;
}

}  // namespace detail

inline CheckResult check_conical(const Poset& p, const SearchPolicy& pol = {}) {
  CheckResult r{"conical cone", true, pol.bound};
  const std::size_t n = p.size();
  Vec neg(n);
  auto body = [&](const Vec& x) {
    ++r.instances;
    for (std::size_t i = 0; i < n; ++i) neg[i] = -x[i];
    if (!detail::is_zero(x) && in_cone(p, x.data()) && in_cone(p, neg.data())) {
      auto pp = share(p);
      r.passed = false;
      r.counterexample = {{"x", to_hahn(pp, x)}, {"y", to_hahn(pp, neg)}};
      return false;
    }
    return true;
  };
  if (box_size(n, pol.bound) <= pol.exhaustive_limit) {
    for_each_in_box(n, -pol.bound, pol.bound, p.all(), body);
  } else {
    r.exhaustive = false;
    std::mt19937_64 rng(pol.seed);
    for (std::uint64_t s = 0; s < pol.exhaustive_limit && r.passed; ++s)
      body(random_in_box(n, -pol.bound, pol.bound, p.all(), rng));
  }
  return r;
}

inline CheckResult check_unperforation(const Poset& p, const SearchPolicy& pol = {}) {
  CheckResult r{"unperforation (n <= " + std::to_string(pol.n_max) + ")", true, pol.bound};
  const std::size_t n = p.size();
  Vec mx(n);
  auto body = [&](const Vec& x) {
    ++r.instances;
    const bool pos = in_cone(p, x.data());
    for (int m = 2; m <= pol.n_max; ++m) {
      for (std::size_t i = 0; i < n; ++i) mx[i] = m * x[i];
      if (in_cone(p, mx.data()) && !pos) {
        r.passed = false;
        r.counterexample = {{"x", to_hahn(share(p), x)}};
        r.detail = "multiple " + std::to_string(m) + " is positive";
        return false;
      }
    }
    return true;
  };
  if (box_size(n, pol.bound) <= pol.exhaustive_limit) {
    for_each_in_box(n, -pol.bound, pol.bound, p.all(), body);
  } else {
    r.exhaustive = false;
    std::mt19937_64 rng(pol.seed);
    for (std::uint64_t s = 0; s < pol.exhaustive_limit && r.passed; ++s)
      body(random_in_box(n, -pol.bound, pol.bound, p.all(), rng));
  }
  return r;
}

/// Every x in the box satisfies x <= k*u for some k <= k_max, u the sum of maximal elements.
inline CheckResult check_order_unit(const Poset& p, const SearchPolicy& pol = {}) {
  if (p.empty()) throw EmptyPoset("order unit of the empty poset");
  const int k_max = pol.k_max > 0 ? pol.k_max : 2 * pol.bound + 2;
  CheckResult r{"order unit (k <= " + std::to_string(k_max) + ")", true, pol.bound};
  const std::size_t n = p.size();
  Vec u(n, 0);
  for (std::size_t m : maximal_elements(p)) u[m] = 1;
  // u is positive, so x <= k u for some k <= k_max iff x <= k_max u.
  Vec d(n);
  auto body = [&](const Vec& x) {
    ++r.instances;
    for (std::size_t i = 0; i < n; ++i) d[i] = k_max * u[i] - x[i];
    if (in_cone(p, d.data())) return true;
    auto pp = share(p);
    r.passed = false;
    r.counterexample = {{"x", to_hahn(pp, x)}, {"u", to_hahn(pp, u)}};
    return false;
  };
  if (box_size(n, pol.bound) <= pol.exhaustive_limit) {
    for_each_in_box(n, -pol.bound, pol.bound, p.all(), body);
  } else {
    r.exhaustive = false;
    std::mt19937_64 rng(pol.seed);
    for (std::uint64_t s = 0; s < pol.exhaustive_limit && r.passed; ++s)
      body(random_in_box(n, -pol.bound, pol.bound, p.all(), rng));
  }
  return r;
}

/// Interpolation: x1, x2 <= y1, y2 in the box admits z between them, z searched in
/// the envelope [min coords - bound, max coords + bound].
inline CheckResult check_interpolation(const Poset& p, const SearchPolicy& pol = {}) {
  CheckResult r{"interpolation", true, pol.bound};
  const std::size_t n = p.size();
  ConeSolver solver(p);
  auto test = [&](const Vec& x1, const Vec& x2, const Vec& y1, const Vec& y2) {
    ++r.instances;
    auto [lo, hi] = detail::envelope(n, {&x1, &x2, &y1, &y2}, pol.bound);
    Vec nx1 = detail::scaled(-1, x1), nx2 = detail::scaled(-1, x2);
    const ConeSolver::Constraint cons[] = {{&nx1, +1}, {&nx2, +1}, {&y1, -1}, {&y2, -1}};
    if (solver.solve(cons, lo, hi)) return true;
    auto pp = share(p);
    r.passed = false;
    r.counterexample = {{"x1", to_hahn(pp, x1)}, {"x2", to_hahn(pp, x2)}, {"y1", to_hahn(pp, y1)},
                        {"y2", to_hahn(pp, y2)}};
    return false;
  };
  const double e = box_size_d(n, pol.bound);
  if (e * e * e / 2 <= static_cast<double>(pol.exhaustive_limit)) {
    const auto box = detail::box_vectors(n, pol.bound, p.all());
    // Count instances first so the exhaustive loop is only run within the solver budget.
    std::vector<std::vector<std::size_t>> ups;
    std::uint64_t total = 0;
    for (std::size_t a = 0; a < box.size(); ++a)
      for (std::size_t b = a; b < box.size(); ++b) {
        std::uint64_t u = 0;
        for (const auto& y : box)
          if (detail::vleq(p, box[a], y) && detail::vleq(p, box[b], y)) ++u;
        total += u * (u + 1) / 2;
      }
    if (total <= pol.solver_limit) {
      for (std::size_t a = 0; a < box.size() && r.passed; ++a)
        for (std::size_t b = a; b < box.size() && r.passed; ++b) {
          std::vector<std::size_t> up;
          for (std::size_t c = 0; c < box.size(); ++c)
            if (detail::vleq(p, box[a], box[c]) && detail::vleq(p, box[b], box[c])) up.push_back(c);
          for (std::size_t i = 0; i < up.size() && r.passed; ++i)
            for (std::size_t j = i; j < up.size() && r.passed; ++j) test(box[a], box[b], box[up[i]], box[up[j]]);
        }
      return r;
    }
  }
  r.exhaustive = false;
  std::mt19937_64 rng(pol.seed);
  const Vec blo(n, -pol.bound), bhi(n, pol.bound);
  std::uint64_t attempts = 0;
  while (r.instances < pol.samples && r.passed && attempts < 50 * pol.samples) {
    ++attempts;
    Vec x1 = random_in_box(n, -pol.bound, pol.bound, p.all(), rng);
    Vec x2 = random_in_box(n, -pol.bound, pol.bound, p.all(), rng);
    Vec n1 = detail::scaled(-1, x1), n2 = detail::scaled(-1, x2);
    const ConeSolver::Constraint above[] = {{&n1, +1}, {&n2, +1}};
    auto y1 = solver.solve(above, blo, bhi, {}, &rng);
    if (!y1) continue;
    auto y2 = solver.solve(above, blo, bhi, {}, &rng);
    test(x1, x2, *y1, *y2);
  }
  return r;
}

/// Riesz decomposition: x <= y + z with x, y, z positive splits as x = a + b,
/// 0 <= a <= y, 0 <= b <= z.
inline CheckResult check_riesz(const Poset& p, const SearchPolicy& pol = {}) {
  CheckResult r{"Riesz decomposition", true, pol.bound};
  const std::size_t n = p.size();
  ConeSolver solver(p);
  const Vec zero(n, 0);
  auto test = [&](const Vec& x, const Vec& y, const Vec& z) {
    ++r.instances;
    auto [lo, hi] = detail::envelope(n, {&x, &y, &z, &zero}, pol.bound);
    Vec zx = detail::sub(z, x);
    // a >= 0, y - a >= 0, x - a = b >= 0, z - b = z - x + a >= 0
    const ConeSolver::Constraint cons[] = {{&zero, +1}, {&y, -1}, {&x, -1}, {&zx, +1}};
    if (solver.solve(cons, lo, hi)) return true;
    auto pp = share(p);
    r.passed = false;
    r.counterexample = {{"x", to_hahn(pp, x)}, {"y", to_hahn(pp, y)}, {"z", to_hahn(pp, z)}};
    return false;
  };
  const double e = box_size_d(n, pol.bound);
  if (e <= static_cast<double>(pol.exhaustive_limit)) {
    std::vector<Vec> cone;
    for_each_in_box(n, -pol.bound, pol.bound, p.all(), [&](const Vec& v) {
      if (in_cone(p, v.data())) cone.push_back(v);
      return true;
    });
    const double c = static_cast<double>(cone.size());
    if (c * c * c / 2 <= static_cast<double>(pol.solver_limit)) {
      for (std::size_t b = 0; b < cone.size() && r.passed; ++b)
        for (std::size_t d = b; d < cone.size() && r.passed; ++d) {
          Vec s = detail::add(cone[b], cone[d]);
          for (std::size_t a = 0; a < cone.size() && r.passed; ++a)
            if (detail::vleq(p, cone[a], s)) test(cone[a], cone[b], cone[d]);
        }
      return r;
    }
  }
  r.exhaustive = false;
  std::mt19937_64 rng(pol.seed);
  const Vec blo(n, -pol.bound), bhi(n, pol.bound);
  const ConeSolver::Constraint positive[] = {{&zero, +1}};
  std::uint64_t attempts = 0;
  while (r.instances < pol.samples && r.passed && attempts < 50 * pol.samples) {
    ++attempts;
    auto y = solver.solve(positive, blo, bhi, {}, &rng);
    auto z = solver.solve(positive, blo, bhi, {}, &rng);
    if (!y || !z) continue;
    Vec s = detail::add(*y, *z);
    const ConeSolver::Constraint below[] = {{&zero, +1}, {&s, -1}};
    auto x = solver.solve(below, blo, bhi, {}, &rng);
    if (!x) continue;
    test(*x, *y, *z);
  }
  return r;
}

/// The prime elements of the positive cone among basis elements are exactly the
/// minimal elements, with non-primality witnessed at the bound.
inline CheckResult check_primes(const Poset& p, const SearchPolicy& pol = {}) {
  CheckResult r{"primes are the minimal elements", true, pol.bound};
  auto pp = share(p);
  const Subset mins = minimal_elements(p);
  for (std::size_t i = 0; i < p.size() && r.passed; ++i) {
    ++r.instances;
    const bool prime = is_prime_element(HahnElement<std::int64_t>::basis(pp, i), pol.bound);
    if (prime != mins.contains(i)) {
      r.passed = false;
      r.counterexample = {{"x", HahnElement<BigInt>::basis(pp, i)}};
      r.detail = prime ? "non-minimal element found prime" : "minimal element found decomposable";
    }
  }
  return r;
}

/// Prime elements among the basis, as element labels.
inline std::vector<std::string> prime_basis_elements(const PosetPtr& p, int bound) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < p->size(); ++i)
    if (is_prime_element(HahnElement<std::int64_t>::basis(p, i), bound)) out.push_back(p->label(i));
  return out;
}

/// Searches for 0 <= x <= y with y in G(s) and x outside G(s), x and y in the box.
/// `y` runs over the bounded part of G(s) (exhaustive within the solver budget,
/// seeded sample otherwise); the basis elements of `s` are always tried first.
inline std::optional<std::pair<Vec, Vec>> convexity_violation(const Poset& p, Subset s, const SearchPolicy& pol,
                                                              bool& exhaustive, std::uint64_t& instances) {
  const std::size_t n = p.size();
  const Subset outside = p.all() - s;
  exhaustive = true;
  if (outside.empty()) return std::nullopt;
  ConeSolver solver(p);
  const Vec zero(n, 0), blo(n, -pol.bound), bhi(n, pol.bound);
  std::optional<std::pair<Vec, Vec>> found;
  auto try_y = [&](const Vec& y) {
    if (!in_cone(p, y.data())) return true;
    const ConeSolver::Constraint cons[] = {{&zero, +1}, {&y, -1}};
    for (std::size_t e : outside) {
      ++instances;
      if (auto x = solver.solve(cons, blo, bhi, Subset::single(e))) {
        found.emplace(*x, y);
        return false;
      }
    }
    return true;
  };
  for (std::size_t i : s) {
    Vec y(n, 0);
    y[i] = 1;
    if (!try_y(y)) return found;
  }
  const double work = box_size_d(s.size(), pol.bound) * static_cast<double>(outside.size());
  if (work <= static_cast<double>(pol.solver_limit)) {
    for_each_in_box(n, -pol.bound, pol.bound, s, try_y);
  } else {
    exhaustive = false;
    std::mt19937_64 rng(pol.seed ^ s.bits());
    const ConeSolver::Constraint positive[] = {{&zero, +1}};
    Vec lo = blo, hi = bhi;
    for (std::size_t e : outside) lo[e] = hi[e] = 0;
    for (std::uint64_t k = 0; k < pol.samples / 4 + 1 && !found; ++k)
      if (auto y = solver.solve(positive, lo, hi, {}, &rng)) try_y(*y);
  }
  return found;
}

/// Every x in G(s) within the box is a difference of positive elements of G(s).
inline std::optional<Vec> directedness_violation(const Poset& p, Subset s, const SearchPolicy& pol, bool& exhaustive,
                                                 std::uint64_t& instances) {
  const std::size_t n = p.size();
  ConeSolver solver(p);
  const Vec zero(n, 0);
  std::optional<Vec> found;
  auto try_x = [&](const Vec& x) {
    ++instances;
    auto [lo, hi] = detail::envelope(n, {&x, &zero}, pol.bound);
    for (std::size_t e : p.all() - s) lo[e] = hi[e] = 0;
    Vec nx = detail::scaled(-1, x);
    // w >= 0 and w - x >= 0, so x = w - (w - x)
    const ConeSolver::Constraint cons[] = {{&zero, +1}, {&nx, +1}};
    if (solver.solve(cons, lo, hi)) return true;
    found = x;
    return false;
  };
  exhaustive = box_size_d(s.size(), pol.bound) <= static_cast<double>(pol.solver_limit);
  if (exhaustive) {
    for_each_in_box(n, -pol.bound, pol.bound, s, try_x);
  } else {
    std::mt19937_64 rng(pol.seed ^ (s.bits() << 1));
    for (std::uint64_t k = 0; k < pol.samples / 4 + 1 && !found; ++k)
      try_x(random_in_box(n, -pol.bound, pol.bound, s, rng));
  }
  return found;
}

/// Ideals of G(I) versus lower sets: G(L) is convex and directed for every lower set L,
/// G(S) is not convex for any other subset S, meets and joins of lower sets match the
/// intersection and generated ideal, and ideal_generated_by returns the least lower
/// set whose ideal contains the generators.
inline CheckResult check_group_ideals(const Poset& p, const SearchPolicy& pol = {}) {
  CheckResult r{"ideals of G(I) are the G(L), L a lower set", true, pol.bound};
  const std::size_t n = p.size();
  auto pp = share(p);
  const auto lows = lower_sets(p);
  auto fail = [&](std::string why, std::vector<std::pair<std::string, Vec>> xs) {
    r.passed = false;
    r.detail = std::move(why);
    for (auto& [name, v] : xs) r.counterexample.emplace_back(name, to_hahn(pp, v));
  };
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n) && r.passed; ++bits) {
    const Subset s(bits);
    const bool lower = is_lower_set(p, s);
    bool ex = true;
    auto cv = convexity_violation(p, s, pol, ex, r.instances);
    r.exhaustive = r.exhaustive && (ex || !lower);
    if (lower && cv) {
      fail("G(L) not convex for lower set {" + join(p.labels_of(s)) + "}", {{"x", cv->first}, {"y", cv->second}});
    } else if (!lower && !cv) {
      fail("no convexity violation found for non-lower subset {" + join(p.labels_of(s)) + "}", {});
    }
    if (lower && r.passed) {
      if (auto dv = directedness_violation(p, s, pol, ex, r.instances))
        fail("G(L) not directed for lower set {" + join(p.labels_of(s)) + "}", {{"x", *dv}});
      r.exhaustive = r.exhaustive && ex;
    }
  }
  for (std::size_t a = 0; a < lows.size() && r.passed; ++a)
    for (std::size_t b = 0; b < lows.size() && r.passed; ++b) {
      const Subset l1 = lows[a], l2 = lows[b];
      ++r.instances;
      if (!is_lower_set(p, l1 & l2)) fail("intersection of lower sets not lower", {});
      std::vector<HahnElement<std::int64_t>> gens;
      for (std::size_t i : l1 | l2) gens.push_back(HahnElement<std::int64_t>::basis(pp, i));
      if (!gens.empty() && ideal_generated_by(gens).lower_set.elems != (l1 | l2))
        fail("generated ideal of G(L1) and G(L2) differs from G(L1 u L2)", {});
    }
  std::mt19937_64 rng(pol.seed + 17);
  for (std::uint64_t k = 0; k < 64 && r.passed && n > 0; ++k) {
    std::vector<HahnElement<std::int64_t>> gens;
    const std::size_t count = 1 + k % 2;
    for (std::size_t g = 0; g < count; ++g) {
      Vec v = random_in_box(n, -pol.bound, pol.bound, p.all(), rng);
      gens.emplace_back(pp, std::vector<std::int64_t>(v.begin(), v.end()));
    }
    ++r.instances;
    const Subset got = ideal_generated_by(gens).lower_set.elems;
    Subset least = p.all();
    for (Subset l : lows) {
      bool contains = std::all_of(gens.begin(), gens.end(), [&](const auto& x) { return x.support().subset_of(l); });
      if (contains && l.size() < least.size()) least = l;
      if (contains && !got.subset_of(l)) {
        fail("generated ideal is not the least ideal containing the generators",
             {{"x", Vec(gens[0].coeffs().begin(), gens[0].coeffs().end())}});
        break;
      }
    }
    if (r.passed && got != least) fail("generated ideal differs from least containing lower set", {});
  }
  return r;
}

/// Runs all dimension-group checks.
inline std::vector<CheckResult> dimension_group_suite(const Poset& p, const SearchPolicy& pol = {}) {
  std::vector<CheckResult> out;
  out.push_back(check_conical(p, pol));
  out.push_back(check_riesz(p, pol));
  out.push_back(check_interpolation(p, pol));
  out.push_back(check_unperforation(p, pol));
  if (!p.empty()) out.push_back(check_order_unit(p, pol));
  out.push_back(check_primes(p, pol));
  out.push_back(check_group_ideals(p, pol));
  return out;
}

}  // namespace posalg
