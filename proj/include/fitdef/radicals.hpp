#pragma once

// Fitting subgroup and soluble radical: an elementwise method (a lies in the
// radical iff its normal closure is nilpotent / soluble) and an independent
// oracle that joins all nilpotent / soluble normal subgroups.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "fitdef/error.hpp"
#include "fitdef/group.hpp"
#include "fitdef/series.hpp"

namespace fitdef {

inline constexpr std::size_t kOracleUnionBudget = std::size_t{1} << 20;
inline constexpr std::size_t kProfileSubsetCap = 1000000;
inline constexpr std::size_t kProfileSamples = 10000;

enum class RadicalMethod { Elementwise, Oracle };

struct RadicalResult {
  Subgroup subgroup;
  /// Indexed by element: nilpotency class (Fitting) or derived length
  /// (radical) of the element's normal closure, empty when it has none.
  std::vector<std::optional<std::size_t>> witness_classes;
  RadicalMethod method = RadicalMethod::Elementwise;
  /// Class / derived length of the subgroup itself.
  std::size_t invariant = 0;

  /// Largest witness value over the members.
  std::size_t max_witness() const {
    std::size_t m = 0;
    for (const auto x : subgroup.elements())
      if (witness_classes[x]) m = std::max(m, *witness_classes[x]);
    return m;
  }
};

namespace detail {

template <class Measure>
RadicalResult elementwise_radical(const FiniteGroup& g, Measure&& measure, const char* what) {
  std::vector<std::optional<std::size_t>> witness(g.order());
  std::vector<Element> members;
  for (const auto& cls : g.classes()) {
    const auto nc = normal_closure(g, {cls.front()});
    const auto value = measure(nc);
    for (const auto x : cls) {
      witness[x] = value;
      if (value) members.push_back(x);
    }
  }
  auto sub = closure(g, members);
  if (sub.order() != members.size())
    throw Error(std::string("elementwise ") + what + " set is not a subgroup");
  if (!is_normal(g, sub)) throw Error(std::string("elementwise ") + what + " is not normal");
  const auto inv = measure(sub);
  if (!inv) throw Error(std::string("elementwise ") + what + " fails its defining property");
  RadicalResult r{std::move(sub), std::move(witness), RadicalMethod::Elementwise, *inv};
  if (r.max_witness() > r.invariant) throw Error(std::string("elementwise ") + what + " has an oversized witness");
  return r;
}

}  // namespace detail

/// F(G) = {a : <a>^G nilpotent}.
inline RadicalResult fitting(const FiniteGroup& g) {
  return detail::elementwise_radical(g, [&](const Subgroup& n) { return nilpotency_class(g, n); }, "Fitting");
}

/// R(G) = {a : <a>^G soluble}.
inline RadicalResult soluble_radical(const FiniteGroup& g) {
  return detail::elementwise_radical(g, [&](const Subgroup& n) { return derived_length(g, n); }, "radical");
}

/// Every normal subgroup, as closures of unions of conjugacy classes that
/// contain the identity class.  Sorted by order, then by elements.
inline std::vector<Subgroup> normal_subgroups(const FiniteGroup& g, std::size_t budget = kOracleUnionBudget) {
  std::vector<std::size_t> others;
  const auto id_class = g.class_index(g.identity());
  for (std::size_t c = 0; c < g.class_count(); ++c)
    if (c != id_class) others.push_back(c);
  if (others.size() >= 63 || (std::uint64_t{1} << others.size()) > budget)
    throw BudgetError("oracle infeasible: " + std::to_string(others.size() + 1) +
                      " conjugacy classes exceed the class-union budget");

  std::set<std::vector<Element>> seen;
  std::vector<Subgroup> out;
  const std::uint64_t unions = std::uint64_t{1} << others.size();
  for (std::uint64_t mask = 0; mask < unions; ++mask) {
    std::vector<Element> gens{g.identity()};
    for (std::size_t i = 0; i < others.size(); ++i)
      if (mask >> i & 1) {
        const auto& cls = g.classes()[others[i]];
        gens.insert(gens.end(), cls.begin(), cls.end());
      }
    auto sub = closure(g, gens);
    std::vector<Element> key(sub.elements().begin(), sub.elements().end());
    if (seen.insert(std::move(key)).second) out.push_back(std::move(sub));
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return std::lexicographical_compare(a.elements().begin(), a.elements().end(), b.elements().begin(),
                                        b.elements().end());
  });
  return out;
}

namespace detail {
template <class Pred>
Subgroup join_normal(const FiniteGroup& g, std::size_t budget, Pred&& keep) {
  std::vector<Element> gens;
  for (const auto& n : normal_subgroups(g, budget))
    if (keep(n)) gens.insert(gens.end(), n.generators().begin(), n.generators().end());
  return closure(g, gens);
}
}  // namespace detail

/// Join of all nilpotent normal subgroups.
inline Subgroup oracle_fitting(const FiniteGroup& g, std::size_t budget = kOracleUnionBudget) {
  return detail::join_normal(g, budget, [&](const Subgroup& n) { return nilpotency_class(g, n).has_value(); });
}

/// Join of all soluble normal subgroups.
inline Subgroup oracle_radical(const FiniteGroup& g, std::size_t budget = kOracleUnionBudget) {
  return detail::join_normal(g, budget, [&](const Subgroup& n) { return derived_length(g, n).has_value(); });
}

// ---------------------------------------------------------------------------

struct BoundProfile {
  std::vector<std::size_t> m_values;
  std::vector<std::size_t> d_of_m;
  /// Per m: true when size-m subsets were sampled instead of enumerated.
  std::vector<bool> sampled;
  /// Per m: a subset of size <= m attaining d(m).
  std::vector<std::vector<Element>> witnesses;
  std::size_t subsets_examined = 0;

  bool any_sampled() const { return std::find(sampled.begin(), sampled.end(), true) != sampled.end(); }
};

namespace detail {
inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return r;
}
}  // namespace detail

/// d(m) = max nilpotency class of <A>^G over subsets A of F(G) with |A| <= m.
/// Subsets of each size are enumerated while their count stays within
/// `subset_cap`; beyond that `samples` random subsets are drawn and the
/// entry is flagged as sampled.
inline BoundProfile bound_profile(const FiniteGroup& g, const Subgroup& fit, std::size_t m_max,
                                  std::uint64_t seed = 0, std::size_t subset_cap = kProfileSubsetCap,
                                  std::size_t samples = kProfileSamples) {
  if (m_max == 0) throw Error("bound_profile: m_max must be at least 1");
  const auto elems = fit.elements();
  const auto f = elems.size();
  BoundProfile prof;
  std::mt19937_64 rng(seed);
  std::size_t best = 0;
  std::vector<Element> best_set{g.identity()};

  auto measure = [&](const std::vector<Element>& subset) {
    ++prof.subsets_examined;
    const auto c = nilpotency_class(g, normal_closure(g, subset));
    if (!c) throw Error("bound_profile: normal closure inside F(G) is not nilpotent");
    if (*c > best) {
      best = *c;
      best_set = subset;
    }
  };

  for (std::size_t m = 1; m <= m_max; ++m) {
    bool was_sampled = false;
    if (m <= f) {
      const auto count = detail::binomial_capped(f, m, subset_cap);
      if (count <= subset_cap) {
        std::vector<std::size_t> idx(m);
        for (std::size_t i = 0; i < m; ++i) idx[i] = i;
        std::vector<Element> subset(m);
        while (true) {
          for (std::size_t i = 0; i < m; ++i) subset[i] = elems[idx[i]];
          measure(subset);
          std::size_t i = m;
          while (i > 0 && idx[i - 1] == f - m + i - 1) --i;
          if (i == 0) break;
          ++idx[i - 1];
          for (auto j = i; j < m; ++j) idx[j] = idx[j - 1] + 1;
        }
      } else {
        was_sampled = true;
        std::vector<Element> pool(elems.begin(), elems.end());
        for (std::size_t s = 0; s < samples; ++s) {
          // partial Fisher-Yates for a uniform m-subset
          for (std::size_t i = 0; i < m; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, f - 1);
            std::swap(pool[i], pool[pick(rng)]);
          }
          measure(std::vector<Element>(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(m)));
        }
      }
    }
    prof.m_values.push_back(m);
    prof.d_of_m.push_back(best);
    prof.sampled.push_back(was_sampled);
    prof.witnesses.push_back(best_set);
  }
  return prof;
}

// ---------------------------------------------------------------------------

/// Least k >= 1 with [x,_k y] = 1, or empty if none up to n_max.
inline std::optional<std::size_t> engel_degree(const FiniteGroup& g, Element x, Element y, std::size_t n_max) {
  Element e = g.commutator(x, y);
  for (std::size_t k = 1; k <= n_max; ++k) {
    if (e == g.identity()) return k;
    e = g.commutator(e, y);
  }
  return std::nullopt;
}

inline bool is_engel(const FiniteGroup& g, std::size_t n) {
  for (Element x = 0; x < g.order(); ++x)
    for (Element y = 0; y < g.order(); ++y)
      if (!engel_degree(g, x, y, n)) return false;
  return true;
}

/// Smallest n <= n_max such that G is n-Engel.
inline std::optional<std::size_t> engel_classify(const FiniteGroup& g, std::size_t n_max) {
  std::size_t worst = 1;
  for (Element x = 0; x < g.order(); ++x)
    for (Element y = 0; y < g.order(); ++y) {
      const auto d = engel_degree(g, x, y, n_max);
      if (!d) return std::nullopt;
      worst = std::max(worst, *d);
    }
  return worst;
}

}  // namespace fitdef
