#pragma once

// Formulas defining the Fitting subgroup and the soluble radical, the
// nilpotency formulas phi_{n,m} over tuples, and the truncated check of the
// theory T_p ("F(G) has class at most p").

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fitdef/error.hpp"
#include "fitdef/evaluate.hpp"
#include "fitdef/formula.hpp"
#include "fitdef/group.hpp"
#include "fitdef/radicals.hpp"
#include "fitdef/word.hpp"

namespace fitdef {

inline constexpr std::size_t kMaxMaterializedConjuncts = 100000;

namespace detail {
/// A x<first>. A x<first+1>. ... body
inline Formula forall_block(std::size_t first, std::size_t count, Formula body) {
  for (std::size_t i = count; i-- > 0;) body = formula::forall(first + i, std::move(body));
  return body;
}

inline Formula conjugated_word_is_one(const Word& w, const std::vector<Term>& bases, std::size_t first_var) {
  std::vector<Term> args;
  for (std::size_t i = 0; i < bases.size(); ++i) args.push_back(term::conj(bases[i], term::var(first_var + i)));
  return formula::eq(word_term(w, args), term::one());
}
}  // namespace detail

/// A x1 ... A x_{n+1}. u_n(p0^x1, ..., p0^x_{n+1}) = 1
inline Formula build_phi_defining(std::size_t n) {
  if (n == 0) throw Error("build_phi_defining: n must be at least 1");
  const auto w = build_u(n);
  const std::vector<Term> bases(w.arity(), term::param(0));
  return detail::forall_block(1, w.arity(), detail::conjugated_word_is_one(w, bases, 1));
}

/// A x1 ... A x_{2^n}. v_n(p0^x1, ..., p0^x_{2^n}) = 1
inline Formula build_psi_defining(std::size_t n) {
  if (n == 0) throw Error("build_psi_defining: n must be at least 1");
  const auto w = build_v(n);
  const std::vector<Term> bases(w.arity(), term::param(0));
  return detail::forall_block(1, w.arity(), detail::conjugated_word_is_one(w, bases, 1));
}

namespace detail {
/// phi_{n,m} with n = 0 allowed (u_0(z) = z).
inline Formula phi_nm_unchecked(std::size_t n, std::size_t m, std::size_t first_bound, std::size_t cap) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i <= n; ++i) {
    count *= m;
    if (count > cap)
      throw BudgetError("phi_{" + std::to_string(n) + "," + std::to_string(m) + "} would have more than " +
                        std::to_string(cap) + " conjuncts; use check_phi_nm_lazy");
  }
  std::vector<Formula> conjuncts;
  std::vector<std::size_t> sigma(n + 1, 0);
  while (true) {
    std::vector<Term> args;
    for (std::size_t i = 0; i <= n; ++i)
      args.push_back(term::conj(term::var(sigma[i] + 1), term::var(first_bound + i)));
    const auto t = n == 0 ? args[0] : word_term(build_u(n), args);
    conjuncts.push_back(formula::eq(t, term::one()));
    // lexicographic successor, sigma[0] most significant
    std::size_t i = n + 1;
    while (i > 0 && sigma[i - 1] == m - 1) sigma[--i] = 0;
    if (i == 0) break;
    ++sigma[i - 1];
  }
  return forall_block(first_bound, n + 1, formula::conj(std::move(conjuncts)));
}
}  // namespace detail

/// phi_{n,m}(x1..xm): A y1 ... A y_{n+1}. AND over sigma: u_n(x_{s(1)}^y1, ..., x_{s(n+1)}^y_{n+1}) = 1,
/// sigma running over all maps {1..n+1} -> {1..m}.  The y's are x_{m+1}..x_{m+n+1}.
inline Formula build_phi_nm(std::size_t n, std::size_t m, std::size_t cap = kMaxMaterializedConjuncts) {
  if (n == 0 || m == 0) throw Error("build_phi_nm: n and m must be at least 1");
  return detail::phi_nm_unchecked(n, m, m + 1, cap);
}

/// Evaluates phi_{n,m}(b) without building the conjunction.  Every slot of
/// every conjunct ranges over the same set C of conjugates of the b_i, so
/// the conjunction holds iff u_n vanishes on C^{n+1}.  Values of u_k on
/// C^{k+1} are propagated level by level, deduplicated, with early exit.
/// n = 0 is accepted and means "every b_i is trivial".
inline EvalResult check_phi_nm_lazy(const FiniteGroup& g, std::size_t n, std::size_t m, std::span<const Element> b) {
  if (b.size() != m) throw Error("check_phi_nm_lazy: expected " + std::to_string(m) + " elements");
  const auto e = g.identity();
  const std::size_t first_bound = m + 1;

  // conjugates with the conjugator that produced them
  std::vector<Element> cs;
  std::vector<Element> conjugator;
  {
    std::vector<bool> seen(g.order(), false);
    for (const auto x : b)
      for (Element y = 0; y < g.order(); ++y) {
        const auto c = g.conjugate(x, y);
        if (!seen[c]) {
          seen[c] = true;
          cs.push_back(c);
          conjugator.push_back(y);
        }
      }
  }

  EvalResult r;
  if (n == 0) {
    for (std::size_t i = 0; i < cs.size(); ++i) {
      ++r.tuples_examined;
      if (cs[i] != e) {
        r.witness[first_bound] = conjugator[i];
        return r;
      }
    }
    r.truth = true;
    return r;
  }

  constexpr std::size_t none = static_cast<std::size_t>(-1);
  // parent[k][v] = (previous value or first slot index, slot index) for level k
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> parent;
  std::vector<Element> level;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::pair<std::size_t, std::size_t>> par(g.order(), {none, none});
    std::vector<Element> next;
    auto record = [&](Element v, std::size_t from, std::size_t slot) {
      if (par[v].second != none) return false;
      par[v] = {from, slot};
      next.push_back(v);
      return k == n && v != e;
    };
    bool failed = false;
    if (k == 1) {
      for (std::size_t i = 0; i < cs.size() && !failed; ++i)
        for (std::size_t j = 0; j < cs.size() && !failed; ++j) {
          ++r.tuples_examined;
          failed = record(g.commutator(cs[i], cs[j]), i, j);
        }
    } else {
      for (const auto v : level) {
        for (std::size_t j = 0; j < cs.size() && !failed; ++j) {
          ++r.tuples_examined;
          failed = record(g.commutator(v, cs[j]), v, j);
        }
        if (failed) break;
      }
    }
    parent.push_back(std::move(par));
    if (failed) {
      // rebuild a tuple (c_1..c_{n+1}) with u_n(c) != 1
      std::vector<std::size_t> slots(n + 1);
      Element v = next.back();
      for (std::size_t lv = n; lv >= 1; --lv) {
        const auto [from, slot] = parent[lv - 1][v];
        slots[lv] = slot;
        if (lv == 1)
          slots[0] = from;
        else
          v = static_cast<Element>(from);
      }
      for (std::size_t i = 0; i <= n; ++i) r.witness[first_bound + i] = conjugator[slots[i]];
      return r;
    }
    if (next.size() == 1 && next.front() == e) break;  // u_k vanishes, so does u_n
    level = std::move(next);
  }
  r.truth = true;
  return r;
}

/// {a in G : G |= f(a)} for a formula with one parameter slot and no free variables.
inline std::vector<Element> definable_set(const FiniteGroup& g, const Formula& f, const EvalOptions& opts = {}) {
  if (param_count(f) != 1) throw Error("definable_set: formula must use exactly one parameter slot (p0)");
  if (!free_vars(f).empty()) throw Error("definable_set: formula has free variables");
  std::vector<Element> out;
  for (Element a = 0; a < g.order(); ++a) {
    const Element params[] = {a};
    if (evaluate(g, f, params, {}, opts).truth) out.push_back(a);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Truncated T_p

/// The sentence A x1..xm. (AND_i phi_{n,1}(x_i)) -> phi_{p,m}(x1..xm).
/// p = 0 uses u_0(z) = z.
inline Formula build_tp_sentence(std::size_t n, std::size_t p, std::size_t m) {
  if (n == 0 || m == 0) throw Error("build_tp_sentence: n and m must be at least 1");
  std::vector<Formula> premises;
  for (std::size_t i = 1; i <= m; ++i) {
    const auto w = build_u(n);
    const std::vector<Term> bases(w.arity(), term::var(i));
    premises.push_back(detail::forall_block(m + 1, w.arity(), detail::conjugated_word_is_one(w, bases, m + 1)));
  }
  auto body = formula::implies(formula::conj(std::move(premises)),
                               detail::phi_nm_unchecked(p, m, m + 1, kMaxMaterializedConjuncts));
  return detail::forall_block(1, m, std::move(body));
}

struct TpCheck {
  EvalResult result;
  std::size_t p = 0;
  /// Largest nilpotency class of a nilpotent <g>^G; the n of the family checked.
  std::size_t n_star = 0;
  /// Tuple length checked (p + 1).
  std::size_t m = 0;
  /// Elements satisfying phi_{n*,1}.
  std::vector<Element> premise_set;
  std::uint64_t subsets_examined = 0;
};

inline constexpr std::uint64_t kMaxTpSubsets = 1000000;

/// Checks the member phi_{n*,p+1} of T_p.  Its truth on a tuple depends only
/// on the set of entries and shrinks as the set grows, so it suffices to
/// check sets of size min(p+1, |premise set|), each padded to length p+1.
inline TpCheck check_tp(const FiniteGroup& g, std::size_t p, const RadicalResult& fit,
                        std::uint64_t max_subsets = kMaxTpSubsets) {
  TpCheck out;
  out.p = p;
  out.m = p + 1;
  out.n_star = 0;
  for (const auto& w : fit.witness_classes)
    if (w) out.n_star = std::max(out.n_star, *w);

  for (Element x = 0; x < g.order(); ++x) {
    const Element one[] = {x};
    if (check_phi_nm_lazy(g, out.n_star, 1, one).truth) out.premise_set.push_back(x);
  }
  const auto& d = out.premise_set;
  const auto k = std::min(out.m, d.size());
  if (detail::binomial_capped(d.size(), k, max_subsets) > max_subsets)
    throw BudgetError("truncated T_p check needs more than " + std::to_string(max_subsets) + " subsets");

  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<Element> tuple(out.m);
  out.result.truth = true;
  while (true) {
    for (std::size_t i = 0; i < out.m; ++i) tuple[i] = d[idx[std::min(i, k - 1)]];
    ++out.subsets_examined;
    auto r = check_phi_nm_lazy(g, p, out.m, tuple);
    out.result.tuples_examined += r.tuples_examined;
    if (!r.truth) {
      out.result.truth = false;
      out.result.witness = std::move(r.witness);
      for (std::size_t i = 0; i < out.m; ++i) out.result.witness[i + 1] = tuple[i];
      return out;
    }
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == d.size() - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (auto j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

inline TpCheck check_tp(const FiniteGroup& g, std::size_t p) { return check_tp(g, p, fitting(g)); }

}  // namespace fitdef
