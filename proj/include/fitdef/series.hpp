#pragma once

// Commutator subgroups and the lower central / derived series of a normal
// subgroup, each computable by repeated commutator subgroups or directly
// from conjugated commutator words.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fitdef/error.hpp"
#include "fitdef/group.hpp"
#include "fitdef/word.hpp"

namespace fitdef {

/// All conjugates of the given elements, without repeats, in class order.
inline std::vector<Element> conjugates_of(const FiniteGroup& g, std::span<const Element> xs) {
  std::vector<bool> taken(g.class_count(), false);
  std::vector<Element> out;
  for (const auto x : xs) {
    const auto c = g.class_index(x);
    if (taken[c]) continue;
    taken[c] = true;
    const auto& cls = g.classes()[c];
    out.insert(out.end(), cls.begin(), cls.end());
  }
  return out;
}

/// [H,K] for H, K normal in G, generated by {[a^x, b^y]} with a, b running
/// over the generators of H and K and x, y over G.  Since a^x only depends
/// on the coset of C_G(a), the conjugates are taken from conjugacy classes.
inline Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& h, const Subgroup& k) {
  if (!is_normal(g, h)) throw PreconditionError("commutator_subgroup: first argument is not normal");
  if (!is_normal(g, k)) throw PreconditionError("commutator_subgroup: second argument is not normal");
  const auto as = conjugates_of(g, h.generators());
  const auto bs = conjugates_of(g, k.generators());
  std::vector<bool> hit(g.order(), false);
  std::vector<Element> x;
  for (const auto a : as)
    for (const auto b : bs) {
      const auto c = g.commutator(a, b);
      if (!hit[c]) {
        hit[c] = true;
        x.push_back(c);
      }
    }
  return closure(g, x);
}

/// [H,K] as the closure of every commutator [h,k], h in H, k in K.
inline Subgroup commutator_subgroup_all_pairs(const FiniteGroup& g, const Subgroup& h, const Subgroup& k) {
  std::vector<bool> hit(g.order(), false);
  std::vector<Element> x;
  for (const auto a : h.elements())
    for (const auto b : k.elements()) {
      const auto c = g.commutator(a, b);
      if (!hit[c]) {
        hit[c] = true;
        x.push_back(c);
      }
    }
  return closure(g, x);
}

enum class SeriesKind { LowerCentral, Derived };

inline const char* to_string(SeriesKind k) { return k == SeriesKind::LowerCentral ? "lower-central" : "derived"; }

struct SeriesReport {
  SeriesKind kind;
  /// Terms N = N^0 >= N^1 >= ...  Ends with the trivial subgroup when the
  /// series reaches it; otherwise the last term repeats its predecessor.
  std::vector<Subgroup> terms;
  /// True when the series stalled above the trivial subgroup.
  bool stabilized = false;
  /// Nilpotency class or derived length; empty when stabilized.
  std::optional<std::size_t> class_or_length;
  /// Terms from the word-generator route, when requested.
  std::vector<Subgroup> word_terms;
  bool paths_agree = true;
};

enum class SeriesPaths { Direct, Both };

namespace detail {

template <class Next>
std::vector<Subgroup> descend(const Subgroup& n, Next&& next) {
  std::vector<Subgroup> terms{n};
  // Strict descent reaches a fixed point within |N| steps.
  for (std::size_t step = 0; step <= n.order(); ++step) {
    if (terms.back().is_trivial()) return terms;
    const auto k = terms.size();
    terms.push_back(next(k, terms.back()));
    if (terms.back() == terms[terms.size() - 2]) return terms;
  }
  throw Error("series did not stabilize within |N| steps");
}

inline void finish(SeriesReport& r) {
  const auto& t = r.terms;
  r.stabilized = !t.back().is_trivial();
  if (!r.stabilized) r.class_or_length = t.size() - 1;
  if (!r.word_terms.empty()) r.paths_agree = r.word_terms == r.terms;
}

}  // namespace detail

/// N^{k+1} = [N^k, N] by repeated commutator subgroups.
inline std::vector<Subgroup> lower_central_terms_direct(const FiniteGroup& g, const Subgroup& n) {
  return detail::descend(n, [&](std::size_t, const Subgroup& prev) { return commutator_subgroup(g, prev, n); });
}

/// N^k as the closure of {u_k(b_1^a_1, ..., b_{k+1}^a_{k+1})}, b_i generators of N.
inline std::vector<Subgroup> lower_central_terms_words(const FiniteGroup& g, const Subgroup& n) {
  const auto cs = conjugates_of(g, n.generators());
  return detail::descend(n, [&](std::size_t k, const Subgroup&) {
    const auto w = build_u(k);
    const std::vector<std::vector<Element>> domains(w.arity(), cs);
    return closure(g, word_image(g, w, domains));
  });
}

/// N^{(k+1)} = [N^{(k)}, N^{(k)}].
inline std::vector<Subgroup> derived_terms_direct(const FiniteGroup& g, const Subgroup& n) {
  return detail::descend(n, [&](std::size_t, const Subgroup& prev) { return commutator_subgroup(g, prev, prev); });
}

/// N^{(k)} as the closure of {v_k(b_1^a_1, ..., b_{2^k}^a_{2^k})}.
inline std::vector<Subgroup> derived_terms_words(const FiniteGroup& g, const Subgroup& n) {
  const auto cs = conjugates_of(g, n.generators());
  return detail::descend(n, [&](std::size_t k, const Subgroup&) {
    const auto w = build_v(k);
    const std::vector<std::vector<Element>> domains(w.arity(), cs);
    return closure(g, word_image(g, w, domains));
  });
}

inline SeriesReport lower_central_series(const FiniteGroup& g, const Subgroup& n,
                                         SeriesPaths paths = SeriesPaths::Both) {
  if (!is_normal(g, n)) throw PreconditionError("lower_central_series: subgroup is not normal");
  SeriesReport r{SeriesKind::LowerCentral, lower_central_terms_direct(g, n), false, {}, {}, true};
  if (paths == SeriesPaths::Both) r.word_terms = lower_central_terms_words(g, n);
  detail::finish(r);
  return r;
}

inline SeriesReport derived_series(const FiniteGroup& g, const Subgroup& n,
                                   SeriesPaths paths = SeriesPaths::Both) {
  if (!is_normal(g, n)) throw PreconditionError("derived_series: subgroup is not normal");
  SeriesReport r{SeriesKind::Derived, derived_terms_direct(g, n), false, {}, {}, true};
  if (paths == SeriesPaths::Both) r.word_terms = derived_terms_words(g, n);
  detail::finish(r);
  return r;
}

/// Least c with N^c trivial (0 for the trivial subgroup); empty if N is not nilpotent.
inline std::optional<std::size_t> nilpotency_class(const FiniteGroup& g, const Subgroup& n) {
  return lower_central_series(g, n, SeriesPaths::Direct).class_or_length;
}

inline std::optional<std::size_t> derived_length(const FiniteGroup& g, const Subgroup& n) {
  return derived_series(g, n, SeriesPaths::Direct).class_or_length;
}

// ---------------------------------------------------------------------------
// Commutator identities used to reduce [H,K] to conjugated generators.

inline constexpr std::array<const char*, 5> kCommutatorIdentities{
    "[x,yz] = [x,z][x,y]^z",
    "[xy,z] = [x,z]^y[y,z]",
    "[x,y]^z = [x^z,y^z]",
    "[x^-1,y] = [x,y^(x^-1)]^-1",
    "[x,y^-1] = [x^(y^-1),y]^-1",
};

/// Index of the first identity that fails at (x,y,z), if any.
inline std::optional<std::size_t> failing_commutator_identity(const FiniteGroup& g, Element x, Element y,
                                                              Element z) {
  const auto c = [&](Element a, Element b) { return g.commutator(a, b); };
  const auto j = [&](Element a, Element b) { return g.conjugate(a, b); };
  const auto m = [&](Element a, Element b) { return g.mul(a, b); };
  const auto xi = g.inv(x), yi = g.inv(y);
  if (c(x, m(y, z)) != m(c(x, z), j(c(x, y), z))) return 0;
  if (c(m(x, y), z) != m(j(c(x, z), y), c(y, z))) return 1;
  if (j(c(x, y), z) != c(j(x, z), j(y, z))) return 2;
  if (c(xi, y) != g.inv(c(x, j(y, xi)))) return 3;
  if (c(x, yi) != g.inv(c(j(x, yi), y))) return 4;
  return std::nullopt;
}

}  // namespace fitdef
