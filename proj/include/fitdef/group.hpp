#pragma once

// Finite groups as dense multiplication tables, plus subgroup machinery
// (closure, normal closure, conjugacy classes, centralizers).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fitdef/error.hpp"

namespace fitdef {

/// Elements are dense indices 0..order-1 into the group's tables.
using Element = std::uint32_t;

inline constexpr std::size_t kDefaultMaxOrder = 5040;

/// Orders up to this are checked for associativity exhaustively; above it
/// a fixed number of seeded random triples is checked instead.
inline constexpr std::size_t kExhaustiveAssociativityOrder = 256;
inline constexpr std::size_t kAssociativitySamples = 10000;

class FiniteGroup {
public:
  /// Builds a group from a row-major order x order table.  Validates the
  /// Latin-square property, the identity, and associativity.
  static FiniteGroup from_table(std::size_t order, std::vector<Element> table,
                                std::vector<std::string> labels = {},
                                std::size_t max_order = kDefaultMaxOrder) {
    if (order == 0) throw GroupError("group order must be positive");
    if (order > max_order)
      throw GroupError("group order " + std::to_string(order) + " exceeds limit " +
                       std::to_string(max_order));
    if (table.size() != order * order)
      throw GroupError("multiplication table has " + std::to_string(table.size()) +
                       " entries, expected " + std::to_string(order * order));
    if (!labels.empty() && labels.size() != order)
      throw GroupError("label count does not match group order");

    FiniteGroup g;
    g.order_ = order;
    g.table_ = std::move(table);
    g.labels_ = std::move(labels);
    g.validate();
    g.compute_classes();
    return g;
  }

  std::size_t order() const noexcept { return order_; }
  Element identity() const noexcept { return identity_; }

  Element mul(Element a, Element b) const noexcept { return table_[a * order_ + b]; }
  Element inv(Element a) const noexcept { return inverse_[a]; }

  /// [a,b] = a^-1 b^-1 a b
  Element commutator(Element a, Element b) const noexcept {
    return mul(mul(inverse_[a], inverse_[b]), mul(a, b));
  }

  /// g^h = h^-1 g h
  Element conjugate(Element g, Element h) const noexcept {
    return mul(mul(inverse_[h], g), h);
  }

  Element power(Element a, std::size_t k) const noexcept {
    Element r = identity_;
    for (std::size_t i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }

  std::size_t element_order(Element a) const noexcept {
    std::size_t k = 1;
    for (Element x = a; x != identity_; x = mul(x, a)) ++k;
    return k;
  }

  bool is_abelian() const noexcept {
    for (Element a = 0; a < order_; ++a)
      for (Element b = a + 1; b < order_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  std::span<const Element> row(Element a) const noexcept {
    return {table_.data() + a * order_, order_};
  }
  std::span<const Element> table() const noexcept { return table_; }

  bool has_labels() const noexcept { return !labels_.empty(); }
  std::string label(Element a) const {
    return labels_.empty() ? std::to_string(a) : labels_[a];
  }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Index of the conjugacy class containing a; classes are numbered in
  /// order of their smallest element.
  std::size_t class_index(Element a) const noexcept { return class_of_[a]; }
  const std::vector<std::vector<Element>>& classes() const noexcept { return classes_; }
  std::size_t class_count() const noexcept { return classes_.size(); }

private:
  FiniteGroup() = default;

  void validate() {
    const auto n = order_;
    std::vector<char> seen(n);
    for (std::size_t r = 0; r < n; ++r) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t c = 0; c < n; ++c) {
        const auto v = table_[r * n + c];
        if (v >= n)
          throw GroupError("table entry out of range at row " + std::to_string(r) +
                           ", column " + std::to_string(c));
        if (seen[v]) throw GroupError("row " + std::to_string(r) + " is not a permutation");
        seen[v] = 1;
      }
    }
    for (std::size_t c = 0; c < n; ++c) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t r = 0; r < n; ++r) {
        const auto v = table_[r * n + c];
        if (seen[v]) throw GroupError("column " + std::to_string(c) + " is not a permutation");
        seen[v] = 1;
      }
    }

    bool found = false;
    for (Element e = 0; e < n && !found; ++e) {
      bool ok = true;
      for (Element x = 0; x < n && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
      if (ok) {
        identity_ = e;
        found = true;
      }
    }
    if (!found) throw GroupError("table has no identity element");

    inverse_.assign(n, 0);
    for (Element x = 0; x < n; ++x) {
      auto r = row(x);
      const auto it = std::find(r.begin(), r.end(), identity_);
      inverse_[x] = static_cast<Element>(it - r.begin());
      if (mul(inverse_[x], x) != identity_)
        throw GroupError("element " + std::to_string(x) + " has no two-sided inverse");
    }

    auto check = [&](Element a, Element b, Element c) {
      if (mul(mul(a, b), c) != mul(a, mul(b, c)))
        throw GroupError("table is not associative at (" + std::to_string(a) + "," +
                         std::to_string(b) + "," + std::to_string(c) + ")");
    };
    if (n <= kExhaustiveAssociativityOrder) {
      for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
          for (Element c = 0; c < n; ++c) check(a, b, c);
    } else {
      std::mt19937_64 rng(0x5eedu);
      std::uniform_int_distribution<Element> pick(0, static_cast<Element>(n - 1));
      for (std::size_t i = 0; i < kAssociativitySamples; ++i) check(pick(rng), pick(rng), pick(rng));
    }
  }

  void compute_classes() {
    constexpr auto unset = static_cast<std::size_t>(-1);
    class_of_.assign(order_, unset);
    for (Element g = 0; g < order_; ++g) {
      if (class_of_[g] != unset) continue;
      const auto idx = classes_.size();
      std::vector<Element> cls;
      for (Element h = 0; h < order_; ++h) {
        const auto c = conjugate(g, h);
        if (class_of_[c] == unset) {
          class_of_[c] = idx;
          cls.push_back(c);
        }
      }
      std::sort(cls.begin(), cls.end());
      classes_.push_back(std::move(cls));
    }
  }

  std::size_t order_ = 0;
  Element identity_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> class_of_;
  std::vector<std::vector<Element>> classes_;
};

/// A subgroup of a parent group.  The membership mask is the source of
/// truth; the generator list is any set that generates it.  The parent
/// group must outlive the subgroup.
class Subgroup {
public:
  Subgroup(const FiniteGroup& parent, std::vector<bool> mask, std::vector<Element> generators)
      : parent_(&parent), mask_(std::move(mask)), generators_(std::move(generators)) {
    for (Element x = 0; x < mask_.size(); ++x)
      if (mask_[x]) elements_.push_back(x);
  }

  const FiniteGroup& parent() const noexcept { return *parent_; }
  std::size_t order() const noexcept { return elements_.size(); }
  bool contains(Element x) const noexcept { return mask_[x]; }
  bool is_trivial() const noexcept { return elements_.size() == 1; }
  bool is_whole() const noexcept { return elements_.size() == parent_->order(); }
  std::span<const Element> elements() const noexcept { return elements_; }
  std::span<const Element> generators() const noexcept { return generators_; }
  const std::vector<bool>& mask() const noexcept { return mask_; }

  bool is_subset_of(const Subgroup& other) const noexcept {
    return std::all_of(elements_.begin(), elements_.end(),
                       [&](Element x) { return other.contains(x); });
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) noexcept {
    return a.parent_ == b.parent_ && a.mask_ == b.mask_;
  }

private:
  const FiniteGroup* parent_;
  std::vector<bool> mask_;
  std::vector<Element> elements_;
  std::vector<Element> generators_;
};

/// Smallest subgroup containing `gens`.  The stored generator list keeps
/// only those inputs that enlarged the subgroup when added in order.
inline Subgroup closure(const FiniteGroup& g, std::span<const Element> gens) {
  std::vector<bool> mask(g.order(), false);
  std::vector<Element> members{g.identity()};
  std::vector<Element> kept;
  mask[g.identity()] = true;

  for (const auto a : gens) {
    if (mask[a]) continue;
    kept.push_back(a);
    std::vector<Element> queue;
    const auto snapshot = members.size();
    for (std::size_t i = 0; i < snapshot; ++i) {
      const auto y = g.mul(members[i], a);
      if (!mask[y]) {
        mask[y] = true;
        members.push_back(y);
        queue.push_back(y);
      }
    }
    // New elements must also be closed under every kept generator.
    for (std::size_t q = 0; q < queue.size(); ++q) {
      for (const auto k : kept) {
        const auto y = g.mul(queue[q], k);
        if (!mask[y]) {
          mask[y] = true;
          members.push_back(y);
          queue.push_back(y);
        }
      }
    }
  }
  return Subgroup(g, std::move(mask), std::move(kept));
}

inline Subgroup closure(const FiniteGroup& g, std::initializer_list<Element> gens) {
  return closure(g, std::span<const Element>(gens.begin(), gens.size()));
}

inline Subgroup trivial_subgroup(const FiniteGroup& g) { return closure(g, std::span<const Element>{}); }

inline Subgroup whole_group(const FiniteGroup& g) {
  std::vector<Element> all(g.order());
  for (Element x = 0; x < g.order(); ++x) all[x] = x;
  return closure(g, all);
}

inline std::vector<Element> conjugacy_class(const FiniteGroup& g, Element x) {
  return g.classes()[g.class_index(x)];
}

/// <A>^G, generated by all conjugates of the elements of A.
inline Subgroup normal_closure(const FiniteGroup& g, std::span<const Element> a) {
  std::vector<bool> taken(g.class_count(), false);
  std::vector<Element> conjugates;
  for (const auto x : a) {
    const auto c = g.class_index(x);
    if (taken[c]) continue;
    taken[c] = true;
    const auto& cls = g.classes()[c];
    conjugates.insert(conjugates.end(), cls.begin(), cls.end());
  }
  return closure(g, conjugates);
}

inline Subgroup normal_closure(const FiniteGroup& g, std::initializer_list<Element> a) {
  return normal_closure(g, std::span<const Element>(a.begin(), a.size()));
}

inline Subgroup centralizer(const FiniteGroup& g, Element x) {
  std::vector<Element> members;
  for (Element h = 0; h < g.order(); ++h)
    if (g.mul(h, x) == g.mul(x, h)) members.push_back(h);
  return closure(g, members);
}

/// Intersection of the centralizers of all elements of `xs`.
inline Subgroup centralizer(const FiniteGroup& g, std::span<const Element> xs) {
  std::vector<Element> members;
  for (Element h = 0; h < g.order(); ++h)
    if (std::all_of(xs.begin(), xs.end(), [&](Element x) { return g.mul(h, x) == g.mul(x, h); }))
      members.push_back(h);
  return closure(g, members);
}

inline Subgroup center(const FiniteGroup& g) {
  std::vector<Element> members;
  for (const auto& cls : g.classes())
    if (cls.size() == 1) members.push_back(cls.front());
  return closure(g, members);
}

inline bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  for (const auto x : h.generators())
    for (Element y = 0; y < g.order(); ++y)
      if (!h.contains(g.conjugate(x, y))) return false;
  return true;
}

inline bool is_abelian(const Subgroup& h) {
  const auto& g = h.parent();
  const auto gens = h.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (g.mul(gens[i], gens[j]) != g.mul(gens[j], gens[i])) return false;
  return true;
}

/// Subgroup generated by two subgroups.
inline Subgroup join(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  std::vector<Element> gens(a.generators().begin(), a.generators().end());
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return closure(g, gens);
}

/// Representatives y of the distinct right cosets Hy.  For t fixed by H under
/// conjugation, t^y depends only on the coset Hy.
inline std::vector<Element> right_transversal(const FiniteGroup& g, const Subgroup& h) {
  std::vector<bool> covered(g.order(), false);
  std::vector<Element> reps;
  for (Element y = 0; y < g.order(); ++y) {
    if (covered[y]) continue;
    reps.push_back(y);
    for (const auto c : h.elements()) covered[g.mul(c, y)] = true;
  }
  return reps;
}

/// Componentwise product.  Element (a,b) has index a * |H| + b.
inline FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h,
                                  std::size_t max_order = kDefaultMaxOrder) {
  const auto ng = g.order();
  const auto nh = h.order();
  if (ng > max_order / nh)
    throw GroupError("direct product order " + std::to_string(ng) + "*" + std::to_string(nh) +
                     " exceeds limit " + std::to_string(max_order));
  const auto n = ng * nh;
  std::vector<Element> table(n * n);
  std::vector<std::string> labels(n);
  for (Element a1 = 0; a1 < ng; ++a1)
    for (Element b1 = 0; b1 < nh; ++b1) {
      const auto x = a1 * nh + b1;
      labels[x] = "(" + g.label(a1) + "," + h.label(b1) + ")";
      for (Element a2 = 0; a2 < ng; ++a2)
        for (Element b2 = 0; b2 < nh; ++b2)
          table[x * n + a2 * nh + b2] = static_cast<Element>(g.mul(a1, a2) * nh + h.mul(b1, b2));
    }
  return FiniteGroup::from_table(n, std::move(table), std::move(labels), max_order);
}

inline Element product_element(const FiniteGroup& right, Element a, Element b) {
  return static_cast<Element>(a * right.order() + b);
}

// ---------------------------------------------------------------------------
// Permutation groups

/// Generators given as image arrays on 0..degree-1.  Composition is left to
/// right: (a*b)[i] = b[a[i]].
struct PermutationSpec {
  std::size_t degree = 1;
  std::vector<std::vector<std::uint32_t>> generators;
};

inline std::string cycle_notation(std::span<const std::uint32_t> perm) {
  std::string out;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i] || perm[i] == i) continue;
    out += "(";
    for (auto j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      if (j != i) out += " ";
      out += std::to_string(j);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

inline FiniteGroup from_permutations(const PermutationSpec& spec,
                                     std::size_t max_order = kDefaultMaxOrder) {
  using Perm = std::vector<std::uint32_t>;
  const auto d = spec.degree;
  if (d == 0) throw GroupError("permutation degree must be positive");
  for (const auto& p : spec.generators) {
    if (p.size() != d) throw GroupError("generator length does not match degree");
    std::vector<bool> hit(d, false);
    for (const auto v : p) {
      if (v >= d || hit[v]) throw GroupError("generator is not a bijection on 0..degree-1");
      hit[v] = true;
    }
  }

  Perm id(d);
  for (std::uint32_t i = 0; i < d; ++i) id[i] = i;
  auto compose = [](const Perm& a, const Perm& b) {
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
    return r;
  };

  // Breadth-first enumeration; element x != identity is parent[x] * gen[via[x]].
  std::vector<Perm> elems{id};
  std::map<Perm, Element> index{{id, 0}};
  std::vector<Element> parent{0};
  std::vector<std::size_t> via{0};
  for (std::size_t q = 0; q < elems.size(); ++q) {
    for (std::size_t s = 0; s < spec.generators.size(); ++s) {
      auto y = compose(elems[q], spec.generators[s]);
      if (index.contains(y)) continue;
      if (elems.size() >= max_order)
        throw GroupError("permutation group order exceeds limit " + std::to_string(max_order));
      index.emplace(y, static_cast<Element>(elems.size()));
      elems.push_back(std::move(y));
      parent.push_back(static_cast<Element>(q));
      via.push_back(s);
    }
  }

  const auto n = elems.size();
  const auto ngen = spec.generators.size();
  std::vector<Element> right(n * ngen);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t s = 0; s < ngen; ++s)
      right[x * ngen + s] = index.at(compose(elems[x], spec.generators[s]));

  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    table[a * n] = static_cast<Element>(a);
    for (std::size_t b = 1; b < n; ++b)  // BFS order: parent[b] < b
      table[a * n + b] = right[table[a * n + parent[b]] * ngen + via[b]];
  }

  std::vector<std::string> labels(n);
  for (std::size_t x = 0; x < n; ++x) labels[x] = cycle_notation(elems[x]);
  return FiniteGroup::from_table(n, std::move(table), std::move(labels), max_order);
}

/// Raw Cayley table given row by row.  Index 0 must be the identity.
inline FiniteGroup from_cayley_table(const std::vector<std::vector<Element>>& rows,
                                     std::size_t max_order = kDefaultMaxOrder) {
  const auto n = rows.size();
  if (n == 0) throw GroupError("empty Cayley table");
  std::vector<Element> flat;
  flat.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw GroupError("Cayley table is not square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  auto g = FiniteGroup::from_table(n, std::move(flat), {}, max_order);
  if (g.identity() != 0) throw GroupError("index 0 is not the identity");
  return g;
}

}  // namespace fitdef
