#pragma once

// Tarskian evaluation of formulas over a finite group with quantifiers
// ranging over the group.
//
// Conjugator pruning: when every occurrence of a quantified variable y is
// as the exponent of t^y with t not depending on variables bound below the
// quantifier, the body only depends on the right coset C y, where C is the
// intersection of the centralizers of the values of those t.  The
// quantifier then ranges over a right transversal of C.
//
// Linear universal blocks: for A y1 ... A yk. s = t where each y_i occurs
// once in s and not in t, subterms over disjoint variable sets take values
// independently, so the block holds iff the value set of s is {t}.  Value
// sets are computed bottom-up with one representative assignment each.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "fitdef/error.hpp"
#include "fitdef/formula.hpp"
#include "fitdef/group.hpp"

namespace fitdef {

using Assignment = std::map<std::size_t, Element>;

struct EvalOptions {
  bool prune_conjugators = true;
  bool collapse_linear_blocks = true;
  /// Quantifiers over these variables range only over the given value.
  Assignment pinned;
};

struct EvalResult {
  bool truth = false;
  /// Values of the quantified variables that decide the result: a
  /// counterexample for a failed universal, a witness for a satisfied
  /// existential.  Empty when the result has no such explanation.
  Assignment witness;
  std::uint64_t tuples_examined = 0;
};

namespace detail {

class Evaluator {
public:
  Evaluator(const FiniteGroup& g, std::span<const Element> params, const EvalOptions& opts)
      : g_(g), params_(params), opts_(opts) {}

  EvalResult run(const Formula& f, const Assignment& assignment) {
    std::size_t max_var = 0;
    collect_max_var(f, max_var);
    for (const auto& [v, x] : assignment) {
      max_var = std::max(max_var, v);
      if (x >= g_.order()) throw Error("assignment value out of range");
    }
    env_.assign(max_var + 1, std::nullopt);
    for (const auto& [v, x] : assignment) env_[v] = x;
    for (const auto v : free_vars(f))
      if (!assignment.contains(v)) throw Error("unassigned free variable x" + std::to_string(v));
    const auto p = param_count(f);
    if (params_.size() < p)
      throw Error("formula uses " + std::to_string(p) + " parameter(s), " + std::to_string(params_.size()) +
                  " supplied");
    for (const auto x : params_)
      if (x >= g_.order()) throw Error("parameter value out of range");

    EvalResult r;
    r.truth = eval(f);
    for (const auto& [v, x] : trail_) r.witness[v] = x;
    r.tuples_examined = examined_;
    return r;
  }

private:
  struct Analysis {
    bool prunable = false;
    std::vector<Term> bases;
  };

  struct Block {
    bool linear = false;
    std::set<std::size_t> vars;
    const FormulaNode* eq = nullptr;
  };

  using Partial = std::vector<std::pair<std::size_t, Element>>;
  struct ValueSet {
    std::vector<Element> values;
    std::vector<Partial> reps;
  };

  static void count_vars(const Term& t, std::map<std::size_t, std::size_t>& counts) {
    if (t->kind == TermKind::Var) ++counts[t->index];
    if (t->left) count_vars(t->left, counts);
    if (t->right) count_vars(t->right, counts);
  }

  const Block& block(const FormulaNode& q) {
    if (auto it = blocks_.find(&q); it != blocks_.end()) return it->second;
    Block b;
    const FormulaNode* f = &q;
    bool distinct = true;
    while (f->kind == FormulaKind::ForAll) {
      distinct = distinct && b.vars.insert(f->var).second;
      f = f->children[0].get();
    }
    if (distinct && f->kind == FormulaKind::Eq) {
      std::map<std::size_t, std::size_t> lhs, rhs;
      count_vars(f->lhs, lhs);
      count_vars(f->rhs, rhs);
      b.linear = std::all_of(b.vars.begin(), b.vars.end(),
                             [&](std::size_t v) { return lhs[v] == 1 && rhs[v] == 0; });
      b.eq = f;
    }
    return blocks_.emplace(&q, std::move(b)).first->second;
  }

  ValueSet value_set(const Term& t, const std::set<std::size_t>& vars) {
    ValueSet out;
    if (t->kind == TermKind::Var && vars.contains(t->index)) {
      for (Element x = 0; x < g_.order(); ++x) {
        out.values.push_back(x);
        out.reps.push_back({{t->index, x}});
      }
      return out;
    }
    if (!term_mentions_any(t, vars)) {
      out.values.push_back(value(t));
      out.reps.emplace_back();
      return out;
    }
    std::vector<bool> hit(g_.order(), false);
    auto add = [&](Element v, const Partial& a, const Partial* b) {
      if (hit[v]) return;
      hit[v] = true;
      out.values.push_back(v);
      Partial rep = a;
      if (b) rep.insert(rep.end(), b->begin(), b->end());
      out.reps.push_back(std::move(rep));
    };
    const auto left = value_set(t->left, vars);
    if (t->kind == TermKind::Inverse) {
      for (std::size_t i = 0; i < left.values.size(); ++i) add(g_.inv(left.values[i]), left.reps[i], nullptr);
      return out;
    }
    const auto right = value_set(t->right, vars);
    for (std::size_t i = 0; i < left.values.size(); ++i)
      for (std::size_t j = 0; j < right.values.size(); ++j) {
        ++examined_;
        const auto a = left.values[i], b = right.values[j];
        Element v = 0;
        switch (t->kind) {
          case TermKind::Product: v = g_.mul(a, b); break;
          case TermKind::Conj: v = g_.conjugate(a, b); break;
          default: v = g_.commutator(a, b); break;
        }
        add(v, left.reps[i], &right.reps[j]);
      }
    return out;
  }

  bool collapse(const Block& b) {
    const auto target = value(b.eq->rhs);
    const auto vs = value_set(b.eq->lhs, b.vars);
    for (std::size_t i = 0; i < vs.values.size(); ++i)
      if (vs.values[i] != target) {
        // unmentioned block variables take the identity
        std::map<std::size_t, Element> w;
        for (const auto v : b.vars) w[v] = g_.identity();
        for (const auto& [v, x] : vs.reps[i]) w[v] = x;
        for (const auto& [v, x] : w) trail_.emplace_back(v, x);
        return false;
      }
    return true;
  }

  static void collect_max_var(const Formula& f, std::size_t& m) {
    if (f->kind == FormulaKind::ForAll || f->kind == FormulaKind::Exists) m = std::max(m, f->var);
    if (f->kind == FormulaKind::Eq) {
      std::set<std::size_t> vs;
      std::size_t p = 0;
      term_vars(f->lhs, vs, p);
      term_vars(f->rhs, vs, p);
      if (!vs.empty()) m = std::max(m, *vs.rbegin());
    }
    for (const auto& c : f->children) collect_max_var(c, m);
  }

  static bool term_mentions(const Term& t, std::size_t v) {
    if (t->kind == TermKind::Var) return t->index == v;
    return (t->left && term_mentions(t->left, v)) || (t->right && term_mentions(t->right, v));
  }

  static bool term_mentions_any(const Term& t, const std::set<std::size_t>& vs) {
    if (t->kind == TermKind::Var) return vs.contains(t->index);
    return (t->left && term_mentions_any(t->left, vs)) || (t->right && term_mentions_any(t->right, vs));
  }

  static void bound_below(const Formula& f, std::set<std::size_t>& out) {
    if (f->kind == FormulaKind::ForAll || f->kind == FormulaKind::Exists) out.insert(f->var);
    for (const auto& c : f->children) bound_below(c, out);
  }

  // False if y occurs other than as the exponent of a base free of `inner`.
  static bool scan_term(const Term& t, std::size_t y, const std::set<std::size_t>& inner, std::vector<Term>& bases) {
    if (t->kind == TermKind::Var) return t->index != y;
    if (t->kind == TermKind::Conj && t->right->kind == TermKind::Var && t->right->index == y) {
      if (term_mentions(t->left, y) || term_mentions_any(t->left, inner)) return false;
      bases.push_back(t->left);
      return true;
    }
    if (t->left && !scan_term(t->left, y, inner, bases)) return false;
    return !t->right || scan_term(t->right, y, inner, bases);
  }

  static bool scan_formula(const Formula& f, std::size_t y, const std::set<std::size_t>& inner,
                           std::vector<Term>& bases) {
    if (f->kind == FormulaKind::Eq) return scan_term(f->lhs, y, inner, bases) && scan_term(f->rhs, y, inner, bases);
    for (const auto& c : f->children)
      if (!scan_formula(c, y, inner, bases)) return false;
    return true;
  }

  const Analysis& analyse(const FormulaNode& q) {
    if (auto it = analysis_.find(&q); it != analysis_.end()) return it->second;
    Analysis a;
    std::set<std::size_t> inner;
    bound_below(q.children[0], inner);
    if (!inner.contains(q.var)) a.prunable = scan_formula(q.children[0], q.var, inner, a.bases);
    return analysis_.emplace(&q, std::move(a)).first->second;
  }

  const std::vector<Element>& transversal(std::vector<Element> key) {
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    if (auto it = transversals_.find(key); it != transversals_.end()) return it->second;
    auto reps = right_transversal(g_, centralizer(g_, key));
    return transversals_.emplace(std::move(key), std::move(reps)).first->second;
  }

  Element value(const Term& t) {
    switch (t->kind) {
      case TermKind::Identity: return g_.identity();
      case TermKind::Var: {
        const auto& v = env_[t->index];
        if (!v) throw Error("unassigned variable x" + std::to_string(t->index));
        return *v;
      }
      case TermKind::Param: return params_[t->index];
      case TermKind::Product: return g_.mul(value(t->left), value(t->right));
      case TermKind::Inverse: return g_.inv(value(t->left));
      case TermKind::Conj: return g_.conjugate(value(t->left), value(t->right));
      case TermKind::Comm: return g_.commutator(value(t->left), value(t->right));
    }
    return g_.identity();
  }

  bool quantify(const FormulaNode& q) {
    const bool universal = q.kind == FormulaKind::ForAll;
    if (universal && opts_.collapse_linear_blocks) {
      const auto& b = block(q);
      const bool pinned = std::any_of(b.vars.begin(), b.vars.end(),
                                      [&](std::size_t v) { return opts_.pinned.contains(v); });
      if (b.linear && !pinned) return collapse(b);
    }
    const auto saved = env_[q.var];
    auto attempt = [&](Element x) {
      env_[q.var] = x;
      const auto mark = trail_.size();
      const bool r = eval(q.children[0]);
      if (r != universal) {
        trail_.emplace_back(q.var, x);
        return true;
      }
      trail_.resize(mark);
      return false;
    };

    bool decided = false;
    if (auto pin = opts_.pinned.find(q.var); pin != opts_.pinned.end()) {
      decided = attempt(pin->second);
    } else if (opts_.prune_conjugators && analyse(q).prunable) {
      std::vector<Element> base_values;
      for (const auto& b : analyse(q).bases) base_values.push_back(value(b));
      const auto& reps = transversal(std::move(base_values));
      for (const auto x : reps)
        if ((decided = attempt(x))) break;
    } else {
      for (Element x = 0; x < g_.order(); ++x)
        if ((decided = attempt(x))) break;
    }
    env_[q.var] = saved;
    return decided ? !universal : universal;
  }

  bool eval(const Formula& f) {
    switch (f->kind) {
      case FormulaKind::Eq:
        ++examined_;
        return value(f->lhs) == value(f->rhs);
      case FormulaKind::Not:
        return !eval(f->children[0]);
      case FormulaKind::And:
      case FormulaKind::Or: {
        const bool is_and = f->kind == FormulaKind::And;
        for (const auto& c : f->children) {
          const auto mark = trail_.size();
          if (eval(c) != is_and) return !is_and;
          trail_.resize(mark);
        }
        return is_and;
      }
      case FormulaKind::Implies: {
        const auto mark = trail_.size();
        if (!eval(f->children[0])) return true;
        const auto premise_end = trail_.size();
        if (eval(f->children[1])) {
          // the conclusion explains a true implication
          trail_.erase(trail_.begin() + static_cast<std::ptrdiff_t>(mark),
                       trail_.begin() + static_cast<std::ptrdiff_t>(premise_end));
          return true;
        }
        return false;
      }
      case FormulaKind::ForAll:
      case FormulaKind::Exists:
        return quantify(*f);
    }
    return false;
  }

  const FiniteGroup& g_;
  std::span<const Element> params_;
  const EvalOptions& opts_;
  std::vector<std::optional<Element>> env_;
  std::vector<std::pair<std::size_t, Element>> trail_;
  std::map<const FormulaNode*, Analysis> analysis_;
  std::map<const FormulaNode*, Block> blocks_;
  std::map<std::vector<Element>, std::vector<Element>> transversals_;
  std::uint64_t examined_ = 0;
};

}  // namespace detail

inline EvalResult evaluate(const FiniteGroup& g, const Formula& f, std::span<const Element> params = {},
                           const Assignment& assignment = {}, const EvalOptions& opts = {}) {
  return detail::Evaluator(g, params, opts).run(f, assignment);
}

/// Re-evaluates f with the quantifiers over witnessed variables fixed to
/// the witness values; a sound witness reproduces the original truth value.
inline bool replay_witness(const FiniteGroup& g, const Formula& f, std::span<const Element> params,
                           const EvalResult& result, const Assignment& assignment = {}) {
  EvalOptions opts;
  opts.pinned = result.witness;
  return evaluate(g, f, params, assignment, opts).truth == result.truth;
}

}  // namespace fitdef
