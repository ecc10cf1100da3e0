#pragma once

// First-order formulas in the language of groups: terms built from 1,
// variables x<k>, parameter slots p<k>, product, inverse, conjugation and
// commutator; formulas built from term equations, connectives and
// quantifiers.  Nodes are immutable and shared.

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fitdef/error.hpp"
#include "fitdef/word.hpp"

namespace fitdef {

enum class TermKind { Identity, Var, Param, Product, Inverse, Conj, Comm };

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  TermKind kind;
  std::size_t index = 0;  // Var / Param
  Term left;
  Term right;
};

namespace term {
inline Term one() { return std::make_shared<const TermNode>(TermNode{TermKind::Identity, 0, {}, {}}); }
inline Term var(std::size_t k) { return std::make_shared<const TermNode>(TermNode{TermKind::Var, k, {}, {}}); }
inline Term param(std::size_t k) { return std::make_shared<const TermNode>(TermNode{TermKind::Param, k, {}, {}}); }
inline Term mul(Term a, Term b) {
  return std::make_shared<const TermNode>(TermNode{TermKind::Product, 0, std::move(a), std::move(b)});
}
inline Term inv(Term a) { return std::make_shared<const TermNode>(TermNode{TermKind::Inverse, 0, std::move(a), {}}); }
inline Term conj(Term a, Term b) {
  return std::make_shared<const TermNode>(TermNode{TermKind::Conj, 0, std::move(a), std::move(b)});
}
inline Term comm(Term a, Term b) {
  return std::make_shared<const TermNode>(TermNode{TermKind::Comm, 0, std::move(a), std::move(b)});
}
}  // namespace term

enum class FormulaKind { Eq, And, Or, Not, Implies, ForAll, Exists };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  FormulaKind kind;
  Term lhs;                       // Eq
  Term rhs;                       // Eq
  std::vector<Formula> children;  // And/Or: operands; Not/ForAll/Exists: body; Implies: premise, conclusion
  std::size_t var = 0;            // ForAll / Exists
};

namespace formula {
inline Formula eq(Term a, Term b) {
  return std::make_shared<const FormulaNode>(FormulaNode{FormulaKind::Eq, std::move(a), std::move(b), {}, 0});
}
/// Conjunction; a single operand is returned as is.
inline Formula conj(std::vector<Formula> fs) {
  if (fs.empty()) throw Error("empty conjunction");
  if (fs.size() == 1) return fs.front();
  return std::make_shared<const FormulaNode>(FormulaNode{FormulaKind::And, {}, {}, std::move(fs), 0});
}
inline Formula disj(std::vector<Formula> fs) {
  if (fs.empty()) throw Error("empty disjunction");
  if (fs.size() == 1) return fs.front();
  return std::make_shared<const FormulaNode>(FormulaNode{FormulaKind::Or, {}, {}, std::move(fs), 0});
}
inline Formula negate(Formula f) {
  return std::make_shared<const FormulaNode>(FormulaNode{FormulaKind::Not, {}, {}, {std::move(f)}, 0});
}
inline Formula implies(Formula a, Formula b) {
  return std::make_shared<const FormulaNode>(FormulaNode{FormulaKind::Implies, {}, {}, {std::move(a), std::move(b)}, 0});
}
inline Formula forall(std::size_t v, Formula body) {
  return std::make_shared<const FormulaNode>(FormulaNode{FormulaKind::ForAll, {}, {}, {std::move(body)}, v});
}
inline Formula exists(std::size_t v, Formula body) {
  return std::make_shared<const FormulaNode>(FormulaNode{FormulaKind::Exists, {}, {}, {std::move(body)}, v});
}
}  // namespace formula

// ---------------------------------------------------------------------------
// Structural queries

inline bool operator==(const TermNode& a, const TermNode& b) {
  if (a.kind != b.kind || a.index != b.index) return false;
  if (static_cast<bool>(a.left) != static_cast<bool>(b.left)) return false;
  if (a.left && !(*a.left == *b.left)) return false;
  if (static_cast<bool>(a.right) != static_cast<bool>(b.right)) return false;
  return !a.right || *a.right == *b.right;
}

inline bool structurally_equal(const Term& a, const Term& b) { return *a == *b; }

inline bool structurally_equal(const Formula& a, const Formula& b) {
  if (a->kind != b->kind) return false;
  if (a->kind == FormulaKind::Eq) return *a->lhs == *b->lhs && *a->rhs == *b->rhs;
  if ((a->kind == FormulaKind::ForAll || a->kind == FormulaKind::Exists) && a->var != b->var) return false;
  if (a->children.size() != b->children.size()) return false;
  for (std::size_t i = 0; i < a->children.size(); ++i)
    if (!structurally_equal(a->children[i], b->children[i])) return false;
  return true;
}

namespace detail {

inline bool alpha_term(const Term& a, const Term& b, const std::map<std::size_t, std::size_t>& ra,
                       const std::map<std::size_t, std::size_t>& rb) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Identity: return true;
    case TermKind::Param: return a->index == b->index;
    case TermKind::Var: {
      const auto ia = ra.find(a->index), ib = rb.find(b->index);
      if ((ia == ra.end()) != (ib == rb.end())) return false;
      return ia == ra.end() ? a->index == b->index : ia->second == ib->second;
    }
    default:
      if (!alpha_term(a->left, b->left, ra, rb)) return false;
      return !a->right || alpha_term(a->right, b->right, ra, rb);
  }
}

inline bool alpha_formula(const Formula& a, const Formula& b, std::map<std::size_t, std::size_t> ra,
                          std::map<std::size_t, std::size_t> rb, std::size_t depth) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FormulaKind::Eq:
      return alpha_term(a->lhs, b->lhs, ra, rb) && alpha_term(a->rhs, b->rhs, ra, rb);
    case FormulaKind::ForAll:
    case FormulaKind::Exists:
      ra[a->var] = depth;
      rb[b->var] = depth;
      return alpha_formula(a->children[0], b->children[0], std::move(ra), std::move(rb), depth + 1);
    default:
      if (a->children.size() != b->children.size()) return false;
      for (std::size_t i = 0; i < a->children.size(); ++i)
        if (!alpha_formula(a->children[i], b->children[i], ra, rb, depth)) return false;
      return true;
  }
}

inline void term_vars(const Term& t, std::set<std::size_t>& vars, std::size_t& params) {
  if (t->kind == TermKind::Var) vars.insert(t->index);
  if (t->kind == TermKind::Param) params = std::max(params, t->index + 1);
  if (t->left) term_vars(t->left, vars, params);
  if (t->right) term_vars(t->right, vars, params);
}

inline void free_vars_into(const Formula& f, std::set<std::size_t> bound, std::set<std::size_t>& out) {
  switch (f->kind) {
    case FormulaKind::Eq: {
      std::set<std::size_t> vs;
      std::size_t p = 0;
      term_vars(f->lhs, vs, p);
      term_vars(f->rhs, vs, p);
      for (const auto v : vs)
        if (!bound.contains(v)) out.insert(v);
      return;
    }
    case FormulaKind::ForAll:
    case FormulaKind::Exists:
      bound.insert(f->var);
      free_vars_into(f->children[0], std::move(bound), out);
      return;
    default:
      for (const auto& c : f->children) free_vars_into(c, bound, out);
  }
}

inline void params_into(const Formula& f, std::size_t& params) {
  if (f->kind == FormulaKind::Eq) {
    std::set<std::size_t> vs;
    term_vars(f->lhs, vs, params);
    term_vars(f->rhs, vs, params);
  }
  for (const auto& c : f->children) params_into(c, params);
}

}  // namespace detail

/// Equality up to renaming of bound variables.
inline bool alpha_equal(const Formula& a, const Formula& b) { return detail::alpha_formula(a, b, {}, {}, 0); }

inline std::set<std::size_t> free_vars(const Formula& f) {
  std::set<std::size_t> out;
  detail::free_vars_into(f, {}, out);
  return out;
}

/// One more than the largest parameter slot index used (0 if none).
inline std::size_t param_count(const Formula& f) {
  std::size_t p = 0;
  detail::params_into(f, p);
  return p;
}

/// Number of operands of the conjunction under f's leading quantifier
/// prefix; 1 when that matrix is not a conjunction.
inline std::size_t conjunct_count(const Formula& f) {
  const FormulaNode* n = f.get();
  while (n->kind == FormulaKind::ForAll || n->kind == FormulaKind::Exists) n = n->children[0].get();
  return n->kind == FormulaKind::And ? n->children.size() : 1;
}

// ---------------------------------------------------------------------------
// Rendering

namespace detail {
inline bool term_is_primary(const Term& t) {
  return t->kind == TermKind::Identity || t->kind == TermKind::Var || t->kind == TermKind::Param ||
         t->kind == TermKind::Comm;
}
}  // namespace detail

inline std::string render(const Term& t) {
  auto paren = [](std::string s) { return "(" + s + ")"; };
  switch (t->kind) {
    case TermKind::Identity: return "1";
    case TermKind::Var: return "x" + std::to_string(t->index);
    case TermKind::Param: return "p" + std::to_string(t->index);
    case TermKind::Comm: return "[" + render(t->left) + ", " + render(t->right) + "]";
    case TermKind::Product: {
      auto r = render(t->right);
      return render(t->left) + " * " + (t->right->kind == TermKind::Product ? paren(r) : r);
    }
    case TermKind::Inverse: {
      auto b = render(t->left);
      return (t->left->kind == TermKind::Product ? paren(b) : b) + "^-1";
    }
    case TermKind::Conj: {
      auto b = render(t->left);
      auto e = render(t->right);
      return (t->left->kind == TermKind::Product ? paren(b) : b) + "^" +
             (detail::term_is_primary(t->right) ? e : paren(e));
    }
  }
  return {};
}

inline std::string render(const Formula& f) {
  auto wrap_unless = [](const Formula& c, std::initializer_list<FormulaKind> bare) {
    for (const auto k : bare)
      if (c->kind == k) return render(c);
    return "(" + render(c) + ")";
  };
  using K = FormulaKind;
  switch (f->kind) {
    case K::Eq: return render(f->lhs) + " = " + render(f->rhs);
    case K::Not: return "~" + wrap_unless(f->children[0], {K::Eq, K::Not});
    case K::And:
    case K::Or: {
      std::string out;
      for (std::size_t i = 0; i < f->children.size(); ++i) {
        if (i) out += f->kind == K::And ? " & " : " | ";
        out += f->kind == K::And ? wrap_unless(f->children[i], {K::Eq, K::Not})
                                 : wrap_unless(f->children[i], {K::Eq, K::Not, K::And});
      }
      return out;
    }
    case K::Implies:
      return wrap_unless(f->children[0], {K::Eq, K::Not, K::And, K::Or}) + " -> " +
             wrap_unless(f->children[1], {K::Eq, K::Not, K::And, K::Or, K::Implies});
    case K::ForAll: return "A x" + std::to_string(f->var) + ". " + render(f->children[0]);
    case K::Exists: return "E x" + std::to_string(f->var) + ". " + render(f->children[0]);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Words as terms

namespace detail {
inline Term word_node_term(const Word::Node& n, const std::vector<Term>& args) {
  switch (n.kind) {
    case Word::Kind::Var: return args[n.var];
    case Word::Kind::Product: return term::mul(word_node_term(*n.left, args), word_node_term(*n.right, args));
    case Word::Kind::Inverse: return term::inv(word_node_term(*n.left, args));
    case Word::Kind::Conjugate: return term::conj(word_node_term(*n.left, args), word_node_term(*n.right, args));
    case Word::Kind::Commutator: return term::comm(word_node_term(*n.left, args), word_node_term(*n.right, args));
  }
  return term::one();
}
}  // namespace detail

/// Substitutes terms for the word's variables.
inline Term word_term(const Word& w, const std::vector<Term>& args) {
  if (args.size() != w.arity()) throw Error("word_term: argument count does not match arity");
  return detail::word_node_term(w.root(), args);
}

}  // namespace fitdef
