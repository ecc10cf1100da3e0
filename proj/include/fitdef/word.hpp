#pragma once

// Group words over numbered variables and their evaluation.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fitdef/error.hpp"
#include "fitdef/group.hpp"

namespace fitdef {

class Word {
public:
  enum class Kind { Var, Product, Inverse, Conjugate, Commutator };

  struct Node {
    Kind kind;
    std::size_t var = 0;  // Var only, 0-based
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
  };
  using NodePtr = std::shared_ptr<const Node>;

  Word(std::size_t arity, NodePtr root) : arity_(arity), root_(std::move(root)) {
    if (!root_) throw Error("word has no root");
    check_vars(*root_);
  }

  std::size_t arity() const noexcept { return arity_; }
  const Node& root() const noexcept { return *root_; }
  const NodePtr& root_ptr() const noexcept { return root_; }

  static NodePtr var(std::size_t i) { return std::make_shared<const Node>(Node{Kind::Var, i, {}, {}}); }
  static NodePtr product(NodePtr a, NodePtr b) { return binary(Kind::Product, std::move(a), std::move(b)); }
  static NodePtr inverse(NodePtr a) {
    return std::make_shared<const Node>(Node{Kind::Inverse, 0, std::move(a), {}});
  }
  static NodePtr conjugate(NodePtr a, NodePtr b) { return binary(Kind::Conjugate, std::move(a), std::move(b)); }
  static NodePtr commutator(NodePtr a, NodePtr b) { return binary(Kind::Commutator, std::move(a), std::move(b)); }

  friend bool operator==(const Word& a, const Word& b) {
    return a.arity_ == b.arity_ && same(*a.root_, *b.root_);
  }

  /// Text in the formula grammar, with Var(i) written x<i+1>.
  std::string render() const { return render(*root_); }

  /// True when no variable occurs twice.
  bool is_linear() const {
    std::vector<int> seen(arity_, 0);
    bool ok = true;
    visit_vars(*root_, [&](std::size_t v) { ok = ok && seen[v]++ == 0; });
    return ok;
  }

private:
  static NodePtr binary(Kind k, NodePtr a, NodePtr b) {
    return std::make_shared<const Node>(Node{k, 0, std::move(a), std::move(b)});
  }

  template <class F>
  static void visit_vars(const Node& n, F&& f) {
    if (n.kind == Kind::Var) {
      f(n.var);
      return;
    }
    visit_vars(*n.left, f);
    if (n.right) visit_vars(*n.right, f);
  }

  void check_vars(const Node& n) const {
    visit_vars(n, [&](std::size_t v) {
      if (v >= arity_) throw Error("word variable x" + std::to_string(v + 1) + " exceeds arity");
    });
  }

  static bool same(const Node& a, const Node& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Kind::Var) return a.var == b.var;
    if (!same(*a.left, *b.left)) return false;
    return !a.right || same(*a.right, *b.right);
  }

  static bool is_primary(const Node& n) { return n.kind == Kind::Var || n.kind == Kind::Commutator; }

  static std::string render(const Node& n) {
    switch (n.kind) {
      case Kind::Var:
        return "x" + std::to_string(n.var + 1);
      case Kind::Commutator:
        return "[" + render(*n.left) + ", " + render(*n.right) + "]";
      case Kind::Product: {
        auto r = render(*n.right);
        if (n.right->kind == Kind::Product) r = "(" + r + ")";
        return render(*n.left) + " * " + r;
      }
      case Kind::Inverse: {
        auto b = render(*n.left);
        if (n.left->kind == Kind::Product) b = "(" + b + ")";
        return b + "^-1";
      }
      case Kind::Conjugate: {
        auto b = render(*n.left);
        if (n.left->kind == Kind::Product) b = "(" + b + ")";
        auto e = render(*n.right);
        if (!is_primary(*n.right)) e = "(" + e + ")";
        return b + "^" + e;
      }
    }
    return {};
  }

  std::size_t arity_;
  NodePtr root_;
};

/// u_1 = [x1,x2], u_{n+1}(x1..x_{n+2}) = [u_n(x1..x_{n+1}), x_{n+2}].
inline Word build_u(std::size_t n) {
  if (n == 0) throw Error("build_u: n must be at least 1");
  auto w = Word::commutator(Word::var(0), Word::var(1));
  for (std::size_t k = 2; k <= n; ++k) w = Word::commutator(w, Word::var(k));
  return Word(n + 1, w);
}

namespace detail {
inline Word::NodePtr v_node(std::size_t n, std::size_t offset) {
  if (n == 1) return Word::commutator(Word::var(offset), Word::var(offset + 1));
  const std::size_t half = std::size_t{1} << (n - 1);
  return Word::commutator(v_node(n - 1, offset), v_node(n - 1, offset + half));
}
}  // namespace detail

/// v_1 = [x1,x2], v_{n+1} = [v_n(first half), v_n(second half)]; arity 2^n.
inline Word build_v(std::size_t n) {
  if (n == 0) throw Error("build_v: n must be at least 1");
  if (n > 20) throw BudgetError("build_v: n too large");
  return Word(std::size_t{1} << n, detail::v_node(n, 0));
}

/// Right Engel word [x,_n y]: [x,_1 y] = [x,y], [x,_{n+1} y] = [[x,_n y], y].
inline Word build_engel(std::size_t n) {
  if (n == 0) throw Error("build_engel: n must be at least 1");
  auto w = Word::commutator(Word::var(0), Word::var(1));
  for (std::size_t k = 2; k <= n; ++k) w = Word::commutator(w, Word::var(1));
  return Word(2, w);
}

namespace detail {
inline Element eval_node(const FiniteGroup& g, const Word::Node& n, std::span<const Element> args) {
  switch (n.kind) {
    case Word::Kind::Var:
      return args[n.var];
    case Word::Kind::Product:
      return g.mul(eval_node(g, *n.left, args), eval_node(g, *n.right, args));
    case Word::Kind::Inverse:
      return g.inv(eval_node(g, *n.left, args));
    case Word::Kind::Conjugate:
      return g.conjugate(eval_node(g, *n.left, args), eval_node(g, *n.right, args));
    case Word::Kind::Commutator:
      return g.commutator(eval_node(g, *n.left, args), eval_node(g, *n.right, args));
  }
  return g.identity();
}
}  // namespace detail

inline Element eval_word(const FiniteGroup& g, const Word& w, std::span<const Element> args) {
  if (args.size() != w.arity())
    throw Error("eval_word: expected " + std::to_string(w.arity()) + " arguments, got " +
                std::to_string(args.size()));
  for (const auto a : args)
    if (a >= g.order()) throw Error("eval_word: argument out of range");
  return detail::eval_node(g, w.root(), args);
}

inline Element eval_word(const FiniteGroup& g, const Word& w, std::initializer_list<Element> args) {
  return eval_word(g, w, std::span<const Element>(args.begin(), args.size()));
}

namespace detail {

class ImageEvaluator {
public:
  ImageEvaluator(const FiniteGroup& g, std::span<const std::vector<Element>> domains, bool uniform)
      : g_(g), domains_(domains), uniform_(uniform) {}

  std::vector<Element> image(const Word::Node& n) {
    if (!uniform_) return compute(n);
    auto key = shape(n);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto v = compute(n);
    memo_.emplace(std::move(key), v);
    return v;
  }

private:
  static std::string shape(const Word::Node& n) {
    switch (n.kind) {
      case Word::Kind::Var: return "_";
      case Word::Kind::Inverse: return "i(" + shape(*n.left) + ")";
      case Word::Kind::Product: return "p(" + shape(*n.left) + "," + shape(*n.right) + ")";
      case Word::Kind::Conjugate: return "j(" + shape(*n.left) + "," + shape(*n.right) + ")";
      case Word::Kind::Commutator: return "c(" + shape(*n.left) + "," + shape(*n.right) + ")";
    }
    return {};
  }

  std::vector<Element> compute(const Word::Node& n) {
    if (n.kind == Word::Kind::Var) return domains_[n.var];
    std::vector<bool> hit(g_.order(), false);
    std::vector<Element> out;
    auto add = [&](Element x) {
      if (!hit[x]) {
        hit[x] = true;
        out.push_back(x);
      }
    };
    const auto a = image(*n.left);
    if (n.kind == Word::Kind::Inverse) {
      for (const auto x : a) add(g_.inv(x));
    } else {
      const auto b = image(*n.right);
      for (const auto x : a)
        for (const auto y : b) {
          switch (n.kind) {
            case Word::Kind::Product: add(g_.mul(x, y)); break;
            case Word::Kind::Conjugate: add(g_.conjugate(x, y)); break;
            default: add(g_.commutator(x, y)); break;
          }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  const FiniteGroup& g_;
  std::span<const std::vector<Element>> domains_;
  bool uniform_;
  std::map<std::string, std::vector<Element>> memo_;
};

}  // namespace detail

/// The set {w(a_1,...,a_k) : a_i in domains[i]}, sorted.  Linear words are
/// evaluated subtree by subtree on value sets; other words fall back to
/// enumerating every argument tuple.
inline std::vector<Element> word_image(const FiniteGroup& g, const Word& w,
                                       std::span<const std::vector<Element>> domains) {
  if (domains.size() != w.arity()) throw Error("word_image: domain count does not match arity");
  for (const auto& d : domains)
    if (d.empty()) return {};

  if (w.is_linear()) {
    bool uniform = true;
    for (const auto& d : domains) uniform = uniform && d == domains.front();
    return detail::ImageEvaluator(g, domains, uniform).image(w.root());
  }

  std::vector<bool> hit(g.order(), false);
  std::vector<Element> out;
  std::vector<std::size_t> idx(w.arity(), 0);
  std::vector<Element> args(w.arity());
  while (true) {
    for (std::size_t i = 0; i < args.size(); ++i) args[i] = domains[i][idx[i]];
    const auto v = eval_word(g, w, args);
    if (!hit[v]) {
      hit[v] = true;
      out.push_back(v);
    }
    std::size_t i = 0;
    for (; i < idx.size(); ++i) {
      if (++idx[i] < domains[i].size()) break;
      idx[i] = 0;
    }
    if (i == idx.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fitdef
