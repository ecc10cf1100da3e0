#pragma once

// Standard group families with deterministic element ordering.
//
// Family specs are strings:
//   cyclic:n  dihedral:n  symmetric:n  alternating:n  quaternion8  klein4
//   product(<spec>,<spec>)
// dihedral:n is the symmetry group of the n-gon, of order 2n.

#include <array>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "fitdef/error.hpp"
#include "fitdef/group.hpp"

namespace fitdef::families {

inline FiniteGroup cyclic(std::size_t n, std::size_t max_order = kDefaultMaxOrder) {
  if (n == 0) throw Error("cyclic: n must be at least 1");
  if (n > max_order) throw GroupError("cyclic: order exceeds limit");
  std::vector<Element> table(n * n);
  std::vector<std::string> labels(n);
  for (std::size_t a = 0; a < n; ++a) {
    labels[a] = std::to_string(a);
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = static_cast<Element>((a + b) % n);
  }
  return FiniteGroup::from_table(n, std::move(table), std::move(labels), max_order);
}

/// Element r^k s^e has index k + n*e.
inline FiniteGroup dihedral(std::size_t n, std::size_t max_order = kDefaultMaxOrder) {
  if (n == 0) throw Error("dihedral: n must be at least 1");
  const auto order = 2 * n;
  if (order > max_order) throw GroupError("dihedral: order exceeds limit");
  std::vector<Element> table(order * order);
  std::vector<std::string> labels(order);
  for (std::size_t x = 0; x < order; ++x) {
    const auto a = x % n, e = x / n;
    std::string r = a == 0 ? "" : (a == 1 ? "r" : "r^" + std::to_string(a));
    labels[x] = e == 0 ? (r.empty() ? "1" : r) : (r.empty() ? "s" : r + "s");
    for (std::size_t y = 0; y < order; ++y) {
      const auto b = y % n, f = y / n;
      // r^a s^e r^b s^f = r^(a +/- b) s^(e+f)
      const auto k = e == 0 ? (a + b) % n : (a + n - b) % n;
      table[x * order + y] = static_cast<Element>(k + n * ((e + f) % 2));
    }
  }
  return FiniteGroup::from_table(order, std::move(table), std::move(labels), max_order);
}

inline FiniteGroup symmetric(std::size_t n, std::size_t max_order = kDefaultMaxOrder) {
  if (n == 0) throw Error("symmetric: n must be at least 1");
  PermutationSpec spec{n, {}};
  if (n >= 2) {
    std::vector<std::uint32_t> swap(n), cycle(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      swap[i] = i;
      cycle[i] = static_cast<std::uint32_t>((i + 1) % n);
    }
    std::swap(swap[0], swap[1]);
    spec.generators = {swap, cycle};
  }
  return from_permutations(spec, max_order);
}

inline FiniteGroup alternating(std::size_t n, std::size_t max_order = kDefaultMaxOrder) {
  if (n == 0) throw Error("alternating: n must be at least 1");
  PermutationSpec spec{n, {}};
  for (std::uint32_t k = 2; k < n; ++k) {
    std::vector<std::uint32_t> p(n);
    for (std::uint32_t i = 0; i < n; ++i) p[i] = i;
    // 3-cycle (0 1 k)
    p[0] = 1;
    p[1] = k;
    p[k] = 0;
    spec.generators.push_back(std::move(p));
  }
  return from_permutations(spec, max_order);
}

/// Index 2*u + s encodes (-1)^s * unit[u] with units 1, i, j, k.
inline FiniteGroup quaternion8() {
  // unit product table: result unit and sign
  static constexpr std::array<std::array<int, 4>, 4> unit{{
      {0, 1, 2, 3},
      {1, 0, 3, 2},
      {2, 3, 0, 1},
      {3, 2, 1, 0},
  }};
  static constexpr std::array<std::array<int, 4>, 4> sign{{
      {0, 0, 0, 0},
      {0, 1, 0, 1},  // i*i=-1, i*j=k, i*k=-j
      {0, 1, 1, 0},  // j*i=-k, j*j=-1, j*k=i
      {0, 0, 1, 1},  // k*i=j, k*j=-i, k*k=-1
  }};
  static const std::array<std::string, 4> names{"1", "i", "j", "k"};
  std::vector<Element> table(64);
  std::vector<std::string> labels(8);
  for (int x = 0; x < 8; ++x) {
    labels[x] = (x % 2 ? "-" : "") + names[x / 2];
    for (int y = 0; y < 8; ++y) {
      const int u = unit[x / 2][y / 2];
      const int s = (x % 2 + y % 2 + sign[x / 2][y / 2]) % 2;
      table[x * 8 + y] = static_cast<Element>(2 * u + s);
    }
  }
  return FiniteGroup::from_table(8, std::move(table), std::move(labels));
}

inline FiniteGroup klein4() { return direct_product(cyclic(2), cyclic(2)); }

namespace detail {

class SpecParser {
public:
  SpecParser(std::string_view text, std::size_t max_order) : text_(text), max_order_(max_order) {}

  FiniteGroup parse() {
    auto g = group();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return g;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("bad family spec '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string name() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected family name");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::size_t number() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected number");
    std::size_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::size_t>(text_[pos_++] - '0');
      if (v > (1u << 20)) fail("parameter too large");
    }
    return v;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  FiniteGroup group() {
    const auto n = name();
    if (n == "quaternion8") return quaternion8();
    if (n == "klein4") return klein4();
    if (n == "product") {
      expect('(');
      auto left = group();
      expect(',');
      auto right = group();
      expect(')');
      return direct_product(left, right, max_order_);
    }
    expect(':');
    const auto k = number();
    if (n == "cyclic") return cyclic(k, max_order_);
    if (n == "dihedral") return dihedral(k, max_order_);
    if (n == "symmetric") {
      if (k > 12) fail("symmetric degree too large");
      return symmetric(k, max_order_);
    }
    if (n == "alternating") {
      if (k > 12) fail("alternating degree too large");
      return alternating(k, max_order_);
    }
    fail("unknown family '" + n + "'");
  }

  std::string_view text_;
  std::size_t max_order_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline FiniteGroup family(std::string_view spec, std::size_t max_order = kDefaultMaxOrder) {
  return detail::SpecParser(spec, max_order).parse();
}

/// The two factor specs of a top-level `product(A,B)` spec, or an empty
/// vector for any other spec.
inline std::vector<std::string> product_factors(std::string_view spec) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
  };
  spec = trim(spec);
  constexpr std::string_view head = "product";
  if (spec.substr(0, head.size()) != head) return {};
  auto rest = trim(spec.substr(head.size()));
  if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')') return {};
  rest = rest.substr(1, rest.size() - 2);
  int depth = 0;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (rest[i] == '(') ++depth;
    else if (rest[i] == ')') --depth;
    else if (rest[i] == ',' && depth == 0)
      return {std::string(trim(rest.substr(0, i))), std::string(trim(rest.substr(i + 1)))};
  }
  return {};
}

}  // namespace fitdef::families
