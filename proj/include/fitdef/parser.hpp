#pragma once

// Recursive-descent parser for the formula grammar:
//
//   formula := implies
//   implies := or ( "->" implies )?
//   or      := and ( "|" and )*
//   and     := unary ( "&" unary )*
//   unary   := "~" unary | ("A" | "E") var "." formula | "(" formula ")" | term "=" term
//   term    := factor ( "*" factor )*
//   factor  := primary ( "^" ( "-1" | primary ) )*
//   primary := "1" | x<k> | p<k> | "[" term "," term "]" | "(" term ")"
//
// Whitespace is insignificant.  A quantifier body extends as far right as
// possible.

#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fitdef/error.hpp"
#include "fitdef/formula.hpp"

namespace fitdef {

struct ParseOptions {
  /// When set, free variables outside this list are rejected as unbound.
  std::optional<std::set<std::size_t>> free_vars;
};

namespace detail {

enum class Tok { Var, Param, One, Forall, Exists, Star, Caret, MinusOne, LBracket, RBracket, Comma, LParen,
                 RParen, Equals, Tilde, Amp, Bar, Arrow, Dot, End };

struct Token {
  Tok kind;
  std::size_t value = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

inline const char* describe(Tok t) {
  switch (t) {
    case Tok::Var: return "variable";
    case Tok::Param: return "parameter";
    case Tok::One: return "'1'";
    case Tok::Forall: return "'A'";
    case Tok::Exists: return "'E'";
    case Tok::Star: return "'*'";
    case Tok::Caret: return "'^'";
    case Tok::MinusOne: return "'-1'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Equals: return "'='";
    case Tok::Tilde: return "'~'";
    case Tok::Amp: return "'&'";
    case Tok::Bar: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::Dot: return "'.'";
    case Tok::End: return "end of input";
  }
  return "?";
}

inline std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto is_word_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t{Tok::End, 0, line, col};
    auto simple = [&](Tok k, std::size_t len) {
      t.kind = k;
      out.push_back(t);
      advance(len);
    };
    switch (c) {
      case '*': simple(Tok::Star, 1); continue;
      case '^': simple(Tok::Caret, 1); continue;
      case '[': simple(Tok::LBracket, 1); continue;
      case ']': simple(Tok::RBracket, 1); continue;
      case ',': simple(Tok::Comma, 1); continue;
      case '(': simple(Tok::LParen, 1); continue;
      case ')': simple(Tok::RParen, 1); continue;
      case '=': simple(Tok::Equals, 1); continue;
      case '~': simple(Tok::Tilde, 1); continue;
      case '&': simple(Tok::Amp, 1); continue;
      case '|': simple(Tok::Bar, 1); continue;
      case '.': simple(Tok::Dot, 1); continue;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          simple(Tok::Arrow, 2);
          continue;
        }
        if (i + 1 < s.size() && s[i + 1] == '1' && (i + 2 >= s.size() || !is_word_char(s[i + 2]))) {
          simple(Tok::MinusOne, 2);
          continue;
        }
        throw ParseError("'-' must start '-1' or '->'", line, col);
      default: break;
    }
    std::size_t j = i;
    while (j < s.size() && is_word_char(s[j])) ++j;
    const auto word = s.substr(i, j - i);
    if (word.empty()) throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    if (word == "1") {
      simple(Tok::One, 1);
    } else if (word == "A") {
      simple(Tok::Forall, 1);
    } else if (word == "E") {
      simple(Tok::Exists, 1);
    } else if ((word[0] == 'x' || word[0] == 'p') && word.size() > 1 &&
               word.find_first_not_of("0123456789", 1) == std::string_view::npos) {
      if (word.size() > 10) throw ParseError("index too large", line, col);
      t.value = std::stoul(std::string(word.substr(1)));
      simple(word[0] == 'x' ? Tok::Var : Tok::Param, word.size());
    } else {
      throw ParseError("unknown identifier '" + std::string(word) + "'", line, col);
    }
  }
  out.push_back(Token{Tok::End, 0, line, col});
  return out;
}

class FormulaParser {
public:
  explicit FormulaParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse_all() {
    auto f = parse_formula();
    expect(Tok::End);
    return f;
  }

  Term parse_term_all() {
    auto t = parse_term();
    expect(Tok::End);
    return t;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + ", found " + describe(peek().kind), peek().line, peek().column);
  }

  const Token& expect(Tok k) {
    if (!at(k)) fail(std::string("expected ") + describe(k));
    return toks_[pos_++];
  }

  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }

  Formula parse_formula() {
    auto lhs = parse_or();
    if (accept(Tok::Arrow)) return formula::implies(std::move(lhs), parse_formula());
    return lhs;
  }

  Formula parse_or() {
    std::vector<Formula> fs{parse_and()};
    while (accept(Tok::Bar)) fs.push_back(parse_and());
    return formula::disj(std::move(fs));
  }

  Formula parse_and() {
    std::vector<Formula> fs{parse_unary()};
    while (accept(Tok::Amp)) fs.push_back(parse_unary());
    return formula::conj(std::move(fs));
  }

  Formula parse_unary() {
    if (accept(Tok::Tilde)) return formula::negate(parse_unary());
    if (at(Tok::Forall) || at(Tok::Exists)) {
      const bool all = at(Tok::Forall);
      ++pos_;
      const auto v = expect(Tok::Var).value;
      expect(Tok::Dot);
      auto body = parse_formula();
      return all ? formula::forall(v, std::move(body)) : formula::exists(v, std::move(body));
    }
    if (at(Tok::LParen)) {
      // Either a parenthesized formula or an equation whose left side
      // starts with a parenthesized term.
      const auto save = pos_;
      try {
        return parse_equation();
      } catch (const ParseError& term_err) {
        const auto term_pos = pos_;
        pos_ = save;
        try {
          ++pos_;
          auto f = parse_formula();
          expect(Tok::RParen);
          return f;
        } catch (const ParseError& formula_err) {
          // report whichever attempt got further
          if (term_pos > pos_) throw term_err;
          throw formula_err;
        }
      }
    }
    return parse_equation();
  }

  Formula parse_equation() {
    auto lhs = parse_term();
    expect(Tok::Equals);
    return formula::eq(std::move(lhs), parse_term());
  }

  Term parse_term() {
    auto t = parse_factor();
    while (accept(Tok::Star)) t = term::mul(std::move(t), parse_factor());
    return t;
  }

  Term parse_factor() {
    auto t = parse_primary();
    while (accept(Tok::Caret)) {
      if (accept(Tok::MinusOne))
        t = term::inv(std::move(t));
      else
        t = term::conj(std::move(t), parse_primary());
    }
    return t;
  }

  Term parse_primary() {
    if (accept(Tok::One)) return term::one();
    if (at(Tok::Var)) return term::var(toks_[pos_++].value);
    if (at(Tok::Param)) return term::param(toks_[pos_++].value);
    if (accept(Tok::LBracket)) {
      auto a = parse_term();
      expect(Tok::Comma);
      auto b = parse_term();
      expect(Tok::RBracket);
      return term::comm(std::move(a), std::move(b));
    }
    if (accept(Tok::LParen)) {
      auto t = parse_term();
      expect(Tok::RParen);
      return t;
    }
    fail("expected a term");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Formula parse(std::string_view text, const ParseOptions& opts = {}) {
  auto toks = detail::tokenize(text);
  auto f = detail::FormulaParser(toks).parse_all();
  if (opts.free_vars) {
    for (const auto v : free_vars(f)) {
      if (opts.free_vars->contains(v)) continue;
      for (const auto& t : toks)
        if (t.kind == detail::Tok::Var && t.value == v)
          throw ParseError("unbound variable x" + std::to_string(v), t.line, t.column);
    }
  }
  return f;
}

inline Term parse_term(std::string_view text) {
  return detail::FormulaParser(detail::tokenize(text)).parse_term_all();
}

}  // namespace fitdef
