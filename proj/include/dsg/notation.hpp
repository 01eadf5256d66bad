#pragma once

// Text notation for terms, shapes and monomials.
//
// Output uses flattened chains and the fewest parentheses, e.g.
// "(a•b)∘(c•(d∘e))". Input additionally accepts "o" for ∘, "*", "∙" or "·"
// for •, "ℓ" for l, whitespace, and redundant or same-operation nested
// parentheses, which are flattened. The letter o is reserved for the
// operator, so variables run a..n, p..z.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dsg/term.hpp"

namespace dsg {

enum class Notation { unicode, ascii };

inline constexpr std::string_view variable_alphabet = "abcdefghijklmnpqrstuvwxyz";

inline std::string variable_name(int var) {
  if (var < 1 || static_cast<std::size_t>(var) > variable_alphabet.size())
    throw std::out_of_range("no letter for variable " + std::to_string(var));
  return std::string(1, variable_alphabet[static_cast<std::size_t>(var - 1)]);
}

/// 1-based variable number of a letter, or 0 if the letter is not a variable.
inline int variable_index(char letter) {
  const auto pos = variable_alphabet.find(letter);
  return pos == std::string_view::npos ? 0 : static_cast<int>(pos) + 1;
}

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void print_into(const Term& t, Notation style, bool parenthesize, std::string& out) {
  if (t.is_leaf()) {
    out += variable_name(t.var);
    return;
  }
  const std::string_view sym = style == Notation::unicode ? (t.op == Op::H ? "∘" : "•")
                                                          : (t.op == Op::H ? "o" : "*");
  if (parenthesize) out += '(';
  for (std::size_t i = 0; i < t.kids.size(); ++i) {
    if (i > 0) out += sym;
    print_into(t.kids[i], style, true, out);
  }
  if (parenthesize) out += ')';
}

enum class TokenKind { var, open, close, op, end };

struct Token {
  TokenKind kind;
  Op op = Op::H;
  int var = 0;
  std::size_t offset = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r'))
      ++pos_;
    const std::size_t at = pos_;
    if (pos_ >= text_.size()) return {TokenKind::end, Op::H, 0, at};
    const char c = text_[pos_];
    if (c == '(') return ++pos_, Token{TokenKind::open, Op::H, 0, at};
    if (c == ')') return ++pos_, Token{TokenKind::close, Op::H, 0, at};
    if (c == 'o') return ++pos_, Token{TokenKind::op, Op::H, 0, at};
    if (c == '*') return ++pos_, Token{TokenKind::op, Op::V, 0, at};
    if (match("∘")) return {TokenKind::op, Op::H, 0, at};
    if (match("•") || match("∙") || match("·")) return {TokenKind::op, Op::V, 0, at};
    if (match("ℓ")) return {TokenKind::var, Op::H, variable_index('l'), at};
    if (const int v = variable_index(c); v != 0) return ++pos_, Token{TokenKind::var, Op::H, v, at};
    throw ParseError("unexpected character at offset " + std::to_string(at));
  }

 private:
  bool match(std::string_view s) {
    if (text_.substr(pos_, s.size()) == s) {
      pos_ += s.size();
      return true;
    }
    return false;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { advance(); }

  Term parse() {
    Term t = expression();
    if (cur_.kind != TokenKind::end) throw ParseError("trailing input at offset " + std::to_string(cur_.offset));
    return t;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  Term expression() {
    std::vector<Term> operands;
    operands.push_back(operand());
    bool have_op = false;
    Op op = Op::H;
    while (cur_.kind == TokenKind::op) {
      if (have_op && cur_.op != op)
        throw ParseError("mixed operations without parentheses at offset " + std::to_string(cur_.offset));
      op = cur_.op;
      have_op = true;
      advance();
      operands.push_back(operand());
    }
    if (operands.size() == 1) return std::move(operands.front());
    return make_node(op, std::move(operands));
  }

  Term operand() {
    if (cur_.kind == TokenKind::var) {
      Term t = leaf(cur_.var);
      advance();
      return t;
    }
    if (cur_.kind == TokenKind::open) {
      advance();
      Term t = expression();
      if (cur_.kind != TokenKind::close) throw ParseError("unbalanced parentheses");
      advance();
      return t;
    }
    if (cur_.kind == TokenKind::close) throw ParseError("unbalanced parentheses");
    throw ParseError("expected a variable or '(' at offset " + std::to_string(cur_.offset));
  }

  Lexer lexer_;
  Token cur_{TokenKind::end};
};

}  // namespace detail

/// Prints a labelled term; leaves print as their variable letters.
inline std::string to_string(const Term& t, Notation style = Notation::unicode) {
  std::string out;
  detail::print_into(t, style, false, out);
  return out;
}

/// Prints a shape with letters a, b, c, ... in leaf order.
inline std::string to_string(const Shape& s, Notation style = Notation::unicode) {
  return to_string(to_term(identity_monomial(s)), style);
}

inline std::string to_string(const Monomial& m, Notation style = Notation::unicode) {
  return to_string(to_term(m), style);
}

/// Parses any well-formed term; the result is canonical and labelled by the
/// letters' variable numbers. Repeated letters are allowed here.
inline Term parse_term(std::string_view text) { return detail::Parser(text).parse(); }

/// Parses a multilinear monomial. With degree 0 the degree is the number of
/// leaves; either way the letters must be exactly the first n variables.
inline Monomial parse_monomial(std::string_view text, int degree = 0) {
  const Term t = parse_term(text);
  const auto labels = leaf_labels(t);
  const int n = static_cast<int>(labels.size());
  if (degree != 0 && degree != n)
    throw ParseError("expected " + std::to_string(degree) + " variables, found " + std::to_string(n));
  std::vector<bool> seen(labels.size(), false);
  for (int v : labels) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)])
      throw ParseError("variables must be the first " + std::to_string(n) + " letters, each used once");
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
  return to_monomial(t);
}

/// Parses text and forgets the variables.
inline Shape parse_shape(std::string_view text) { return Shape(parse_term(text)); }

}  // namespace dsg
