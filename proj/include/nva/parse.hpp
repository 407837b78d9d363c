#pragma once

/* Identity DSL.
 *
 *   identity := expr ('=' expr)?          right side defaults to 0
 *   expr     := ('-')? term (('+'|'-') term)*
 *   term     := (rational '*')? operand (('*'|'o') operand)?
 *   operand  := primary ('^' nat)?
 *   primary  := variable
 *             | '(' expr ')'              grouping
 *             | '(' e1 ',' e2 ',' e3 ')'  associator (e1*e2)*e3 - e1*(e2*e3)
 *             | '[' e1 ',' e2 ']'         commutator e1*e2 - e2*e1
 *             | 'J' '(' e1 ',' e2 ',' e3 ')'
 *             | 'assoc' '(' ... ')'       same as the associator
 *             | 'jassoc' '(' ... ')'      associator of the product (xy+yx)/2
 *
 * `*` is a bare binary product: a*b*c is REJECTED, parenthesize the intended
 * shape.  `o` is the symmetrized product x*y + y*x (no 1/2) and is a reserved
 * word, as are J, assoc and jassoc.  `x^n` is the principal right power
 * ((x*x)*x)...  Coefficients are nonnegative rational literals; signs come
 * from '+'/'-' between terms.  '#' starts a comment running to end of input.
 *
 * Everything expands to the plain `*` basis at parse time, so downstream code
 * only ever sees raw monomial trees.
 */

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nva/poly.hpp"
#include "nva/scalar.hpp"

namespace nva {

namespace detail {

enum class Tok { End, Ident, Number, Plus, Minus, Star, Caret, Slash, LParen, RParen,
                 LBracket, RBracket, Comma, Equals, Circle };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_tail(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') break;  // comment to end of input
    std::size_t start = i;
    if (ident_start(c)) {
      while (i < src.size() && ident_tail(src[i])) ++i;
      std::string word(src.substr(start, i - start));
      out.push_back({word == "o" ? Tok::Circle : Tok::Ident, std::move(word), start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      out.push_back({Tok::Number, std::string(src.substr(start, i - start)), start});
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '^': kind = Tok::Caret; break;
      case '/': kind = Tok::Slash; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '[': kind = Tok::LBracket; break;
      case ']': kind = Tok::RBracket; break;
      case ',': kind = Tok::Comma; break;
      case '=': kind = Tok::Equals; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    out.push_back({kind, std::string(1, c), start});
    ++i;
  }
  out.push_back({Tok::End, "", src.size()});
  return out;
}

template <class F>
class IdentityParser {
 public:
  using K = Scalar_t<F>;
  using P = NAPoly<F>;

  IdentityParser(const F& field, std::string_view src)
      : field_(field), toks_(tokenize(src)) {}

  P parse_identity() {
    P left = parse_expr();
    if (peek().kind == Tok::Equals) {
      next();
      left -= parse_expr();
    }
    expect(Tok::End, "unexpected trailing input");
    return left;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  void expect(Tok kind, const char* msg) {
    if (peek().kind != kind) throw ParseError(msg, peek().pos);
    next();
  }

  P parse_expr() {
    bool negate = false;
    if (peek().kind == Tok::Minus) {
      next();
      negate = true;
    }
    P acc = parse_term();
    if (negate) acc = -acc;
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      bool minus = next().kind == Tok::Minus;
      P t = parse_term();
      if (minus)
        acc -= t;
      else
        acc += t;
    }
    return acc;
  }

  P parse_term() {
    K coeff = field_.one();
    bool have_coeff = false;
    if (peek().kind == Tok::Number) {
      const Token& num = peek();
      coeff = parse_rational();
      have_coeff = true;
      if (peek().kind == Tok::Star) {
        next();
      } else if (coeff.is_zero()) {
        return P(field_);  // a literal 0 term
      } else {
        throw ParseError("a bare scalar is not an element of the free algebra", num.pos);
      }
    }
    P acc = parse_operand();
    if (peek().kind == Tok::Star || peek().kind == Tok::Circle) {
      bool circ = next().kind == Tok::Circle;
      P rhs = parse_operand();
      acc = circ ? acc * rhs + rhs * acc : acc * rhs;
    }
    if (peek().kind == Tok::Star || peek().kind == Tok::Circle)
      throw ParseError("unparenthesized product chain; add explicit parentheses", peek().pos);
    if (have_coeff) acc = acc.scaled(coeff);
    return acc;
  }

  K parse_rational() {
    const Token& num = peek();
    std::string text = next().text;
    if (peek().kind == Tok::Slash) {
      next();
      if (peek().kind != Tok::Number) throw ParseError("expected a denominator", peek().pos);
      text += "/" + next().text;
    }
    try {
      return field_.parse(text);
    } catch (const Error& e) {
      throw ParseError(e.what(), num.pos);
    }
  }

  P parse_operand() {
    P base = parse_primary();
    if (peek().kind == Tok::Caret) {
      next();
      if (peek().kind != Tok::Number) throw ParseError("expected an exponent", peek().pos);
      const Token& num = peek();
      unsigned long n = std::stoul(next().text);
      if (n == 0) throw ParseError("power exponent must be >= 1", num.pos);
      base = poly_power(base, n);
    }
    return base;
  }

  P parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: {
        std::string name = next().text;
        if (name == "J" || name == "assoc" || name == "jassoc") return parse_macro(name, t.pos);
        return poly_var(field_, name);
      }
      case Tok::LParen: {
        next();
        P a = parse_expr();
        if (peek().kind == Tok::RParen) {
          next();
          return a;
        }
        expect(Tok::Comma, "expected ')' or ','");
        P b = parse_expr();
        if (peek().kind != Tok::Comma)
          throw ParseError("an associator needs three operands", peek().pos);
        next();
        P c = parse_expr();
        expect(Tok::RParen, "expected ')'");
        return associator_poly(a, b, c);
      }
      case Tok::LBracket: {
        next();
        P a = parse_expr();
        expect(Tok::Comma, "expected ','");
        P b = parse_expr();
        expect(Tok::RBracket, "expected ']'");
        return a * b - b * a;
      }
      default:
        throw ParseError("expected a variable, '(', or '['", t.pos);
    }
  }

  P parse_macro(const std::string& name, std::size_t at) {
    expect(Tok::LParen, "expected '('");
    P a = parse_expr();
    expect(Tok::Comma, "expected ','");
    P b = parse_expr();
    expect(Tok::Comma, "expected ','");
    P c = parse_expr();
    expect(Tok::RParen, "expected ')'");
    if (name == "assoc") return associator_poly(a, b, c);
    if (name == "J") {
      auto br = [](const P& u, const P& v) { return u * v - v * u; };
      return br(br(a, b), c) + br(br(b, c), a) + br(br(c, a), b);
    }
    // jassoc: associator of the product (xy+yx)/2
    try {
      K h = half(field_);
      auto plus = [&h](const P& u, const P& v) { return (u * v + v * u).scaled(h); };
      return plus(plus(a, b), c) - plus(a, plus(b, c));
    } catch (const Error& e) {
      throw ParseError(e.what(), at);
    }
  }

  static P associator_poly(const P& a, const P& b, const P& c) {
    return (a * b) * c - a * (b * c);
  }

  F field_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

template <class F>
Identity<F> parse_identity(const F& field, std::string_view src) {
  detail::IdentityParser<F> p(field, src);
  return make_identity(std::string(src), p.parse_identity());
}

}  // namespace nva
