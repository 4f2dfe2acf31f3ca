#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "diracflow/algebra.hpp"

namespace diracflow {

// ---------------------------------------------------------------------------
// Rendering. One canonical form: terms in map order joined by " + ", each
// coefficient parenthesized unless it is exactly 1 in front of a word.
// parse(render(a)) == a for every canonical a.
// ---------------------------------------------------------------------------

namespace detail {

inline void render_eterm(std::string& out, const Rational& c, int power, int decay,
                         bool first) {
  if (first) {
    out += c.to_string();
  } else {
    out += c.negative() ? " - " : " + ";
    out += c.abs().to_string();
  }
  if (power >= 1) {
    out += "*s";
    if (power >= 2) out += "^" + std::to_string(power);
  }
  if (decay >= 1) out += "*exp[-" + std::to_string(4 * decay) + "s]";
}

}  // namespace detail

inline std::string render(const ExpPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, poly] : p.parts()) {
    for (std::size_t power = 0; power < poly.size(); ++power) {
      if (poly[power].is_zero()) continue;
      detail::render_eterm(out, poly[power], static_cast<int>(power), k, first);
      first = false;
    }
  }
  return out;
}

inline std::string render(const Word& w) {
  std::string out;
  if (w.beta) out = "b";
  std::size_t i = 0;
  while (i < w.factors.size()) {
    std::size_t j = i;
    while (j < w.factors.size() && w.factors[j] == w.factors[i]) ++j;
    if (!out.empty()) out += "*";
    out += generator_name(w.factors[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

inline std::string render(const OperatorExpr& e) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : e.terms()) {
    if (!first) out += " + ";
    first = false;
    if (w.empty()) {
      out += "(" + render(c) + ")";
    } else if (c.is_one()) {
      out += render(w);
    } else {
      out += "(" + render(c) + ")*" + render(w);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing. Whitespace-insensitive recursive descent over the grammar
//   expr   := term (('+'|'-') term)*
//   term   := coeff ('*' word)? | word
//   coeff  := rational | '(' epoly ')'
//   epoly  := eterm (('+'|'-') eterm)*
//   eterm  := rational ('*' 's' ('^' uint)?)? ('*' 'exp[-' uint 's]')?
//   word   := factor ('*' factor)*
//   factor := ('b'|'O'|'E'|'F') ('^' uint)?
//   rational := '-'? uint ('/' uint)?
// The uint inside exp[-..s] must be a positive multiple of 4.
// ---------------------------------------------------------------------------

namespace detail {

struct Token {
  enum Kind { Int, Plus, Minus, Star, Slash, Caret, LParen, RParen, LBracket,
              RBracket, Beta, GenO, GenE, GenF, Svar, Exp, End } kind;
  std::string text;
  int line;
  int column;
};

inline const char* token_name(Token::Kind k) {
  switch (k) {
    case Token::Int: return "integer";
    case Token::Plus: return "'+'";
    case Token::Minus: return "'-'";
    case Token::Star: return "'*'";
    case Token::Slash: return "'/'";
    case Token::Caret: return "'^'";
    case Token::LParen: return "'('";
    case Token::RParen: return "')'";
    case Token::LBracket: return "'['";
    case Token::RBracket: return "']'";
    case Token::Beta: return "'b'";
    case Token::GenO: return "'O'";
    case Token::GenE: return "'E'";
    case Token::GenF: return "'F'";
    case Token::Svar: return "'s'";
    case Token::Exp: return "'exp'";
    case Token::End: return "end of input";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      bump();
    current_.line = line_;
    current_.column = column_;
    current_.text.clear();
    if (pos_ >= text_.size()) {
      current_.kind = Token::End;
      return;
    }
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        current_.text += text_[pos_];
        bump();
      }
      current_.kind = Token::Int;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string word;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
        word += text_[pos_];
        bump();
      }
      current_.text = word;
      if (word == "b") current_.kind = Token::Beta;
      else if (word == "O") current_.kind = Token::GenO;
      else if (word == "E") current_.kind = Token::GenE;
      else if (word == "F") current_.kind = Token::GenF;
      else if (word == "s") current_.kind = Token::Svar;
      else if (word == "exp") current_.kind = Token::Exp;
      else
        throw ParseError(current_.line, current_.column,
                         "one of 'b','O','E','F','s','exp'", "'" + word + "'");
      return;
    }
    bump();
    switch (c) {
      case '+': current_.kind = Token::Plus; return;
      case '-': current_.kind = Token::Minus; return;
      case '*': current_.kind = Token::Star; return;
      case '/': current_.kind = Token::Slash; return;
      case '^': current_.kind = Token::Caret; return;
      case '(': current_.kind = Token::LParen; return;
      case ')': current_.kind = Token::RParen; return;
      case '[': current_.kind = Token::LBracket; return;
      case ']': current_.kind = Token::RBracket; return;
      default:
        throw ParseError(current_.line, current_.column, "a token",
                         "'" + std::string(1, c) + "'");
    }
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  Token current_{Token::End, "", 1, 1};
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  OperatorExpr parse_expr() {
    OperatorExpr e = parse_term();
    while (peek_is(Token::Plus) || peek_is(Token::Minus)) {
      bool minus = lex_.take().kind == Token::Minus;
      OperatorExpr t = parse_term();
      e += minus ? -t : t;
    }
    expect(Token::End);
    return e;
  }

  ExpPoly parse_epoly_document() {
    ExpPoly p = parse_epoly();
    expect(Token::End);
    return p;
  }

 private:
  static bool is_word_start(Token::Kind k) {
    return k == Token::Beta || k == Token::GenO || k == Token::GenE || k == Token::GenF;
  }

  static bool is_coeff_start(Token::Kind k) {
    return k == Token::Int || k == Token::Minus || k == Token::LParen ||
           k == Token::Svar || k == Token::Exp;
  }

  // A term is a '*'-separated product of coefficient factors (rational,
  // parenthesized epoly, bare s-power or exp[-ks]) followed by an optional
  // word; once a word factor appears, only word factors may follow.
  OperatorExpr parse_term() {
    if (!is_coeff_start(lex_.peek().kind) && !is_word_start(lex_.peek().kind))
      fail("a term (coefficient or word)");
    ExpPoly coeff = ExpPoly::constant(1);
    bool saw_coeff = false;
    while (is_coeff_start(lex_.peek().kind)) {
      coeff = coeff * parse_coeff_factor();
      saw_coeff = true;
      if (!peek_is(Token::Star)) return OperatorExpr::scalar(coeff);
      lex_.take();
    }
    if (!is_word_start(lex_.peek().kind))
      fail(saw_coeff ? "a coefficient factor or word factor" : "a word factor");
    return OperatorExpr::from_raw(coeff, parse_word());
  }

  ExpPoly parse_coeff_factor() {
    const Token& t = lex_.peek();
    if (t.kind == Token::LParen) {
      lex_.take();
      ExpPoly p = parse_epoly();
      expect(Token::RParen);
      return p;
    }
    if (t.kind == Token::Svar) {
      lex_.take();
      int power = 1;
      if (peek_is(Token::Caret)) {
        lex_.take();
        power = static_cast<int>(parse_uint());
      }
      return ExpPoly::monomial(1, power, 0);
    }
    if (t.kind == Token::Exp) return ExpPoly::monomial(1, 0, parse_exp_factor());
    return ExpPoly::constant(parse_rational());
  }

  std::vector<OperatorExpr::RawFactor> parse_word() {
    std::vector<OperatorExpr::RawFactor> factors;
    factors.push_back(parse_factor());
    while (peek_is(Token::Star)) {
      lex_.take();
      factors.push_back(parse_factor());
    }
    return factors;
  }

  OperatorExpr::RawFactor parse_factor() {
    const Token t = lex_.take();
    OperatorExpr::RawFactor f{false, Generator::O, 1};
    switch (t.kind) {
      case Token::Beta: f.is_beta = true; break;
      case Token::GenO: f.gen = Generator::O; break;
      case Token::GenE: f.gen = Generator::E; break;
      case Token::GenF: f.gen = Generator::F; break;
      default:
        throw ParseError(t.line, t.column, "'b','O','E' or 'F'", token_name(t.kind));
    }
    if (peek_is(Token::Caret)) {
      lex_.take();
      f.power = static_cast<int>(parse_uint());
    }
    return f;
  }

  ExpPoly parse_epoly() {
    ExpPoly p = parse_eterm();
    while (peek_is(Token::Plus) || peek_is(Token::Minus)) {
      bool minus = lex_.take().kind == Token::Minus;
      ExpPoly t = parse_eterm();
      p += minus ? -t : t;
    }
    return p;
  }

  ExpPoly parse_eterm() {
    // The leading rational defaults to 1 so that "s*exp[-4s]" style
    // monomials are accepted.
    Rational c(1);
    int power = 0;
    int decay = 0;
    if (peek_is(Token::Svar)) {
      lex_.take();
      power = 1;
      if (peek_is(Token::Caret)) {
        lex_.take();
        power = static_cast<int>(parse_uint());
      }
      if (peek_is(Token::Star)) {
        lex_.take();
        decay = parse_exp_factor();
      }
      return ExpPoly::monomial(std::move(c), power, decay);
    }
    if (peek_is(Token::Exp)) return ExpPoly::monomial(std::move(c), 0, parse_exp_factor());
    c = parse_rational();
    if (peek_is(Token::Star)) {
      lex_.take();
      if (peek_is(Token::Svar)) {
        lex_.take();
        power = 1;
        if (peek_is(Token::Caret)) {
          lex_.take();
          power = static_cast<int>(parse_uint());
        }
        if (peek_is(Token::Star)) {
          lex_.take();
          decay = parse_exp_factor();
        }
      } else if (peek_is(Token::Exp)) {
        decay = parse_exp_factor();
      } else {
        fail("'s' or 'exp'");
      }
    }
    return ExpPoly::monomial(std::move(c), power, decay);
  }

  // 'exp' '[' '-' uint 's' ']' with uint a positive multiple of 4.
  int parse_exp_factor() {
    const Token t = lex_.peek();
    expect(Token::Exp);
    expect(Token::LBracket);
    expect(Token::Minus);
    unsigned long rate = parse_uint();
    if (rate == 0 || rate % 4 != 0)
      throw ParseError(t.line, t.column, "a decay rate that is a positive multiple of 4",
                       std::to_string(rate));
    expect(Token::Svar);
    expect(Token::RBracket);
    return static_cast<int>(rate / 4);
  }

  Rational parse_rational() {
    bool negative = false;
    if (peek_is(Token::Minus)) {
      lex_.take();
      negative = true;
    }
    const Token t = lex_.peek();
    if (t.kind != Token::Int) fail("integer");
    std::string num = lex_.take().text;
    std::string den;
    if (peek_is(Token::Slash)) {
      lex_.take();
      if (!peek_is(Token::Int)) fail("integer denominator");
      den = lex_.take().text;
      if (Rational::Integer(den) == 0)
        throw ParseError(t.line, t.column, "a nonzero denominator", "0");
    }
    Rational r = den.empty()
                     ? Rational(Rational::Integer(num), Rational::Integer(1))
                     : Rational(Rational::Integer(num), Rational::Integer(den));
    return negative ? -r : r;
  }

  bool peek_is(Token::Kind k) const { return lex_.peek().kind == k; }

  void expect(Token::Kind k) {
    if (lex_.peek().kind != k) fail(token_name(k));
    lex_.take();
  }

  unsigned long parse_uint() {
    if (!peek_is(Token::Int)) fail("integer");
    return std::stoul(lex_.take().text);
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = lex_.peek();
    throw ParseError(t.line, t.column, expected,
                     t.text.empty() ? token_name(t.kind) : "'" + t.text + "'");
  }

  Lexer lex_;
};

}  // namespace detail

inline OperatorExpr parse(std::string_view text) {
  return detail::Parser(text).parse_expr();
}

inline ExpPoly parse_exp_poly(std::string_view text) {
  return detail::Parser(text).parse_epoly_document();
}

}  // namespace diracflow
