#pragma once

#include <cctype>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "zetalab/errors.hpp"
#include "zetalab/poly.hpp"

namespace zetalab {

inline constexpr std::uint32_t kMaxExponent = 1'000'000;

namespace detail {

struct Token {
  enum class Kind { integer, variable, plus, minus, star, caret, lparen, rparen, end };
  Kind kind;
  std::int64_t value = 0;
  std::string name;
  int line = 0;
  int col = 0;
};

inline std::vector<Token> tokenize_line(const std::string& text, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    const int col = static_cast<int>(i) + 1;
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::int64_t value = 0;
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        const int digit = text[j] - '0';
        if (value > (std::numeric_limits<std::int64_t>::max() - digit) / 10)
          throw SyntaxError(line_no, col, "integer literal too large");
        value = value * 10 + digit;
        ++j;
      }
      out.push_back(Token{Token::Kind::integer, value, "", line_no, col});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::string name(1, ch);
      if (ch == 'x' && i + 1 < text.size() &&
          std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
        name.push_back(text[i + 1]);
        ++i;
      }
      out.push_back(Token{Token::Kind::variable, 0, name, line_no, col});
      ++i;
      continue;
    }
    Token::Kind kind;
    switch (ch) {
      case '+': kind = Token::Kind::plus; break;
      case '-': kind = Token::Kind::minus; break;
      case '*': kind = Token::Kind::star; break;
      case '^': kind = Token::Kind::caret; break;
      case '(': kind = Token::Kind::lparen; break;
      case ')': kind = Token::Kind::rparen; break;
      default:
        throw SyntaxError(line_no, col,
                          std::string("unexpected character '") + ch + "'");
    }
    out.push_back(Token{kind, 0, "", line_no, col});
    ++i;
  }
  out.push_back(Token{Token::Kind::end, 0, "", line_no,
                      static_cast<int>(text.size()) + 1});
  return out;
}

// Polynomial under construction: exponent vector -> coefficient.
using TermMap = std::map<std::vector<std::uint32_t>, __int128>;

inline void map_add(TermMap& into, const TermMap& other, int sign) {
  for (const auto& [e, c] : other) into[e] += sign * c;
}

inline TermMap map_mul(const TermMap& a, const TermMap& b, const Token& at) {
  TermMap r;
  for (const auto& [ea, ca] : a) {
    if (ca == 0) continue;
    for (const auto& [eb, cb] : b) {
      if (cb == 0) continue;
      std::vector<std::uint32_t> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) {
        const std::uint64_t s = static_cast<std::uint64_t>(ea[i]) + eb[i];
        if (s > kMaxExponent)
          throw SyntaxError(at.line, at.col, "exponent exceeds the supported range");
        e[i] = static_cast<std::uint32_t>(s);
      }
      r[e] += ca * cb;
    }
  }
  return r;
}

class LineParser {
public:
  LineParser(const std::vector<Token>& tokens, const std::map<std::string, int>& vars,
             int num_vars)
      : tokens_(tokens), vars_(vars), m_(num_vars) {}

  TermMap run() {
    TermMap value = parse_expr();
    if (peek().kind != Token::Kind::end)
      throw SyntaxError(peek().line, peek().col, "expected an operator");
    return value;
  }

private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }

  TermMap parse_expr() {
    TermMap value = parse_term();
    while (peek().kind == Token::Kind::plus || peek().kind == Token::Kind::minus) {
      const bool minus = take().kind == Token::Kind::minus;
      map_add(value, parse_term(), minus ? -1 : 1);
    }
    return value;
  }

  TermMap parse_term() {
    TermMap value = parse_factor();
    while (peek().kind == Token::Kind::star) {
      const Token at = take();
      value = map_mul(value, parse_factor(), at);
    }
    return value;
  }

  TermMap parse_factor() {
    TermMap base = parse_base();
    if (peek().kind != Token::Kind::caret) return base;
    const Token caret = take();
    if (peek().kind != Token::Kind::integer)
      throw SyntaxError(peek().line, peek().col, "expected an integer exponent");
    const std::int64_t e = take().value;
    if (e > kMaxExponent)
      throw SyntaxError(caret.line, caret.col, "exponent exceeds the supported range");
    // binary power on the term map
    TermMap result;
    result[std::vector<std::uint32_t>(m_, 0)] = 1;
    TermMap square = std::move(base);
    std::int64_t k = e;
    while (k != 0) {
      if (k & 1) result = map_mul(result, square, caret);
      k >>= 1;
      if (k != 0) square = map_mul(square, square, caret);
    }
    return result;
  }

  TermMap parse_base() {
    const Token& tok = peek();
    switch (tok.kind) {
      case Token::Kind::integer: {
        take();
        TermMap r;
        r[std::vector<std::uint32_t>(m_, 0)] = tok.value;
        return r;
      }
      case Token::Kind::variable: {
        take();
        std::vector<std::uint32_t> e(m_, 0);
        e[static_cast<std::size_t>(vars_.at(tok.name))] = 1;
        TermMap r;
        r[e] = 1;
        return r;
      }
      case Token::Kind::lparen: {
        take();
        TermMap inner = parse_expr();
        if (peek().kind != Token::Kind::rparen)
          throw SyntaxError(peek().line, peek().col, "expected ')'");
        take();
        return inner;
      }
      default:
        throw SyntaxError(tok.line, tok.col,
                          "expected an integer, a variable, or '('");
    }
  }

  const std::vector<Token>& tokens_;
  const std::map<std::string, int>& vars_;
  int m_;
  std::size_t pos_ = 0;
};

inline std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

}  // namespace detail

/// Parses one polynomial per line (grammar: expr := term (('+'|'-') term)*;
/// term := factor ('*' factor)*; factor := base ('^' uint)?; base := int |
/// var | '(' expr ')'; no implicit multiplication, no unary minus).
/// Variables are single letters or x0..x9, one style per system; indices are
/// assigned by sorted name. '#' starts a comment; blank lines are skipped.
inline PolySystem parse_system(const std::vector<std::string>& lines, Ambient ambient) {
  std::vector<std::vector<detail::Token>> token_lines;
  std::set<std::string> names;
  bool lettered = false;
  bool indexed = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto tokens = detail::tokenize_line(detail::strip_comment(lines[i]),
                                        static_cast<int>(i) + 1);
    if (tokens.size() == 1) continue;  // blank or comment-only line
    for (const auto& tok : tokens) {
      if (tok.kind != detail::Token::Kind::variable) continue;
      names.insert(tok.name);
      (tok.name.size() == 2 ? indexed : lettered) = true;
    }
    token_lines.push_back(std::move(tokens));
  }
  if (token_lines.empty()) throw UsageError("no polynomials given");
  if (lettered && indexed)
    throw MixedVariables("cannot mix single-letter and indexed variable names");
  std::vector<std::string> ordered(names.begin(), names.end());
  const int m = std::max<int>(1, static_cast<int>(ordered.size()));
  std::map<std::string, int> var_index;
  for (std::size_t i = 0; i < ordered.size(); ++i)
    var_index[ordered[i]] = static_cast<int>(i);
  std::vector<Polynomial> polys;
  for (const auto& tokens : token_lines) {
    detail::TermMap value = detail::LineParser(tokens, var_index, m).run();
    std::vector<Term> terms;
    for (const auto& [e, c] : value) {
      if (c == 0) continue;
      constexpr __int128 limit = static_cast<__int128>(1) << 62;
      if (c >= limit || c <= -limit)
        throw OutOfRange("coefficient exceeds the supported range");
      terms.push_back(Term{static_cast<std::int64_t>(c), e});
    }
    polys.push_back(Polynomial{m, std::move(terms)});
  }
  return make_system(m, ambient, polys, std::move(ordered));
}

inline PolySystem parse_system(const std::string& text, Ambient ambient) {
  std::vector<std::string> lines;
  std::string cur;
  for (const char ch : text) {
    if (ch == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  lines.push_back(cur);
  return parse_system(lines, ambient);
}

/// Canonical rendering, parseable by parse_system (a leading negative term is
/// written as "0 - ...").
inline std::string to_string(const Polynomial& poly,
                             const std::vector<std::string>& names) {
  if (poly.terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const Term& t : poly.terms) {
    std::int64_t c = t.coeff;
    if (first) {
      if (c < 0) {
        out += "0 - ";
        c = -c;
      }
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
      c = c < 0 ? -c : c;
    }
    std::vector<std::string> parts;
    for (int i = 0; i < poly.num_vars; ++i) {
      if (t.exps[i] == 0) continue;
      std::string part = i < static_cast<int>(names.size())
                             ? names[i]
                             : "x" + std::to_string(i);
      if (t.exps[i] > 1) part += "^" + std::to_string(t.exps[i]);
      parts.push_back(std::move(part));
    }
    if (parts.empty() || c != 1) {
      parts.insert(parts.begin(), std::to_string(c));
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i > 0) out += "*";
      out += parts[i];
    }
  }
  return out;
}

inline std::vector<std::string> to_lines(const PolySystem& sys) {
  std::vector<std::string> out;
  out.reserve(sys.polys.size());
  for (const Polynomial& poly : sys.polys) out.push_back(to_string(poly, sys.var_names));
  return out;
}

}  // namespace zetalab
