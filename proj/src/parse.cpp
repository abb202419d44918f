#include "nckit/parse.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "nckit/error.hpp"

namespace nckit {

namespace {

enum class Tok { INT, IDENT, PLUS, MINUS, STAR, SLASH, CARET, LP, RP, END };

struct Token {
  Tok kind;
  std::string text;
  size_t pos;  // 1-based offset into the source
};

[[noreturn]] void fail_at(size_t pos, const std::string& msg) {
  fail(ErrorKind::BadInput, "position " + std::to_string(pos) + ": " + msg);
}

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    size_t pos = i + 1;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::INT, src.substr(i, j - i), pos});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) ||
                                src[j] == '_'))
        ++j;
      out.push_back({Tok::IDENT, src.substr(i, j - i), pos});
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::PLUS; break;
      case '-': k = Tok::MINUS; break;
      case '*': k = Tok::STAR; break;
      case '/': k = Tok::SLASH; break;
      case '^': k = Tok::CARET; break;
      case '(': k = Tok::LP; break;
      case ')': k = Tok::RP; break;
      default:
        fail_at(pos, std::string("unexpected character '") + c + "'");
    }
    out.push_back({k, std::string(1, c), pos});
    ++i;
  }
  out.push_back({Tok::END, "", src.size() + 1});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, std::shared_ptr<const Alphabet> alpha)
      : toks_(std::move(toks)), alpha_(std::move(alpha)) {}

  NcPoly run() {
    NcPoly p = expr();
    const Token& t = peek();
    if (t.kind == Tok::RP)
      fail_at(t.pos, "unbalanced parentheses: unexpected ')'");
    if (t.kind != Tok::END)
      fail_at(t.pos, "unexpected '" + t.text + "'");
    return p;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_++]; }

  NcPoly expr() {
    NcPoly p = term();
    while (peek().kind == Tok::PLUS || peek().kind == Tok::MINUS) {
      bool minus = next().kind == Tok::MINUS;
      NcPoly q = term();
      p = minus ? p + q.scaled(CycloScalar(-1)) : p + q;
    }
    return p;
  }

  NcPoly term() {
    NcPoly p = factor();
    while (peek().kind == Tok::STAR) {
      next();
      p = p * factor();
    }
    return p;
  }

  NcPoly factor() {
    if (peek().kind == Tok::MINUS) {
      next();
      return factor().scaled(CycloScalar(-1));
    }
    NcPoly p = primary();
    if (peek().kind == Tok::CARET) {
      size_t cpos = next().pos;
      const Token& e = peek();
      if (e.kind == Tok::MINUS)
        fail_at(e.pos, "malformed exponent: must be a nonnegative integer");
      if (e.kind != Tok::INT)
        fail_at(e.kind == Tok::END ? cpos : e.pos,
                "malformed exponent: expected a nonnegative integer");
      next();
      if (e.text.size() > 4)
        fail_at(e.pos, "exponent too large");
      unsigned long n = std::stoul(e.text);
      NcPoly r = NcPoly::monomial(alpha_, Word{}, CycloScalar(1));
      for (unsigned long k = 0; k < n; ++k) r = r * p;
      return r;
    }
    return p;
  }

  NcPoly primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::INT: {
        next();
        Rational q(t.text);
        if (peek().kind == Tok::SLASH) {
          next();
          const Token& d = peek();
          if (d.kind != Tok::INT)
            fail_at(d.pos, "expected an integer denominator");
          next();
          Rational den(d.text);
          if (den == 0) fail_at(d.pos, "zero denominator");
          q /= den;
        }
        return NcPoly::monomial(alpha_, Word{}, CycloScalar(q));
      }
      case Tok::IDENT: {
        next();
        if (t.text == "zeta") return zeta_scalar(t.pos);
        int idx = alpha_->find(t.text);
        if (idx < 0) fail_at(t.pos, "unknown identifier '" + t.text + "'");
        return NcPoly::monomial(alpha_, Word({static_cast<uint32_t>(idx)}),
                                CycloScalar(1));
      }
      case Tok::LP: {
        size_t open = next().pos;
        NcPoly p = expr();
        if (peek().kind != Tok::RP)
          fail_at(open, "unbalanced parentheses: '(' is never closed");
        next();
        return p;
      }
      case Tok::RP:
        fail_at(t.pos, "unbalanced parentheses: unexpected ')'");
      case Tok::END:
        fail_at(t.pos, "expected a term");
      default:
        fail_at(t.pos, "unexpected '" + t.text + "'");
    }
  }

  NcPoly zeta_scalar(size_t zpos) {
    if (peek().kind != Tok::LP)
      fail_at(zpos, "zeta takes a parenthesized order, e.g. zeta(4)");
    next();
    const Token& m = peek();
    if (m.kind != Tok::INT)
      fail_at(m.pos, "zeta order must be a positive integer");
    next();
    if (m.text.size() > 6) fail_at(m.pos, "zeta order too large");
    unsigned long order = std::stoul(m.text);
    if (order == 0) fail_at(m.pos, "zeta order must be a positive integer");
    if (peek().kind != Tok::RP)
      fail_at(peek().pos, "unbalanced parentheses: expected ')' after the zeta order");
    next();
    CycloScalar z = CycloScalar::root_of_unity(static_cast<unsigned>(order), 1);
    return NcPoly::monomial(alpha_, Word{}, z);
  }

  std::vector<Token> toks_;
  std::shared_ptr<const Alphabet> alpha_;
  size_t i_ = 0;
};

}  // namespace

NcPoly parse_poly(const std::string& src, std::shared_ptr<const Alphabet> alpha) {
  if (!alpha) fail(ErrorKind::BadInput, "parse_poly needs an alphabet");
  return Parser(lex(src), std::move(alpha)).run();
}

}  // namespace nckit
