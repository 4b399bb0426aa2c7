#include "a1/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "a1/arith.hpp"

namespace a1 {

namespace {

struct Token {
  enum Kind { Number, Ident, Symbol, End } kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(const std::string& s, std::size_t offset) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Number, s.substr(i, j - i), offset + i});
      i = j;
    } else if (std::isalpha(c)) {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Ident, s.substr(i, j - i), offset + i});
      i = j;
    } else if (std::string("+-*/^()").find(static_cast<char>(c)) != std::string::npos) {
      out.push_back({Token::Symbol, std::string(1, static_cast<char>(c)), offset + i});
      ++i;
    } else {
      throw SyntaxError(offset + i, std::string("unexpected character '") + static_cast<char>(c) + "'");
    }
  }
  out.push_back({Token::End, "", offset + s.size()});
  return out;
}

/// Tower symbol named id, coerced into k.
std::optional<FieldElement> tower_symbol(const Field& k, const std::string& id) {
  for (Field node = k; node; node = node->base()) {
    switch (node->kind()) {
      case FieldKind::SimpleExtension:
      case FieldKind::RationalFunctions:
        if (node->name() == id) return k->coerce(node->generator());
        break;
      case FieldKind::Puiseux:
        if (id == "s") return k->coerce(node->generator());
        if (id == "t") return k->coerce(node->t());
        break;
      default: break;
    }
  }
  return std::nullopt;
}

class Parser {
 public:
  Parser(const std::string& text, std::size_t offset, Field k, std::vector<std::string> vars)
      : toks_(lex(text, offset)), k_(std::move(k)), vars_(std::move(vars)) {}

  Polynomial parse() {
    if (peek().kind == Token::End) throw SyntaxError(peek().pos, "empty expression");
    Polynomial p = expr();
    if (peek().kind != Token::End) throw SyntaxError(peek().pos, "unexpected '" + peek().text + "'");
    return p;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  bool at(const char* sym) const { return peek().kind == Token::Symbol && peek().text == sym; }
  Token take() { return toks_[i_++]; }
  void expect(const char* sym) {
    if (!at(sym)) throw SyntaxError(peek().pos, std::string("expected '") + sym + "'");
    ++i_;
  }

  Polynomial constant(const FieldElement& c) const { return Polynomial::constant(k_, vars_, c); }

  Polynomial expr() {
    if (at("+")) ++i_;
    Polynomial acc = term();
    while (at("+") || at("-")) {
      bool minus = take().text == "-";
      Polynomial rhs = term();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = unary();
    for (;;) {
      if (at("*")) {
        ++i_;
        acc = acc * unary();
      } else if (at("/")) {
        std::size_t pos = take().pos;
        Polynomial d = unary();
        if (d.total_degree() > 0) throw SyntaxError(pos, "divisor must be a constant");
        if (d.is_zero()) throw SyntaxError(pos, "division by zero");
        acc = acc.scale(k_->inv(d.constant_term()));
      } else if (peek().kind == Token::Number || peek().kind == Token::Ident || at("(")) {
        throw SyntaxError(peek().pos, "implicit multiplication; use '*'");
      } else {
        return acc;
      }
    }
  }

  Polynomial unary() {
    if (at("-")) {
      ++i_;
      return -unary();
    }
    return power();
  }

  Polynomial power() {
    bool bare_t = peek().kind == Token::Ident && peek().text == "t";
    Polynomial base = primary();
    if (!at("^")) return base;
    std::size_t pos = take().pos;
    mpz_class num, den = 1;
    if (peek().kind == Token::Number) {
      num = mpz_class(take().text);
    } else if (at("(")) {
      ++i_;
      bool neg = false;
      if (at("-")) {
        ++i_;
        neg = true;
      }
      if (peek().kind != Token::Number) throw SyntaxError(peek().pos, "expected an integer exponent");
      num = mpz_class(take().text);
      if (neg) num = -num;
      if (at("/")) {
        ++i_;
        if (peek().kind != Token::Number) throw SyntaxError(peek().pos, "expected a denominator");
        den = mpz_class(take().text);
        if (den == 0) throw SyntaxError(pos, "zero denominator in exponent");
      }
      expect(")");
    } else {
      throw SyntaxError(peek().pos, "expected an exponent");
    }
    mpq_class e(num, den);
    e.canonicalize();
    if (e.get_den() != 1) return fractional_t_power(base, bare_t, e, pos);
    if (e < 0) {
      if (base.total_degree() > 0 || base.is_zero())
        throw SyntaxError(pos, "negative exponent needs a nonzero constant base");
      return constant(k_->pow(base.constant_term(), e.get_num()));
    }
    if (!e.get_num().fits_ulong_p() || e.get_num() > 100000) throw SyntaxError(pos, "exponent too large");
    return base.pow(static_cast<unsigned>(e.get_num().get_ui()));
  }

  Polynomial fractional_t_power(const Polynomial& base, bool bare_t, const mpq_class& e, std::size_t pos) {
    (void)base;
    if (!bare_t || k_->kind() != FieldKind::Puiseux || std::find(vars_.begin(), vars_.end(), "t") != vars_.end())
      throw SyntaxError(pos, "fractional exponents apply only to the series variable t");
    if (!k_->twist().is_one()) throw SyntaxError(pos, "fractional powers of t need an untwisted series field");
    mpz_class se = e.get_num() * k_->ramification();
    if (se % e.get_den() != 0)
      throw Error(ErrorCode::CoefficientNotInField, "t^(" + e.get_str() + ") needs ramification divisible by " +
                                                        e.get_den().get_str());
    se /= e.get_den();
    return constant(k_->pow(k_->generator(), se));
  }

  Polynomial primary() {
    const Token& tok = peek();
    if (tok.kind == Token::Number) {
      ++i_;
      return constant(k_->from_mpz(mpz_class(tok.text)));
    }
    if (tok.kind == Token::Ident) {
      ++i_;
      auto it = std::find(vars_.begin(), vars_.end(), tok.text);
      if (it != vars_.end()) return Polynomial::variable(k_, vars_, static_cast<std::size_t>(it - vars_.begin()));
      if (auto sym = tower_symbol(k_, tok.text)) return constant(*sym);
      throw Error(ErrorCode::UnknownVariable, "'" + tok.text + "' at position " + std::to_string(tok.pos));
    }
    if (at("(")) {
      ++i_;
      Polynomial p = expr();
      expect(")");
      return p;
    }
    if (tok.kind == Token::End) throw SyntaxError(tok.pos, "unexpected end of input");
    throw SyntaxError(tok.pos, "unexpected '" + tok.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  Field k_;
  std::vector<std::string> vars_;
};

Polynomial parse_at(const std::string& text, std::size_t offset, const Field& k,
                    const std::vector<std::string>& vars) {
  return Parser(text, offset, k, vars).parse();
}

FieldElement element_at(const std::string& text, std::size_t offset, const Field& k) {
  return parse_at(text, offset, k, {}).constant_term();
}

std::string trim(const std::string& s, std::size_t* lead = nullptr) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  if (lead) *lead = a;
  return s.substr(a, b - a);
}

bool natural_less(const std::string& a, const std::string& b) {
  auto split = [](const std::string& s) {
    std::size_t i = s.size();
    while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
    long n = i < s.size() && s.size() - i < 10 ? std::stol(s.substr(i)) : -1;
    return std::make_tuple(s == "t", s.substr(0, i), n, s);
  };
  return split(a) < split(b);
}

struct Piece {
  std::string text;
  std::size_t offset;
};

std::vector<Piece> split_pieces(const std::string& text, const std::string& seps) {
  std::vector<Piece> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    char c = i < text.size() ? text[i] : '\0';
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (i == text.size() || (depth == 0 && seps.find(c) != std::string::npos)) {
      std::size_t lead = 0;
      std::string piece = trim(text.substr(start, i - start), &lead);
      out.push_back({piece, start + lead});
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- fields

Field parse_field(const std::string& text_in) {
  std::size_t lead = 0;
  std::string text = trim(text_in, &lead);
  std::size_t i = 0;
  auto fail = [&](std::size_t at, const std::string& msg) { throw SyntaxError(lead + at, msg); };
  Field k;
  if (text.empty()) fail(0, "empty field descriptor");
  if (text[0] == 'Q') {
    k = FieldNode::rationals();
    i = 1;
  } else if (text[0] == 'F') {
    std::size_t j = 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == 1) fail(1, "expected the field order after 'F'");
    mpz_class q(text.substr(1, j - 1));
    auto fac = q > 1 ? arith::factor(q) : std::vector<std::pair<mpz_class, int>>{};
    if (fac.size() != 1) fail(1, "field order " + q.get_str() + " is not a prime power");
    if (!fac[0].first.fits_slong_p()) fail(1, "characteristic too large");
    k = FieldNode::prime(fac[0].first.get_si());
    if (fac[0].second > 1) k = FieldNode::finite_extension(k, fac[0].second, "w");
    i = j;
  } else {
    fail(0, "expected 'Q' or 'F<q>'");
  }
  while (i < text.size()) {
    if (text.compare(i, 2, "((") == 0) {
      std::size_t close = text.find("))", i);
      if (close == std::string::npos) fail(i, "unterminated '(('");
      auto parts = split_pieces(text.substr(i + 2, close - i - 2), ";");
      if (parts.size() < 3 || parts.size() > 4) fail(i + 2, "expected (t;m;N) or (t;m;N;lambda)");
      if (parts[0].text != "t") fail(i + 2 + parts[0].offset, "series variable must be 't'");
      auto int_at = [&](const Piece& p) {
        if (p.text.empty() || p.text.size() > 9 ||
            !std::all_of(p.text.begin(), p.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
          fail(i + 2 + p.offset, "expected a positive integer");
        return std::stol(p.text);
      };
      long m = int_at(parts[1]);
      long n = int_at(parts[2]);
      if (m < 1) fail(i + 2 + parts[1].offset, "ramification must be positive");
      if (n < 1) fail(i + 2 + parts[2].offset, "precision must be positive");
      std::optional<FieldElement> lambda;
      if (parts.size() == 4) lambda = element_at(parts[3].text, lead + i + 2 + parts[3].offset, k);
      k = FieldNode::puiseux(k, static_cast<int>(m), n, lambda);
      i = close + 2;
    } else if (text[i] == '(') {
      std::size_t close = text.find(')', i);
      if (close == std::string::npos) fail(i, "unterminated '('");
      std::string name = text.substr(i + 1, close - i - 1);
      if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])) ||
          !std::all_of(name.begin(), name.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }))
        fail(i + 1, "expected a generator name");
      if (name == "s" || name == "t") fail(i + 1, "'s' and 't' are reserved for series fields");
      i = close + 1;
      if (i < text.size() && text[i] == ':') {
        ++i;
        std::string body;
        std::size_t body_at;
        if (i < text.size() && text[i] == '[') {
          std::size_t end = text.find(']', i);
          if (end == std::string::npos) fail(i, "unterminated '['");
          body = text.substr(i + 1, end - i - 1);
          body_at = i + 1;
          i = end + 1;
        } else {
          body = text.substr(i);
          body_at = i;
          i = text.size();
        }
        Polynomial mp = parse_at(body, lead + body_at, k, {name});
        int d = mp.total_degree();
        if (d < 1) fail(body_at, "minimal polynomial must have positive degree");
        std::vector<FieldElement> coeffs;
        for (int e = 0; e <= d; ++e) coeffs.push_back(mp.coefficient(Monomial{e}));
        k = FieldNode::extension(k, name, coeffs);
      } else {
        k = FieldNode::rational_functions(k, name);
      }
    } else {
      fail(i, std::string("unexpected '") + text[i] + "'");
    }
  }
  return k;
}

// ---------------------------------------------------------------- polynomials

Polynomial parse_polynomial(const std::string& text, const Field& k, const std::vector<std::string>& vars) {
  return parse_at(text, 0, k, vars);
}

FieldElement parse_element(const std::string& text, const Field& k) { return element_at(text, 0, k); }

std::vector<FieldElement> parse_point(const std::string& text, const Field& k) {
  std::vector<FieldElement> out;
  for (const auto& p : split_pieces(text, ",")) {
    if (p.text.empty()) throw SyntaxError(p.offset, "empty coordinate");
    out.push_back(element_at(p.text, p.offset, k));
  }
  return out;
}

std::vector<std::string> split_top(const std::string& text, const std::string& separators) {
  std::vector<std::string> out;
  for (auto& p : split_pieces(text, separators)) out.push_back(p.text);
  return out;
}

std::vector<std::string> infer_variables(const std::vector<std::string>& texts, const Field& k) {
  std::set<std::string> seen;
  for (const auto& s : texts)
    for (const auto& tok : lex(s, 0))
      if (tok.kind == Token::Ident && !tower_symbol(k, tok.text)) seen.insert(tok.text);
  std::vector<std::string> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), natural_less);
  return out;
}

std::vector<Polynomial> parse_system(const std::string& text, const Field& k, std::vector<std::string> vars) {
  auto pieces = split_pieces(text, ",;");
  if (vars.empty()) {
    std::vector<std::string> texts;
    for (const auto& p : pieces) texts.push_back(p.text);
    vars = infer_variables(texts, k);
  }
  std::vector<Polynomial> out;
  for (const auto& p : pieces) {
    if (p.text.empty()) throw SyntaxError(p.offset, "empty component");
    out.push_back(parse_at(p.text, p.offset, k, vars));
  }
  return out;
}

std::map<std::string, FieldElement> parse_seed(const std::string& text, const Field& k) {
  std::map<std::string, FieldElement> out;
  for (const auto& p : split_pieces(text, ";")) {
    if (p.text.empty()) continue;
    std::size_t colon = p.text.find(':');
    if (colon == std::string::npos) throw SyntaxError(p.offset, "expected 'var: expr'");
    std::string var = trim(p.text.substr(0, colon));
    if (var.empty()) throw SyntaxError(p.offset, "missing variable name");
    if (out.count(var)) throw SyntaxError(p.offset, "variable '" + var + "' seeded twice");
    out[var] = element_at(p.text.substr(colon + 1), p.offset + colon + 1, k);
  }
  if (out.empty()) throw SyntaxError(0, "empty seed");
  return out;
}

// ---------------------------------------------------------------- GW classes

GwElement parse_gw(const std::string& text, const Field& k) {
  GwElement out(k);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (text.compare(i, 1, "0") == 0) {
    std::size_t j = i + 1;
    while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j == text.size()) return out;
  }
  if (i == text.size()) throw SyntaxError(i, "empty class");
  bool first = true;
  while (i < text.size()) {
    long sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw SyntaxError(i, "expected '+' or '-'");
    }
    long mult = 1;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j - i > 9) throw SyntaxError(i, "multiplicity too large");
      mult = std::stol(text.substr(i, j - i));
      i = j;
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
      }
    }
    if (i >= text.size() || text[i] != '<') throw SyntaxError(i, "expected '<'");
    std::size_t close = text.find('>', i);
    if (close == std::string::npos) throw SyntaxError(i, "unterminated '<'");
    FieldElement a = element_at(text.substr(i + 1, close - i - 1), i + 1, k);
    if (a.is_zero()) throw Error(ErrorCode::ZeroInput, "symbol <0> at position " + std::to_string(i));
    out.add_symbol(a, sign * mult);
    i = close + 1;
    skip();
    first = false;
  }
  return out;
}

}  // namespace a1
