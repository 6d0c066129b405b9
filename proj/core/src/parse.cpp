#include "krforge/parse.hpp"

#include <cctype>
#include <string>

#include "krforge/errors.hpp"

namespace krforge {
namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, const Field* k, std::string_view var)
      : s_(text), k_(k), var_(var) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::ParseError, "column " + std::to_string(pos_ + 1) + ": " + what + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool starts_factor() {
    char c = peek();
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_';
  }

  Poly expr() {
    Poly p = term();
    while (peek() == '+' || peek() == '-') {
      char op = s_[pos_++];
      Poly t = term();
      p = op == '+' ? p + t : p - t;
    }
    return p;
  }

  Poly term() {
    Poly p = unary();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        p = p * unary();
      } else if (c == '/') {
        ++pos_;
        Poly d = unary();
        if (d.degree() != 0) error("division by a non-constant or zero");
        p = p * d.lead().inverse();
      } else if (starts_factor()) {
        p = p * unary();
      } else {
        return p;
      }
    }
  }

  Poly unary() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  Poly power() {
    Poly base = atom();
    if (peek() == '^') {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) error("expected a nonnegative integer exponent");
      if (pos_ - start > 4) error("exponent too large");
      return base.pow(std::stoi(std::string(s_.substr(start, pos_ - start))));
    }
    return base;
  }

  Poly atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (peek() != ')') error("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpq_class v(mpz_class(std::string(s_.substr(start, pos_ - start))));
      return Poly::constant(Scalar::from_rational(k_, v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string_view id = s_.substr(start, pos_ - start);
      if (!var_.empty() && id == var_) return Poly::x(k_);
      if (auto g = k_->named_generator(id)) return Poly::constant(*g);
      pos_ = start;
      error("unknown identifier '" + std::string(id) + "'");
    }
    error(c == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const Field* k_;
  std::string_view var_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_polynomial(std::string_view text, const Field* k, std::string_view var) {
  return ExprParser(text, k, var).parse();
}

Scalar parse_element(std::string_view text, const Field* k) {
  Poly p = ExprParser(text, k, "").parse();
  return p.is_zero() ? k->zero() : p.coeff(0);
}

const Field* Field::parse(std::string_view text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  std::size_t pos = 0;
  const Field* k = nullptr;
  if (!t.empty() && t[0] == 'Q') {
    k = rationals();
    pos = 1;
  } else if (t.size() > 1 && t[0] == 'F' && std::isdigit(static_cast<unsigned char>(t[1]))) {
    pos = 1;
    while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
    if (pos > 19) fail(ErrorKind::TooLarge, "prime modulus too large in '" + t + "'");
    k = prime(std::stoull(t.substr(1, pos - 1)));
  } else {
    fail(ErrorKind::ParseError, "column 1: expected 'Q' or 'F<p>' in field '" + std::string(text) + "'");
  }
  while (pos < t.size()) {
    if (t[pos] != '[') fail(ErrorKind::ParseError, "expected '[' in field '" + t + "'");
    std::size_t close = t.find(']', pos);
    if (close == std::string::npos) fail(ErrorKind::ParseError, "unterminated '[' in field '" + t + "'");
    std::string gen = t.substr(pos + 1, close - pos - 1);
    pos = close + 1;
    if (t.compare(pos, 2, "/(") != 0) fail(ErrorKind::ParseError, "expected '/(' in field '" + t + "'");
    pos += 2;
    int depth = 1;
    std::size_t start = pos;
    for (; pos < t.size() && depth > 0; ++pos) depth += t[pos] == '(' ? 1 : t[pos] == ')' ? -1 : 0;
    if (depth != 0) fail(ErrorKind::ParseError, "unbalanced parentheses in field '" + t + "'");
    Poly m = parse_polynomial(std::string_view(t).substr(start, pos - 1 - start), k, gen);
    k = extension(k, gen, m.coeffs());
  }
  return k;
}

}  // namespace krforge
