#include "surfdist/parse.hpp"

#include <cctype>
#include <optional>

#include "surfdist/errors.hpp"

namespace surfdist {

Scope Scope::standard() {
  Scope s;
  for (auto name : {"x", "y", "z", "p", "q", "s"}) s.coordinate(name);
  return s;
}

Scope& Scope::coordinate(std::string_view name) {
  symbols().coordinate(name);
  names_.emplace(name);
  return *this;
}

Scope& Scope::parameter(std::string_view name) {
  symbols().parameter(name);
  names_.emplace(name);
  return *this;
}

Scope& Scope::function(std::string_view name, bool depends_on_x, bool depends_on_y) {
  symbols().function(name, depends_on_x, depends_on_y);
  names_.emplace(name);
  functions_.emplace(name);
  return *this;
}

bool Scope::declares(std::string_view name) const { return lookup(name).has_value(); }

std::optional<SymbolId> Scope::lookup(std::string_view name) const {
  if (names_.count(name) != 0) return symbols().find(name);
  const auto underscore = name.rfind('_');
  if (underscore == std::string_view::npos) return std::nullopt;
  if (functions_.count(name.substr(0, underscore)) == 0) return std::nullopt;
  try {
    return symbols().resolve(name);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

namespace {

class Parser {
 public:
  Parser(std::string_view src, const Scope& scope) : src_(src), scope_(scope) {}

  Expr run() {
    Expr e = expr();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    Expr acc;
    if (accept('-')) {
      acc = -term();
    } else {
      acc = term();
    }
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Expr term() {
    Expr acc = factor();
    while (true) {
      if (accept('*')) {
        acc *= factor();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        Expr d = factor();
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  Expr factor() {
    Expr b = base();
    if (!accept('^')) return b;
    const long e = exponent();
    if (e < 0 && b.is_zero()) fail("zero raised to a negative power");
    return b.pow(static_cast<int>(e));
  }

  long exponent() {
    if (accept('(')) {
      const long e = signed_integer();
      if (!accept(')')) fail("expected ')' after exponent");
      return e;
    }
    return signed_integer();
  }

  long signed_integer() {
    const bool negative = accept('-');
    skip_space();
    if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      fail("exponent must be an integer");
    }
    const std::string digits = read_digits();
    if (pos_ < src_.size() && src_[pos_] == '.') fail("exponent must be an integer");
    if (digits.size() > 6) fail("exponent too large");
    const long v = std::stol(digits);
    return negative ? -v : v;
  }

  std::string read_digits() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  Expr base() {
    skip_space();
    if (pos_ >= src_.size()) fail("unexpected end of expression");
    const char ch = src_[pos_];
    if (ch == '(') {
      ++pos_;
      Expr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      const std::string digits = read_digits();
      if (pos_ < src_.size() && src_[pos_] == '.') fail("decimal literals are not supported");
      return Expr(Rational(mpz_class(digits)));
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      const auto name = src_.substr(start, pos_ - start);
      auto id = scope_.lookup(name);
      if (!id) throw ParseError("undeclared identifier '" + std::string(name) + "'", start);
      return Expr::symbol(*id);
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  std::string_view src_;
  const Scope& scope_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view src, const Scope& scope) { return Parser(src, scope).run(); }

}  // namespace surfdist
