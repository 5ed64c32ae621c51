#include "dioph/qalg/parse.hpp"

#include <cctype>

namespace dioph::qalg {

std::string ParseError::caret() const {
  return input_ + "\n" + std::string(position_, ' ') + "^ " + what();
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RatFunc parse() {
    skip_ws();
    if (at_end()) fail("empty expression");
    RatFunc r = expr();
    skip_ws();
    if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(std::string(text_), pos_, msg); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool starts_primary() {
    skip_ws();
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == 't' || c == 'z' || c == '(';
  }

  RatFunc expr() {
    RatFunc acc = term();
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

  RatFunc term() {
    RatFunc acc = unary();
    while (true) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        RatFunc d = unary();
        if (d.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        acc = acc / d;
      } else if (starts_primary()) {
        acc *= power();
      } else {
        return acc;
      }
    }
  }

  RatFunc unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RatFunc power() {
    RatFunc base = primary();
    if (accept('^')) {
      bool neg = accept('-');
      skip_ws();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("exponent must be an integer literal");
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (pos_ - start > 4) {
        pos_ = start;
        fail("exponent too large");
      }
      int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
      if (neg && base.is_zero()) {
        pos_ = start;
        fail("division by zero");
      }
      return pow(base, neg ? -e : e);
    }
    return base;
  }

  RatFunc primary() {
    skip_ws();
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      return RatFunc(BigRat(BigInt(std::string(text_.substr(start, pos_ - start)))));
    }
    if (c == 't' || c == 'z') {
      ++pos_;
      return RatFunc::t();
    }
    if (c == '(') {
      ++pos_;
      RatFunc inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (at_end()) fail("unexpected end of input");
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFunc parse_ratfunc(std::string_view text) { return Parser(text).parse(); }

}  // namespace dioph::qalg
