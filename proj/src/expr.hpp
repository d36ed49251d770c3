#pragma once

// Small recursive-descent evaluator for ring expressions such as
// "2*t^3+u*t", "(1+w)^2" or "u^2+1". Juxtaposition multiplies ("2w").

#include <cctype>
#include <string>

#include "conglab/bigint.hpp"
#include "conglab/errors.hpp"

namespace conglab::detail {

template <class V, class Ops>
class ExprParser {
 public:
  ExprParser(const std::string& text, Ops& ops) : s_(text), ops_(ops) {}

  V parse() {
    V v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  [[noreturn]] void fail(const std::string& why) {
    throw ParseError("cannot parse '" + s_ + "': " + why);
  }

  V expr() {
    V v = peek('-') ? (++pos_, ops_.neg(term())) : term();
    while (true) {
      if (peek('+')) {
        ++pos_;
        v = ops_.add(v, term());
      } else if (peek('-')) {
        ++pos_;
        v = ops_.sub(v, term());
      } else {
        return v;
      }
    }
  }

  V term() {
    V v = power();
    while (true) {
      skip();
      if (pos_ >= s_.size()) return v;
      char c = s_[pos_];
      if (c == '*') {
        ++pos_;
        v = ops_.mul(v, power());
      } else if (c == '(' || std::isalnum(static_cast<unsigned char>(c))) {
        v = ops_.mul(v, power());
      } else {
        return v;
      }
    }
  }

  V power() {
    V v = atom();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned long k = std::stoul(s_.substr(start, pos_ - start));
      if (k > 100000) fail("exponent too large");
      v = ops_.pow(v, static_cast<unsigned>(k));
    }
    return v;
  }

  V atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      V v = expr();
      if (!peek(')')) fail("missing ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return ops_.literal(parse_bigint(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      ++pos_;
      return ops_.variable(std::string(1, c));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  Ops& ops_;
  std::size_t pos_ = 0;
};

template <class V, class Ops>
V parse_expression(const std::string& text, Ops& ops) {
  return ExprParser<V, Ops>(text, ops).parse();
}

}  // namespace conglab::detail
