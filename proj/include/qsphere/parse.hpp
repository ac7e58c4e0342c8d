#pragma once

// Recursive-descent reader for the shared text grammar:
//   expr    := ['+'|'-'] product (('+'|'-') product)*
//   product := power (('*' | '/' | <juxtaposition>) power)*
//   power   := atom ['^' ['-'] integer]
//   atom    := integer | 'q' | 'sqrt' '(' expr ')' | '(' expr ')' | generator ['*']
// A '*' written directly after a generator token marks the starred generator.

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include "qsphere/errors.hpp"
#include "qsphere/qcoeff.hpp"

namespace qsphere {

// Algebra must provide:
//   using Value;  Value supports +, -, * and unary -
//   Value from_scalar(const QScalar&) const;
//   std::optional<Value> generator(std::string_view name, bool starred) const;
//   std::optional<QScalar> as_scalar(const Value&) const;
template <class Algebra>
class ExpressionParser {
 public:
  using Value = typename Algebra::Value;

  ExpressionParser(std::string_view text, const Algebra& algebra) : text_(text), alg_(algebra) {}

  Value parse() {
    Value v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  static bool starts_atom(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(';
  }

  Value expr() {
    Value v = alg_.from_scalar(QScalar());
    char c = peek();
    if (c == '-') {
      ++pos_;
      v = -product();
    } else {
      if (c == '+') ++pos_;
      v = product();
    }
    for (;;) {
      c = peek();
      if (c == '+') {
        ++pos_;
        v = v + product();
      } else if (c == '-') {
        ++pos_;
        v = v - product();
      } else {
        return v;
      }
    }
  }

  QScalar require_scalar(const Value& v, const char* context) {
    auto s = alg_.as_scalar(v);
    if (!s) fail(std::string(context) + " needs a scalar operand");
    return *s;
  }

  Value product() {
    Value v = power();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        v = v * power();
      } else if (c == '/') {
        ++pos_;
        Value d = power();
        v = v * alg_.from_scalar(require_scalar(d, "division").inverse());
      } else if (starts_atom(c)) {
        v = v * power();
      } else {
        return v;
      }
    }
  }

  long long integer() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    try {
      return std::stoll(std::string(text_.substr(start, pos_ - start)));
    } catch (const std::out_of_range&) {
      fail("integer literal out of range");
    }
  }

  Value power() {
    Value base = atom();
    if (peek() != '^') return base;
    ++pos_;
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    }
    const long long e = integer();
    if (e > 4096) fail("exponent too large");
    if (negative) return alg_.from_scalar(pow(require_scalar(base, "negative power"), -static_cast<int>(e)));
    Value result = alg_.from_scalar(QScalar(1));
    for (long long i = 0; i < e; ++i) result = result * base;
    return result;
  }

  Value atom() {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return alg_.from_scalar(QScalar(static_cast<Int>(integer())));
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return v;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("expected an operand");
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);
    if (name == "q") return alg_.from_scalar(QScalar::q_power(1));
    if (name == "sqrt") {
      if (peek() != '(') fail("expected '(' after sqrt");
      ++pos_;
      Value inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return alg_.from_scalar(sqrt(require_scalar(inner, "sqrt")));
    }
    bool starred = pos_ < text_.size() && text_[pos_] == '*';
    if (starred) ++pos_;
    auto g = alg_.generator(name, starred);
    if (!g) {
      pos_ = start;
      fail("unknown symbol '" + std::string(name) + "'");
    }
    return *g;
  }

  std::string_view text_;
  const Algebra& alg_;
  std::size_t pos_ = 0;
};

template <class Algebra>
typename Algebra::Value parse_expression(std::string_view text, const Algebra& algebra) {
  return ExpressionParser<Algebra>(text, algebra).parse();
}

}  // namespace qsphere
