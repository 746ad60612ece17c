#include "coexpand/parser.hpp"

#include <cctype>
#include <charconv>
#include <climits>
#include <cmath>
#include <string>
#include <vector>

#include "coexpand/error.hpp"

namespace coexpand {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) {}

  FunctionExpr run() {
    FunctionExpr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail({"operator", "end of input"});
    return e;
  }

 private:
  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string found = pos_ < text_.size() ? std::string("'") + text_[pos_] + "'" : "end of input";
    throw ParseError(pos_, expected, "at offset " + std::to_string(pos_) + ": expected " + join(expected) +
                                         ", found " + found);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail({std::string("'") + c + "'"});
  }

  FunctionExpr expr() {
    FunctionExpr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = detail::make_binary(BinaryOp::Add, lhs, term());
      } else if (accept('-')) {
        lhs = detail::make_binary(BinaryOp::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  FunctionExpr term() {
    FunctionExpr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = detail::make_binary(BinaryOp::Mul, lhs, factor());
      } else if (accept('/')) {
        lhs = detail::make_binary(BinaryOp::Div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  FunctionExpr factor() {
    bool negate = accept('-');
    bool literal = negate && starts_number();
    FunctionExpr b = base();
    if (accept('^')) {
      b = FunctionExpr::pow(b, integer());
      literal = false;
    }
    if (!negate) return b;
    if (literal) return FunctionExpr::constant(-std::get<Constant>(b.node().data).value);
    return detail::make_neg(b);
  }

  bool starts_number() {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  }

  FunctionExpr base() {
    char c = peek();
    if (starts_number()) return number();
    if (c == '(') {
      ++pos_;
      FunctionExpr e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      if (name == "x") return FunctionExpr::variable();
      if (name == "glue" && options_.allow_glue) return glue_term();
      auto b = builtin_from_name(name);
      if (!b) {
        pos_ = start;
        fail(expected_base());
      }
      expect('(');
      FunctionExpr arg = expr();
      expect(')');
      return FunctionExpr::apply(*b, arg);
    }
    fail(expected_base());
  }

  static std::vector<std::string> expected_base() {
    std::vector<std::string> out = {"number", "'x'", "'('"};
    for (Builtin b : kAllBuiltins) out.emplace_back(builtin_name(b));
    return out;
  }

  FunctionExpr glue_term() {
    expect('(');
    FunctionExpr left = expr();
    expect(',');
    FunctionExpr right = expr();
    FunctionExpr arg;
    if (accept(',')) arg = expr();
    expect(')');
    return detail::make_glue_unchecked(left, right, arg);
  }

  // decimal := digits ["." digits] [("e"|"E") ["+"|"-"] digits], or a
  // leading "." form; the exponent part is consumed only when complete.
  FunctionExpr number() {
    skip_ws();
    std::size_t start = pos_;
    auto digits = [&] {
      std::size_t s = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ - s;
    };
    std::size_t int_digits = digits();
    std::size_t frac_digits = 0;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      frac_digits = digits();
    }
    if (int_digits + frac_digits == 0) {
      pos_ = start;
      fail({"number"});
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;
    }
    double value = 0.0;
    auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (res.ec != std::errc() || !std::isfinite(value)) {
      pos_ = start;
      fail({"finite number"});
    }
    return FunctionExpr::constant(value);
  }

  int integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
    std::size_t digits_start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits_start) {
      pos_ = start;
      fail({"integer"});
    }
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) fail({"integer"});
    const char* first = text_.data() + start + (text_[start] == '+' ? 1 : 0);
    int value = 0;
    auto res = std::from_chars(first, text_.data() + pos_, value);
    if (res.ec != std::errc()) {
      pos_ = start;
      fail({"integer in range"});
    }
    return value;
  }

  std::string_view text_;
  ParseOptions options_;
  std::size_t pos_ = 0;
};

}  // namespace

FunctionExpr parse(std::string_view text, const ParseOptions& options) { return Parser(text, options).run(); }

}  // namespace coexpand
