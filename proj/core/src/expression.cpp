#include "jager/expression.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace jager {
namespace {

class Parser {
 public:
  Parser(std::string_view text, mpfr_prec_t precision) : text_(text), precision_(precision) {}

  BigReal parse() {
    BigReal value = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw std::invalid_argument("expression '" + std::string(text_) + "': " + message +
                                " at offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  BigReal expression() {
    BigReal value = term();
    for (;;) {
      if (accept('+')) {
        value += term();
      } else if (accept('-')) {
        value -= term();
      } else {
        return value;
      }
    }
  }

  BigReal term() {
    BigReal value = power();
    for (;;) {
      if (accept('*')) {
        value *= power();
      } else if (accept('/')) {
        BigReal divisor = power();
        if (divisor.is_zero()) fail("division by zero");
        value /= divisor;
      } else {
        return value;
      }
    }
  }

  BigReal power() {
    BigReal base = unary();
    if (!accept('^')) return base;
    BigReal exponent = power();
    if (!(floor(exponent) == exponent) || abs(exponent) > 4096L) {
      fail("only integer exponents up to 4096 are supported");
    }
    BigReal out(precision_);
    mpfr_pow_si(out.raw(), base.raw(), mpfr_get_si(exponent.raw(), MPFR_RNDN), MPFR_RNDN);
    return out;
  }

  BigReal unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return primary();
  }

  BigReal primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      BigReal value = expression();
      if (!accept(')')) fail("expected ')'");
      return value;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  BigReal number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    // An exponent marker only counts when a digit (optionally signed) follows,
    // so "2e" still reads as 2 * e.
    if (pos_ + 1 < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t probe = pos_ + 1;
      if (text_[probe] == '+' || text_[probe] == '-') ++probe;
      if (probe < text_.size() && std::isdigit(static_cast<unsigned char>(text_[probe]))) {
        pos_ = probe;
        digits();
      }
    }
    return BigReal::parse(text_.substr(start, pos_ - start), precision_);
  }

  BigReal identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "pi") return BigReal::pi(precision_);
    if (name == "e") {
      BigReal one(1L, precision_);
      BigReal out(precision_);
      mpfr_exp(out.raw(), one.raw(), MPFR_RNDN);
      return out;
    }
    if (!accept('(')) fail("unknown constant '" + std::string(name) + "'");
    BigReal argument = expression();
    if (!accept(')')) fail("expected ')'");
    if (name == "sqrt") {
      if (argument < 0L) fail("sqrt of a negative number");
      return sqrt(argument);
    }
    BigReal out(precision_);
    if (name == "exp") {
      mpfr_exp(out.raw(), argument.raw(), MPFR_RNDN);
      return out;
    }
    if (name == "log") {
      if (!(argument > 0L)) fail("log of a non-positive number");
      mpfr_log(out.raw(), argument.raw(), MPFR_RNDN);
      return out;
    }
    fail("unknown function '" + std::string(name) + "'");
  }

  std::string_view text_;
  mpfr_prec_t precision_;
  std::size_t pos_ = 0;
};

}  // namespace

BigReal evaluate_expression(std::string_view text, mpfr_prec_t precision) {
  return Parser(text, precision).parse();
}

}  // namespace jager
