#ifndef JAGER_EXPRESSION_HPP
#define JAGER_EXPRESSION_HPP

#include <string_view>

#include "jager/big_real.hpp"

namespace jager {

// Evaluates a real-valued expression at the given precision.
//
// Grammar: numbers (decimal or scientific literals, parsed with correct
// rounding), the constants `pi` and `e`, the operators + - * / ^ with the
// usual precedence (^ is right associative, integer exponents only),
// parentheses, and the functions sqrt(), exp(), log().
//
//   evaluate_expression("3/2", 256)
//   evaluate_expression("(sqrt(5)-1)/2", 512)
//
// Throws std::invalid_argument on malformed input.
BigReal evaluate_expression(std::string_view text, mpfr_prec_t precision);

}  // namespace jager

#endif  // JAGER_EXPRESSION_HPP
