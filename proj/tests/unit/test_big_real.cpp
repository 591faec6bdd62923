#include <gtest/gtest.h>

#include <stdexcept>
#include <utility>

#include "jager/big_real.hpp"
#include "jager/errors.hpp"
#include "jager/expression.hpp"
#include "jager/params.hpp"

namespace jager {
namespace {

TEST(BigReal, ArithmeticKeepsTheWiderPrecision) {
  BigReal narrow(1L, 64);
  BigReal wide(3L, 256);
  EXPECT_EQ((narrow / wide).precision(), 256);
  EXPECT_EQ((wide - narrow).precision(), 256);
  EXPECT_EQ((narrow * 2L).precision(), 64);
}

TEST(BigReal, ThirdTimesThreeIsOneToWorkingPrecision) {
  const BigReal third = BigReal(1L, 256) / 3L;
  EXPECT_LT(abs(third * 3L - 1L), BigReal::pow2(-254, 256));
  EXPECT_EQ(third.to_string(10), "3.333333333e-01");
}

TEST(BigReal, ParseIsCorrectlyRounded) {
  const BigReal a = BigReal::parse("0.1", 256);
  const BigReal b = BigReal(1L, 256) / 10L;
  EXPECT_EQ(a, b);
  EXPECT_THROW(BigReal::parse("0.1x", 256), std::invalid_argument);
  EXPECT_THROW(BigReal::parse("", 256), std::invalid_argument);
}

TEST(BigReal, DecimalRoundTripAtAThirdOfTheBits) {
  const BigReal x = sqrt(BigReal(2L, 256)) / 7L;
  EXPECT_EQ(BigReal::parse(x.to_string(256 / 3), 256), x);
}

TEST(BigReal, ComparisonsAgainstIntegers) {
  const BigReal half = BigReal(1L, 128) / 2L;
  EXPECT_TRUE(half > 0L);
  EXPECT_TRUE(half < 1L);
  EXPECT_FALSE(half == 0L);
  EXPECT_TRUE(BigReal(5L, 64) == 5L);
  EXPECT_EQ(half.sign(), 1);
  EXPECT_EQ((-half).sign(), -1);
}

TEST(BigReal, FloorRoundAndIntegerConversion) {
  const BigReal x = BigReal::parse("7.6", 128);
  EXPECT_EQ(floor(x), 7L);
  EXPECT_EQ(round(x), 8L);
  EXPECT_EQ(x.to_uint64(), 7u);
  const BigReal big(std::uint64_t{1} << 62, 128);
  EXPECT_EQ(big.to_uint64(), std::uint64_t{1} << 62);
}

TEST(BigReal, CopyAndMoveKeepValueAndPrecision) {
  BigReal a = BigReal::pi(200);
  BigReal b = a;
  EXPECT_EQ(a, b);
  BigReal c = std::move(b);
  EXPECT_EQ(c, a);
  EXPECT_EQ(c.precision(), 200);
  BigReal d(1L, 64);
  d = c;
  EXPECT_EQ(d.precision(), 200);
  EXPECT_EQ(d, a);
}

TEST(BigReal, PiMatchesKnownDigits) {
  EXPECT_EQ(BigReal::pi(256).to_string(31), "3.141592653589793238462643383280e+00");
}

TEST(BigReal, Log2AndExponent) {
  EXPECT_EQ(log2(BigReal(1024L, 64)), 10L);
  EXPECT_EQ(BigReal::pow2(-100, 64).exponent2(), -99);
}

TEST(Expression, Arithmetic) {
  EXPECT_EQ(evaluate_expression("3/2", 128), BigReal::parse("1.5", 128));
  EXPECT_EQ(evaluate_expression("-3+4*2", 128), 5L);
  EXPECT_EQ(evaluate_expression("2^10", 128), 1024L);
  EXPECT_EQ(evaluate_expression("2^-2", 128), BigReal::parse("0.25", 128));
  EXPECT_EQ(evaluate_expression(" ( 1 + 2 ) * 3 ", 128), 9L);
}

TEST(Expression, FunctionsAndConstants) {
  const BigReal s = evaluate_expression("sqrt(2)", 256);
  EXPECT_LT(abs(s * s - 2L), BigReal::pow2(-250, 256));
  const BigReal golden = evaluate_expression("(sqrt(5)-1)/2", 256);
  EXPECT_LT(abs(golden * golden + golden - 1L), BigReal::pow2(-250, 256));
  EXPECT_EQ(evaluate_expression("pi", 256), BigReal::pi(256));
  EXPECT_LT(abs(evaluate_expression("exp(log(3))", 256) - 3L), BigReal::pow2(-250, 256));
  EXPECT_THROW(evaluate_expression("2e", 256), std::invalid_argument);
}

TEST(Expression, ScientificLiterals) {
  EXPECT_EQ(evaluate_expression("1e-30", 256), BigReal::parse("1e-30", 256));
  EXPECT_EQ(evaluate_expression("2.5E3", 128), 2500L);
}

TEST(Expression, RejectsMalformedInput) {
  for (const char* bad : {"", "1+", "foo", "2^0.5", "(1", "1/0", "sqrt(-1)", "log(0)", "1 2"}) {
    EXPECT_THROW(evaluate_expression(bad, 128), std::invalid_argument) << bad;
  }
}

TEST(Params, ValidatesInvariants) {
  EXPECT_THROW(Params(2, "1"), DomainError);
  EXPECT_THROW(Params(0, "1/2"), DomainError);
  EXPECT_THROW(Params(0, "1", 32), DomainError);
  EXPECT_THROW(Params(0, "1", 256, 0), DomainError);
  EXPECT_THROW(Params(0, "nonsense"), std::invalid_argument);
}

TEST(Params, ClassicalOnlyAtKOne) {
  EXPECT_TRUE(Params(0, "1").classical());
  EXPECT_TRUE(Params(1, "2/2").classical());
  EXPECT_FALSE(Params(0, "1.1").classical());
}

TEST(Params, ToleranceLadderAndCopies) {
  const Params p(1, "sqrt(2)", 256, 40);
  EXPECT_EQ(p.tolerance(2), BigReal::pow2(-128, 256));
  EXPECT_EQ(p.tolerance(4), BigReal::pow2(-64, 256));
  const Params q = p.with_depth(7);
  EXPECT_EQ(q.max_depth(), 7u);
  EXPECT_EQ(q.k(), p.k());
  const Params r = p.with_precision(512);
  EXPECT_EQ(r.k().precision(), 512);
  EXPECT_EQ(r.k_expr(), "sqrt(2)");
}

}  // namespace
}  // namespace jager
