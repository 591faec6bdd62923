#include <gtest/gtest.h>

#include <stdexcept>

#include "jager/errors.hpp"
#include "jager/expansion.hpp"
#include "jager/geometry.hpp"
#include "test_support.hpp"

namespace jager {
namespace {

using testing::Gen;
using testing::Rational;
using testing::eval_rational;
using testing::rel_err;
using testing::to_big;

const std::vector<Digit> kRemarkDigits = {0, 1, 2};

TEST(EvalFinite, RemarkClosedFormsAtRationalK) {
  for (const char* k_text : {"1", "3/2", "2"}) {
    for (int m : {0, 1}) {
      const Params p(m, k_text);
      const BigReal k = p.k();
      const BigReal expected = m == 0 ? (k * k + 4L * k + 2L) / (k * k + 5L * k + 4L)
                                      : (k + 4L) / (k * k * k + 3L * k * k + 5L * k + 4L);
      EXPECT_LT(rel_err(eval_finite(kRemarkDigits, p), expected), p.parse("1e-60"))
          << "m=" << m << " k=" << k_text;
    }
  }
  EXPECT_EQ(eval_finite(kRemarkDigits, Params(0, "1")), Params(0, "1").parse("7/10"));
  EXPECT_EQ(eval_finite(kRemarkDigits, Params(1, "1")), Params(1, "1").parse("5/13"));
}

TEST(EvalFinite, AgreesWithExactRationalsOnRandomDigits) {
  Gen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = static_cast<int>(gen.digit(1));
    const Rational k = std::vector<Rational>{1, Rational(3, 2), Rational(11, 10), 2}[gen.index(3)];
    const Params p(m, (boost::multiprecision::numerator(k).str() + "/" +
                       boost::multiprecision::denominator(k).str()));
    const auto digits = gen.digits(1 + gen.index(12));
    const BigReal got = eval_finite(digits, p);
    EXPECT_LT(rel_err(got, to_big(eval_rational(digits, m, k), 256)), p.tolerance(1) * 4096L);
  }
}

TEST(EvalFinite, EmptyDigitsReturnTheTail) {
  const Params p(0, "2");
  const BigReal tail = p.parse("1/3");
  EXPECT_EQ(eval_finite({}, p, tail), tail);
}

TEST(Expand, RemarkRationalsTerminate) {
  const Params p0(0, "1");
  const Orbit o0 = expand(p0.parse("7/10"), p0);
  EXPECT_EQ(o0.digits, kRemarkDigits);
  ASSERT_TRUE(o0.terminated_at.has_value());
  EXPECT_EQ(*o0.terminated_at, 3u);
  EXPECT_TRUE(o0.future(3).is_zero());

  const Params p1(1, "1");
  const Orbit o1 = expand(p1.parse("5/13"), p1);
  EXPECT_EQ(o1.digits, kRemarkDigits);
  EXPECT_EQ(o1.terminated_at, std::optional<std::size_t>(3));
}

TEST(Expand, GoldenRatioIsAllOnesClassically) {
  const Params p(0, "1", 256, 30);
  const Orbit o = expand(p.parse("(sqrt(5)-1)/2"), p);
  EXPECT_EQ(o.size(), 30u);
  for (Digit d : o.digits) EXPECT_EQ(d, 0u);
  EXPECT_EQ(classical_digit_translate(o.digits, DigitDirection::to_classical),
            std::vector<Digit>(30, 1));
}

TEST(Expand, RejectsSeedsOutsideTheUnitInterval) {
  const Params p(0, "1");
  EXPECT_THROW(expand(p.real(0L), p), DomainError);
  EXPECT_THROW(expand(p.real(1L), p), DomainError);
  EXPECT_THROW(step_map(p.parse("3/2"), p), DomainError);
}

TEST(StepMap, NearACylinderEndpointRaisesPrecisionLoss) {
  const Params p(0, "1");
  // 1/2 separates the cylinders of digits 0 and 1.
  EXPECT_THROW(step_map(p.parse("1/2 + 2^-200"), p), PrecisionLoss);
  EXPECT_THROW(step_map(p.parse("1/2 - 2^-200"), p), PrecisionLoss);
  EXPECT_NO_THROW(step_map(p.parse("1/2 + 2^-60"), p));
}

TEST(StepMap, HugeDigitRaisesPrecisionLoss) {
  const Params p(0, "1");
  EXPECT_THROW(step_map(p.parse("2^-70"), p), PrecisionLoss);
  const Step s = step_map(p.parse("1/1001 + 2^-40"), p);
  EXPECT_EQ(s.digit, 999u);
}

TEST(Expand, TrustRunsOutBeforeTheDepthAtLowPrecision) {
  // Each golden-ratio step amplifies errors by about 1.4 bits, so 64 bits
  // cannot support 100 trusted steps.
  const Params p(0, "1", 64, 100);
  const Orbit o = expand(p.parse("(sqrt(5)-1)/2"), p);
  EXPECT_LT(o.trusted_depth, 40u);
  EXPECT_TRUE(o.precision_failure_at.has_value() || o.size() > o.trusted_depth);
  EXPECT_EQ(o.log2_amplification.size(), o.size());
}

TEST(Expand, CylinderMembershipAlongTheOrbit) {
  Gen gen(5);
  for (int m : {0, 1}) {
    for (const auto& k : testing::k_grid()) {
      const Params p(m, k, 256, 30);
      for (int s = 0; s < 20; ++s) {
        const Orbit o = expand(p.parse(gen.decimal()), p);
        for (std::size_t n = 0; n + 1 <= o.trusted_depth; ++n) {
          const Interval cyl = cylinder_interval(o.digit(n + 1), p);
          const BigReal& x = o.future(n);
          const BigReal tol = p.tolerance(2);
          EXPECT_GE(x, cyl.lower - tol);
          EXPECT_LE(x, cyl.upper + tol);
        }
      }
    }
  }
}

TEST(Expand, ReconstructionThroughTheFuture) {
  Gen gen(6);
  for (int m : {0, 1}) {
    for (const auto& k : testing::k_grid()) {
      const Params p(m, k, 256, 30);
      const Orbit o = expand(p.parse(gen.decimal()), p);
      for (std::size_t n = 1; n <= o.trusted_depth; ++n) {
        const auto digits = std::span<const Digit>(o.digits).first(n);
        EXPECT_LT(abs(eval_finite(digits, p, o.future(n)) - o.x0), p.tolerance(2));
      }
    }
  }
}

TEST(Expand, LowerPrecisionNeverTrustsMore) {
  const Params hi(1, "sqrt(2)", 256, 40);
  const Params lo = hi.with_precision(64);
  Gen gen(8);
  for (int s = 0; s < 10; ++s) {
    const std::string x0 = gen.decimal();
    EXPECT_LE(expand(lo.parse(x0), lo).trusted_depth, expand(hi.parse(x0), hi).trusted_depth);
  }
}

TEST(Pasts, FirstPastHasTheSpecialForm) {
  for (int m : {0, 1}) {
    const Params p(m, "3/2");
    const std::vector<Digit> one = {4};
    EXPECT_EQ(past_value(one, p), m - p.k() - eval_finite(one, p));
    EXPECT_LE(past_value(one, p), m - p.k());
  }
  EXPECT_THROW(past_value({}, Params(0, "1")), DomainError);
}

TEST(Pasts, OrbitPastsMatchPastValue) {
  const Params p(1, "2", 256, 12);
  const Orbit o = expand(p.parse("0.318309886183790671537767526745"), p);
  for (std::size_t n = 1; n <= o.size(); ++n) {
    const auto digits = std::span<const Digit>(o.digits).first(n);
    EXPECT_LT(abs(o.past(n) - past_value(digits, p)), p.tolerance(1) * 64L);
    EXPECT_LT(o.past(n), p.m() - p.k() + p.tolerance(2));
  }
}

TEST(Matrices, DeterminantLaw) {
  Gen gen(2);
  for (int m : {0, 1}) {
    for (const auto& k : testing::k_grid()) {
      const Params p(m, k);
      const auto digits = gen.digits(1 + gen.index(15));
      const MobiusCoeffs prod = convergent_matrix(digits, p);
      BigReal expected = p.real(1L);
      for (std::size_t i = 0; i < digits.size(); ++i) expected *= p.k() * (2 * m - 1);
      EXPECT_LT(rel_err(prod.det(), expected), p.tolerance(2));
      EXPECT_LT(rel_err(prod.b / prod.d, eval_finite(digits, p)), p.tolerance(2));
    }
  }
}

TEST(Matrices, BackwardApproximantOfTheRemarkDigits) {
  const Params p(1, "1");
  const Approximant a = approximant(convergent_matrix(kRemarkDigits, p), p);
  EXPECT_EQ(a.p, 7L);
  EXPECT_EQ(a.q, 18L);
  const Params p0(0, "1");
  const Approximant b = approximant(convergent_matrix(kRemarkDigits, p0), p0);
  EXPECT_EQ(b.p / b.q, p0.parse("7/10"));
}

// Exact oracle: theta_n = q^2 |x0 - p/q| / k^(n+1) on rationals, with the
// approximant taken as the image of m under the digit matrices.
Rational theta_oracle(std::span<const Digit> digits, std::size_t n, int m, const Rational& k,
                      const Rational& x0) {
  Rational A = 1, B = 0, C = 0, D = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational a = digits[i];
    const Rational e = m, f = m * (a + k) + k * (1 - 2 * m), g = 1, h = a + k;
    const Rational nA = A * e + B * g, nB = A * f + B * h, nC = C * e + D * g, nD = C * f + D * h;
    A = nA; B = nB; C = nC; D = nD;
  }
  const Rational pn = A * m + B, qn = C * m + D;
  Rational diff = x0 - pn / qn;
  if (diff < 0) diff = -diff;
  Rational kp = 1;
  for (std::size_t i = 0; i <= n; ++i) kp *= k;
  return qn * qn * diff / kp;
}

TEST(Theta, DirectAndPerronMatchTheRationalOracle) {
  Gen gen(21);
  const std::vector<std::pair<std::string, Rational>> ks = {
      {"1", 1}, {"11/10", Rational(11, 10)}, {"3/2", Rational(3, 2)}, {"2", 2}};
  for (int m : {0, 1}) {
    for (const auto& [k_text, k] : ks) {
      const Params p(m, k_text, 256, 16);
      for (int trial = 0; trial < 10; ++trial) {
        // A long random rational: digits followed by a small rational tail.
        const auto digits = gen.digits(16);
        const Rational x0 = eval_rational(digits, m, k, Rational(1 + gen.digit(97), 101));
        const Orbit o = expand(to_big(x0, 256), p);
        const ThetaSeq perron = theta_sequence(o, p, ThetaMethod::perron);
        const ThetaSeq direct = theta_sequence(o, p, ThetaMethod::direct);
        ASSERT_EQ(perron.size(), direct.size());
        for (std::size_t n = 1; n <= perron.size(); ++n) {
          const BigReal want = to_big(theta_oracle(o.digits, n, m, k, x0), 256);
          EXPECT_LT(rel_err(direct(n), want), p.parse("1e-30")) << "m=" << m << " k=" << k_text;
          EXPECT_LT(rel_err(perron(n), want), p.parse("1e-30")) << "m=" << m << " k=" << k_text;
        }
      }
    }
  }
}

TEST(Theta, RemarkValuesAtKOne) {
  const Params p(0, "1");
  const Orbit o = expand(p.parse("7/10"), p);
  // 7/10 = [1,2,3]: convergents 1/1, 2/3, 7/10.
  EXPECT_LT(abs(theta_direct(o, 1, p) - p.parse("3/10")), p.tolerance(2));
  EXPECT_LT(abs(theta_direct(o, 2, p) - p.parse("3/10")), p.tolerance(2));
  EXPECT_TRUE(theta_direct(o, 3, p).is_zero());
  EXPECT_THROW(theta_direct(o, 4, p), DomainError);
  EXPECT_THROW(theta_direct(o, 0, p), DomainError);
}

TEST(Theta, PerronRequiresPositiveGap) {
  const Params p(0, "1");
  EXPECT_THROW(theta_perron(p.real(0L), p.real(1L)), DomainError);
  EXPECT_EQ(theta_perron(p.parse("1/2"), p.parse("-3/2")), p.parse("1/2"));
}

TEST(Theta, ThetaSequenceLengthFollowsTrust) {
  const Params p(0, "1", 256, 20);
  const Orbit o = expand(p.parse("(sqrt(5)-1)/2"), p);
  EXPECT_EQ(theta_sequence(o, p, ThetaMethod::perron).size(), o.trusted_depth - 1);
  EXPECT_EQ(theta_sequence(o, p, ThetaMethod::perron).methods.front(), ThetaMethod::perron);
}

TEST(Digits, ClassicalTranslationRoundTrips) {
  const std::vector<Digit> a = {0, 1, 2, 5000};
  const auto b = classical_digit_translate(a, DigitDirection::to_classical);
  EXPECT_EQ(b, (std::vector<Digit>{1, 2, 3, 5001}));
  EXPECT_EQ(classical_digit_translate(b, DigitDirection::from_classical), a);
  const std::vector<Digit> zero = {0};
  EXPECT_THROW(classical_digit_translate(zero, DigitDirection::from_classical), DomainError);
}

TEST(Digits, ParseAndFormat) {
  EXPECT_EQ(parse_digit_list(" 0, 1,2 "), (std::vector<Digit>{0, 1, 2}));
  EXPECT_EQ(format_digit_list(std::vector<Digit>{3, 0, 7}), "3,0,7");
  EXPECT_THROW(parse_digit_list("1,,2"), std::invalid_argument);
  EXPECT_THROW(parse_digit_list("a"), std::invalid_argument);
  EXPECT_THROW(parse_digit_list("-1"), std::invalid_argument);
}

TEST(SeedWithPrefix, ExpansionStartsWithThePrefix) {
  Gen gen(3);
  for (int m : {0, 1}) {
    for (const auto& k : testing::k_grid()) {
      const Params p(m, k, 256, 40);
      for (int trial = 0; trial < 10; ++trial) {
        const auto prefix = gen.digits(1 + gen.index(10));
        const BigReal x0 = seed_with_prefix(prefix, p.parse(gen.decimal()), p);
        const Orbit o = expand(x0, p);
        ASSERT_GE(o.size(), prefix.size());
        EXPECT_TRUE(std::equal(prefix.begin(), prefix.end(), o.digits.begin()));
      }
    }
  }
}

TEST(SeedWithPrefix, RecipesRoundTripThroughEvaluateSeed) {
  const Params p(0, "1", 256, 40);
  const std::vector<Digit> prefix = {5, 0, 0, 2};
  const std::string recipe = prefix_recipe(prefix, "0.25");
  EXPECT_EQ(recipe, "[5,0,0,2|0.25]");
  const Orbit o = expand(evaluate_seed(recipe, p), p);
  EXPECT_EQ(std::vector<Digit>(o.digits.begin(), o.digits.begin() + 4), prefix);
  EXPECT_EQ(evaluate_seed("7/10", p), p.parse("7/10"));
  EXPECT_THROW(evaluate_seed("[1,2|", p), std::invalid_argument);
}

}  // namespace
}  // namespace jager
