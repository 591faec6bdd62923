#ifndef JAGER_TEST_SUPPORT_HPP
#define JAGER_TEST_SUPPORT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "jager/big_real.hpp"
#include "jager/params.hpp"

namespace jager::testing {

using Rational = boost::multiprecision::cpp_rational;

inline BigReal to_big(const Rational& q, mpfr_prec_t precision) {
  BigReal num = BigReal::parse(boost::multiprecision::numerator(q).str(), precision + 64);
  BigReal den = BigReal::parse(boost::multiprecision::denominator(q).str(), precision + 64);
  return (num / den).rounded_to(precision);
}

// [a_1..a_n]_(m,k) with tail, evaluated exactly.
inline Rational eval_rational(std::span<const Digit> digits, int m, const Rational& k,
                              Rational tail = 0) {
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    tail = Rational(m) + k * (1 - 2 * m) / (Rational(*it) + k + tail);
  }
  return tail;
}

inline BigReal rel_err(const BigReal& got, const BigReal& want) {
  if (want.is_zero()) return abs(got);
  return abs((got - want) / want);
}

// Small hand-rolled generator for property tests; fixed seeds keep failures
// reproducible.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  Digit digit(Digit max) { return std::uniform_int_distribution<Digit>(0, max)(rng_); }

  // Mostly small digits with an occasional large one.
  Digit typical_digit() { return coin(0.1) ? digit(5000) : digit(6); }

  std::vector<Digit> digits(std::size_t len) {
    std::vector<Digit> out(len);
    for (auto& d : out) d = typical_digit();
    return out;
  }

  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

  std::size_t index(std::size_t max) { return std::uniform_int_distribution<std::size_t>(0, max)(rng_); }

  std::string decimal(std::size_t len = 80) {
    std::string out = "0.";
    for (std::size_t i = 0; i < len; ++i) out.push_back(static_cast<char>('0' + digit(9)));
    out.back() = static_cast<char>('1' + digit(8));
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

inline const std::vector<std::string>& k_grid() {
  static const std::vector<std::string> grid = {"1", "1.1", "sqrt(2)", "2"};
  return grid;
}

}  // namespace jager::testing

#endif  // JAGER_TEST_SUPPORT_HPP
