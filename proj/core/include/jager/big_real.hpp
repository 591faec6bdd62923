#ifndef JAGER_BIG_REAL_HPP
#define JAGER_BIG_REAL_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

// mpfr.h only declares the intmax_t conversions when <cstdint> came first.
#include <mpfr.h>

namespace jager {

// Binary floating point with an explicit bit precision, rounded to nearest.
// The result of a binary operation carries the larger of the operand
// precisions, so values built from one Params never lose bits silently.
class BigReal {
 public:
  static constexpr mpfr_prec_t kDefaultPrecision = 256;

  explicit BigReal(mpfr_prec_t precision = kDefaultPrecision);
  BigReal(long value, mpfr_prec_t precision);
  BigReal(std::uint64_t value, mpfr_prec_t precision);
  BigReal(int value, mpfr_prec_t precision) : BigReal(static_cast<long>(value), precision) {}

  // Correctly rounded parse of a decimal (or 0x-prefixed hex) literal.
  // Throws std::invalid_argument if the whole string is not a number.
  static BigReal parse(std::string_view literal, mpfr_prec_t precision);
  static BigReal pow2(long exponent, mpfr_prec_t precision);
  static BigReal pi(mpfr_prec_t precision);

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  // Copy rounded to a new precision.
  BigReal rounded_to(mpfr_prec_t precision) const;

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  // Value truncated toward zero. Caller guarantees 0 <= value < 2^64.
  std::uint64_t to_uint64() const { return mpfr_get_uj(value_, MPFR_RNDZ); }
  // Nearest integer of the exponent: value = m * 2^e with 0.5 <= |m| < 1.
  long exponent2() const;

  // Scientific notation with `significant` decimal digits, e.g. "4.4721e-01".
  std::string to_string(int significant) const;
  // Bit-exact hexadecimal form, used for identity comparisons in tests.
  std::string to_hex() const;

  BigReal& operator+=(const BigReal& rhs);
  BigReal& operator-=(const BigReal& rhs);
  BigReal& operator*=(const BigReal& rhs);
  BigReal& operator/=(const BigReal& rhs);
  BigReal& operator+=(long rhs);
  BigReal& operator-=(long rhs);
  BigReal& operator*=(long rhs);
  BigReal& operator/=(long rhs);

  BigReal operator-() const;

  friend BigReal operator+(BigReal lhs, const BigReal& rhs) { return lhs += rhs; }
  friend BigReal operator-(BigReal lhs, const BigReal& rhs) { return lhs -= rhs; }
  friend BigReal operator*(BigReal lhs, const BigReal& rhs) { return lhs *= rhs; }
  friend BigReal operator/(BigReal lhs, const BigReal& rhs) { return lhs /= rhs; }
  friend BigReal operator+(BigReal lhs, long rhs) { return lhs += rhs; }
  friend BigReal operator-(BigReal lhs, long rhs) { return lhs -= rhs; }
  friend BigReal operator*(BigReal lhs, long rhs) { return lhs *= rhs; }
  friend BigReal operator/(BigReal lhs, long rhs) { return lhs /= rhs; }
  friend BigReal operator+(long lhs, BigReal rhs) { return rhs += lhs; }
  friend BigReal operator*(long lhs, BigReal rhs) { return rhs *= lhs; }
  friend BigReal operator-(long lhs, const BigReal& rhs);
  friend BigReal operator/(long lhs, const BigReal& rhs);

  friend bool operator==(const BigReal& lhs, const BigReal& rhs) {
    return mpfr_equal_p(lhs.value_, rhs.value_) != 0;
  }
  friend std::partial_ordering operator<=>(const BigReal& lhs, const BigReal& rhs);
  friend bool operator==(const BigReal& lhs, long rhs) { return mpfr_cmp_si(lhs.value_, rhs) == 0; }
  friend std::partial_ordering operator<=>(const BigReal& lhs, long rhs);

  friend BigReal sqrt(const BigReal& x);
  friend BigReal abs(const BigReal& x);
  friend BigReal floor(const BigReal& x);
  friend BigReal round(const BigReal& x);
  friend BigReal log2(const BigReal& x);

  friend std::ostream& operator<<(std::ostream& os, const BigReal& x);

  mpfr_srcptr raw() const { return value_; }
  mpfr_ptr raw() { return value_; }

 private:
  mpfr_t value_;
};

BigReal min(const BigReal& a, const BigReal& b);
BigReal max(const BigReal& a, const BigReal& b);

}  // namespace jager

#endif  // JAGER_BIG_REAL_HPP
