#include "jager/big_real.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace jager {
namespace {

mpfr_prec_t wider(const BigReal& a, const BigReal& b) {
  return std::max(a.precision(), b.precision());
}

// Raises the precision of `target` in place (keeping its value) when `other`
// is wider.
void widen_to(BigReal& target, mpfr_prec_t precision) {
  if (target.precision() < precision) {
    mpfr_prec_round(target.raw(), precision, MPFR_RNDN);
  }
}

}  // namespace

BigReal::BigReal(mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

BigReal::BigReal(long value, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

BigReal::BigReal(std::uint64_t value, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_uj(value_, value, MPFR_RNDN);
}

BigReal BigReal::parse(std::string_view literal, mpfr_prec_t precision) {
  BigReal out(precision);
  std::string text(literal);
  char* end = nullptr;
  mpfr_strtofr(out.value_, text.c_str(), &end, 0, MPFR_RNDN);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  return out;
}

BigReal BigReal::pow2(long exponent, mpfr_prec_t precision) {
  BigReal out(1L, precision);
  mpfr_mul_2si(out.value_, out.value_, exponent, MPFR_RNDN);
  return out;
}

BigReal BigReal::pi(mpfr_prec_t precision) {
  BigReal out(precision);
  mpfr_const_pi(out.value_, MPFR_RNDN);
  return out;
}

BigReal::BigReal(const BigReal& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept {
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(value_); }

BigReal BigReal::rounded_to(mpfr_prec_t precision) const {
  BigReal out(precision);
  mpfr_set(out.value_, value_, MPFR_RNDN);
  return out;
}

long BigReal::exponent2() const {
  if (!mpfr_regular_p(value_)) return 0;
  return mpfr_get_exp(value_);
}

std::string BigReal::to_string(int significant) const {
  significant = std::max(significant, 1);
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*Re", significant - 1, value_);
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

std::string BigReal::to_hex() const {
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%Ra", value_);
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

BigReal& BigReal::operator+=(const BigReal& rhs) {
  widen_to(*this, rhs.precision());
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& rhs) {
  widen_to(*this, rhs.precision());
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(const BigReal& rhs) {
  widen_to(*this, rhs.precision());
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& rhs) {
  widen_to(*this, rhs.precision());
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator+=(long rhs) {
  mpfr_add_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator-=(long rhs) {
  mpfr_sub_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigReal BigReal::operator-() const {
  BigReal out(*this);
  mpfr_neg(out.value_, out.value_, MPFR_RNDN);
  return out;
}

BigReal operator-(long lhs, const BigReal& rhs) {
  BigReal out(rhs.precision());
  mpfr_si_sub(out.value_, lhs, rhs.value_, MPFR_RNDN);
  return out;
}

BigReal operator/(long lhs, const BigReal& rhs) {
  BigReal out(rhs.precision());
  mpfr_si_div(out.value_, lhs, rhs.value_, MPFR_RNDN);
  return out;
}

std::partial_ordering operator<=>(const BigReal& lhs, const BigReal& rhs) {
  if (mpfr_unordered_p(lhs.value_, rhs.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(lhs.value_, rhs.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

std::partial_ordering operator<=>(const BigReal& lhs, long rhs) {
  if (mpfr_nan_p(lhs.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_si(lhs.value_, rhs);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

BigReal sqrt(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_sqrt(out.value_, x.value_, MPFR_RNDN);
  return out;
}

BigReal abs(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_abs(out.value_, x.value_, MPFR_RNDN);
  return out;
}

BigReal floor(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_floor(out.value_, x.value_);
  return out;
}

BigReal round(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_round(out.value_, x.value_);
  return out;
}

BigReal log2(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_log2(out.value_, x.value_, MPFR_RNDN);
  return out;
}

std::ostream& operator<<(std::ostream& os, const BigReal& x) {
  const auto digits = static_cast<int>(os.precision());
  return os << x.to_string(digits > 0 ? digits : 6);
}

BigReal min(const BigReal& a, const BigReal& b) {
  BigReal out(wider(a, b));
  mpfr_min(out.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return out;
}

BigReal max(const BigReal& a, const BigReal& b) {
  BigReal out(wider(a, b));
  mpfr_max(out.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return out;
}

}  // namespace jager
