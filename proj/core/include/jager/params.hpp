#ifndef JAGER_PARAMS_HPP
#define JAGER_PARAMS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "jager/big_real.hpp"

namespace jager {

// Partial quotient of an (m,k)-expansion. Classical digits are digit + 1.
using Digit = std::uint64_t;

// Selects one expansion family: orientation m (0 = Gauss-like, 1 =
// Rényi-like), the real parameter k >= 1, and the numeric budget.
class Params {
 public:
  static constexpr int kDefaultPrecision = 256;
  static constexpr std::size_t kDefaultDepth = 40;

  // `k_expr` is evaluated with evaluate_expression ("1", "3/2", "sqrt(2)").
  // Throws DomainError when an invariant is violated.
  Params(int m, std::string_view k_expr, int precision_bits = kDefaultPrecision,
         std::size_t max_depth = kDefaultDepth);

  int m() const { return m_; }
  const BigReal& k() const { return k_; }
  const std::string& k_expr() const { return k_expr_; }
  int precision_bits() const { return precision_bits_; }
  std::size_t max_depth() const { return max_depth_; }

  // k == 1 exactly: the classical regular (m=0) or backward (m=1) case.
  bool classical() const { return k_ == 1L; }

  BigReal real(long value) const { return BigReal(value, precision_bits_); }
  BigReal real(Digit value) const { return BigReal(value, precision_bits_); }
  BigReal parse(std::string_view expr) const;

  // 2^-(precision_bits / divisor): the tolerance ladder used throughout.
  BigReal tolerance(int divisor) const;

  Params with_depth(std::size_t depth) const;
  Params with_precision(int bits) const;

 private:
  int m_;
  std::string k_expr_;
  int precision_bits_;
  std::size_t max_depth_;
  BigReal k_;
};

}  // namespace jager

#endif  // JAGER_PARAMS_HPP
