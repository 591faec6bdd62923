#include "jager/params.hpp"

#include "jager/errors.hpp"
#include "jager/expression.hpp"

namespace jager {

Params::Params(int m, std::string_view k_expr, int precision_bits, std::size_t max_depth)
    : m_(m),
      k_expr_(k_expr),
      precision_bits_(precision_bits),
      max_depth_(max_depth),
      k_(precision_bits >= 64 ? precision_bits : 64) {
  if (m != 0 && m != 1) throw DomainError("m must be 0 or 1");
  if (precision_bits < 64) throw DomainError("precision_bits must be at least 64");
  if (max_depth < 1) throw DomainError("max_depth must be at least 1");
  k_ = evaluate_expression(k_expr, precision_bits);
  if (k_ < 1L) throw DomainError("k must be >= 1 (got " + k_expr_ + ")");
}

BigReal Params::parse(std::string_view expr) const { return evaluate_expression(expr, precision_bits_); }

BigReal Params::tolerance(int divisor) const {
  return BigReal::pow2(-static_cast<long>(precision_bits_ / divisor), precision_bits_);
}

Params Params::with_depth(std::size_t depth) const {
  return Params(m_, k_expr_, precision_bits_, depth);
}

Params Params::with_precision(int bits) const { return Params(m_, k_expr_, bits, max_depth_); }

}  // namespace jager
