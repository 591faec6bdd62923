#include "jager/expansion.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "jager/errors.hpp"
#include "jager/expression.hpp"

namespace jager {
namespace {

// log2|x| without leaving MPFR's exponent range.
double approx_log2(const BigReal& x) {
  if (x.is_zero()) return -std::numeric_limits<double>::infinity();
  long exponent = 0;
  const double mantissa = mpfr_get_d_2exp(&exponent, x.raw(), MPFR_RNDN);
  return static_cast<double>(exponent) + std::log2(std::fabs(mantissa));
}

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  return text;
}

// One backward level: m + k(1-2m) / (a + k + tail).
BigReal inverse_branch(Digit digit, const BigReal& tail, const Params& params) {
  const int m = params.m();
  return m + (params.k() * (1 - 2 * m)) / (params.real(digit) + params.k() + tail);
}

}  // namespace

Step step_map(const BigReal& x, const Params& params) {
  if (!(x > 0L) || !(x < 1L)) throw DomainError("step_map requires 0 < x < 1");
  const int m = params.m();
  const BigReal shifted = x - m;
  const BigReal t = params.k() * (1 - m - x) / shifted;

  if (!(t < BigReal::pow2(63, params.precision_bits()))) {
    throw PrecisionLoss("digit exceeds 63 bits; seed is too close to a cylinder accumulation point", 0);
  }

  const BigReal snap_tol = params.tolerance(1) * 256L * max(t, params.real(1L));
  const BigReal nearest = round(t);
  if (abs(t - nearest) <= snap_tol) {
    return Step{nearest.to_uint64(), params.real(0L)};
  }

  const BigReal whole = floor(t);
  BigReal next = t - whole;
  const Digit digit = whole.to_uint64();

  // Distance from x to the cylinder endpoints that are interior to (0,1),
  // pulled back through |T'(x)| = k / (x-m)^2.
  const BigReal scale = shifted * shifted / params.k();
  BigReal gap = (1L - next) * scale;
  if (digit > 0) gap = min(gap, next * scale);
  if (gap < params.tolerance(2)) {
    throw PrecisionLoss("seed within 2^-(p/2) of a cylinder endpoint", 0);
  }
  return Step{digit, std::move(next)};
}

Orbit expand(const BigReal& x0_in, const Params& params) {
  const BigReal x0 = x0_in.rounded_to(params.precision_bits());
  if (!(x0 > 0L) || !(x0 < 1L)) throw DomainError("expand requires 0 < x0 < 1");

  const int m = params.m();
  const BigReal residual_tol = params.tolerance(2);
  const double amplification_limit = params.precision_bits() / 2.0;
  const double log2_k = approx_log2(params.k());

  Orbit orbit{x0, {}, {}, {}, std::nullopt, std::nullopt, 0, {}};
  BigReal x = x0;
  BigReal history = params.real(static_cast<long>(m));  // [a_{n-1}, ..., a_1 ; m]
  double log2_amplification = 0.0;
  bool trusted = true;

  for (std::size_t n = 1; n <= params.max_depth(); ++n) {
    if (x.is_zero()) {
      orbit.terminated_at = n - 1;
      break;
    }
    Step step = [&]() -> Step {
      try {
        return step_map(x, params);
      } catch (const PrecisionLoss&) {
        return Step{0, params.real(-1L)};
      }
    }();
    if (step.next < 0L) {
      orbit.precision_failure_at = n;
      break;
    }

    log2_amplification += log2_k - 2.0 * approx_log2(x - m);
    orbit.digits.push_back(step.digit);
    orbit.log2_amplification.push_back(log2_amplification);

    const BigReal digit_real = params.real(step.digit);
    if (n == 1) {
      orbit.pasts.push_back(m - params.k() - inverse_branch(step.digit, params.real(0L), params));
    } else {
      orbit.pasts.push_back(m - params.k() - digit_real - history);
    }
    history = inverse_branch(step.digit, history, params);

    x = std::move(step.next);
    orbit.futures.push_back(x);

    if (trusted) {
      const BigReal residual = abs(eval_finite(orbit.digits, params, x) - x0);
      trusted = residual < residual_tol && log2_amplification < amplification_limit;
      if (trusted) orbit.trusted_depth = n;
    }
  }
  if (!orbit.terminated_at && x.is_zero() && !orbit.precision_failure_at) {
    orbit.terminated_at = orbit.digits.size();
  }
  return orbit;
}

BigReal eval_finite(std::span<const Digit> digits, const Params& params) {
  return eval_finite(digits, params, params.real(0L));
}

BigReal eval_finite(std::span<const Digit> digits, const Params& params, const BigReal& tail) {
  BigReal value = tail.rounded_to(params.precision_bits());
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    value = inverse_branch(*it, value, params);
  }
  return value;
}

BigReal past_value(std::span<const Digit> digits, const Params& params) {
  if (digits.empty()) throw DomainError("past_value needs at least one digit");
  const int m = params.m();
  if (digits.size() == 1) {
    return m - params.k() - eval_finite(digits.first(1), params);
  }
  // [a_{n-1}, ..., a_1 ; m]: evaluate the reversed history, innermost a_1.
  BigReal history = params.real(static_cast<long>(m));
  for (std::size_t i = 0; i + 1 < digits.size(); ++i) {
    history = inverse_branch(digits[i], history, params);
  }
  return m - params.k() - params.real(digits.back()) - history;
}

MobiusCoeffs operator*(const MobiusCoeffs& lhs, const MobiusCoeffs& rhs) {
  return MobiusCoeffs{lhs.a * rhs.a + lhs.b * rhs.c, lhs.a * rhs.b + lhs.b * rhs.d,
                      lhs.c * rhs.a + lhs.d * rhs.c, lhs.c * rhs.b + lhs.d * rhs.d};
}

MobiusCoeffs identity_matrix(const Params& params) {
  return MobiusCoeffs{params.real(1L), params.real(0L), params.real(0L), params.real(1L)};
}

MobiusCoeffs digit_matrix(Digit digit, const Params& params) {
  const int m = params.m();
  const BigReal shift = params.real(digit) + params.k();
  return MobiusCoeffs{params.real(static_cast<long>(m)), m * shift + params.k() * (1 - 2 * m),
                      params.real(1L), shift};
}

MobiusCoeffs convergent_matrix(std::span<const Digit> digits, const Params& params) {
  MobiusCoeffs product = identity_matrix(params);
  for (Digit digit : digits) product = product * digit_matrix(digit, params);
  return product;
}

Approximant approximant(const MobiusCoeffs& product, const Params& params) {
  if (params.m() == 0) return Approximant{product.b, product.d};
  return Approximant{product.a + product.b, product.c + product.d};
}

namespace {

BigReal scaled_theta(const BigReal& x0, const Approximant& approx, const BigReal& k_power,
                     std::size_t n, const Params& params) {
  const BigReal gap = abs(x0 - approx.p / approx.q);
  if (gap < params.tolerance(1) * 65536L) {
    throw PrecisionLoss("|x0 - p_n/q_n| below 2^-(p-16); raise --precision", n);
  }
  return approx.q * approx.q * gap / k_power;
}

}  // namespace

BigReal theta_direct(const Orbit& orbit, std::size_t n, const Params& params) {
  if (n < 1 || n > orbit.trusted_depth) {
    throw DomainError("theta_direct index outside 1..trusted_depth");
  }
  if (params.m() == 0 && orbit.terminated_at && n == *orbit.terminated_at) {
    return params.real(0L);
  }
  const auto digits = std::span<const Digit>(orbit.digits).first(n);
  BigReal k_power = params.real(1L);
  for (std::size_t i = 0; i <= n; ++i) k_power *= params.k();
  return scaled_theta(orbit.x0, approximant(convergent_matrix(digits, params), params), k_power,
                      n, params);
}

BigReal theta_perron(const BigReal& x_next, const BigReal& y_next) {
  BigReal gap = x_next - y_next;
  if (!(gap > 0L)) throw DomainError("theta_perron requires x_{n+1} > Y_{n+1}");
  return 1L / gap;
}

ThetaSeq theta_sequence(const Orbit& orbit, const Params& params, ThetaMethod method) {
  ThetaSeq out;
  const std::size_t last = orbit.trusted_depth == 0 ? 0 : orbit.trusted_depth - 1;
  if (method == ThetaMethod::perron) {
    for (std::size_t n = 1; n <= last; ++n) {
      out.thetas.push_back(theta_perron(orbit.future(n + 1), orbit.past(n + 1)));
      out.methods.push_back(ThetaMethod::perron);
    }
    return out;
  }
  MobiusCoeffs product = identity_matrix(params);
  BigReal k_power = params.k();
  for (std::size_t n = 1; n <= last; ++n) {
    product = product * digit_matrix(orbit.digit(n), params);
    k_power *= params.k();
    out.thetas.push_back(scaled_theta(orbit.x0, approximant(product, params), k_power, n, params));
    out.methods.push_back(ThetaMethod::direct);
  }
  return out;
}

std::vector<Digit> classical_digit_translate(std::span<const Digit> digits,
                                             DigitDirection direction) {
  std::vector<Digit> out;
  out.reserve(digits.size());
  for (Digit digit : digits) {
    if (direction == DigitDirection::to_classical) {
      if (digit == std::numeric_limits<Digit>::max()) throw DomainError("digit overflow");
      out.push_back(digit + 1);
    } else {
      if (digit == 0) throw DomainError("classical digits are >= 1");
      out.push_back(digit - 1);
    }
  }
  return out;
}

BigReal seed_with_prefix(std::span<const Digit> prefix, const BigReal& tail,
                         const Params& params) {
  if (prefix.empty()) return tail.rounded_to(params.precision_bits());
  const Params check = params.with_depth(prefix.size());
  // Irrational step used to move the tail off a boundary collision.
  const BigReal nudge = (sqrt(params.real(5L)) - 1L) / 2L;
  BigReal current = tail.rounded_to(params.precision_bits());
  constexpr int kAttempts = 8;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    if (current > 0L && current < 1L) {
      BigReal seed = eval_finite(prefix, params, current);
      if (seed > 0L && seed < 1L) {
        const Orbit orbit = expand(seed, check);
        if (!orbit.precision_failure_at && orbit.digits.size() >= prefix.size() &&
            std::equal(prefix.begin(), prefix.end(), orbit.digits.begin())) {
          return seed;
        }
      }
    }
    current += nudge;
    current -= floor(current);
  }
  throw ConstructionFailed("could not realize digit prefix [" + format_digit_list(prefix) + "]");
}

BigReal evaluate_seed(std::string_view expr, const Params& params) {
  expr = trim(expr);
  if (!expr.empty() && expr.front() == '[') {
    const auto bar = expr.find('|');
    if (bar == std::string_view::npos || expr.back() != ']') {
      throw std::invalid_argument("prefix recipe must look like [a1,a2,...|tail]");
    }
    const auto prefix = parse_digit_list(expr.substr(1, bar - 1));
    const BigReal tail = evaluate_expression(expr.substr(bar + 1, expr.size() - bar - 2),
                                             params.precision_bits());
    return seed_with_prefix(prefix, tail, params);
  }
  return evaluate_expression(expr, params.precision_bits());
}

std::string prefix_recipe(std::span<const Digit> prefix, std::string_view tail_expr) {
  return "[" + format_digit_list(prefix) + "|" + std::string(tail_expr) + "]";
}

std::vector<Digit> parse_digit_list(std::string_view text) {
  std::vector<Digit> out;
  text = trim(text);
  if (text.empty()) return out;
  for (;;) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    Digit value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw std::invalid_argument("bad digit '" + std::string(item) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string format_digit_list(std::span<const Digit> digits) {
  std::ostringstream out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) out << ',';
    out << digits[i];
  }
  return out.str();
}

}  // namespace jager
