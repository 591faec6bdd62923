#ifndef JAGER_EXPANSION_HPP
#define JAGER_EXPANSION_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jager/big_real.hpp"
#include "jager/params.hpp"

namespace jager {

// One application of T_(m,k): x -> k(1-m-x)/(x-m) = digit + next.
struct Step {
  Digit digit;
  BigReal next;  // in [0,1); exactly zero when the expansion terminates
};

// Requires 0 < x < 1. Throws PrecisionLoss when x lies within
// 2^-(precision/2) of an interior endpoint of its cylinder (the floor is not
// trustworthy there) or when the digit does not fit in 63 bits. A quotient
// within 2^-(precision-8) of an integer snaps to it and yields next == 0.
Step step_map(const BigReal& x, const Params& params);

// Trajectory of one seed. Index conventions are 1-based, matching a_n, x_n,
// Y_n: digit(n) = a_n, future(n) = x_n with future(0) = x0, past(n) = Y_n.
struct Orbit {
  BigReal x0;
  std::vector<Digit> digits;     // a_1 .. a_N
  std::vector<BigReal> futures;  // x_1 .. x_N
  std::vector<BigReal> pasts;    // Y_1 .. Y_N
  std::optional<std::size_t> terminated_at;         // n with x_n == 0
  std::optional<std::size_t> precision_failure_at;  // step that raised PrecisionLoss
  std::size_t trusted_depth = 0;
  // log2 of |(T^n)'(x0)| after each step; entry n-1 belongs to step n.
  std::vector<double> log2_amplification;

  std::size_t size() const { return digits.size(); }
  Digit digit(std::size_t n) const { return digits.at(n - 1); }
  const BigReal& future(std::size_t n) const { return n == 0 ? x0 : futures.at(n - 1); }
  const BigReal& past(std::size_t n) const { return pasts.at(n - 1); }
};

// Runs the iteration up to params.max_depth() steps or termination.
// Step n is trusted while |eval_finite(a_1..a_n, x_n) - x0| < 2^-(p/2) and the
// accumulated derivative of T^n stays below 2^(p/2); the first failure fixes
// trusted_depth, later steps are still recorded. A PrecisionLoss from
// step_map ends the orbit without throwing.
Orbit expand(const BigReal& x0, const Params& params);

// [a_1, ..., a_n]_(m,k) continued with future value `tail` (0 by default),
// evaluated from the innermost level outwards. An empty digit list yields
// the tail itself.
BigReal eval_finite(std::span<const Digit> digits, const Params& params);
BigReal eval_finite(std::span<const Digit> digits, const Params& params, const BigReal& tail);

// Y_n for the digits a_1..a_n. Y_1 = m - k - [a_1]; for n >= 2,
// Y_n = m - k - a_n - [a_{n-1}, ..., a_1 ; m], the reversed history
// continued with tail m. With tail m the Perron identity holds exactly for
// both orientations (for m = 0 this is the usual tail 0).
BigReal past_value(std::span<const Digit> digits, const Params& params);

// x -> (a x + b) / (c x + d)
struct MobiusCoeffs {
  BigReal a, b, c, d;

  BigReal apply(const BigReal& x) const { return (a * x + b) / (c * x + d); }
  BigReal det() const { return a * d - b * c; }
  friend MobiusCoeffs operator*(const MobiusCoeffs& lhs, const MobiusCoeffs& rhs);
};

MobiusCoeffs identity_matrix(const Params& params);

// M(a) = [[m, m(a+k) + k(1-2m)], [1, a+k]], the inverse branch of T on Δ_a.
MobiusCoeffs digit_matrix(Digit digit, const Params& params);

// M(a_1) M(a_2) ... M(a_n). b/d equals eval_finite(digits); the determinant
// is ((2m-1)k)^n.
MobiusCoeffs convergent_matrix(std::span<const Digit> digits, const Params& params);

// Numerator and denominator of the n-th approximant: the image of m under
// the convergent matrix. For m = 0 this is (b, d) = [a_1..a_n]; for m = 1 it
// is the classical backward-fraction convergent (a+b)/(c+d).
struct Approximant {
  BigReal p, q;
};
Approximant approximant(const MobiusCoeffs& product, const Params& params);

// q_n^2 |x0 - p_n/q_n| / k^(n+1). Requires 1 <= n <= orbit.trusted_depth.
// Throws PrecisionLoss when |x0 - p_n/q_n| < 2^-(p-16) (more bits needed);
// for m = 0 at the termination index the result is exactly 0.
BigReal theta_direct(const Orbit& orbit, std::size_t n, const Params& params);

// 1 / (x_{n+1} - Y_{n+1}). Throws DomainError if the difference is not positive.
BigReal theta_perron(const BigReal& x_next, const BigReal& y_next);

enum class ThetaMethod { direct, perron };

struct ThetaSeq {
  std::vector<BigReal> thetas;  // theta_1 .. theta_{N-1}
  std::vector<ThetaMethod> methods;

  std::size_t size() const { return thetas.size(); }
  const BigReal& operator()(std::size_t n) const { return thetas.at(n - 1); }
};

// theta_n for n = 1 .. trusted_depth - 1. The direct route is O(n) per
// entry through an incrementally maintained convergent.
ThetaSeq theta_sequence(const Orbit& orbit, const Params& params, ThetaMethod method);

enum class DigitDirection { to_classical, from_classical };

// b_n = a_n + 1 and back. Throws DomainError when a classical digit is 0
// or a digit would overflow.
std::vector<Digit> classical_digit_translate(std::span<const Digit> digits,
                                             DigitDirection direction);

// eval_finite(prefix, tail), verified to expand back to `prefix`. On a
// boundary collision the tail is perturbed and retried a bounded number of
// times before throwing ConstructionFailed.
BigReal seed_with_prefix(std::span<const Digit> prefix, const BigReal& tail,
                         const Params& params);

// Seed expressions: a plain real expression ("7/10", "(sqrt(5)-1)/2") or a
// prefix recipe "[a1,a2,...|tail-expression]" built with seed_with_prefix.
BigReal evaluate_seed(std::string_view expr, const Params& params);
std::string prefix_recipe(std::span<const Digit> prefix, std::string_view tail_expr);

// Parses "0,1,2" (whitespace tolerated). Throws std::invalid_argument.
std::vector<Digit> parse_digit_list(std::string_view text);
std::string format_digit_list(std::span<const Digit> digits);

}  // namespace jager

#endif  // JAGER_EXPANSION_HPP
