#ifndef JAGER_BOUNDS_HPP
#define JAGER_BOUNDS_HPP

#include <array>
#include <optional>

#include "jager/big_real.hpp"
#include "jager/params.hpp"

namespace jager {

// The two diagonals of the index box R(a, A, b, B) = union of subdivisions
// a <= i <= A, b <= j <= B.
enum class Diagonal {
  cross,  // vertex(a, B+1) -- vertex(A+1, b); the acute pair for m = 0
  main,   // vertex(a, b)   -- vertex(A+1, B+1); the acute pair for m = 1
};

Diagonal acute_diagonal(const Params& params);

// Squared length of the chosen diagonal of R(a, A, b, B).
// Throws UnboundedRegion when an endpoint is the vertex at infinity.
BigReal diagonal_sq(Digit a, Digit A, Digit b, Digit B, Diagonal which, const Params& params);

struct LemmaBounds {
  BigReal upper_sq;                 // diam(R)^2
  std::optional<BigReal> lower_sq;  // diam(r)^2, r the peeled box; iff max(A-a, B-b) > 1
};

// Requires a <= A and b <= B. Throws UnboundedRegion when R contains the
// m = 1, k = 1 subdivision (0, 0).
LemmaBounds lemma_bounds(Digit a, Digit A, Digit b, Digit B, const Params& params);

// l, L are the min and max of the digit window (a_{N+1}, a_{N+2}, a_{N+3}).
// `upper` is absent when the classical exception applies; `lower` is present
// iff L - l > 1.
struct BoundsReport {
  Digit l = 0, L = 0;
  std::optional<BigReal> upper;
  std::optional<BigReal> lower;
  bool classical_exception = false;
};

using DigitWindow = std::array<Digit, 3>;

// m = 1, k = 1, a_{N+2} = 0 and a_{N+1} = 0 or a_{N+3} = 0.
bool classical_exception(const DigitWindow& window, const Params& params);

// Bounds on (θ_{N+1}-θ_N)^2 + (θ_{N+2}-θ_{N+1})^2. Given only (l, L) the
// exception is flagged whenever a window with these extremes could be
// exceptional (m = 1, k = 1, l = 0).
BoundsReport theorem_bounds(Digit l, Digit L, const Params& params);
BoundsReport theorem_bounds(const DigitWindow& window, const Params& params);

// Bounds on max / min of |θ_{N+1}-θ_N| and |θ_{N+2}-θ_{N+1}|.
BoundsReport corollary_bounds(Digit l, Digit L, const Params& params);
BoundsReport corollary_bounds(const DigitWindow& window, const Params& params);

}  // namespace jager

#endif  // JAGER_BOUNDS_HPP
