#include "jager/bounds.hpp"

#include <algorithm>

#include "jager/errors.hpp"
#include "jager/geom_formulas.hpp"
#include "jager/geometry.hpp"

namespace jager {
namespace {

formulas::Point<BigReal> corner(Digit i, Digit j, const Params& params) {
  try {
    JagerPoint p = vertex_uv(i, j, params);
    return {std::move(p.u), std::move(p.v)};
  } catch (const VertexAtInfinity&) {
    throw UnboundedRegion("region contains the unbounded m = 1, k = 1 subdivision (0, 0)");
  }
}

// (L - l + 1) / ((1-2m)k + (l+k)(L+k+1)) and (L - l) / ((1-2m)k + (l+k+1)(L+k)).
BigReal upper_ratio(Digit l, Digit L, const Params& params) {
  const BigReal& k = params.k();
  const BigReal den =
      k * (1 - 2 * params.m()) + (params.real(l) + k) * (params.real(L) + k + 1L);
  return params.real(L - l + 1) / den;
}

BigReal lower_ratio(Digit l, Digit L, const Params& params) {
  const BigReal& k = params.k();
  const BigReal den =
      k * (1 - 2 * params.m()) + (params.real(l) + k + 1L) * (params.real(L) + k);
  return params.real(L - l) / den;
}

BoundsReport report(Digit l, Digit L, bool exception, bool squared, const Params& params) {
  if (l > L) throw DomainError("bounds require l <= L");
  BoundsReport out;
  out.l = l;
  out.L = L;
  out.classical_exception = exception;
  const BigReal root2 = sqrt(params.real(2L));
  if (!exception) {
    const BigReal r = upper_ratio(l, L, params);
    out.upper = squared ? 2L * r * r : root2 * r;
  }
  if (L - l > 1) {
    const BigReal r = lower_ratio(l, L, params);
    out.lower = squared ? 2L * r * r : root2 * r;
  }
  return out;
}

bool exception_possible(Digit l, const Params& params) {
  return params.m() == 1 && params.classical() && l == 0;
}

}  // namespace

Diagonal acute_diagonal(const Params& params) {
  return params.m() == 0 ? Diagonal::cross : Diagonal::main;
}

BigReal diagonal_sq(Digit a, Digit A, Digit b, Digit B, Diagonal which, const Params& params) {
  if (which == Diagonal::cross) {
    return formulas::distance_sq(corner(a, B + 1, params), corner(A + 1, b, params));
  }
  return formulas::distance_sq(corner(a, b, params), corner(A + 1, B + 1, params));
}

LemmaBounds lemma_bounds(Digit a, Digit A, Digit b, Digit B, const Params& params) {
  if (a > A || b > B) throw DomainError("lemma_bounds requires a <= A and b <= B");
  const Diagonal which = acute_diagonal(params);
  LemmaBounds out{diagonal_sq(a, A, b, B, which, params), std::nullopt};
  if (std::max(A - a, B - b) > 1) {
    // The peeled box r(a+1, A-1, b+1, B-1); its outer lines are p_{a+1},
    // p_A, f_{b+1}, f_B.
    if (which == Diagonal::cross) {
      out.lower_sq = formulas::distance_sq(corner(a + 1, B, params), corner(A, b + 1, params));
    } else {
      out.lower_sq = formulas::distance_sq(corner(a + 1, b + 1, params), corner(A, B, params));
    }
  }
  return out;
}

bool classical_exception(const DigitWindow& window, const Params& params) {
  return params.m() == 1 && params.classical() && window[1] == 0 &&
         (window[0] == 0 || window[2] == 0);
}

BoundsReport theorem_bounds(Digit l, Digit L, const Params& params) {
  return report(l, L, exception_possible(l, params), true, params);
}

BoundsReport theorem_bounds(const DigitWindow& window, const Params& params) {
  const auto [lo, hi] = std::minmax_element(window.begin(), window.end());
  return report(*lo, *hi, classical_exception(window, params), true, params);
}

BoundsReport corollary_bounds(Digit l, Digit L, const Params& params) {
  return report(l, L, exception_possible(l, params), false, params);
}

BoundsReport corollary_bounds(const DigitWindow& window, const Params& params) {
  const auto [lo, hi] = std::minmax_element(window.begin(), window.end());
  return report(*lo, *hi, classical_exception(window, params), false, params);
}

}  // namespace jager
