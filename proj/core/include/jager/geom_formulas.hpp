#ifndef JAGER_GEOM_FORMULAS_HPP
#define JAGER_GEOM_FORMULAS_HPP

// Closed forms for the subdivision geometry, generic over the field type so
// the same expressions run on BigReal and on exact rationals.

namespace jager::formulas {

template <class S>
struct Point {
  S u, v;
};

// Coefficients of alpha*u + beta*v = gamma.
template <class S>
struct LineCoeffs {
  S alpha, beta, gamma;
};

// (1-2m)k + (a+k)(b+k); zero only for m = 1, k = 1, a = b = 0.
template <class S>
S vertex_denominator(int m, const S& k, const S& a, const S& b) {
  return k * (1 - 2 * m) + (a + k) * (b + k);
}

// p_a^# ∩ f_b^#.
template <class S>
Point<S> vertex(int m, const S& k, const S& a, const S& b) {
  const S den = vertex_denominator(m, k, a, b);
  return Point<S>{(b + k) / den, (a + k) / den};
}

// Line through p_a^#: (a+k)^2 u + (1-2m)k v = a+k.
template <class S>
LineCoeffs<S> p_line_coeffs(int m, const S& k, const S& a) {
  return LineCoeffs<S>{(a + k) * (a + k), k * (1 - 2 * m), a + k};
}

// Line through f_b^#: the mirror of p_b^# across u = v.
template <class S>
LineCoeffs<S> f_line_coeffs(int m, const S& k, const S& b) {
  return LineCoeffs<S>{k * (1 - 2 * m), (b + k) * (b + k), b + k};
}

template <class S>
S line_residual(const LineCoeffs<S>& line, const Point<S>& p) {
  return line.alpha * p.u + line.beta * p.v - line.gamma;
}

// Twice the signed area of (p, q, r); zero iff collinear.
template <class S>
S orientation(const Point<S>& p, const Point<S>& q, const Point<S>& r) {
  return (q.u - p.u) * (r.v - p.v) - (q.v - p.v) * (r.u - p.u);
}

template <class S>
S distance_sq(const Point<S>& p, const Point<S>& q) {
  return (p.u - q.u) * (p.u - q.u) + (p.v - q.v) * (p.v - q.v);
}

}  // namespace jager::formulas

#endif  // JAGER_GEOM_FORMULAS_HPP
