#include "jager/geometry.hpp"

#include "jager/errors.hpp"

namespace jager {
namespace {

Line to_line(formulas::LineCoeffs<BigReal> c) {
  return Line{std::move(c.alpha), std::move(c.beta), std::move(c.gamma)};
}

formulas::Point<BigReal> to_formula_point(const JagerPoint& p) { return {p.u, p.v}; }

bool vertex_at_infinity(Digit a, Digit b, const Params& params) {
  return params.m() == 1 && params.classical() && a == 0 && b == 0;
}

// Psi of the midpoint of P_a ∩ F_b; always strictly inside the region.
JagerPoint interior_sample(Digit a, Digit b, const Params& params) {
  const Interval cylinder = cylinder_interval(b, params);
  const BigReal x = (cylinder.lower + cylinder.upper) / 2L;
  const BigReal y = params.m() - params.k() - params.real(a) - params.real(1L) / 2L;
  return psi(x, y, params);
}

HalfPlane oriented(Line line, const JagerPoint& inside) {
  if (line.residual(inside.u, inside.v) < 0L) {
    line.alpha = -line.alpha;
    line.beta = -line.beta;
    line.gamma = -line.gamma;
  }
  return HalfPlane{std::move(line), false};
}

}  // namespace

JagerPoint psi(const BigReal& x, const BigReal& y, const Params& params) {
  const int m = params.m();
  if (!(x > 0L) || !(x < 1L) || !(y < m - params.k())) {
    throw DomainError("psi requires 0 < x < 1 and y < m - k");
  }
  const BigReal gap = x - y;
  BigReal u = 1L / gap;
  BigReal v = (m - x) * (m - y) / (params.k() * (2 * m - 1) * gap);
  return JagerPoint{std::move(u), std::move(v), std::nullopt, std::nullopt};
}

Interval cylinder_interval(Digit a, const Params& params) {
  const int m = params.m();
  const BigReal& k = params.k();
  const BigReal ar = params.real(a);
  return Interval{((1 - m) * k + m * ar) / (ar + k + (1 - m)),
                  ((1 - m) * k + m * (ar + 1L)) / (ar + k + m)};
}

JagerPoint vertex_uv(Digit a, Digit b, const Params& params) {
  if (vertex_at_infinity(a, b, params)) {
    throw VertexAtInfinity("vertex p_0 ∩ f_0 is at infinity for m = 1, k = 1");
  }
  auto p = formulas::vertex(params.m(), params.k(), params.real(a), params.real(b));
  return JagerPoint{std::move(p.u), std::move(p.v), a, b};
}

BigReal HalfPlane::signed_distance(const BigReal& u, const BigReal& v) const {
  return line.residual(u, v) / sqrt(line.alpha * line.alpha + line.beta * line.beta);
}

BoundarySegment p_line(Digit a, const Params& params) {
  const int m = params.m();
  const BigReal& k = params.k();
  const BigReal shift = params.real(a) + k;  // a + k
  BoundarySegment out{to_line(formulas::p_line_coeffs(m, k, params.real(a))), std::nullopt,
                      JagerPoint{params.real(0L), params.real(0L), a, std::nullopt}, false};
  const BigReal near = shift - m;
  if (near.is_zero()) {
    out.ray_to_infinity = true;
  } else {
    out.start = JagerPoint{1L / near, m * shift / (k * near), a, std::nullopt};
  }
  const BigReal far = shift + (1 - m);
  out.end = JagerPoint{1L / far, (1 - m) * shift / (k * far), a, std::nullopt};
  return out;
}

BoundarySegment f_line(Digit b, const Params& params) {
  BoundarySegment p = p_line(b, params);
  BoundarySegment out{to_line(formulas::f_line_coeffs(params.m(), params.k(), params.real(b))),
                      std::nullopt, p.end.mirrored(), p.ray_to_infinity};
  if (p.start) out.start = p.start->mirrored();
  return out;
}

SubdivisionRegion subdivision(Digit a, Digit b, const Params& params) {
  const JagerPoint inside = interior_sample(a, b, params);
  SubdivisionRegion region;
  region.a = a;
  region.b = b;
  region.halfplanes = {oriented(p_line(a, params).line, inside),
                       oriented(f_line(b, params).line, inside),
                       oriented(p_line(a + 1, params).line, inside),
                       oriented(f_line(b + 1, params).line, inside)};

  // Cyclic order: along f_b from p_a to p_{a+1}, along p_{a+1} to f_{b+1},
  // back along f_{b+1} and p_a.
  const std::array<std::pair<Digit, Digit>, 4> corners = {
      std::pair{a, b}, std::pair{a + 1, b}, std::pair{a + 1, b + 1}, std::pair{a, b + 1}};
  if (vertex_at_infinity(a, b, params)) {
    region.unbounded = true;
    for (std::size_t i = 1; i < corners.size(); ++i) {
      region.vertices.push_back(vertex_uv(corners[i].first, corners[i].second, params));
    }
    return region;
  }

  std::vector<JagerPoint> quad;
  for (const auto& [i, j] : corners) quad.push_back(vertex_uv(i, j, params));
  const BigReal tol = params.tolerance(2);
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const auto& prev = quad[(i + 3) % 4];
    const auto& next = quad[(i + 1) % 4];
    const BigReal turn = formulas::orientation(to_formula_point(prev), to_formula_point(quad[i]),
                                               to_formula_point(next));
    if (abs(turn) <= tol) {
      region.degenerate = true;
    } else {
      region.vertices.push_back(quad[i]);
    }
  }
  return region;
}

Location contains(const SubdivisionRegion& region, const JagerPoint& p, const BigReal& tol) {
  bool on_boundary = false;
  for (const HalfPlane& h : region.halfplanes) {
    const BigReal d = h.signed_distance(p.u, p.v);
    if (d < -tol) return Location::outside;
    if (d <= tol) on_boundary = true;
  }
  return on_boundary ? Location::boundary : Location::inside;
}

BigReal depth_inside(const SubdivisionRegion& region, const JagerPoint& p) {
  BigReal depth = region.halfplanes[0].signed_distance(p.u, p.v);
  for (std::size_t i = 1; i < region.halfplanes.size(); ++i) {
    depth = min(depth, region.halfplanes[i].signed_distance(p.u, p.v));
  }
  return depth;
}

BigReal polygon_area(const SubdivisionRegion& region, const Params& params) {
  BigReal twice = params.real(0L);
  if (region.unbounded) return twice;
  const auto& vs = region.vertices;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto& p = vs[i];
    const auto& q = vs[(i + 1) % vs.size()];
    twice += p.u * q.v - q.u * p.v;
  }
  return abs(twice) / 2L;
}

std::vector<SubdivisionRegion> region_mesh(const Params& params, Digit a_max, Digit b_max) {
  std::vector<SubdivisionRegion> out;
  out.reserve((a_max + 1) * (b_max + 1));
  for (Digit a = 0; a <= a_max; ++a) {
    for (Digit b = 0; b <= b_max; ++b) out.push_back(subdivision(a, b, params));
  }
  return out;
}

}  // namespace jager
