#ifndef JAGER_GEOMETRY_HPP
#define JAGER_GEOMETRY_HPP

#include <array>
#include <optional>
#include <vector>

#include "jager/big_real.hpp"
#include "jager/geom_formulas.hpp"
#include "jager/params.hpp"

namespace jager {

// A point of the (u, v) plane, usually a Jager pair (theta_n, theta_{n+1}).
struct JagerPoint {
  BigReal u, v;
  // Subdivision indices (a_{n+1}, a_{n+2}) the point is expected to lie in.
  std::optional<Digit> predicted_a, predicted_b;

  JagerPoint mirrored() const { return JagerPoint{v, u, predicted_b, predicted_a}; }
};

// Psi(x, y) = (1/(x-y), (m-x)(m-y) / ((2m-1)k(x-y))). Requires (x, y) in
// Omega = (0,1) x (-inf, m-k); throws DomainError otherwise.
JagerPoint psi(const BigReal& x, const BigReal& y, const Params& params);

struct Interval {
  BigReal lower, upper;  // open
};

// Delta_a: the seeds whose first digit is a.
Interval cylinder_interval(Digit a, const Params& params);

// p_a^# ∩ f_b^#. Throws VertexAtInfinity for m = 1, k = 1, a = b = 0.
JagerPoint vertex_uv(Digit a, Digit b, const Params& params);

struct Line {
  BigReal alpha, beta, gamma;  // alpha*u + beta*v = gamma

  BigReal residual(const BigReal& u, const BigReal& v) const { return alpha * u + beta * v - gamma; }
  BigReal slope() const { return -alpha / beta; }
};

// alpha*u + beta*v > gamma (>= when closed).
struct HalfPlane {
  Line line;
  bool closed = false;

  // Euclidean signed distance, positive on the admitted side.
  BigReal signed_distance(const BigReal& u, const BigReal& v) const;
};

// Image of p_a (or f_b) under Psi: an open segment of `line`. `start` is the
// image of the x -> 0 end (y -> m-k end for f), absent when that end is at
// infinity (m = 1, k = 1, index 0).
struct BoundarySegment {
  Line line;
  std::optional<JagerPoint> start;
  JagerPoint end;
  bool ray_to_infinity = false;
};

BoundarySegment p_line(Digit a, const Params& params);
BoundarySegment f_line(Digit b, const Params& params);

// P_a^# ∩ F_b^#, stored as four half-planes (lines of p_a, p_{a+1}, f_b,
// f_{b+1}) oriented towards the region, plus its finite vertices in cyclic
// order. Degenerate regions drop the collinear vertex (m = 0, k = 1,
// a = b = 0 is a triangle); the unbounded region (m = 1, k = 1, a = b = 0)
// keeps its three finite vertices.
struct SubdivisionRegion {
  Digit a = 0, b = 0;
  std::array<HalfPlane, 4> halfplanes;
  std::vector<JagerPoint> vertices;
  bool degenerate = false;
  bool unbounded = false;
};

SubdivisionRegion subdivision(Digit a, Digit b, const Params& params);

enum class Location { inside, boundary, outside };

// Half-plane sign tests with a tolerance band of width `tol` around every
// bounding line.
Location contains(const SubdivisionRegion& region, const JagerPoint& p, const BigReal& tol);

// Smallest signed distance to the bounding lines; negative outside.
BigReal depth_inside(const SubdivisionRegion& region, const JagerPoint& p);

// Shoelace area of the finite vertex polygon (0 for unbounded regions).
BigReal polygon_area(const SubdivisionRegion& region, const Params& params);

// All subdivisions with a <= a_max, b <= b_max, ordered by (a, b).
std::vector<SubdivisionRegion> region_mesh(const Params& params, Digit a_max, Digit b_max);

}  // namespace jager

#endif  // JAGER_GEOMETRY_HPP
