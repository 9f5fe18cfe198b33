#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

// Exact integer evaluation of the closed-form counts and predicates for
// curves of degree d and genus g in projective r-space, optionally carrying
// a twist/marked-point parameter n.  All arithmetic is exact: divisions use
// mathematical floor/ceil semantics (toward -/+ infinity, also for negative
// numerators), and every formula is evaluated in 128-bit intermediates and
// narrowed back with an overflow check.

namespace bncert {

using Int = std::int64_t;

// A (d, g, r, n) tuple.  Construction enforces only the unconditional
// invariants (d, g, n >= 0 and r >= 2 when validated); context-dependent
// constraints such as n <= d or rho >= 0 are checked by the operations
// that need them.
struct Instance {
  Int d = 0;
  Int g = 0;
  Int r = 0;
  Int n = 0;

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Throws std::invalid_argument unless d, g, n >= 0 and r >= 2.
void validate_instance(const Instance& inst);

enum class BundleKind { Normal, NormalTwist };

// Reduced fraction, den > 0.
struct Rational {
  Int num = 0;
  Int den = 1;

  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational make_rational(Int num, Int den);
std::string to_string(const Rational& q);

// Floor/ceil division toward -/+ infinity; b must be positive.
Int floor_div(Int a, Int b);
Int ceil_div(Int a, Int b);

// Brill-Noether number (r+1)d - rg - r(r+1).  Requires r >= 1.
Int rho(Int d, Int g, Int r);

// (r+1)d - (r-3)(g-1) + n, the dimension of the relevant moduli component.
Int moduli_dim(Int d, Int g, Int r, Int n);

// floor(((r+1)d - (r-3)(g-1)) / (r-1)): the dimension-count bound on the
// number of general points a curve can pass through.  Requires r >= 2.
Int naive_point_bound(Int d, Int g, Int r);

// floor(((r+1)d - (r-3)(g-1) - 2r) / (r-1)): the guaranteed point count.
// Requires r >= 2.
Int main_guarantee(Int d, Int g, Int r);

// chi/rk for the normal bundle or its twist, as an exact rational.
// Requires r >= 2.
Rational interpolation_capacity(BundleKind kind, Int d, Int g, Int r);

// min(d, floor(((r+1)d - (r-3)g - 4) / (r-1))): the dimension-count bound
// on general points in a hyperplane section.  Requires r >= 2.
Int hyperplane_naive_bound(Int d, Int g, Int r);

// Slack of (2r-3)d - (r-2)^2 g - 2r^2 + 3r - 9 >= 0, the sufficient
// condition for the twisted normal bundle to satisfy interpolation.
Int twist_interpolation_slack(Int d, Int g, Int r);
bool twist_interpolation_condition(Int d, Int g, Int r);

// Slack of (2r-3)(d+1) - (r-2)^2 (g-n) - 2r^2 + 3r - 9 >= 0, the sufficient
// condition for (d, g, r, n) to be good.  No n <= d check here; that is the
// caller's domain check.
Int goodness_slack(Int d, Int g, Int r, Int n);
bool goodness_condition(Int d, Int g, Int r, Int n);

// min(d, floor(((r-1)^2 d - (r-2)^2 g - (2r^2-5r+12)) / (r-2)^2)), the
// guaranteed number of general points in a hyperplane section.  Requires
// r >= 3.  The raw variant keeps negative values; the plain variant clamps
// below at 0.
Int main_1s_guarantee_raw(Int d, Int g, Int r);
Int main_1s_guarantee(Int d, Int g, Int r);

// Index (1-based) of (d, g, r) in the excluded-triple list
// {(5,2,3), (6,2,4), (7,2,5)}, or 0 when not a member.
Int excluded_triple_index(Int d, Int g, Int r);

// True iff n <= d, rho >= 0, d >= g + r, (d, g, r) is not an excluded
// triple, and 2d + (r-1)n >= (2r-4)g - r + 3.
bool base_excellent(Int d, Int g, Int r, Int n);

// (r+1)(d-b) - (r-3)(g-b-1) - (r-1)(d-b-n): the Euler characteristic of the
// normal bundle twisted down by a degree-(d-b) divisor less n points.
Int chi_minus_points(Int d, Int g, Int r, Int n, Int b);

// chi_minus_points >= (r-1)(b+1): enough sections remain to pass through
// b+1 further general points.
bool can_extract_points(Int d, Int g, Int r, Int n, Int b);

// The bundle of all closed-form counts for one (d, g, r).  Guarantees are
// clamped below at 0 here; use the *_raw operations for signed slacks.
struct Bounds {
  Int rho = 0;
  Int moduli_dim = 0;      // at n = 0
  Int naive_points = 0;
  Int main_guarantee = 0;
  Int hyperplane_naive = 0;
  Int main_1s_guarantee = 0;
  Rational capacity_normal;
  Rational capacity_twist;
};

// Requires r >= 3.
Bounds compute_bounds(Int d, Int g, Int r);

}  // namespace bncert
