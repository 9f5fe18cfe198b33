#include "bncert/numerics.hpp"

#include <array>
#include <limits>
#include <numeric>

namespace bncert {

namespace {

using Wide = __int128;

Int narrow(Wide v) {
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min()) {
    throw std::overflow_error("bncert: 64-bit overflow in exact arithmetic");
  }
  return static_cast<Int>(v);
}

void require_r(Int r, Int min, const char* op) {
  if (r < min) {
    throw std::invalid_argument(std::string(op) + ": r < " + std::to_string(min));
  }
}

}  // namespace

void validate_instance(const Instance& inst) {
  if (inst.d < 0 || inst.g < 0 || inst.n < 0 || inst.r < 2) {
    throw std::invalid_argument("Instance: need d, g, n >= 0 and r >= 2");
  }
}

Rational make_rational(Int num, Int den) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Int c = std::gcd(num, den);
  if (c > 1) {
    num /= c;
    den /= c;
  }
  return Rational{num, den};
}

std::string to_string(const Rational& q) {
  if (q.den == 1) return std::to_string(q.num);
  return std::to_string(q.num) + "/" + std::to_string(q.den);
}

Int floor_div(Int a, Int b) {
  if (b <= 0) throw std::invalid_argument("floor_div: divisor must be positive");
  Int q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

Int ceil_div(Int a, Int b) {
  if (b <= 0) throw std::invalid_argument("ceil_div: divisor must be positive");
  Int q = a / b;
  if (a % b != 0 && a > 0) ++q;
  return q;
}

Int rho(Int d, Int g, Int r) {
  require_r(r, 1, "rho");
  return narrow(Wide(r + 1) * d - Wide(r) * g - Wide(r) * (r + 1));
}

Int moduli_dim(Int d, Int g, Int r, Int n) {
  require_r(r, 1, "moduli_dim");
  return narrow(Wide(r + 1) * d - Wide(r - 3) * (g - 1) + n);
}

Int naive_point_bound(Int d, Int g, Int r) {
  require_r(r, 2, "naive_point_bound");
  Int num = narrow(Wide(r + 1) * d - Wide(r - 3) * (g - 1));
  return floor_div(num, r - 1);
}

Int main_guarantee(Int d, Int g, Int r) {
  require_r(r, 2, "main_guarantee");
  Int num = narrow(Wide(r + 1) * d - Wide(r - 3) * (g - 1) - 2 * Wide(r));
  return floor_div(num, r - 1);
}

Rational interpolation_capacity(BundleKind kind, Int d, Int g, Int r) {
  require_r(r, 2, "interpolation_capacity");
  Wide deg = kind == BundleKind::Normal ? Wide(r + 1) * d : Wide(2) * d;
  return make_rational(narrow(deg - Wide(r - 3) * (g - 1)), r - 1);
}

Int hyperplane_naive_bound(Int d, Int g, Int r) {
  require_r(r, 2, "hyperplane_naive_bound");
  Int num = narrow(Wide(r + 1) * d - Wide(r - 3) * g - 4);
  return std::min(d, floor_div(num, r - 1));
}

Int twist_interpolation_slack(Int d, Int g, Int r) {
  require_r(r, 2, "twist_interpolation_slack");
  return narrow(Wide(2 * r - 3) * d - Wide(r - 2) * (r - 2) * g -
                (2 * Wide(r) * r - 3 * Wide(r) + 9));
}

bool twist_interpolation_condition(Int d, Int g, Int r) {
  return twist_interpolation_slack(d, g, r) >= 0;
}

Int goodness_slack(Int d, Int g, Int r, Int n) {
  require_r(r, 2, "goodness_slack");
  return narrow(Wide(2 * r - 3) * (Wide(d) + 1) - Wide(r - 2) * (r - 2) * (Wide(g) - n) -
                (2 * Wide(r) * r - 3 * Wide(r) + 9));
}

bool goodness_condition(Int d, Int g, Int r, Int n) {
  return goodness_slack(d, g, r, n) >= 0;
}

Int main_1s_guarantee_raw(Int d, Int g, Int r) {
  require_r(r, 3, "main_1s_guarantee");
  Int sq = narrow(Wide(r - 2) * (r - 2));
  Int num = narrow(Wide(r - 1) * (r - 1) * d - Wide(sq) * g -
                   (2 * Wide(r) * r - 5 * Wide(r) + 12));
  return std::min(d, floor_div(num, sq));
}

Int main_1s_guarantee(Int d, Int g, Int r) {
  return std::max(Int(0), main_1s_guarantee_raw(d, g, r));
}

Int excluded_triple_index(Int d, Int g, Int r) {
  static constexpr std::array<std::array<Int, 3>, 3> kExcluded = {{
      {5, 2, 3},
      {6, 2, 4},
      {7, 2, 5},
  }};
  for (std::size_t i = 0; i < kExcluded.size(); ++i) {
    if (d == kExcluded[i][0] && g == kExcluded[i][1] && r == kExcluded[i][2]) {
      return static_cast<Int>(i) + 1;
    }
  }
  return 0;
}

bool base_excellent(Int d, Int g, Int r, Int n) {
  require_r(r, 2, "base_excellent");
  if (d < 0 || g < 0 || n < 0) {
    throw std::invalid_argument("base_excellent: negative input");
  }
  if (n > d || rho(d, g, r) < 0) return false;
  if (d < g + r) return false;
  if (excluded_triple_index(d, g, r) != 0) return false;
  Int lhs = narrow(2 * Wide(d) + Wide(r - 1) * n);
  Int rhs = narrow(Wide(2 * r - 4) * g - r + 3);
  return lhs >= rhs;
}

Int chi_minus_points(Int d, Int g, Int r, Int n, Int b) {
  require_r(r, 2, "chi_minus_points");
  return narrow(Wide(r + 1) * (Wide(d) - b) - Wide(r - 3) * (Wide(g) - b - 1) -
                Wide(r - 1) * (Wide(d) - b - n));
}

bool can_extract_points(Int d, Int g, Int r, Int n, Int b) {
  return chi_minus_points(d, g, r, n, b) >= narrow(Wide(r - 1) * (b + 1));
}

Bounds compute_bounds(Int d, Int g, Int r) {
  require_r(r, 3, "compute_bounds");
  Bounds b;
  b.rho = rho(d, g, r);
  b.moduli_dim = moduli_dim(d, g, r, 0);
  b.naive_points = std::max(Int(0), naive_point_bound(d, g, r));
  b.main_guarantee = std::max(Int(0), main_guarantee(d, g, r));
  b.hyperplane_naive = std::max(Int(0), hyperplane_naive_bound(d, g, r));
  b.main_1s_guarantee = main_1s_guarantee(d, g, r);
  b.capacity_normal = interpolation_capacity(BundleKind::Normal, d, g, r);
  b.capacity_twist = interpolation_capacity(BundleKind::NormalTwist, d, g, r);
  return b;
}

}  // namespace bncert
