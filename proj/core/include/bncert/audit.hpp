#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bncert/rules.hpp"

// Exhaustive sweeps over the finite case analyses, plus the brute-force
// oracles the closed forms are cross-checked against.  Sweeps partition the
// grid by r across worker threads; per-chunk results are merged in r order
// and sorted, so parallel and serial runs produce identical reports.

namespace bncert {

struct SweepRange {
  Int r_min = 5;
  Int r_max = 39;
  Int d_max = 0;                // 0 = use the audit's own derived bound
  Int g_max = 0;                // 0 = use the audit's own derived bound
  std::optional<Int> n_max;
};

struct Violation {
  Instance instance;
  std::string stage;
  std::optional<RuleCheck> check;
  std::string note;
};

struct SweepReport {
  SweepRange range;
  Int tuples_checked = 0;
  std::vector<Violation> violations;  // sorted lexicographically by (r, g, n, d)
  double elapsed_seconds = 0.0;       // wall time; excluded from JSON output
};

// For each r and each n <= 2r-7, scans genera up to the finite-case bound,
// computes the minimal degree meeting n <= d, rho >= 0 and the goodness
// condition, and requires decide_good to certify the tuple.  Expected to
// report zero violations on the default range.
SweepReport audit_appendix(const SweepRange& range, int jobs = 1);

// For every (d, g, r) in range that satisfies the twist-interpolation
// hypothesis, the 2d <= (2r-4)g-r+2 restriction, and the genus minimum,
// validates the closed-form parameter t against all seven side conditions
// and cross-checks existence with a brute-force t-search.
SweepReport audit_t_choice(const SweepRange& range, int jobs = 1);

// For every (d, g, r) in range with rho >= 0 and d < g+r, verifies the
// t = floor(s/2) bookkeeping with s = g+r-d, checks the divisor-degree
// rearrangements numerically, and asserts the excluded case r = 5,
// d = 3*floor(s/2)+11 is hit exactly by (11, 7, 5).
SweepReport audit_cor_needformain(const SweepRange& range, int jobs = 1);

// max{d-n : 0 <= n <= d and the goodness condition holds}, by exhaustive
// n-scan; nullopt when no n qualifies.  Requires r >= 3.
std::optional<Int> brute_force_guarantee(Int d, Int g, Int r);

// Closed-form parameter choice for the t-choice analysis:
// s = ceil(((2r-4)g - 2d + r + 1) / (2r-2)), t = s+1 when (r,s) is
// (5,2) or (6,2), else t = s.
struct TChoice {
  Int s = 0;
  Int t = 0;
};
TChoice t_choice_closed_form(Int d, Int g, Int r);

// The seven side conditions plus d >= (r-2)t+1, for an arbitrary candidate t.
bool t_choice_valid(Int d, Int g, Int r, Int t);

// Canonical JSON for a report: fixed key order, integers as decimal
// strings, no elapsed time.
std::string report_to_json(const SweepReport& report);

}  // namespace bncert
