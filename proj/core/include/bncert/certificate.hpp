#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bncert/numerics.hpp"

// Derivation trees.  A Certificate node claims its instance is good or
// excellent, names the rewrite rule that justifies the claim, records every
// checked hypothesis with both evaluated sides, and points at one child per
// sub-claim the rule requires.  Nodes are immutable; subtrees are shared.

namespace bncert {

enum class Claim { Good, Excellent };

enum class Cmp { Le, Lt, Ge, Gt, Eq, Ne, NotIn };

// One named hypothesis with its evaluated sides.  For NotIn, lhs is the
// 1-based index of the matched set element (0 when no match) and the check
// holds iff lhs == 0.
struct RuleCheck {
  std::string_view name;
  Int lhs = 0;
  Int rhs = 0;
  Cmp cmp = Cmp::Eq;
  bool ok = false;
};

bool cmp_holds(Cmp cmp, Int lhs, Int rhs);
std::string_view cmp_name(Cmp cmp);
Cmp cmp_from_name(std::string_view name);
std::string_view claim_name(Claim claim);

// Rewrite rules.  Each variant carries exactly the auxiliary integers its
// reduction needs.
struct BaseExcellentRule {};       // leaf: the base excellent region
struct TwistInterpolationRule {};  // leaf: n = 0 and the twist-interpolation bound
struct ExcellentImpliesGoodRule {};
struct AddCanonicalRule {};        // attach a canonical curve in a hyperplane
struct AddHalfRule {};             // attach a degree-ceil((r-2)/2) rational curve
struct AddLineRule {};             // attach a 2-secant line
struct DescendDegreeRule {};       // goodness ascends in degree; reduce to d-1
struct ExcGoodRule { Int b = 0; }; // peel b degrees/genus, downgrade to excellent
struct GlueRule {                  // split into a good part and an excellent part
  Int d1 = 0, g1 = 0, n1 = 0;
  Int d2 = 0, g2 = 0, n2 = 0;
  Int k = 0;
};
struct ChainReduceRule { Int x = 0, y = 0, z = 0; };  // x half-steps, y line-steps, one peel

using Rule = std::variant<BaseExcellentRule, TwistInterpolationRule,
                          ExcellentImpliesGoodRule, AddCanonicalRule, AddHalfRule,
                          AddLineRule, DescendDegreeRule, ExcGoodRule, GlueRule,
                          ChainReduceRule>;

std::string_view rule_name(const Rule& rule);

struct Certificate;
using CertPtr = std::shared_ptr<const Certificate>;

struct Certificate {
  Claim claim = Claim::Good;
  Instance instance;
  Rule rule;
  std::vector<RuleCheck> checks;
  std::vector<CertPtr> children;
};

// Canonical JSON: fixed key order, integers as decimal strings, compact
// separators, trailing newline.  Identical certificates serialize to
// byte-identical documents.
std::string certificate_to_json(const Certificate& cert);

// Inverse of certificate_to_json.  Throws std::runtime_error on malformed
// documents.  Check names are interned so round-trips are byte-exact.
Certificate certificate_from_json(const std::string& text);

}  // namespace bncert
