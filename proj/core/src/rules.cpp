#include "bncert/rules.hpp"

#include <array>
#include <limits>

namespace bncert {

namespace {

using Wide = __int128;

Int nr(Wide v) {
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min()) {
    throw std::overflow_error("bncert: 64-bit overflow in rule arithmetic");
  }
  return static_cast<Int>(v);
}

// Hypotheses are evaluated in order; the first failure ends the list.
class CheckList {
 public:
  bool require(std::string_view name, Int lhs, Cmp cmp, Int rhs) {
    bool holds = cmp_holds(cmp, lhs, rhs);
    checks_.push_back(RuleCheck{name, lhs, rhs, cmp, holds});
    return holds;
  }

  std::vector<RuleCheck> take() { return std::move(checks_); }

 private:
  std::vector<RuleCheck> checks_;
};

RuleApplication rejected(Claim proves, CheckList& c) {
  RuleApplication app;
  app.ok = false;
  app.proves = proves;
  app.checks = c.take();
  return app;
}

RuleApplication accepted(Claim proves, CheckList& c,
                         std::vector<std::pair<Instance, Claim>> children) {
  RuleApplication app;
  app.ok = true;
  app.proves = proves;
  app.checks = c.take();
  app.children = std::move(children);
  return app;
}

// Shared domain hypotheses of every reduction rule.
bool standing(CheckList& c, const Instance& i, Int r_min) {
  if (!c.require("d >= 0", i.d, Cmp::Ge, 0)) return false;
  if (!c.require("g >= 0", i.g, Cmp::Ge, 0)) return false;
  if (!c.require("n >= 0", i.n, Cmp::Ge, 0)) return false;
  if (r_min >= 5) {
    if (!c.require("r >= 5", i.r, Cmp::Ge, 5)) return false;
  } else {
    if (!c.require("r >= 2", i.r, Cmp::Ge, 2)) return false;
  }
  if (!c.require("n <= d", i.n, Cmp::Le, i.d)) return false;
  return c.require("rho(d,g,r) >= 0", rho(i.d, i.g, i.r), Cmp::Ge, 0);
}

RuleApplication apply_base_excellent(const Instance& i) {
  CheckList c;
  if (!standing(c, i, 2)) return rejected(Claim::Excellent, c);
  if (!c.require("d >= g+r", i.d, Cmp::Ge, nr(Wide(i.g) + i.r))) {
    return rejected(Claim::Excellent, c);
  }
  if (!c.require("(d,g,r) notin {(5,2,3),(6,2,4),(7,2,5)}",
                 excluded_triple_index(i.d, i.g, i.r), Cmp::NotIn, 0)) {
    return rejected(Claim::Excellent, c);
  }
  Int lhs = nr(2 * Wide(i.d) + Wide(i.r - 1) * i.n);
  Int rhs = nr(Wide(2 * i.r - 4) * i.g - i.r + 3);
  if (!c.require("2d+(r-1)n >= (2r-4)g-r+3", lhs, Cmp::Ge, rhs)) {
    return rejected(Claim::Excellent, c);
  }
  return accepted(Claim::Excellent, c, {});
}

RuleApplication apply_twist_interpolation(const Instance& i) {
  CheckList c;
  if (!standing(c, i, 5)) return rejected(Claim::Excellent, c);
  if (!c.require("n == 0", i.n, Cmp::Eq, 0)) return rejected(Claim::Excellent, c);
  if (!c.require("(2r-3)d-(r-2)^2*g-2r^2+3r-9 >= 0",
                 twist_interpolation_slack(i.d, i.g, i.r), Cmp::Ge, 0)) {
    return rejected(Claim::Excellent, c);
  }
  return accepted(Claim::Excellent, c, {});
}

RuleApplication apply_add_canonical(const Instance& i) {
  CheckList c;
  if (!standing(c, i, 5)) return rejected(Claim::Good, c);
  if (!c.require("n <= d-4", i.n, Cmp::Le, i.d - 4)) return rejected(Claim::Good, c);
  if (i.r == 5) {
    if (!c.require("g > 2r", i.g, Cmp::Gt, 2 * i.r)) return rejected(Claim::Good, c);
  } else {
    if (!c.require("g >= 2r", i.g, Cmp::Ge, 2 * i.r)) return rejected(Claim::Good, c);
  }
  if (!c.require("n >= 2r-6", i.n, Cmp::Ge, 2 * i.r - 6)) return rejected(Claim::Good, c);
  Int gp = i.r == 5 ? i.g - 11 : i.g - 2 * i.r;
  Instance child{i.d - 2 * i.r + 2, gp, i.r, i.n - 2 * i.r + 6};
  return accepted(Claim::Good, c, {{child, Claim::Good}});
}

RuleApplication apply_add_half(const Instance& i) {
  CheckList c;
  if (!standing(c, i, 5)) return rejected(Claim::Good, c);
  Int a = ceil_div(i.r - 2, 2);
  if (!c.require("g >= a+1", i.g, Cmp::Ge, a + 1)) return rejected(Claim::Good, c);
  if (!c.require("n >= a", i.n, Cmp::Ge, a)) return rejected(Claim::Good, c);
  Instance child{i.d - a, i.g - a - 1, i.r, i.n - a};
  return accepted(Claim::Good, c, {{child, Claim::Good}});
}

RuleApplication apply_add_line(const Instance& i) {
  CheckList c;
  if (!standing(c, i, 5)) return rejected(Claim::Good, c);
  if (!c.require("g >= 1", i.g, Cmp::Ge, 1)) return rejected(Claim::Good, c);
  if (!c.require("n >= 1", i.n, Cmp::Ge, 1)) return rejected(Claim::Good, c);
  if (!c.require("rho(d,g,r) >= 1", rho(i.d, i.g, i.r), Cmp::Ge, 1)) {
    return rejected(Claim::Good, c);
  }
  Instance child{i.d - 1, i.g - 1, i.r, i.n - 1};
  return accepted(Claim::Good, c, {{child, Claim::Good}});
}

RuleApplication apply_descend_degree(const Instance& i) {
  CheckList c;
  if (!standing(c, i, 5)) return rejected(Claim::Good, c);
  if (!c.require("d >= 1", i.d, Cmp::Ge, 1)) return rejected(Claim::Good, c);
  if (!c.require("n <= d-1", i.n, Cmp::Le, i.d - 1)) return rejected(Claim::Good, c);
  if (!c.require("rho(d-1,g,r) >= 0", rho(i.d - 1, i.g, i.r), Cmp::Ge, 0)) {
    return rejected(Claim::Good, c);
  }
  Instance child{i.d - 1, i.g, i.r, i.n};
  return accepted(Claim::Good, c, {{child, Claim::Good}});
}

Int exc_good_slack(const Instance& i, Int b) {
  return nr(2 * Wide(i.d) + Wide(i.r - 1) * i.n - Wide(i.r - 3) * i.g - 4 * Wide(b) - 2);
}

RuleApplication apply_exc_good(const Instance& i, const ExcGoodRule& rule) {
  CheckList c;
  if (!standing(c, i, 5)) return rejected(Claim::Good, c);
  Int b = rule.b;
  if (!c.require("b >= 0", b, Cmp::Ge, 0)) return rejected(Claim::Good, c);
  if (!c.require("b <= d-n", b, Cmp::Le, i.d - i.n)) return rejected(Claim::Good, c);
  if (!c.require("b <= g", b, Cmp::Le, i.g)) return rejected(Claim::Good, c);
  if (!c.require("rho(d,g,r) >= b", rho(i.d, i.g, i.r), Cmp::Ge, b)) {
    return rejected(Claim::Good, c);
  }
  if (!c.require("2d+(r-1)n-(r-3)g-4b-2 >= 0", exc_good_slack(i, b), Cmp::Ge, 0)) {
    return rejected(Claim::Good, c);
  }
  Instance child{i.d - b, i.g - b, i.r, i.n};
  return accepted(Claim::Good, c, {{child, Claim::Excellent}});
}

RuleApplication apply_glue(const Instance& i, const GlueRule& p) {
  CheckList c;
  if (!standing(c, i, 5)) return rejected(Claim::Good, c);
  if (!c.require("k >= 1", p.k, Cmp::Ge, 1)) return rejected(Claim::Good, c);
  if (!c.require("d == d1+d2", i.d, Cmp::Eq, nr(Wide(p.d1) + p.d2))) {
    return rejected(Claim::Good, c);
  }
  if (!c.require("g == g1+g2+k-1", i.g, Cmp::Eq, nr(Wide(p.g1) + p.g2 + p.k - 1))) {
    return rejected(Claim::Good, c);
  }
  if (!c.require("n == n1+n2", i.n, Cmp::Eq, nr(Wide(p.n1) + p.n2))) {
    return rejected(Claim::Good, c);
  }
  if (!c.require("g1 >= 0", p.g1, Cmp::Ge, 0)) return rejected(Claim::Good, c);
  if (!c.require("n1 >= 0", p.n1, Cmp::Ge, 0)) return rejected(Claim::Good, c);
  if (!c.require("n1 <= d1", p.n1, Cmp::Le, p.d1)) return rejected(Claim::Good, c);
  if (!c.require("rho(d1,g1,r) >= 0", rho(p.d1, p.g1, i.r), Cmp::Ge, 0)) {
    return rejected(Claim::Good, c);
  }
  if (!c.require("g2 >= 0", p.g2, Cmp::Ge, 0)) return rejected(Claim::Good, c);
  if (!c.require("n2 >= 0", p.n2, Cmp::Ge, 0)) return rejected(Claim::Good, c);
  if (!c.require("n2 <= d2", p.n2, Cmp::Le, p.d2)) return rejected(Claim::Good, c);
  if (!c.require("rho(d2,g2,r) >= 0", rho(p.d2, p.g2, i.r), Cmp::Ge, 0)) {
    return rejected(Claim::Good, c);
  }
  if (!c.require("(r+1)d1-r*g1+r >= r*k",
                 nr(Wide(i.r + 1) * p.d1 - Wide(i.r) * p.g1 + i.r), Cmp::Ge,
                 nr(Wide(i.r) * p.k))) {
    return rejected(Claim::Good, c);
  }
  // The reattachment inequality reads the instance's full marked-point
  // count n = n1 + n2.
  if (!c.require("2d2-(r-3)(g2-1) >= (r-1)(k-n)",
                 nr(2 * Wide(p.d2) - Wide(i.r - 3) * (Wide(p.g2) - 1)), Cmp::Ge,
                 nr(Wide(i.r - 1) * (Wide(p.k) - i.n)))) {
    return rejected(Claim::Good, c);
  }
  return accepted(Claim::Good, c,
                  {{Instance{p.d1, p.g1, i.r, p.n1}, Claim::Good},
                   {Instance{p.d2, p.g2, i.r, p.n2}, Claim::Excellent}});
}

RuleApplication apply_chain_reduce(const Instance& i, const ChainReduceRule& p) {
  CheckList c;
  if (!standing(c, i, 5)) return rejected(Claim::Good, c);
  if (!c.require("(2r-3)(d+1)-(r-2)^2(g-n)-2r^2+3r-9 >= 0",
                 goodness_slack(i.d, i.g, i.r, i.n), Cmp::Ge, 0)) {
    return rejected(Claim::Good, c);
  }
  bool g_small = i.r >= 6 ? i.g < 2 * i.r : i.g <= 2 * i.r;
  bool n_small = i.n <= 2 * i.r - 7;
  if (!c.require("g <= 2r (strict if r >= 6) or n <= 2r-7",
                 (g_small || n_small) ? 1 : 0, Cmp::Eq, 1)) {
    return rejected(Claim::Good, c);
  }
  ChainRecipe rec = chain_recipe(i);
  if (i.r <= 39) {
    Int bound = nr(Wide(5 * i.r - 7) * i.n -
                   (2 * Wide(i.r) * i.r - 9 * Wide(i.r) + 9) * floor_div(i.n, rec.a) -
                   4 * Wide(i.r) * i.r + 94 * Wide(i.r) - 150);
    if (!c.require("(r-1)g >= (5r-7)n-(2r^2-9r+9)floor(n/a)-4r^2+94r-150",
                   nr(Wide(i.r - 1) * i.g), Cmp::Ge, bound)) {
      return rejected(Claim::Good, c);
    }
  }
  if (!c.require("x == min(floor(g/(a+1)), floor(n/a))", p.x, Cmp::Eq, rec.x)) {
    return rejected(Claim::Good, c);
  }
  if (!c.require("y == min(g-(a+1)x, n-ax)", p.y, Cmp::Eq, rec.y)) {
    return rejected(Claim::Good, c);
  }
  if (!c.require("z == min(g-(a+1)x-y, d-n, 10)", p.z, Cmp::Eq, rec.z)) {
    return rejected(Claim::Good, c);
  }
  Int dh = i.d - rec.a * rec.x;
  Int gh = i.g - (rec.a + 1) * rec.x;
  if (!c.require("rho(d-ax,g-(a+1)x,r) >= y+z", rho(dh, gh, i.r), Cmp::Ge,
                 rec.y + rec.z)) {
    return rejected(Claim::Good, c);
  }
  Instance pre{dh - rec.y, gh - rec.y, i.r, i.n - rec.a * rec.x - rec.y};
  if (!c.require("2(d-ax-y)+(r-1)(n-ax-y)-(r-3)(g-(a+1)x-y)-4z-2 >= 0",
                 exc_good_slack(pre, rec.z), Cmp::Ge, 0)) {
    return rejected(Claim::Good, c);
  }
  return accepted(Claim::Good, c, {{i, Claim::Good}});
}

CertPtr make_node(Claim claim, const Instance& inst, Rule rule,
                  std::vector<RuleCheck> checks, std::vector<CertPtr> children) {
  auto cert = std::make_shared<Certificate>();
  cert->claim = claim;
  cert->instance = inst;
  cert->rule = std::move(rule);
  cert->checks = std::move(checks);
  cert->children = std::move(children);
  return cert;
}

Decision proved(CertPtr cert) {
  Decision d;
  d.status = DecideStatus::Proved;
  d.certificate = std::move(cert);
  return d;
}

Decision rejected_at(const RuleApplication& app, std::string note = {}) {
  Decision d;
  d.status = DecideStatus::Rejected;
  if (!app.checks.empty()) d.failed = app.checks.back();
  d.note = std::move(note);
  return d;
}

std::optional<std::uint64_t> pack_key(const Instance& i) {
  constexpr Int kLim = Int(1) << 19;
  if (i.d < 0 || i.d >= kLim || i.g < 0 || i.g >= kLim || i.n < 0 || i.n >= kLim ||
      i.r < 0 || i.r >= 128) {
    return std::nullopt;
  }
  return (std::uint64_t(i.d) << 45) | (std::uint64_t(i.g) << 26) |
         (std::uint64_t(i.n) << 7) | std::uint64_t(i.r);
}

}  // namespace

RuleApplication apply_rule(const Instance& inst, const Rule& rule) {
  struct Applier {
    const Instance& i;
    RuleApplication operator()(const BaseExcellentRule&) const { return apply_base_excellent(i); }
    RuleApplication operator()(const TwistInterpolationRule&) const { return apply_twist_interpolation(i); }
    RuleApplication operator()(const ExcellentImpliesGoodRule&) const {
      RuleApplication app;
      app.ok = true;
      app.proves = Claim::Good;
      app.children = {{i, Claim::Excellent}};
      return app;
    }
    RuleApplication operator()(const AddCanonicalRule&) const { return apply_add_canonical(i); }
    RuleApplication operator()(const AddHalfRule&) const { return apply_add_half(i); }
    RuleApplication operator()(const AddLineRule&) const { return apply_add_line(i); }
    RuleApplication operator()(const DescendDegreeRule&) const { return apply_descend_degree(i); }
    RuleApplication operator()(const ExcGoodRule& r) const { return apply_exc_good(i, r); }
    RuleApplication operator()(const GlueRule& r) const { return apply_glue(i, r); }
    RuleApplication operator()(const ChainReduceRule& r) const { return apply_chain_reduce(i, r); }
  };
  return std::visit(Applier{inst}, rule);
}

ChainRecipe chain_recipe(const Instance& inst) {
  if (inst.r < 4) throw std::invalid_argument("chain_recipe: r < 4");
  ChainRecipe rec;
  rec.a = ceil_div(inst.r - 2, 2);
  rec.x = std::min(floor_div(inst.g, rec.a + 1), floor_div(inst.n, rec.a));
  rec.y = std::min(inst.g - (rec.a + 1) * rec.x, inst.n - rec.a * rec.x);
  rec.z = std::min({inst.g - (rec.a + 1) * rec.x - rec.y, inst.d - inst.n, Int(10)});
  return rec;
}

std::string_view decide_status_name(DecideStatus status) {
  switch (status) {
    case DecideStatus::Proved: return "proved";
    case DecideStatus::Rejected: return "rejected";
    case DecideStatus::OutOfScope: return "out-of-scope";
    case DecideStatus::DepthExceeded: return "depth-exceeded";
  }
  return "?";
}

Prover::Prover(Int depth_limit) : depth_limit_(depth_limit) {}

Decision Prover::decide_excellent(const Instance& inst) {
  if (inst.d < 0 || inst.g < 0 || inst.n < 0 || inst.r < 2) {
    Decision d;
    d.note = "invalid instance: need d, g, n >= 0 and r >= 2";
    return d;
  }
  RuleApplication base = apply_rule(inst, BaseExcellentRule{});
  if (base.ok) {
    return proved(make_node(Claim::Excellent, inst, BaseExcellentRule{}, base.checks, {}));
  }
  if (inst.r < 5) {
    Decision d = rejected_at(base, "r < 5: only the base-excellent route is in scope");
    d.status = DecideStatus::OutOfScope;
    return d;
  }
  if (inst.n == 0) {
    RuleApplication tw = apply_rule(inst, TwistInterpolationRule{});
    if (tw.ok) {
      return proved(make_node(Claim::Excellent, inst, TwistInterpolationRule{}, tw.checks, {}));
    }
    return rejected_at(tw, "neither excellence route applies");
  }
  return rejected_at(base, "neither excellence route applies");
}

Decision Prover::decide_good(const Instance& inst) {
  if (inst.r < 5) {
    Decision d;
    d.status = DecideStatus::OutOfScope;
    d.note = "decide_good requires r >= 5";
    return d;
  }
  return decide_good_impl(inst, depth_limit_, /*allow_glue=*/true);
}

Decision Prover::chain_reduction(const Instance& inst) {
  if (inst.r < 5) {
    Decision d;
    d.status = DecideStatus::OutOfScope;
    d.note = "chain_reduction requires r >= 5";
    return d;
  }
  if (inst.d < 0 || inst.g < 0 || inst.n < 0) {
    Decision d;
    d.note = "invalid instance: need d, g, n >= 0";
    return d;
  }
  return chain_reduction_impl(inst);
}

// Last-resort search for a glue split: the second piece is an excellence
// leaf carrying n2 of the marked points, the first piece is decided
// recursively without further gluing.  Splits are scanned in a fixed order
// (n2, then leaf degree, then the two genera ascending) and the first one
// whose pieces both prove out is taken, so the result is deterministic.
Decision Prover::glue_search(const Instance& inst, Int depth) {
  const Int r = inst.r;
  for (Int n2 = 0; n2 <= inst.n; ++n2) {
    Int n1 = inst.n - n2;
    for (Int d2 = std::max(n2, Int(1)); d2 < inst.d; ++d2) {
      Int d1 = inst.d - d2;
      if (n1 > d1) continue;
      // rho >= 0 caps each piece's genus.
      Int g2_cap = std::min(inst.g, floor_div(nr(Wide(r + 1) * d2 - Wide(r) * (r + 1)), r));
      Int g1_cap = std::min(inst.g, floor_div(nr(Wide(r + 1) * d1 - Wide(r) * (r + 1)), r));
      if (g1_cap < 0) continue;
      for (Int g2 = 0; g2 <= g2_cap; ++g2) {
        if (decide_excellent({d2, g2, r, n2}).status != DecideStatus::Proved) continue;
        for (Int g1 = 0; g1 <= g1_cap; ++g1) {
          Int k = inst.g + 1 - g1 - g2;
          if (k < 1) break;  // k only falls as g1 grows
          // Cheap screens for the two attachment inequalities.
          if (Wide(r + 1) * d1 - Wide(r) * g1 + r < Wide(r) * k) continue;
          if (2 * Wide(d2) - Wide(r - 3) * (Wide(g2) - 1) <
              Wide(r - 1) * (Wide(k) - inst.n)) {
            continue;
          }
          Decision sub = decide_good_impl({d1, g1, r, n1}, depth - 1, /*allow_glue=*/false);
          if (sub.status != DecideStatus::Proved) continue;
          GlueRule rule{d1, g1, n1, d2, g2, n2, k};
          RuleApplication app = apply_rule(inst, rule);
          if (!app.ok) continue;
          Decision leaf = decide_excellent({d2, g2, r, n2});
          return proved(make_node(Claim::Good, inst, rule, app.checks,
                                  {sub.certificate, leaf.certificate}));
        }
      }
    }
  }
  Decision d;
  d.note = "no glue split found";
  return d;
}

Decision Prover::chain_reduction_impl(const Instance& inst) {
  ChainRecipe rec = chain_recipe(inst);
  ChainReduceRule rule{rec.x, rec.y, rec.z};
  RuleApplication app = apply_rule(inst, rule);
  if (!app.ok) return rejected_at(app);

  Instance term{inst.d - rec.a * rec.x - rec.y - rec.z,
                inst.g - (rec.a + 1) * rec.x - rec.y - rec.z, inst.r,
                inst.n - rec.a * rec.x - rec.y};
  Decision leaf = decide_excellent(term);
  if (leaf.status != DecideStatus::Proved) {
    Decision d;
    d.status = DecideStatus::Rejected;
    d.failed = leaf.failed;
    d.note = "terminal instance is not excellent";
    return d;
  }

  Instance pre{inst.d - rec.a * rec.x - rec.y, inst.g - (rec.a + 1) * rec.x - rec.y,
               inst.r, inst.n - rec.a * rec.x - rec.y};
  RuleApplication eapp = apply_rule(pre, ExcGoodRule{rec.z});
  if (!eapp.ok) return rejected_at(eapp, "exc-good step fails");
  CertPtr cur = make_node(Claim::Good, pre, ExcGoodRule{rec.z}, eapp.checks,
                          {leaf.certificate});

  for (Int j = rec.y - 1; j >= 0; --j) {
    Instance li{inst.d - rec.a * rec.x - j, inst.g - (rec.a + 1) * rec.x - j, inst.r,
                inst.n - rec.a * rec.x - j};
    RuleApplication lapp = apply_rule(li, AddLineRule{});
    if (!lapp.ok) return rejected_at(lapp, "add-line step fails");
    cur = make_node(Claim::Good, li, AddLineRule{}, lapp.checks, {cur});
  }
  for (Int i = rec.x - 1; i >= 0; --i) {
    Instance hi{inst.d - rec.a * i, inst.g - (rec.a + 1) * i, inst.r,
                inst.n - rec.a * i};
    RuleApplication happ = apply_rule(hi, AddHalfRule{});
    if (!happ.ok) return rejected_at(happ, "add-half step fails");
    cur = make_node(Claim::Good, hi, AddHalfRule{}, happ.checks, {cur});
  }
  return proved(make_node(Claim::Good, inst, rule, app.checks, {cur}));
}

Decision Prover::decide_good_impl(const Instance& inst, Int depth, bool allow_glue) {
  if (inst.d < 0 || inst.g < 0 || inst.n < 0) {
    Decision d;
    d.note = "invalid instance: need d, g, n >= 0";
    return d;
  }
  if (inst.n > inst.d) {
    Decision d;
    d.failed = RuleCheck{"n <= d", inst.n, inst.d, Cmp::Le, false};
    return d;
  }
  Int rh = rho(inst.d, inst.g, inst.r);
  if (rh < 0) {
    Decision d;
    d.failed = RuleCheck{"rho(d,g,r) >= 0", rh, 0, Cmp::Ge, false};
    return d;
  }

  auto reject = [&]() {
    Decision exc = decide_excellent(inst);
    Decision d;
    d.status = DecideStatus::Rejected;
    d.failed = exc.failed;
    d.note = "no applicable reduction";
    return d;
  };

  // Rejections depend on whether gluing was allowed, so cache them apart.
  std::optional<std::uint64_t> key = pack_key(inst);
  if (key && allow_glue) *key |= std::uint64_t(1) << 63;
  if (key) {
    auto it = settled_.find(*key);
    if (it != settled_.end()) return reject();
  }
  if (depth <= 0) {
    Decision d;
    d.status = DecideStatus::DepthExceeded;
    d.note = "depth limit exhausted";
    return d;
  }

  Decision exc = decide_excellent(inst);
  if (exc.status == DecideStatus::Proved) {
    return proved(make_node(Claim::Good, inst, ExcellentImpliesGoodRule{}, {},
                            {exc.certificate}));
  }

  Decision chain = chain_reduction_impl(inst);
  if (chain.status == DecideStatus::Proved) return chain;

  // The chain recipe's z can overshoot the peeling slack on low-degree
  // instances; retry with the smallest b whose peeled instance is excellent.
  Int b_max = std::min({inst.g, inst.d - inst.n, rh});
  for (Int b = 0; b <= b_max; ++b) {
    RuleApplication app = apply_rule(inst, ExcGoodRule{b});
    if (!app.ok) break;  // the slack check is the only one left, and it tightens with b
    Decision leaf = decide_excellent(app.children[0].first);
    if (leaf.status == DecideStatus::Proved) {
      return proved(make_node(Claim::Good, inst, ExcGoodRule{b}, app.checks,
                              {leaf.certificate}));
    }
  }

  bool depth_hit = false;
  const std::array<Rule, 4> fallbacks = {AddCanonicalRule{}, DescendDegreeRule{},
                                         AddHalfRule{}, AddLineRule{}};
  for (const Rule& rule : fallbacks) {
    RuleApplication app = apply_rule(inst, rule);
    if (!app.ok) continue;
    Decision sub = decide_good_impl(app.children[0].first, depth - 1, /*allow_glue=*/false);
    if (sub.status == DecideStatus::Proved) {
      return proved(make_node(Claim::Good, inst, rule, app.checks, {sub.certificate}));
    }
    if (sub.status == DecideStatus::DepthExceeded) depth_hit = true;
  }

  if (allow_glue) {
    Decision glue = glue_search(inst, depth);
    if (glue.status == DecideStatus::Proved) return glue;
  }

  if (depth_hit) {
    Decision d;
    d.status = DecideStatus::DepthExceeded;
    d.note = "depth limit exhausted";
    return d;
  }
  if (key) settled_.emplace(*key, DecideStatus::Rejected);
  return reject();
}

Decision Prover::derive(const Instance& inst, const Rule& rule) {
  RuleApplication app = apply_rule(inst, rule);
  if (!app.ok) return rejected_at(app);
  std::vector<CertPtr> children;
  for (const auto& [child, claim] : app.children) {
    Decision sub = claim == Claim::Good ? decide_good(child) : decide_excellent(child);
    if (sub.status != DecideStatus::Proved) {
      sub.note = "sub-claim for (" + std::to_string(child.d) + "," +
                 std::to_string(child.g) + "," + std::to_string(child.r) + "," +
                 std::to_string(child.n) + ") not established" +
                 (sub.note.empty() ? "" : ": " + sub.note);
      return sub;
    }
    children.push_back(sub.certificate);
  }
  return proved(make_node(app.proves, inst, rule, app.checks, std::move(children)));
}

namespace {

VerifyResult verify_node(const Certificate& cert, const std::string& path) {
  RuleApplication app;
  try {
    app = apply_rule(cert.instance, cert.rule);
  } catch (const std::exception& e) {
    return {false, path + ": rule evaluation failed: " + e.what()};
  }
  if (!app.ok) {
    std::string_view name = app.checks.empty() ? std::string_view("?")
                                               : app.checks.back().name;
    return {false, path + ": hypothesis fails: " + std::string(name)};
  }
  if (app.proves != cert.claim) {
    return {false, path + ": claim mismatch"};
  }
  if (app.children.size() != cert.children.size()) {
    return {false, path + ": child count mismatch"};
  }
  for (std::size_t i = 0; i < app.children.size(); ++i) {
    const Certificate& child = *cert.children[i];
    const auto& [want_inst, want_claim] = app.children[i];
    std::string child_path = path + ".children[" + std::to_string(i) + "]";
    if (!(child.instance == want_inst)) {
      return {false, child_path + ": instance mismatch"};
    }
    if (child.claim != want_claim) {
      return {false, child_path + ": claim mismatch"};
    }
    VerifyResult sub = verify_node(child, child_path);
    if (!sub.ok) return sub;
  }
  return {true, {}};
}

}  // namespace

VerifyResult verify_certificate(const Certificate& cert) {
  return verify_node(cert, "root");
}

}  // namespace bncert
