#include <doctest.h>

#include "bncert/rules.hpp"

using namespace bncert;

namespace {

bool holds_name(const RuleApplication& app, std::string_view name) {
  return !app.checks.empty() && app.checks.back().name == name;
}

}  // namespace

TEST_CASE("base-excellent accepts and rejects with the right hypothesis") {
  RuleApplication ok = apply_rule({9, 4, 5, 9}, BaseExcellentRule{});
  CHECK(ok.ok);
  CHECK(ok.proves == Claim::Excellent);
  CHECK(ok.children.empty());

  RuleApplication low_d = apply_rule({11, 7, 5, 11}, BaseExcellentRule{});
  CHECK_FALSE(low_d.ok);
  CHECK(holds_name(low_d, "d >= g+r"));

  RuleApplication excl = apply_rule({7, 2, 5, 7}, BaseExcellentRule{});
  CHECK_FALSE(excl.ok);
  CHECK(holds_name(excl, "(d,g,r) notin {(5,2,3),(6,2,4),(7,2,5)}"));
  CHECK(excl.checks.back().lhs == 3);  // 1-based index of the matched triple
}

TEST_CASE("twist-interpolation requires n = 0 and the slack") {
  CHECK(apply_rule({72, 51, 5, 0}, TwistInterpolationRule{}).ok);
  RuleApplication with_n = apply_rule({72, 51, 5, 1}, TwistInterpolationRule{});
  CHECK_FALSE(with_n.ok);
  CHECK(holds_name(with_n, "n == 0"));
  RuleApplication tight = apply_rule({71, 51, 5, 0}, TwistInterpolationRule{});
  CHECK_FALSE(tight.ok);
  CHECK(holds_name(tight, "(2r-3)d-(r-2)^2*g-2r^2+3r-9 >= 0"));
}

TEST_CASE("add-canonical child and genus bookkeeping at r = 5 vs r >= 6") {
  RuleApplication r5 = apply_rule({20, 12, 5, 16}, AddCanonicalRule{});
  REQUIRE(r5.ok);
  CHECK(r5.children.size() == 1);
  CHECK(r5.children[0].first == Instance{12, 1, 5, 12});
  CHECK(r5.children[0].second == Claim::Good);

  RuleApplication r6 = apply_rule({30, 14, 6, 20}, AddCanonicalRule{});
  REQUIRE(r6.ok);
  CHECK(r6.children[0].first == Instance{20, 2, 6, 14});

  // g = 2r is rejected only at r = 5 (strict there).
  RuleApplication strict = apply_rule({20, 10, 5, 16}, AddCanonicalRule{});
  CHECK_FALSE(strict.ok);
  CHECK(holds_name(strict, "g > 2r"));
  RuleApplication tight_n = apply_rule({20, 12, 5, 17}, AddCanonicalRule{});
  CHECK_FALSE(tight_n.ok);
  CHECK(holds_name(tight_n, "n <= d-4"));
}

TEST_CASE("add-half, add-line, descend-degree children") {
  RuleApplication half = apply_rule({11, 7, 5, 11}, AddHalfRule{});
  REQUIRE(half.ok);
  CHECK(half.children[0].first == Instance{9, 4, 5, 9});

  RuleApplication line = apply_rule({11, 7, 5, 11}, AddLineRule{});
  REQUIRE(line.ok);
  CHECK(line.children[0].first == Instance{10, 6, 5, 10});

  // rho(11,7,5) = 1, so one descend step is barred by rho(10,7,5) < 0.
  RuleApplication descend = apply_rule({11, 7, 5, 10}, DescendDegreeRule{});
  CHECK_FALSE(descend.ok);
  CHECK(holds_name(descend, "rho(d-1,g,r) >= 0"));

  RuleApplication descend_ok = apply_rule({12, 7, 5, 10}, DescendDegreeRule{});
  REQUIRE(descend_ok.ok);
  CHECK(descend_ok.children[0].first == Instance{11, 7, 5, 10});
}

TEST_CASE("exc-good peels degree and genus and downgrades the claim") {
  RuleApplication app = apply_rule({10, 4, 5, 2}, ExcGoodRule{2});
  REQUIRE(app.ok);
  CHECK(app.children[0].first == Instance{8, 2, 5, 2});
  CHECK(app.children[0].second == Claim::Excellent);

  RuleApplication too_big = apply_rule({10, 4, 5, 2}, ExcGoodRule{5});
  CHECK_FALSE(too_big.ok);
  CHECK(holds_name(too_big, "b <= g"));
}

TEST_CASE("glue splits into a good part and an excellent part") {
  GlueRule p{6, 0, 3, 10, 4, 2, 1};
  RuleApplication app = apply_rule({16, 4, 5, 5}, p);
  REQUIRE(app.ok);
  CHECK(app.children.size() == 2);
  CHECK(app.children[0].first == Instance{6, 0, 5, 3});
  CHECK(app.children[0].second == Claim::Good);
  CHECK(app.children[1].first == Instance{10, 4, 5, 2});
  CHECK(app.children[1].second == Claim::Excellent);

  GlueRule bad = p;
  bad.k = 2;
  RuleApplication mismatch = apply_rule({16, 4, 5, 5}, bad);
  CHECK_FALSE(mismatch.ok);
  CHECK(holds_name(mismatch, "g == g1+g2+k-1"));
}

TEST_CASE("chain recipe auxiliary integers") {
  ChainRecipe a = chain_recipe({85, 65, 5, 3});
  CHECK(a.a == 2);
  CHECK(a.x == 1);
  CHECK(a.y == 1);
  CHECK(a.z == 10);

  ChainRecipe b = chain_recipe({11, 7, 5, 11});
  CHECK(b.x == 2);
  CHECK(b.y == 1);
  CHECK(b.z == 0);
}

TEST_CASE("chain-reduce validates the stored parameters against the recipe") {
  RuleApplication good = apply_rule({85, 65, 5, 3}, ChainReduceRule{1, 1, 10});
  CHECK(good.ok);
  RuleApplication stale = apply_rule({85, 65, 5, 3}, ChainReduceRule{2, 1, 10});
  CHECK_FALSE(stale.ok);
  CHECK(holds_name(stale, "x == min(floor(g/(a+1)), floor(n/a))"));
}

TEST_CASE("decide_good proves the worked chain instance via chain-reduce") {
  Prover prover;
  Decision dec = prover.decide_good({85, 65, 5, 3});
  REQUIRE(dec.status == DecideStatus::Proved);
  REQUIRE(dec.certificate);
  CHECK(rule_name(dec.certificate->rule) == "chain-reduce");
  // Terminal leaf is the twist-interpolation instance (72, 51, 5, 0).
  const Certificate* node = dec.certificate.get();
  while (!node->children.empty()) node = node->children.back().get();
  CHECK(node->instance == Instance{72, 51, 5, 0});
  CHECK(rule_name(node->rule) == "twist-interpolation");
  CHECK(verify_certificate(*dec.certificate).ok);
}

TEST_CASE("decide_good falls back past an inapplicable chain") {
  // (15, 11, 5, 12): chain and add-canonical both fail, descend breaks rho;
  // one add-half step lands in the base excellent region.
  Prover prover;
  Decision dec = prover.decide_good({15, 11, 5, 12});
  REQUIRE(dec.status == DecideStatus::Proved);
  CHECK(rule_name(dec.certificate->rule) == "add-half");
  CHECK(verify_certificate(*dec.certificate).ok);
}

TEST_CASE("glue reattachment reads the full marked-point count") {
  // (26, 17, 5, 1) = (12, 7, 5, 1) glued to the excellent (14, 5, 5, 0)
  // along k = 6 points.  The reattachment inequality holds with equality
  // (20 >= 4*(6 - 1)) only because n counts the points on both pieces.
  RuleApplication app = apply_rule({26, 17, 5, 1}, GlueRule{12, 7, 1, 14, 5, 0, 6});
  CHECK(app.ok);
}

TEST_CASE("decide_good reaches gluing when every direct reduction fails") {
  // (26, 17, 5, 1) satisfies the sufficient condition with slack 1 but is
  // out of reach of the chain, the peeling scan, and the fallback rules.
  Prover prover;
  Decision dec = prover.decide_good({26, 17, 5, 1});
  REQUIRE(dec.status == DecideStatus::Proved);
  REQUIRE(dec.certificate);
  CHECK(rule_name(dec.certificate->rule) == "glue");
  REQUIRE(dec.certificate->children.size() == 2);
  CHECK(dec.certificate->children[1]->instance.n == 0);
  CHECK(verify_certificate(*dec.certificate).ok);
}

TEST_CASE("decide_good proves the exceptional low-degree instance") {
  Prover prover;
  Decision dec = prover.decide_good({11, 7, 5, 11});
  REQUIRE(dec.status == DecideStatus::Proved);
  CHECK(verify_certificate(*dec.certificate).ok);
}

TEST_CASE("decide_excellent scope and rejection payloads") {
  Prover prover;
  CHECK(prover.decide_excellent({9, 4, 5, 9}).status == DecideStatus::Proved);
  Decision oos = prover.decide_excellent({6, 2, 4, 6});
  CHECK(oos.status == DecideStatus::OutOfScope);
  REQUIRE(oos.failed);
  CHECK(oos.failed->name == "(d,g,r) notin {(5,2,3),(6,2,4),(7,2,5)}");
  Decision rej = prover.decide_excellent({11, 7, 5, 11});
  CHECK(rej.status == DecideStatus::Rejected);
  REQUIRE(rej.failed);
  CHECK_FALSE(rej.failed->ok);
}

TEST_CASE("decide_good distinguishes depth exhaustion from rejection") {
  Prover shallow(1);
  Decision dec = shallow.decide_good({15, 11, 5, 12});
  CHECK(dec.status == DecideStatus::DepthExceeded);
  Prover deep(10);
  CHECK(deep.decide_good({15, 11, 5, 12}).status == DecideStatus::Proved);
}

TEST_CASE("decide_good domain handling") {
  Prover prover;
  CHECK(prover.decide_good({10, 0, 4, 0}).status == DecideStatus::OutOfScope);
  Decision over = prover.decide_good({5, 0, 5, 6});
  CHECK(over.status == DecideStatus::Rejected);
  REQUIRE(over.failed);
  CHECK(over.failed->name == "n <= d");
  Decision neg = prover.decide_good({4, 0, 5, 0});
  CHECK(neg.status == DecideStatus::Rejected);
  REQUIRE(neg.failed);
  CHECK(neg.failed->name == "rho(d,g,r) >= 0");
}

TEST_CASE("derive completes sub-claims for manual rules") {
  Prover prover;
  Decision glue = prover.derive({16, 4, 5, 5}, GlueRule{6, 0, 3, 10, 4, 2, 1});
  REQUIRE(glue.status == DecideStatus::Proved);
  CHECK(glue.certificate->children.size() == 2);
  CHECK(verify_certificate(*glue.certificate).ok);

  Decision peel = prover.derive({10, 4, 5, 2}, ExcGoodRule{2});
  REQUIRE(peel.status == DecideStatus::Proved);
  CHECK(verify_certificate(*peel.certificate).ok);

  Decision bad = prover.derive({10, 4, 5, 2}, ExcGoodRule{5});
  CHECK(bad.status == DecideStatus::Rejected);
}

TEST_CASE("certificates round-trip through JSON byte-exactly") {
  Prover prover;
  Decision dec = prover.decide_good({85, 65, 5, 3});
  REQUIRE(dec.status == DecideStatus::Proved);
  std::string first = certificate_to_json(*dec.certificate);
  Certificate reparsed = certificate_from_json(first);
  CHECK(certificate_to_json(reparsed) == first);
  CHECK(verify_certificate(reparsed).ok);
}

TEST_CASE("verify_certificate rejects tampered trees") {
  Prover prover;
  Decision dec = prover.decide_good({11, 7, 5, 11});
  REQUIRE(dec.status == DecideStatus::Proved);

  Certificate wrong_instance = certificate_from_json(certificate_to_json(*dec.certificate));
  wrong_instance.instance.d += 1;
  CHECK_FALSE(verify_certificate(wrong_instance).ok);

  Certificate wrong_claim = certificate_from_json(certificate_to_json(*dec.certificate));
  wrong_claim.claim = Claim::Excellent;
  CHECK_FALSE(verify_certificate(wrong_claim).ok);

  Certificate pruned = certificate_from_json(certificate_to_json(*dec.certificate));
  pruned.children.clear();
  CHECK_FALSE(verify_certificate(pruned).ok);
}

TEST_CASE("decide_good is deterministic across independent provers") {
  const Instance samples[] = {{85, 65, 5, 3}, {11, 7, 5, 11}, {15, 11, 5, 12},
                              {40, 20, 7, 10}};
  for (const Instance& inst : samples) {
    Prover p1, p2;
    Decision d1 = p1.decide_good(inst);
    Decision d2 = p2.decide_good(inst);
    REQUIRE(d1.status == d2.status);
    if (d1.status == DecideStatus::Proved) {
      CHECK(certificate_to_json(*d1.certificate) == certificate_to_json(*d2.certificate));
    }
  }
}

TEST_CASE("successful chain reductions end at a vanishing genus or point count") {
  Prover prover;
  for (Int r = 5; r <= 7; ++r) {
    for (Int d = 0; d <= 40; ++d) {
      for (Int g = 0; rho(d, g, r) >= 0; ++g) {
        for (Int n = 0; n <= d; ++n) {
          Decision dec = prover.chain_reduction({d, g, r, n});
          if (dec.status != DecideStatus::Proved) continue;
          ChainRecipe rec = chain_recipe({d, g, r, n});
          Int leaf_n = n - rec.a * rec.x - rec.y;
          Int leaf_g = g - (rec.a + 1) * rec.x - rec.y;
          CHECK((leaf_n == 0 || leaf_g == 0));
        }
      }
    }
  }
}
