#include <doctest.h>

#include "bncert/audit.hpp"

using namespace bncert;

TEST_CASE("appendix sweep at r = 5 is clean and counts the expected grid") {
  SweepRange range;
  range.r_min = 5;
  range.r_max = 5;
  range.n_max = 3;
  SweepReport report = audit_appendix(range);
  CHECK(report.violations.empty());
  // Genus counts per n at r = 5: 55, 60, 61, 65 (the n = 3 bound is
  // floor(259/4) = 64, so 65 genera).
  CHECK(report.tuples_checked == 241);
}

TEST_CASE("appendix sweep handles several ranks") {
  SweepRange range;
  range.r_min = 5;
  range.r_max = 12;
  SweepReport report = audit_appendix(range, 4);
  CHECK(report.violations.empty());
  CHECK(report.tuples_checked > 241);
}

TEST_CASE("closed-form t and its exceptional bump") {
  TChoice tc = t_choice_closed_form(13, 5, 5);
  CHECK(tc.s == 2);
  CHECK(tc.t == 3);
  CHECK(t_choice_valid(13, 5, 5, 3));
  CHECK_FALSE(t_choice_valid(13, 5, 5, 2));  // (r, t) = (5, 2) is barred
  CHECK_FALSE(t_choice_valid(13, 5, 5, 1));  // t >= 2 fails
}

TEST_CASE("t-choice sweep is clean on a mid-size range") {
  SweepRange range;
  range.r_min = 5;
  range.r_max = 8;
  range.d_max = 200;
  SweepReport report = audit_t_choice(range, 2);
  CHECK(report.violations.empty());
  CHECK(report.tuples_checked > 0);
}

TEST_CASE("t-choice sweep is clean on a range containing (15, 4, 6)") {
  SweepRange range;
  range.r_min = 6;
  range.r_max = 6;
  range.d_max = 20;
  SweepReport report = audit_t_choice(range);
  CHECK(report.violations.empty());
}

TEST_CASE("needformain sweep finds exactly the known excluded-case tuple") {
  SweepRange range;
  range.r_min = 5;
  range.r_max = 7;
  range.d_max = 100;
  SweepReport report = audit_cor_needformain(range, 2);
  CHECK(report.violations.empty());
  CHECK(report.tuples_checked > 0);
}

TEST_CASE("needformain flags a missing excluded-case hit") {
  // d_max below 11 cannot contain (11, 7, 5); the sweep must say so.
  SweepRange range;
  range.r_min = 5;
  range.r_max = 5;
  range.d_max = 10;
  SweepReport report = audit_cor_needformain(range);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].stage == "excluded-case");
  CHECK(report.violations[0].instance == Instance{11, 7, 5, 0});
}

TEST_CASE("brute-force guarantee oracle") {
  CHECK(brute_force_guarantee(6, 4, 3) == 5);
  CHECK(brute_force_guarantee(10, 0, 5) == 10);
  CHECK_FALSE(brute_force_guarantee(5, 50, 5).has_value());
  CHECK_THROWS_AS(brute_force_guarantee(5, 0, 2), std::invalid_argument);
}

TEST_CASE("reports are deterministic and independent of parallelism") {
  SweepRange range;
  range.r_min = 5;
  range.r_max = 9;
  SweepReport serial = audit_appendix(range, 1);
  SweepReport parallel = audit_appendix(range, 8);
  CHECK(report_to_json(serial) == report_to_json(parallel));

  SweepRange tr;
  tr.r_min = 5;
  tr.r_max = 7;
  tr.d_max = 120;
  CHECK(report_to_json(audit_t_choice(tr, 1)) == report_to_json(audit_t_choice(tr, 8)));
  CHECK(report_to_json(audit_cor_needformain(tr, 1)) ==
        report_to_json(audit_cor_needformain(tr, 8)));
}

TEST_CASE("sweep ranges are validated") {
  SweepRange bad;
  bad.r_min = 4;
  CHECK_THROWS_AS(audit_appendix(bad), std::invalid_argument);
  SweepRange inverted;
  inverted.r_min = 7;
  inverted.r_max = 6;
  CHECK_THROWS_AS(audit_t_choice(inverted), std::invalid_argument);
}
