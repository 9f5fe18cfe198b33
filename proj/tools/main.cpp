// Command-line surface over the core library.  Exit codes: 0 when the
// queried claim is established (or a sweep finds zero violations), 1 when
// it is not, 2 on usage or domain errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "bncert/audit.hpp"

namespace {

using bncert::Int;
using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kNotEstablished = 1;
constexpr int kUsage = 2;

std::string dec(Int v) { return std::to_string(v); }

json instance_json(const bncert::Instance& inst) {
  json j;
  j["d"] = dec(inst.d);
  j["g"] = dec(inst.g);
  j["r"] = dec(inst.r);
  j["n"] = dec(inst.n);
  return j;
}

json check_json(const bncert::RuleCheck& c) {
  json j;
  j["name"] = std::string(c.name);
  j["lhs"] = dec(c.lhs);
  j["rhs"] = dec(c.rhs);
  j["cmp"] = std::string(bncert::cmp_name(c.cmp));
  j["ok"] = c.ok;
  return j;
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

std::string check_text(const bncert::RuleCheck& c) {
  return std::string(c.name) + "  [" + dec(c.lhs) + " " +
         std::string(bncert::cmp_name(c.cmp)) + " " + dec(c.rhs) + "]";
}

// Domain gate shared by the decision commands.
int check_decision_domain(const bncert::Instance& inst) {
  if (inst.d < 0 || inst.g < 0 || inst.r < 0 || inst.n < 0) {
    std::cerr << "error: arguments must be nonnegative\n";
    return kUsage;
  }
  if (inst.r < 5) {
    std::cerr << "error: decision commands require r >= 5\n";
    return kUsage;
  }
  if (inst.n > inst.d) {
    std::cerr << "error: n > d is outside the domain\n";
    return kUsage;
  }
  if (bncert::rho(inst.d, inst.g, inst.r) < 0) {
    std::cerr << "error: rho(d, g, r) < 0 is outside the domain\n";
    return kUsage;
  }
  return kOk;
}

int report_decision(const std::string& command, const bncert::Instance& inst,
                    const bncert::Decision& dec_result, bool as_json,
                    const std::string& cert_path) {
  using bncert::DecideStatus;
  bool proved = dec_result.status == DecideStatus::Proved;
  if (proved && !cert_path.empty()) {
    std::ofstream out(cert_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open " << cert_path << " for writing\n";
      return kUsage;
    }
    out << bncert::certificate_to_json(*dec_result.certificate);
  }
  if (as_json) {
    json j;
    j["command"] = command;
    j["instance"] = instance_json(inst);
    j["status"] = std::string(bncert::decide_status_name(dec_result.status));
    if (proved) {
      j["certificate"] = json::parse(bncert::certificate_to_json(*dec_result.certificate));
    } else {
      if (dec_result.failed) j["failed"] = check_json(*dec_result.failed);
      if (!dec_result.note.empty()) j["note"] = dec_result.note;
    }
    emit(j);
  } else {
    std::cout << command << "(" << inst.d << ", " << inst.g << ", " << inst.r << ", "
              << inst.n << "): " << bncert::decide_status_name(dec_result.status);
    if (proved) {
      std::cout << " via " << bncert::rule_name(dec_result.certificate->rule);
    } else if (dec_result.failed) {
      std::cout << "; failed " << check_text(*dec_result.failed);
    }
    if (!proved && !dec_result.note.empty()) std::cout << " (" << dec_result.note << ")";
    std::cout << "\n";
  }
  return proved ? kOk : kNotEstablished;
}

int report_sweep(const std::string& command, const bncert::SweepReport& report,
                 bool as_json) {
  if (as_json) {
    std::cout << bncert::report_to_json(report);
  } else {
    std::cout << command << ": checked " << report.tuples_checked << " tuples, "
              << report.violations.size() << " violations\n";
    for (const bncert::Violation& v : report.violations) {
      std::cout << "  (" << v.instance.d << ", " << v.instance.g << ", " << v.instance.r
                << ", " << v.instance.n << ") " << v.stage << ": ";
      if (v.check) {
        std::cout << check_text(*v.check);
      } else {
        std::cout << v.note;
      }
      std::cout << "\n";
    }
  }
  return report.violations.empty() ? kOk : kNotEstablished;
}

struct SweepArgs {
  bncert::SweepRange range;
  int jobs = 0;
};

void add_sweep_options(CLI::App* cmd, SweepArgs& args) {
  cmd->add_option("--r-min", args.range.r_min, "Smallest r to sweep (>= 5)");
  cmd->add_option("--r-max", args.range.r_max, "Largest r to sweep");
  cmd->add_option("--d-max", args.range.d_max, "Degree cap (0 = audit default)");
  cmd->add_option("--g-max", args.range.g_max, "Genus cap (0 = audit default)");
  cmd->add_option("--n-max", args.range.n_max, "Point-count cap");
  cmd->add_option("--jobs", args.jobs, "Worker threads (default: available cores)");
}

int effective_jobs(int jobs) {
  if (jobs > 0) return jobs;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

int run(int argc, char** argv) {
  CLI::App app{"Certificate-producing decision engine and audit harness for "
               "interpolation and point-passing bounds"};
  app.require_subcommand(1);

  struct {
    Int d = 0, g = 0, r = 0, n = 0;
    bool as_json = false;
    std::string cert_path;
    Int depth = 10000;
    std::string rule;
    std::vector<Int> params;
  } a;
  SweepArgs appendix_args, tchoice_args, needformain_args;
  bool appendix_json = false, tchoice_json = false, needformain_json = false;

  CLI::App* rho_cmd = app.add_subcommand("rho", "Brill-Noether number of (d, g, r)");
  rho_cmd->add_option("d", a.d)->required();
  rho_cmd->add_option("g", a.g)->required();
  rho_cmd->add_option("r", a.r)->required();
  rho_cmd->add_flag("--json", a.as_json);

  CLI::App* bounds_cmd =
      app.add_subcommand("bounds", "All closed-form bounds for (d, g, r)");
  bounds_cmd->add_option("d", a.d)->required();
  bounds_cmd->add_option("g", a.g)->required();
  bounds_cmd->add_option("r", a.r)->required();
  bounds_cmd->add_flag("--json", a.as_json);

  CLI::App* good_cmd = app.add_subcommand("good", "Decide goodness of (d, g, r, n)");
  CLI::App* exc_cmd =
      app.add_subcommand("excellent", "Decide excellence of (d, g, r, n)");
  for (CLI::App* cmd : {good_cmd, exc_cmd}) {
    cmd->add_option("d", a.d)->required();
    cmd->add_option("g", a.g)->required();
    cmd->add_option("r", a.r)->required();
    cmd->add_option("n", a.n)->required();
    cmd->add_flag("--json", a.as_json);
    cmd->add_option("--certificate", a.cert_path, "Write the certificate here");
    cmd->add_option("--depth", a.depth, "Recursion limit for the search");
  }

  CLI::App* derive_cmd = app.add_subcommand(
      "derive", "Apply one named rule at (d, g, r, n) and complete its children");
  derive_cmd->add_option("rule", a.rule, "Rule name, e.g. exc-good or glue")->required();
  derive_cmd->add_option("d", a.d)->required();
  derive_cmd->add_option("g", a.g)->required();
  derive_cmd->add_option("r", a.r)->required();
  derive_cmd->add_option("n", a.n)->required();
  derive_cmd->add_option("params", a.params,
                         "Rule parameters: b for exc-good; d1 g1 n1 d2 g2 n2 k for glue");
  derive_cmd->add_flag("--json", a.as_json);
  derive_cmd->add_option("--certificate", a.cert_path, "Write the certificate here");
  derive_cmd->add_option("--depth", a.depth, "Recursion limit for child searches");

  CLI::App* audit_cmd = app.add_subcommand("audit", "Exhaustive sweeps");
  audit_cmd->require_subcommand(1);
  CLI::App* appendix_cmd =
      audit_cmd->add_subcommand("appendix", "Finite-case sweep at minimal degree");
  add_sweep_options(appendix_cmd, appendix_args);
  appendix_cmd->add_flag("--json", appendix_json);
  CLI::App* tchoice_cmd =
      audit_cmd->add_subcommand("t-choice", "Closed-form t validation sweep");
  add_sweep_options(tchoice_cmd, tchoice_args);
  tchoice_cmd->add_flag("--json", tchoice_json);
  CLI::App* needformain_cmd = audit_cmd->add_subcommand(
      "needformain", "Low-degree bookkeeping sweep with excluded-case check");
  add_sweep_options(needformain_cmd, needformain_args);
  needformain_cmd->add_flag("--json", needformain_json);

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Brute-force oracles");
  oracle_cmd->require_subcommand(1);
  CLI::App* guarantee_cmd = oracle_cmd->add_subcommand(
      "guarantee", "Exhaustive-scan guaranteed point count for (d, g, r)");
  guarantee_cmd->add_option("d", a.d)->required();
  guarantee_cmd->add_option("g", a.g)->required();
  guarantee_cmd->add_option("r", a.r)->required();
  guarantee_cmd->add_flag("--json", a.as_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (rho_cmd->parsed()) {
      if (a.d < 0 || a.g < 0 || a.r < 1) {
        std::cerr << "error: rho requires d, g >= 0 and r >= 1\n";
        return kUsage;
      }
      Int value = bncert::rho(a.d, a.g, a.r);
      if (a.as_json) {
        json j;
        j["command"] = "rho";
        j["d"] = dec(a.d);
        j["g"] = dec(a.g);
        j["r"] = dec(a.r);
        j["value"] = dec(value);
        emit(j);
      } else {
        std::cout << "rho(" << a.d << ", " << a.g << ", " << a.r << ") = " << value
                  << "\n";
      }
      return kOk;
    }

    if (bounds_cmd->parsed()) {
      if (a.d < 0 || a.g < 0 || a.r < 3) {
        std::cerr << "error: bounds requires d, g >= 0 and r >= 3\n";
        return kUsage;
      }
      bncert::Bounds b = bncert::compute_bounds(a.d, a.g, a.r);
      if (a.as_json) {
        json j;
        j["command"] = "bounds";
        j["d"] = dec(a.d);
        j["g"] = dec(a.g);
        j["r"] = dec(a.r);
        json jb;
        jb["rho"] = dec(b.rho);
        jb["moduli_dim"] = dec(b.moduli_dim);
        jb["naive_points"] = dec(b.naive_points);
        jb["main_guarantee"] = dec(b.main_guarantee);
        jb["hyperplane_naive"] = dec(b.hyperplane_naive);
        jb["main_1s_guarantee"] = dec(b.main_1s_guarantee);
        jb["capacity_normal"] = bncert::to_string(b.capacity_normal);
        jb["capacity_twist"] = bncert::to_string(b.capacity_twist);
        j["bounds"] = std::move(jb);
        emit(j);
      } else {
        std::cout << "bounds(" << a.d << ", " << a.g << ", " << a.r << "):\n"
                  << "  rho                = " << b.rho << "\n"
                  << "  moduli_dim         = " << b.moduli_dim << "\n"
                  << "  naive_points       = " << b.naive_points << "\n"
                  << "  main_guarantee     = " << b.main_guarantee << "\n"
                  << "  hyperplane_naive   = " << b.hyperplane_naive << "\n"
                  << "  main_1s_guarantee  = " << b.main_1s_guarantee << "\n"
                  << "  capacity_normal    = " << bncert::to_string(b.capacity_normal)
                  << "\n"
                  << "  capacity_twist     = " << bncert::to_string(b.capacity_twist)
                  << "\n";
      }
      return kOk;
    }

    if (good_cmd->parsed() || exc_cmd->parsed()) {
      bncert::Instance inst{a.d, a.g, a.r, a.n};
      if (int rc = check_decision_domain(inst); rc != kOk) return rc;
      bncert::Prover prover(a.depth);
      bncert::Decision dec_result = good_cmd->parsed() ? prover.decide_good(inst)
                                                       : prover.decide_excellent(inst);
      return report_decision(good_cmd->parsed() ? "good" : "excellent", inst, dec_result,
                             a.as_json, a.cert_path);
    }

    if (derive_cmd->parsed()) {
      bncert::Instance inst{a.d, a.g, a.r, a.n};
      if (int rc = check_decision_domain(inst); rc != kOk) return rc;
      bncert::Rule rule;
      if (a.rule == "exc-good") {
        if (a.params.size() != 1) {
          std::cerr << "error: exc-good takes one parameter: b\n";
          return kUsage;
        }
        rule = bncert::ExcGoodRule{a.params[0]};
      } else if (a.rule == "glue") {
        if (a.params.size() != 7) {
          std::cerr << "error: glue takes seven parameters: d1 g1 n1 d2 g2 n2 k\n";
          return kUsage;
        }
        rule = bncert::GlueRule{a.params[0], a.params[1], a.params[2], a.params[3],
                                a.params[4], a.params[5], a.params[6]};
      } else if (a.rule == "chain-reduce") {
        if (!a.params.empty()) {
          std::cerr << "error: chain-reduce computes its own parameters\n";
          return kUsage;
        }
        bncert::ChainRecipe recipe = bncert::chain_recipe(inst);
        rule = bncert::ChainReduceRule{recipe.x, recipe.y, recipe.z};
      } else if (a.rule == "base-excellent") {
        rule = bncert::BaseExcellentRule{};
      } else if (a.rule == "twist-interpolation") {
        rule = bncert::TwistInterpolationRule{};
      } else if (a.rule == "excellent-implies-good") {
        rule = bncert::ExcellentImpliesGoodRule{};
      } else if (a.rule == "add-canonical") {
        rule = bncert::AddCanonicalRule{};
      } else if (a.rule == "add-half") {
        rule = bncert::AddHalfRule{};
      } else if (a.rule == "add-line") {
        rule = bncert::AddLineRule{};
      } else if (a.rule == "descend-degree") {
        rule = bncert::DescendDegreeRule{};
      } else {
        std::cerr << "error: unknown rule: " << a.rule << "\n";
        return kUsage;
      }
      if (!a.params.empty() && a.rule != "exc-good" && a.rule != "glue") {
        std::cerr << "error: rule " << a.rule << " takes no parameters\n";
        return kUsage;
      }
      bncert::Prover prover(a.depth);
      return report_decision("derive " + a.rule, inst, prover.derive(inst, rule),
                             a.as_json, a.cert_path);
    }

    if (appendix_cmd->parsed()) {
      return report_sweep(
          "audit appendix",
          bncert::audit_appendix(appendix_args.range, effective_jobs(appendix_args.jobs)),
          appendix_json);
    }
    if (tchoice_cmd->parsed()) {
      return report_sweep(
          "audit t-choice",
          bncert::audit_t_choice(tchoice_args.range, effective_jobs(tchoice_args.jobs)),
          tchoice_json);
    }
    if (needformain_cmd->parsed()) {
      return report_sweep("audit needformain",
                          bncert::audit_cor_needformain(
                              needformain_args.range,
                              effective_jobs(needformain_args.jobs)),
                          needformain_json);
    }

    if (guarantee_cmd->parsed()) {
      if (a.d < 0 || a.g < 0 || a.r < 3) {
        std::cerr << "error: oracle guarantee requires d, g >= 0 and r >= 3\n";
        return kUsage;
      }
      std::optional<Int> value = bncert::brute_force_guarantee(a.d, a.g, a.r);
      if (a.as_json) {
        json j;
        j["command"] = "oracle guarantee";
        j["d"] = dec(a.d);
        j["g"] = dec(a.g);
        j["r"] = dec(a.r);
        j["value"] = value ? json(dec(*value)) : json(nullptr);
        emit(j);
      } else {
        std::cout << "guarantee(" << a.d << ", " << a.g << ", " << a.r << ") = ";
        if (value) {
          std::cout << *value << "\n";
        } else {
          std::cout << "none\n";
        }
      }
      return value ? kOk : kNotEstablished;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  std::cerr << "error: no command\n";
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
