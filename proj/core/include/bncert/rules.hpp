#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>

#include "bncert/certificate.hpp"

// The rewrite-rule engine.  apply_rule evaluates one rule's hypotheses
// against an instance, stopping at the first failure, and reports the child
// claims the rule requires.  Prover searches for full derivations with a
// fixed deterministic strategy; verify_certificate replays a derivation from
// scratch, trusting nothing stored in it.

namespace bncert {

struct RuleApplication {
  bool ok = false;
  Claim proves = Claim::Good;  // the parent claim the rule establishes
  // Hypotheses in evaluation order; on rejection the last entry is the
  // first (and only) failed one.
  std::vector<RuleCheck> checks;
  std::vector<std::pair<Instance, Claim>> children;
};

RuleApplication apply_rule(const Instance& inst, const Rule& rule);

// Auxiliary integers of the chain reduction: a = ceil((r-2)/2),
// x = min(floor(g/(a+1)), floor(n/a)), y = min(g-(a+1)x, n-ax),
// z = min(g-(a+1)x-y, d-n, 10).
struct ChainRecipe {
  Int a = 0, x = 0, y = 0, z = 0;
};
ChainRecipe chain_recipe(const Instance& inst);

enum class DecideStatus { Proved, Rejected, OutOfScope, DepthExceeded };
std::string_view decide_status_name(DecideStatus status);

struct Decision {
  DecideStatus status = DecideStatus::Rejected;
  CertPtr certificate;               // set iff Proved
  std::optional<RuleCheck> failed;   // first failed hypothesis, when known
  std::string note;
};

class Prover {
 public:
  explicit Prover(Int depth_limit = 10000);

  // Leaf-only decision: base-excellent, else (n = 0 and the
  // twist-interpolation bound).  Sound but incomplete; r < 5 is out of
  // scope when only the twist route would apply.
  Decision decide_excellent(const Instance& inst);

  // Deterministic strategy, in order: excellent + excellent-implies-good;
  // chain-reduce; exc-good with the smallest workable b; add-canonical;
  // descend-degree; add-half; add-line; finally, at the root instance only,
  // a bounded glue search whose pieces are decided without further gluing.
  // Identical inputs yield identical certificates.
  Decision decide_good(const Instance& inst);

  // The x/y/z chain on its own: x add-half steps, y add-line steps, one
  // exc-good peel, excellent leaf, all wrapped in a chain-reduce node.
  Decision chain_reduction(const Instance& inst);

  // Manual one-step derivation: applies the given rule (glue included) and
  // completes every child claim automatically.
  Decision derive(const Instance& inst, const Rule& rule);

 private:
  Decision decide_good_impl(const Instance& inst, Int depth, bool allow_glue);
  Decision chain_reduction_impl(const Instance& inst);
  Decision glue_search(const Instance& inst, Int depth);

  Int depth_limit_;
  // Negative cache: instances already rejected (never depth-limited ones).
  std::unordered_map<std::uint64_t, DecideStatus> settled_;
};

struct VerifyResult {
  bool ok = false;
  std::string path;  // node path plus reason on failure
};

// Recomputes every hypothesis and child instance from the rule formulas;
// stored lhs/rhs/ok payloads are ignored.
VerifyResult verify_certificate(const Certificate& cert);

}  // namespace bncert
