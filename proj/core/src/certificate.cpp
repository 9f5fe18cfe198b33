#include "bncert/certificate.hpp"

#include <mutex>
#include <set>

#include <json.hpp>

namespace bncert {

namespace {

using json = nlohmann::ordered_json;

// Parsed check names outlive the certificates that reference them.
std::string_view intern(const std::string& s) {
  static std::mutex mu;
  static std::set<std::string> pool;
  std::lock_guard<std::mutex> lock(mu);
  return *pool.insert(s).first;
}

std::string dec(Int v) { return std::to_string(v); }

Int parse_int(const json& j, const char* what) {
  if (!j.is_string()) throw std::runtime_error(std::string("expected decimal string for ") + what);
  const std::string& s = j.get_ref<const std::string&>();
  std::size_t pos = 0;
  Int v = std::stoll(s, &pos);
  if (pos != s.size()) throw std::runtime_error(std::string("malformed integer for ") + what);
  return v;
}

json instance_to_json(const Instance& inst) {
  json j;
  j["d"] = dec(inst.d);
  j["g"] = dec(inst.g);
  j["r"] = dec(inst.r);
  j["n"] = dec(inst.n);
  return j;
}

Instance instance_from_json(const json& j) {
  return Instance{parse_int(j.at("d"), "d"), parse_int(j.at("g"), "g"),
                  parse_int(j.at("r"), "r"), parse_int(j.at("n"), "n")};
}

json params_to_json(const Rule& rule) {
  json j = json::object();
  if (const auto* e = std::get_if<ExcGoodRule>(&rule)) {
    j["b"] = dec(e->b);
  } else if (const auto* gl = std::get_if<GlueRule>(&rule)) {
    j["d1"] = dec(gl->d1);
    j["g1"] = dec(gl->g1);
    j["n1"] = dec(gl->n1);
    j["d2"] = dec(gl->d2);
    j["g2"] = dec(gl->g2);
    j["n2"] = dec(gl->n2);
    j["k"] = dec(gl->k);
  } else if (const auto* c = std::get_if<ChainReduceRule>(&rule)) {
    j["x"] = dec(c->x);
    j["y"] = dec(c->y);
    j["z"] = dec(c->z);
  }
  return j;
}

Rule rule_from_json(const std::string& name, const json& params) {
  if (name == "base-excellent") return BaseExcellentRule{};
  if (name == "twist-interpolation") return TwistInterpolationRule{};
  if (name == "excellent-implies-good") return ExcellentImpliesGoodRule{};
  if (name == "add-canonical") return AddCanonicalRule{};
  if (name == "add-half") return AddHalfRule{};
  if (name == "add-line") return AddLineRule{};
  if (name == "descend-degree") return DescendDegreeRule{};
  if (name == "exc-good") return ExcGoodRule{parse_int(params.at("b"), "b")};
  if (name == "glue") {
    return GlueRule{parse_int(params.at("d1"), "d1"), parse_int(params.at("g1"), "g1"),
                    parse_int(params.at("n1"), "n1"), parse_int(params.at("d2"), "d2"),
                    parse_int(params.at("g2"), "g2"), parse_int(params.at("n2"), "n2"),
                    parse_int(params.at("k"), "k")};
  }
  if (name == "chain-reduce") {
    return ChainReduceRule{parse_int(params.at("x"), "x"), parse_int(params.at("y"), "y"),
                           parse_int(params.at("z"), "z")};
  }
  throw std::runtime_error("unknown rule: " + name);
}

json cert_to_json_impl(const Certificate& cert) {
  json j;
  j["claim"] = std::string(claim_name(cert.claim));
  j["instance"] = instance_to_json(cert.instance);
  j["rule"] = std::string(rule_name(cert.rule));
  j["params"] = params_to_json(cert.rule);
  json checks = json::array();
  for (const RuleCheck& c : cert.checks) {
    json jc;
    jc["name"] = std::string(c.name);
    jc["lhs"] = dec(c.lhs);
    jc["rhs"] = dec(c.rhs);
    jc["cmp"] = std::string(cmp_name(c.cmp));
    jc["ok"] = c.ok;
    checks.push_back(std::move(jc));
  }
  j["checks"] = std::move(checks);
  json children = json::array();
  for (const CertPtr& child : cert.children) {
    children.push_back(cert_to_json_impl(*child));
  }
  j["children"] = std::move(children);
  return j;
}

Certificate cert_from_json_impl(const json& j) {
  Certificate cert;
  const std::string& claim = j.at("claim").get_ref<const std::string&>();
  if (claim == "good") {
    cert.claim = Claim::Good;
  } else if (claim == "excellent") {
    cert.claim = Claim::Excellent;
  } else {
    throw std::runtime_error("unknown claim: " + claim);
  }
  cert.instance = instance_from_json(j.at("instance"));
  cert.rule = rule_from_json(j.at("rule").get_ref<const std::string&>(), j.at("params"));
  for (const json& jc : j.at("checks")) {
    RuleCheck c;
    c.name = intern(jc.at("name").get_ref<const std::string&>());
    c.lhs = parse_int(jc.at("lhs"), "lhs");
    c.rhs = parse_int(jc.at("rhs"), "rhs");
    c.cmp = cmp_from_name(jc.at("cmp").get_ref<const std::string&>());
    c.ok = jc.at("ok").get<bool>();
    cert.checks.push_back(c);
  }
  for (const json& jc : j.at("children")) {
    cert.children.push_back(std::make_shared<Certificate>(cert_from_json_impl(jc)));
  }
  return cert;
}

}  // namespace

bool cmp_holds(Cmp cmp, Int lhs, Int rhs) {
  switch (cmp) {
    case Cmp::Le: return lhs <= rhs;
    case Cmp::Lt: return lhs < rhs;
    case Cmp::Ge: return lhs >= rhs;
    case Cmp::Gt: return lhs > rhs;
    case Cmp::Eq: return lhs == rhs;
    case Cmp::Ne: return lhs != rhs;
    case Cmp::NotIn: return lhs == 0;
  }
  return false;
}

std::string_view cmp_name(Cmp cmp) {
  switch (cmp) {
    case Cmp::Le: return "<=";
    case Cmp::Lt: return "<";
    case Cmp::Ge: return ">=";
    case Cmp::Gt: return ">";
    case Cmp::Eq: return "==";
    case Cmp::Ne: return "!=";
    case Cmp::NotIn: return "notin";
  }
  return "?";
}

Cmp cmp_from_name(std::string_view name) {
  if (name == "<=") return Cmp::Le;
  if (name == "<") return Cmp::Lt;
  if (name == ">=") return Cmp::Ge;
  if (name == ">") return Cmp::Gt;
  if (name == "==") return Cmp::Eq;
  if (name == "!=") return Cmp::Ne;
  if (name == "notin") return Cmp::NotIn;
  throw std::runtime_error("unknown comparator: " + std::string(name));
}

std::string_view claim_name(Claim claim) {
  return claim == Claim::Good ? "good" : "excellent";
}

std::string_view rule_name(const Rule& rule) {
  struct Namer {
    std::string_view operator()(const BaseExcellentRule&) const { return "base-excellent"; }
    std::string_view operator()(const TwistInterpolationRule&) const { return "twist-interpolation"; }
    std::string_view operator()(const ExcellentImpliesGoodRule&) const { return "excellent-implies-good"; }
    std::string_view operator()(const AddCanonicalRule&) const { return "add-canonical"; }
    std::string_view operator()(const AddHalfRule&) const { return "add-half"; }
    std::string_view operator()(const AddLineRule&) const { return "add-line"; }
    std::string_view operator()(const DescendDegreeRule&) const { return "descend-degree"; }
    std::string_view operator()(const ExcGoodRule&) const { return "exc-good"; }
    std::string_view operator()(const GlueRule&) const { return "glue"; }
    std::string_view operator()(const ChainReduceRule&) const { return "chain-reduce"; }
  };
  return std::visit(Namer{}, rule);
}

std::string certificate_to_json(const Certificate& cert) {
  return cert_to_json_impl(cert).dump() + "\n";
}

Certificate certificate_from_json(const std::string& text) {
  return cert_from_json_impl(json::parse(text));
}

}  // namespace bncert
