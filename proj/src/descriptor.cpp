#include "desco/descriptor.hpp"

#include "desco/desco.hpp"
#include "desco/musco.hpp"

namespace desco {

namespace {

using nlohmann::json;

json component_json(const Component& c) {
  json coeffs = json::array();
  for (const auto& row : c.code.coeffs()) {
    json r = json::array();
    for (auto e : row) r.push_back(e.value);
    coeffs.push_back(std::move(r));
  }
  json out{{"orientation", to_string(c.code.orientation())},
           {"B", c.code.parity_count()},
           {"T", c.code.row_count()},
           {"ell", c.code.ell()},
           {"shift", c.shift},
           {"parity_offset", c.parity_offset},
           {"coefficients", std::move(coeffs)}};
  if (!c.lane.empty()) out["lane"] = c.lane;
  return out;
}

const CompositeCode& composite_of(const MulticastCode& code) {
  if (auto* d = dynamic_cast<const DescoCode*>(&code)) return d->composite();
  if (auto* c = dynamic_cast<const CcScoCode*>(&code)) return c->composite();
  if (auto* i = dynamic_cast<const IaScoCode*>(&code)) return i->composite();
  if (auto* e = dynamic_cast<const ExpandedMuscoCode*>(&code)) return e->inner().composite();
  throw ParameterError("no descriptor for code kind " + code.kind());
}

json contract_json(Contract c) { return json{{"burst", c.burst}, {"delay", c.delay}}; }

}  // namespace

BuiltCode build_code(const CodeSpec& in) {
  CodeSpec spec = in;
  if (spec.field_bits < 1 || spec.field_bits > 8) throw ParameterError("field bits must be in [1, 8]");
  if (spec.kind == "desco") {
    return {spec, std::make_unique<DescoCode>(desco_construct(spec.b1, spec.t1, spec.alpha, spec.field_bits))};
  }
  if (spec.kind == "ccsco") {
    if (!spec.b2) spec.b2 = spec.alpha * spec.b1;
    if (!spec.t2) spec.t2 = spec.alpha * spec.t1;
    auto code = ccsco_construct({spec.b1, spec.t1, *spec.b2, *spec.t2}, spec.field_bits);
    return {spec, std::make_unique<CcScoCode>(std::move(code))};
  }
  if (spec.kind == "iasco") {
    if (spec.shift) {
      return {spec, std::make_unique<IaScoCode>(iasco_construct(spec.b1, spec.t1, spec.alpha, *spec.shift, spec.field_bits))};
    }
    const int limit = spec.alpha * (spec.t1 + spec.b1);
    for (int s = 0; s <= limit; ++s) {
      auto code = iasco_build(spec.b1, spec.t1, spec.alpha, s, spec.field_bits);
      if (!first_violation(code)) {
        spec.shift = s;
        return {spec, std::make_unique<IaScoCode>(std::move(code))};
      }
    }
    throw ConstructionError("no certified IA-SCo shift up to " + std::to_string(limit));
  }
  if (spec.kind == "expanded") {
    if (spec.b1 != 1 || spec.t1 != 2 || spec.alpha != 2) {
      throw ParameterError("the expanded code exists only for b1=1, t1=2, alpha=2");
    }
    return {spec, std::make_unique<ExpandedMuscoCode>(expanded_musco_construct(spec.field_bits))};
  }
  throw ParameterError("unknown code kind '" + spec.kind + "'");
}

nlohmann::json describe(const BuiltCode& built) {
  const auto& s = built.spec;
  const auto& code = *built.code;
  json params{{"b1", s.b1}, {"t1", s.t1}, {"alpha", s.alpha}};
  if (s.b2) params["b2"] = *s.b2;
  if (s.t2) params["t2"] = *s.t2;
  if (s.shift) params["shift"] = *s.shift;

  json comps = json::array();
  for (const auto& c : composite_of(code).components()) comps.push_back(component_json(c));

  const Rational rate = code.rate();
  return json{{"kind", s.kind},
              {"field_bits", s.field_bits},
              {"params", std::move(params)},
              {"contracts",
               {{"user1", contract_json(code.contract(Receiver::user1))},
                {"user2", contract_json(code.contract(Receiver::user2))}}},
              {"rate", {{"num", rate.numerator()}, {"den", rate.denominator()}}},
              {"source_rows", code.source_rows()},
              {"parity_rows", code.parity_rows()},
              {"components", std::move(comps)}};
}

BuiltCode code_from_json(const nlohmann::json& j) {
  CodeSpec spec;
  try {
    spec.kind = j.at("kind").get<std::string>();
    spec.field_bits = j.value("field_bits", 8);
    const auto& p = j.at("params");
    spec.b1 = p.at("b1").get<int>();
    spec.t1 = p.at("t1").get<int>();
    spec.alpha = p.value("alpha", 2);
    if (p.contains("b2")) spec.b2 = p["b2"].get<int>();
    if (p.contains("t2")) spec.t2 = p["t2"].get<int>();
    if (p.contains("shift")) spec.shift = p["shift"].get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed code descriptor: ") + e.what());
  }
  auto built = build_code(spec);
  if (j.contains("components") && describe(built)["components"] != j["components"]) {
    throw ParameterError("descriptor coefficients do not match the rebuilt code");
  }
  return built;
}

}  // namespace desco
