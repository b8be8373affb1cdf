#include "cat0/expansion.hpp"
#include "json.hpp"

namespace cat0 {

namespace {

using nlohmann::json;

constexpr const char* kFormat = "cat0-expansion-certificate";

json field_json(const QField& q) {
  return json::array({rational_to_string(q.a()), rational_to_string(q.b()), rational_to_string(q.c()),
                      rational_to_string(q.d())});
}

QField field_from(const json& j) {
  if (!j.is_array() || j.size() != 4) throw InputError("field element must have four coefficients");
  return QField(parse_rational(j[0].get<std::string>()), parse_rational(j[1].get<std::string>()),
                parse_rational(j[2].get<std::string>()), parse_rational(j[3].get<std::string>()));
}

json radical_json(const RadicalSum& x) {
  json terms = json::array();
  for (const auto& t : x.terms()) terms.push_back({{"radicand", field_json(t.radicand)}, {"coef", field_json(t.coef)}});
  return {{"terms", terms}, {"value", to_decimal(x)}};
}

RadicalSum radical_from(const json& j) {
  std::vector<RadicalSum::Term> terms;
  for (const auto& t : j.at("terms")) {
    QField rad = field_from(t.at("radicand"));
    if (qf_sign(rad) <= 0) throw InputError("radicands must be positive");
    terms.push_back({rad, field_from(t.at("coef"))});
  }
  return RadicalSum::from_terms(terms);
}

json step_json(const ConeStep& s) {
  json edges = json::array();
  for (auto [a, b] : s.gamma.edges) edges.push_back({a, b});
  return {{"x", s.x},
          {"gamma", {{"nodes", s.gamma.nodes}, {"edges", edges}}},
          {"evidence",
           {{"connected", s.evidence.connected},
            {"acyclic", s.evidence.acyclic},
            {"diameter_units", s.evidence.diameter_units},
            {"diameter_ok", s.evidence.diameter_ok}}}};
}

ConeStep step_from(const json& j) {
  ConeStep s;
  s.x = j.at("x").get<VertexId>();
  s.gamma.nodes = j.at("gamma").at("nodes").get<std::vector<VertexId>>();
  for (const auto& e : j.at("gamma").at("edges")) {
    auto p = e.get<std::array<VertexId, 2>>();
    s.gamma.edges.push_back({std::min(p[0], p[1]), std::max(p[0], p[1])});
  }
  const json& ev = j.at("evidence");
  s.evidence.connected = ev.at("connected").get<bool>();
  s.evidence.acyclic = ev.at("acyclic").get<bool>();
  s.evidence.diameter_units = ev.at("diameter_units").get<int>();
  s.evidence.diameter_ok = ev.at("diameter_ok").get<bool>();
  return s;
}

}  // namespace

std::string certificate_to_json(const ExpansionCertificate& cert) {
  json stages = json::array();
  for (const auto& st : cert.stages) {
    json steps = json::array();
    for (const auto& s : st.steps) steps.push_back(step_json(s));
    stages.push_back({{"radius", radical_json(st.radius)},
                      {"previous", radical_json(st.previous)},
                      {"epsilon", radical_json(st.epsilon.value)},
                      {"epsilon_rule", st.epsilon.formula ? "formula" : "rational"},
                      {"boundary", st.boundary},
                      {"initial_hash", st.initial_hash},
                      {"steps", steps},
                      {"final_hash", st.final_hash}});
  }
  json j = {{"format", kFormat},
            {"version", 1},
            {"complex_hash", cert.complex_hash},
            {"base", cert.base},
            {"R", radical_json(cert.R)},
            {"stages", stages},
            {"final_hash", cert.final_hash}};
  return j.dump(1) + "\n";
}

ExpansionCertificate certificate_from_json(const std::string& text) {
  try {
    json j = json::parse(text);
    if (j.at("format").get<std::string>() != kFormat) throw InputError("not an expansion certificate");
    if (j.at("version").get<int>() != 1) throw InputError("unsupported certificate version");
    ExpansionCertificate cert;
    cert.complex_hash = j.at("complex_hash").get<std::string>();
    cert.base = j.at("base").get<VertexId>();
    cert.R = radical_from(j.at("R"));
    for (const auto& js : j.at("stages")) {
      ExpansionStage st;
      st.radius = radical_from(js.at("radius"));
      st.previous = radical_from(js.at("previous"));
      st.epsilon.value = radical_from(js.at("epsilon"));
      std::string rule = js.at("epsilon_rule").get<std::string>();
      if (rule != "formula" && rule != "rational") throw InputError("unknown epsilon rule " + rule);
      st.epsilon.formula = rule == "formula";
      st.boundary = js.at("boundary").get<std::vector<VertexId>>();
      st.initial_hash = js.at("initial_hash").get<std::string>();
      for (const auto& s : js.at("steps")) st.steps.push_back(step_from(s));
      st.final_hash = js.at("final_hash").get<std::string>();
      cert.stages.push_back(std::move(st));
    }
    cert.final_hash = j.at("final_hash").get<std::string>();
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed certificate: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace cat0
