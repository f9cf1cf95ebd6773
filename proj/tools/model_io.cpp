#include "model_io.hpp"

#include <map>

#include "json.hpp"

namespace clouds::io {

namespace {

using nlohmann::json;

const json& field(const json& obj, const char* name) {
  auto it = obj.find(name);
  if (it == obj.end()) throw SchemaError(std::string("missing field '") + name + "'");
  return *it;
}

Rational number(const json& v, const std::string& where) {
  try {
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    // dump() gives the shortest text that reads back to the same double.
    if (v.is_number_float()) return Rational::parse(v.dump());
  } catch (const Error& e) {
    throw SchemaError(where + ": " + e.what());
  }
  throw SchemaError(where + ": expected a number or numeric string");
}

std::string text(const json& v, const std::string& where) {
  if (!v.is_string()) throw SchemaError(where + ": expected a string");
  return v.get<std::string>();
}

OutcomeSpace elements(const json& doc) {
  const auto& e = field(doc, "elements");
  if (!e.is_array() || e.empty()) throw SchemaError("'elements' must be a non-empty array");
  std::vector<std::string> labels;
  for (const auto& v : e) labels.push_back(text(v, "elements"));
  try {
    return OutcomeSpace(std::move(labels));
  } catch (const Error& ex) {
    throw SchemaError(std::string("elements: ") + ex.what());
  }
}

std::vector<Rational> per_element(const json& doc, const OutcomeSpace& space, const char* name) {
  const auto& m = field(doc, name);
  if (!m.is_object()) throw SchemaError(std::string("'") + name + "' must map elements to numbers");
  std::vector<Rational> out(space.size());
  std::vector<bool> seen(space.size(), false);
  for (const auto& [label, v] : m.items()) {
    if (!space.contains(label)) {
      throw ValidationError(std::string(name) + " names unknown element '" + label + "'");
    }
    const auto i = space.index_of(label);
    out[i] = number(v, std::string(name) + "." + label);
    seen[i] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw ValidationError(std::string(name) + " missing element " + space.label(i));
  }
  return out;
}

std::vector<std::size_t> label_list(const json& v, const OutcomeSpace& space, const std::string& where) {
  if (!v.is_array()) throw SchemaError(where + ": expected an array of elements");
  std::vector<std::size_t> out;
  for (const auto& l : v) {
    const auto label = text(l, where);
    if (!space.contains(label)) throw ValidationError(where + " names unknown element '" + label + "'");
    out.push_back(space.index_of(label));
  }
  return out;
}

PiecewiseLinear breakpoints(const json& doc, const char* name) {
  const auto& f = field(doc, name);
  if (!f.is_object()) throw SchemaError(std::string("'") + name + "' must hold 'breakpoints'");
  const auto& b = field(f, "breakpoints");
  if (!b.is_array()) throw SchemaError(std::string(name) + ".breakpoints must be an array");
  std::vector<PiecewiseLinear::Point> pts;
  for (const auto& p : b) {
    if (!p.is_array() || p.size() != 2) throw SchemaError(std::string(name) + ": breakpoints are [x, y] pairs");
    pts.emplace_back(number(p[0], name), number(p[1], name));
  }
  return PiecewiseLinear(std::move(pts));
}

json elements_json(const OutcomeSpace& space) { return space.labels(); }

json values_json(const OutcomeSpace& space, const std::vector<Rational>& v) {
  json out = json::object();
  for (std::size_t i = 0; i < v.size(); ++i) out[space.label(i)] = v[i].to_string();
  return out;
}

json labels_json(const OutcomeSpace& space, const std::vector<std::size_t>& idx) {
  json out = json::array();
  for (auto i : idx) out.push_back(space.label(i));
  return out;
}

json breakpoints_json(const PiecewiseLinear& f) {
  json pts = json::array();
  for (const auto& [x, y] : f.points()) pts.push_back({x.to_string(), y.to_string()});
  return json{{"breakpoints", pts}};
}

Model parse_document(const json& doc) {
  if (!doc.is_object()) throw SchemaError("model must be a JSON object");
  const auto kind = text(field(doc, "kind"), "kind");
  if (kind == "cloud") {
    auto space = elements(doc);
    auto d = per_element(doc, space, "delta");
    auto p = per_element(doc, space, "pi");
    return Cloud(std::move(space), std::move(d), std::move(p));
  }
  if (kind == "possibility") {
    auto space = elements(doc);
    auto p = per_element(doc, space, "pi");
    return PossibilityDistribution(std::move(space), std::move(p));
  }
  if (kind == "genpbox") {
    auto space = elements(doc);
    auto lo = per_element(doc, space, "flow");
    auto hi = per_element(doc, space, "fhigh");
    if (!doc.contains("classes")) return GeneralizedPBox(std::move(space), std::move(lo), std::move(hi));
    const auto& c = doc["classes"];
    if (!c.is_array()) throw SchemaError("'classes' must be an array of element lists");
    std::vector<std::vector<std::size_t>> classes;
    for (const auto& cls : c) classes.push_back(label_list(cls, space, "classes"));
    return GeneralizedPBox(std::move(space), std::move(lo), std::move(hi), std::move(classes));
  }
  if (kind == "probintervals") {
    auto space = elements(doc);
    auto lo = per_element(doc, space, "lower");
    auto hi = per_element(doc, space, "upper");
    return ProbabilityInterval(std::move(space), std::move(lo), std::move(hi));
  }
  if (kind == "randomset") {
    auto space = elements(doc);
    const auto& f = field(doc, "focal");
    if (!f.is_array()) throw SchemaError("'focal' must be an array");
    std::map<EventSet, Rational> focal;
    for (const auto& entry : f) {
      if (!entry.is_object()) throw SchemaError("focal entries are {\"set\": [...], \"mass\": m}");
      const auto idx = label_list(field(entry, "set"), space, "focal set");
      const auto set = EventSet::from_indices(space.size(), idx);
      if (focal.count(set)) throw ValidationError("focal set " + set.to_string(space) + " listed twice");
      focal.emplace(set, number(field(entry, "mass"), "mass"));
    }
    return MassFunction(std::move(space), std::move(focal));
  }
  if (kind == "continuous_cloud") {
    auto pi = breakpoints(doc, "pi");
    auto delta = breakpoints(doc, "delta");
    if (doc.contains("support")) {
      const auto& s = doc["support"];
      if (!s.is_array() || s.size() != 2) throw SchemaError("'support' must be [lo, hi]");
      if (number(s[0], "support") != pi.lo() || number(s[1], "support") != pi.hi()) {
        throw ValidationError("breakpoints do not span the declared support");
      }
    }
    return ContinuousCloud(std::move(delta), std::move(pi));
  }
  throw SchemaError("unknown model kind '" + kind + "'");
}

struct ToJson {
  json operator()(const Cloud& c) const {
    return {{"kind", "cloud"},
            {"elements", elements_json(c.space())},
            {"delta", values_json(c.space(), c.delta())},
            {"pi", values_json(c.space(), c.pi())}};
  }
  json operator()(const PossibilityDistribution& p) const {
    return {{"kind", "possibility"},
            {"elements", elements_json(p.space())},
            {"pi", values_json(p.space(), p.values())}};
  }
  json operator()(const GeneralizedPBox& g) const {
    json classes = json::array();
    for (const auto& cls : g.classes()) classes.push_back(labels_json(g.space(), cls));
    return {{"kind", "genpbox"},
            {"elements", elements_json(g.space())},
            {"flow", values_json(g.space(), g.flow())},
            {"fhigh", values_json(g.space(), g.fhigh())},
            {"classes", classes}};
  }
  json operator()(const ProbabilityInterval& iv) const {
    return {{"kind", "probintervals"},
            {"elements", elements_json(iv.space())},
            {"lower", values_json(iv.space(), iv.lower())},
            {"upper", values_json(iv.space(), iv.upper())}};
  }
  json operator()(const MassFunction& m) const {
    json focal = json::array();
    for (const auto& [set, mass] : m.focal()) {
      focal.push_back({{"set", labels_json(m.space(), set.indices())}, {"mass", mass.to_string()}});
    }
    return {{"kind", "randomset"}, {"elements", elements_json(m.space())}, {"focal", focal}};
  }
  json operator()(const ContinuousCloud& cc) const {
    return {{"kind", "continuous_cloud"},
            {"support", {cc.lo().to_string(), cc.hi().to_string()}},
            {"delta", breakpoints_json(cc.delta())},
            {"pi", breakpoints_json(cc.pi())}};
  }
};

}  // namespace

std::string kind_of(const Model& model) {
  static const char* names[] = {"cloud",         "possibility", "genpbox",
                                "probintervals", "randomset",   "continuous_cloud"};
  return names[model.index()];
}

Model parse_model(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  return parse_document(doc);
}

std::string serialize_model(const Model& model) {
  return std::visit(ToJson{}, model).dump(2) + "\n";
}

}  // namespace clouds::io
