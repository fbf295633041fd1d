#pragma once

// Structured reports. Every report is built once as an ordered JSON object;
// the text form is a flattening of the same object, so both carry the same
// fields.

#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "toricdef/catalog.hpp"
#include "toricdef/deform.hpp"
#include "toricdef/divisor.hpp"
#include "toricdef/io.hpp"
#include "toricdef/scroll.hpp"

namespace toricdef {

using Json = nlohmann::ordered_json;

/// Small integers as JSON numbers, anything wider as a decimal string.
inline Json json_integer(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return static_cast<long long>(x);
  return x.str();
}

namespace detail {

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "null";
  return v.dump();
}

inline void line(const std::string& key, const Json& v, std::ostream& out) {
  const std::string text = scalar_text(v);
  out << key << ':' << (text.empty() ? "" : " ") << text << '\n';
}

inline void render(const Json& v, const std::string& key, std::ostream& out) {
  if (v.is_object()) {
    if (v.empty()) {
      out << key << ": {}\n";
      return;
    }
    for (const auto& [k, item] : v.items()) render(item, key.empty() ? k : key + "." + k, out);
  } else if (v.is_array()) {
    if (v.empty()) {
      out << key << ": []\n";
      return;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_structured())
        render(v[i], key + "." + std::to_string(i), out);
      else
        line(key, v[i], out);
    }
  } else {
    line(key, v, out);
  }
}

inline std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  for (auto l : split_on(text, '\n'))
    if (!l.empty()) out.emplace_back(l);
  return out;
}

}  // namespace detail

/// Line-oriented "key: value" form; nested keys are joined with '.', array
/// elements repeat the key.
inline void render_text(const Json& report, std::ostream& out) { detail::render(report, "", out); }

inline Json fan_json(const Fan& f) { return detail::lines_of(serialize_fan(f)); }

inline Json relations_json(const Fan& f) {
  Json out = Json::array();
  for (const auto& rel : primitive_relations(f)) {
    Json r;
    r["collection"] = collection_text(f, rel.collection);
    r["relation"] = format_relation(f, rel);
    r["degree"] = json_integer(rel.degree);
    out.push_back(std::move(r));
  }
  return out;
}

inline Json relation_strings(const std::vector<PrimitiveRelation>& rels, const Fan& f) {
  Json out = Json::array();
  for (const auto& rel : rels) out.push_back(format_relation(f, rel));
  return out;
}

inline Json labels_json(const Splitting& s) {
  Json out = Json::object();
  for (const auto* group : {&s.e, &s.a, &s.b, &s.c})
    for (auto r : *group) out[s.label(r)] = s.base_fan.ray(r).name;
  return out;
}

inline Json splitting_json(const Splitting& s, std::size_t index) {
  Json j;
  j["index"] = index;
  j["labels"] = labels_json(s);
  Json coords = Json::object();
  for (const auto* group : {&s.e, &s.a, &s.b, &s.c})
    for (auto r : *group) coords[s.label(r)] = to_string(s.coords(r));
  j["normal_form"] = std::move(coords);
  FiberType ft = fiber_type(s);
  j["fiber_kind"] = std::string(to_string(ft.kind));
  j["fiber_pair"] = ft.fiber_pair ? Json(ft.fiber_pair->first + "," + ft.fiber_pair->second) : Json("none");
  j["fiber_relations"] = relation_strings(primitive_relations(s.sigma_tilde), s.sigma_tilde);
  j["sigma_plus_cones"] = s.sigma_plus.size();
  j["sigma_minus_cones"] = s.sigma_minus.size();
  return j;
}

inline Json conditions_json(const ConditionReport& c) {
  Json j;
  j["holds"] = c.holds();
  j["first"] = c.first;
  j["second"] = c.second;
  j["violations"] = c.violations;
  return j;
}

inline Json weakened_json(const WeakenedReport& r) {
  Json j;
  j["name"] = r.name;
  j["passed"] = r.passed();
  j["failed_stage"] = r.passed() ? "none" : r.failed_stage();
  Json stages = Json::array();
  for (const auto& s : r.stages) {
    Json st;
    st["stage"] = s.stage;
    st["ok"] = s.ok;
    st["detail"] = s.detail;
    stages.push_back(std::move(st));
  }
  j["stages"] = std::move(stages);
  j["relations"] = r.relations;
  j["extra_collections"] = r.extra_collections;
  j["missing_collections"] = r.missing_collections;
  j["classification"] = r.classification ? std::string(to_string(*r.classification)) : "unknown";
  j["splittings_found"] = r.splittings_found;
  j["labels"] = r.splitting ? labels_json(*r.splitting) : Json::object();
  j["fiber_kind"] = r.fiber ? std::string(to_string(r.fiber->kind)) : "unknown";
  j["fiber_relations"] = r.fiber_relations;
  j["k"] = 1;
  j["endpoint_relations"] = r.endpoint_relations;
  j["endpoint_relation"] = r.endpoint_relation.empty() ? "none" : r.endpoint_relation;
  j["endpoint_class"] = r.endpoint_class ? std::string(to_string(*r.endpoint_class)) : "unknown";
  return j;
}

inline Json entry_json(const CatalogEntry& e) {
  Json j;
  j["name"] = e.name;
  j["dimension"] = e.dimension;
  j["generators"] = e.generators;
  j["relations"] = e.relations;
  j["basis"] = e.basis.empty() ? Json("auto") : Json(e.basis);
  j["expected_class"] = e.expected_class ? std::string(to_string(*e.expected_class)) : "unknown";
  j["endpoint_type"] = e.endpoint_type.empty() ? "none" : e.endpoint_type;
  j["description"] = e.description;
  return j;
}

inline Json chain_json(const DeformationChain& chain) {
  Json steps = Json::array();
  for (std::size_t i = 0; i < chain.forward.size(); ++i)
    steps.push_back(to_string(chain.specs[i]) + (chain.forward[i] ? " -> " : " <- ") +
                    to_string(chain.specs[i + 1]));
  return steps;
}

}  // namespace toricdef
