#pragma once

// Built-in fans and the weakened-Fano verification harness.

#include <cctype>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "toricdef/deform.hpp"
#include "toricdef/divisor.hpp"
#include "toricdef/io.hpp"
#include "toricdef/scroll.hpp"

namespace toricdef {

struct CatalogEntry {
  std::string name;
  std::size_t dimension = 0;
  std::vector<std::string> generators;
  /// Primitive relations in file syntax, e.g. "x6+x7 = 2*x1".
  std::vector<std::string> relations;
  /// Empty: the first workable basis cone is chosen.
  std::vector<std::string> basis;
  std::optional<FanoClass> expected_class;
  /// Type of the general fiber, carried as metadata only.
  std::string endpoint_type;
  std::string description;

  RelationDocument document() const {
    RelationDocument doc;
    doc.dimension = dimension;
    doc.generators = generators;
    doc.basis = basis;
    for (const auto& r : relations) doc.relations.push_back(parse_relation(r));
    return doc;
  }
};

namespace detail {

inline std::vector<std::string> x_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

inline CatalogEntry w4(std::size_t index, std::size_t rays, std::vector<std::string> rels,
                       std::string type) {
  CatalogEntry e;
  e.name = "W4_" + std::to_string(index);
  e.dimension = 4;
  e.generators = x_names(rays);
  e.relations = std::move(rels);
  e.expected_class = FanoClass::WeakFanoNotFano;
  e.endpoint_type = std::move(type);
  e.description = "weakened Fano 4-fold, item " + std::to_string(index);
  return e;
}

// Pentagon-type fiber relations shared by items 5 to 8.
inline std::vector<std::string> pentagon(std::string last) {
  return {"x5+x6 = 0",  "x3+x7 = 0",  "x2+x3 = x5", "x5+x7 = x2",
          "x2+x6 = x7", std::move(last), "x8+x9 = 2*x1"};
}

inline std::optional<Integer> parse_natural(std::string_view s) {
  if (s.empty() || s.size() > 6) return std::nullopt;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  return Integer(std::string(s));
}

}  // namespace detail

/// X3_0 and the nine weakened Fano 4-folds.
inline const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> v;
    CatalogEntry x;
    x.name = "X3_0";
    x.dimension = 3;
    x.generators = {"e1", "e2", "a1", "a2", "b1", "c1"};
    x.relations = {"e1+a1 = e2", "e2+a2 = 0", "b1+c1 = 2*e1"};
    x.basis = {"e1", "e2", "b1"};
    x.expected_class = FanoClass::WeakFanoNotFano;
    x.description = "weakened Fano 3-fold, an F_1-bundle over P^1";
    v.push_back(std::move(x));
    v.push_back(detail::w4(1, 7, {"x1+x4 = x2", "x2+x3+x5 = 0", "x6+x7 = 2*x1"}, "D7"));
    v.push_back(detail::w4(2, 8, {"x1+x4 = x2", "x2+x6 = 0", "x3+x5 = x2", "x7+x8 = 2*x1"}, "L1"));
    v.push_back(detail::w4(3, 8, {"x1+x4 = x2", "x2+x6 = 0", "x3+x5 = x6", "x7+x8 = 2*x1"}, "L13"));
    v.push_back(detail::w4(4, 8, {"x1+x4 = x2", "x2+x5 = x3", "x3+x6 = 0", "x7+x8 = 2*x1"}, "L2"));
    v.push_back(detail::w4(5, 9, detail::pentagon("x1+x4 = x2"), "Q1"));
    v.push_back(detail::w4(6, 9, detail::pentagon("x1+x4 = x3"), "Q13"));
    v.push_back(detail::w4(7, 9, detail::pentagon("x1+x4 = x5"), "Q8"));
    v.push_back(detail::w4(8, 9, detail::pentagon("x1+x4 = 0"), "Q11"));
    v.push_back(detail::w4(9, 10,
                           {"x5+x8 = 0", "x2+x5 = x3", "x3+x8 = x2", "x3+x6 = x5", "x3+x7 = 0",
                            "x2+x6 = 0", "x6+x8 = x7", "x2+x7 = x8", "x5+x7 = x6", "x1+x4 = x2",
                            "x9+x10 = 2*x1"},
                           "U1"));
    return v;
  }();
  return entries;
}

inline CatalogEntry hirzebruch_entry(const Integer& a) {
  if (a < 0) throw Error(ErrorKind::InvalidInput, "Hirzebruch index must be nonnegative");
  CatalogEntry e;
  e.name = "F" + a.str();
  e.dimension = 2;
  e.generators = {"e1", "a1", "b1", "c1"};
  e.relations = {"e1+a1 = 0", a == 0 ? "b1+c1 = 0" : "b1+c1 = " + (a == 1 ? "" : a.str() + "*") + "e1"};
  e.basis = {"e1", "b1"};
  e.expected_class = a <= 1 ? FanoClass::Fano : a == 2 ? FanoClass::WeakFanoNotFano : FanoClass::NotWeakFano;
  e.description = "Hirzebruch surface";
  return e;
}

inline CatalogEntry projective_entry(std::size_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "projective space needs dimension >= 1");
  CatalogEntry e;
  e.name = "P" + std::to_string(n);
  e.dimension = n;
  e.generators = bundle_e_names(n + 1);
  e.basis = e.generators;
  std::string rel;
  for (const auto& g : e.generators) rel += g + "+";
  e.generators.push_back("a1");
  e.relations = {rel + "a1 = 0"};
  e.expected_class = FanoClass::Fano;
  e.description = "projective space";
  return e;
}

inline CatalogEntry bundle_entry(const BundleSpec& spec) {
  const std::size_t d = spec.dimension();
  if (d < 2) throw Error(ErrorKind::InvalidInput, "bundle needs at least one twist");
  for (const auto& p : spec.twists)
    if (p < 0) throw Error(ErrorKind::InvalidInput, "twists must be nonnegative");
  CatalogEntry e;
  e.dimension = d;
  e.name = "bundle(" + std::to_string(d) + ";";
  for (std::size_t i = 0; i < spec.twists.size(); ++i) e.name += (i ? "," : "") + spec.twists[i].str();
  e.name += ")";
  e.generators = bundle_e_names(d);
  e.basis = e.generators;
  e.basis.push_back("b1");
  std::string fiber, base;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    fiber += e.generators[i] + "+";
    const auto& p = spec.twists[i];
    if (p == 0) continue;
    base += (base.empty() ? "" : " + ") + (p == 1 ? std::string() : p.str() + "*") + e.generators[i];
  }
  e.generators.insert(e.generators.end(), {"a1", "b1", "c1"});
  e.relations = {fiber + "a1 = 0", "b1+c1 = " + (base.empty() ? std::string("0") : base)};
  e.description = "P^" + std::to_string(d - 1) + "-bundle over P^1";
  return e;
}

/// Accepts X3_0, W4_1..W4_9, F<a>, hirzebruch(<a>), P<n>, bundle(<d>;<p>,...).
inline CatalogEntry catalog_entry(std::string_view name) {
  for (const auto& e : catalog_entries())
    if (e.name == name) return e;
  auto inside = [&](std::string_view prefix) -> std::optional<std::string_view> {
    if (name.size() > prefix.size() + 1 && name.substr(0, prefix.size()) == prefix &&
        name[prefix.size()] == '(' && name.back() == ')')
      return name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
    return std::nullopt;
  };
  if (name.size() > 1 && name[0] == 'F')
    if (auto a = detail::parse_natural(name.substr(1))) return hirzebruch_entry(*a);
  if (auto arg = inside("hirzebruch"))
    if (auto a = detail::parse_natural(*arg)) return hirzebruch_entry(*a);
  if (name.size() > 1 && name[0] == 'P')
    if (auto n = detail::parse_natural(name.substr(1)); n && *n >= 1 && *n <= 16)
      return projective_entry(static_cast<std::size_t>(*n));
  if (auto arg = inside("bundle")) {
    auto semi = arg->find(';');
    if (semi != std::string_view::npos) {
      auto d = detail::parse_natural(detail::trim(arg->substr(0, semi)));
      BundleSpec spec;
      bool ok = d.has_value();
      for (auto part : detail::split_on(arg->substr(semi + 1), ',')) {
        auto p = detail::parse_natural(detail::trim(part));
        ok = ok && p.has_value();
        if (p) spec.twists.push_back(*p);
      }
      if (ok && *d == Integer(spec.dimension()) && *d >= 2) return bundle_entry(spec);
    }
  }
  throw Error(ErrorKind::UnknownName, "no built-in fan named '" + std::string(name) + "'");
}

inline Fan builtin(std::string_view name) { return fan_from_document(catalog_entry(name).document()); }

inline Fan hirzebruch(const Integer& a) { return fan_from_document(hirzebruch_entry(a).document()); }

struct StageResult {
  std::string stage;
  bool ok = false;
  std::string detail;
};

struct WeakenedReport {
  std::string name;
  std::vector<StageResult> stages;
  std::optional<Fan> fan;
  std::vector<std::string> relations;
  /// Primitive collections present in the fan but not listed, and listed but absent.
  std::vector<std::string> extra_collections;
  std::vector<std::string> missing_collections;
  std::optional<FanoClass> classification;
  std::size_t splittings_found = 0;
  std::optional<Splitting> splitting;
  std::optional<FiberType> fiber;
  std::vector<std::string> fiber_relations;
  std::optional<Fan> endpoint;
  std::vector<std::string> endpoint_relations;
  std::string endpoint_relation;
  std::optional<FanoClass> endpoint_class;

  bool passed() const {
    return !stages.empty() && std::all_of(stages.begin(), stages.end(), [](const auto& s) { return s.ok; });
  }

  std::string failed_stage() const {
    for (const auto& s : stages)
      if (!s.ok) return s.stage;
    return {};
  }
};

/// "x1,x4" for a set of ray indices.
inline std::string collection_text(const Fan& f, const std::vector<std::size_t>& rays) {
  std::string s;
  for (std::size_t i = 0; i < rays.size(); ++i) s += (i ? "," : "") + f.ray(rays[i]).name;
  return s;
}

/// Checks the combinatorial content of weakened Fano: smooth complete, weak
/// Fano but not Fano, and some normal-form splitting satisfying the endpoint
/// conditions with k = 1 whose endpoint is Fano. Stops at the first failing stage.
inline WeakenedReport verify_weakened(const CatalogEntry& entry) {
  WeakenedReport rep;
  rep.name = entry.name;
  auto stage = [&](std::string name, bool ok, std::string detail = {}) {
    rep.stages.push_back({std::move(name), ok, std::move(detail)});
    return ok;
  };

  const RelationDocument doc = entry.document();
  try {
    rep.fan = fan_from_document(doc);
  } catch (const Error& e) {
    stage("reconstruct", false, e.what());
    return rep;
  }
  stage("reconstruct", true);
  const Fan& f = *rep.fan;
  if (!stage("smooth_complete", is_complete(f), is_complete(f) ? "" : "fan is not complete")) return rep;

  std::set<std::set<std::string>> listed;
  for (const auto& r : doc.relations) listed.emplace(r.lhs.begin(), r.lhs.end());
  std::set<std::set<std::string>> found;
  for (const auto& rel : primitive_relations(f)) {
    rep.relations.push_back(format_relation(f, rel));
    std::set<std::string> names;
    for (auto r : rel.collection) names.insert(f.ray(r).name);
    if (!listed.count(names)) rep.extra_collections.push_back(collection_text(f, rel.collection));
    found.insert(std::move(names));
  }
  for (const auto& c : listed)
    if (!found.count(c)) {
      std::vector<std::size_t> idx;
      for (const auto& n : c) idx.push_back(f.require_ray(n));
      std::sort(idx.begin(), idx.end());
      rep.missing_collections.push_back(collection_text(f, idx));
    }

  rep.classification = classify_fano(f).classification;
  if (!stage("weak_fano_not_fano", *rep.classification == FanoClass::WeakFanoNotFano,
             std::string(to_string(*rep.classification))))
    return rep;

  const auto splittings = find_splittings(f);
  rep.splittings_found = splittings.size();
  std::optional<std::size_t> admissible;
  for (std::size_t i = 0; i < splittings.size(); ++i) {
    const Splitting& s = splittings[i];
    FiberType ft = fiber_type(s);
    if (ft.kind == FiberKind::Other || !theorem_conditions(s, 1).holds()) continue;
    if (!admissible) admissible = i;
    Fan end;
    try {
      end = endpoint(s, 1);
    } catch (const Error&) {
      continue;
    }
    FanoClass cls = classify_fano(end).classification;
    if (cls != FanoClass::Fano) continue;
    admissible = i;
    rep.endpoint = std::move(end);
    rep.endpoint_class = cls;
    break;
  }
  if (!stage("splitting", admissible.has_value(),
             admissible ? "" : std::to_string(splittings.size()) +
                                   " splittings, none with a P^{d-1} or P^1-bundle fiber meeting the conditions at k = 1"))
    return rep;

  const Splitting& s = splittings[*admissible];
  rep.splitting = s;
  rep.fiber = fiber_type(s);
  for (const auto& rel : primitive_relations(s.sigma_tilde))
    rep.fiber_relations.push_back(format_relation(s.sigma_tilde, rel));
  if (!rep.endpoint) {
    try {
      Fan end = endpoint(s, 1);
      rep.endpoint_class = classify_fano(end).classification;
      rep.endpoint = std::move(end);
    } catch (const Error& e) {
      stage("endpoint_fano", false, e.what());
      return rep;
    }
  }
  const std::vector<std::size_t> bc{s.b[0], s.c[0]};
  for (const auto& rel : primitive_relations(*rep.endpoint)) {
    rep.endpoint_relations.push_back(s.format(rel, true));
    if (rel.collection.size() == 2 && mask_of(rel.collection) == mask_of(bc))
      rep.endpoint_relation = rep.endpoint_relations.back();
  }
  stage("endpoint_fano", *rep.endpoint_class == FanoClass::Fano,
        std::string(to_string(*rep.endpoint_class)));
  return rep;
}

}  // namespace toricdef
