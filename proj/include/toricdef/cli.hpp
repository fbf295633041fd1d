#pragma once

// Command-line front end. Exit status: 0 when every asserted property holds,
// 1 when a mathematical check fails, 2 on bad input.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "toricdef/catalog.hpp"
#include "toricdef/report.hpp"

namespace toricdef::cli {

struct Outcome {
  Json report;
  int status = 0;
};

inline bool is_input_error(ErrorKind k) {
  return k == ErrorKind::ParseError || k == ErrorKind::InvalidInput || k == ErrorKind::UnknownName ||
         k == ErrorKind::DimensionMismatch;
}

namespace detail {

inline Json start(const std::string& command) {
  Json j;
  j["command"] = command;
  return j;
}

inline Outcome finish(Json j, bool ok) {
  j["status"] = ok ? "ok" : "failed";
  return {std::move(j), ok ? 0 : 1};
}

inline BundleSpec parse_twists(const std::string& text, std::size_t d) {
  BundleSpec spec;
  for (auto part : toricdef::detail::split_on(text, ',')) {
    auto tok = toricdef::detail::trim(part);
    Integer v = toricdef::detail::parse_integer(tok, 0);
    if (v < 0) throw Error(ErrorKind::InvalidInput, "twists must be nonnegative: '" + text + "'");
    spec.twists.push_back(v);
  }
  if (spec.dimension() != d)
    throw Error(ErrorKind::InvalidInput, "'" + text + "' needs " + std::to_string(d - 1) +
                                             " comma-separated twists for dimension " + std::to_string(d));
  return spec;
}

inline std::string q_text(const std::vector<Integer>& q) {
  std::string s = "(";
  for (std::size_t i = 0; i < q.size(); ++i) s += (i ? "," : "") + q[i].str();
  return s + ")";
}

}  // namespace detail

inline Outcome cmd_check(const std::string& path) {
  Json j = detail::start("check");
  const Fan f = read_fan_file(path);
  j["file"] = path;
  j["dimension"] = f.dimension();
  j["rays"] = f.rays().size();
  j["max_cones"] = f.max_cones().size();
  j["smooth"] = true;
  const bool complete = is_complete(f);
  j["complete"] = complete;
  if (!complete) {
    j["picard_rank"] = "unknown";
    j["classification"] = "unknown";
    j["anticanonical"] = "unknown";
    j["relations"] = Json::array();
    j["degrees"] = Json::array();
    j["ray_classes"] = Json::object();
    return detail::finish(std::move(j), false);
  }
  const auto classes = class_group(f);
  const auto fano = classify_fano(f);
  j["picard_rank"] = classes.picard_rank;
  j["classification"] = std::string(to_string(fano.classification));
  j["anticanonical"] = std::string(to_string(fano.anticanonical));
  j["relations"] = relation_strings(fano.relations, f);
  Json degrees = Json::array();
  for (const auto& d : fano.degrees) degrees.push_back(json_integer(d));
  j["degrees"] = std::move(degrees);
  Json ray_classes = Json::object();
  for (std::size_t r = 0; r < f.rays().size(); ++r) ray_classes[f.ray(r).name] = to_string(classes.class_of_ray(r));
  j["ray_classes"] = std::move(ray_classes);
  return detail::finish(std::move(j), true);
}

inline Outcome cmd_relations(const std::string& path) {
  Json j = detail::start("relations");
  const Fan f = read_fan_file(path);
  j["file"] = path;
  const bool complete = is_complete(f);
  j["complete"] = complete;
  j["relations"] = complete ? relations_json(f) : Json::array();
  return detail::finish(std::move(j), complete);
}

inline Outcome cmd_split(const std::string& path) {
  Json j = detail::start("split");
  const Fan f = read_fan_file(path);
  j["file"] = path;
  const bool complete = is_complete(f);
  j["complete"] = complete;
  Json list = Json::array();
  std::size_t count = 0;
  if (complete) {
    const auto splittings = find_splittings(f);
    count = splittings.size();
    for (std::size_t i = 0; i < splittings.size(); ++i) list.push_back(splitting_json(splittings[i], i));
  }
  j["count"] = count;
  j["splittings"] = std::move(list);
  return detail::finish(std::move(j), complete);
}

inline Outcome cmd_deform(const std::string& path, long long k, std::optional<std::size_t> index,
                          const std::string& out_path) {
  if (k < 0) throw Error(ErrorKind::InvalidInput, "--k must be nonnegative");
  Json j = detail::start("deform");
  const Fan f = read_fan_file(path);
  j["file"] = path;
  j["k"] = k;
  if (!is_complete(f)) throw Error(ErrorKind::PreconditionViolated, "fan is not complete");
  const auto splittings = find_splittings(f);
  if (splittings.empty())
    throw Error(ErrorKind::ConditionsNotSatisfied, "fan admits no normal-form splitting");
  std::size_t chosen = 0;
  if (index) {
    if (*index >= splittings.size())
      throw Error(ErrorKind::InvalidInput, "--splitting " + std::to_string(*index) + " out of range (" +
                                               std::to_string(splittings.size()) + " splittings)");
    chosen = *index;
  } else {
    for (std::size_t i = 0; i < splittings.size(); ++i)
      if (fiber_type(splittings[i]).kind != FiberKind::Other && theorem_conditions(splittings[i], k).holds()) {
        chosen = i;
        break;
      }
  }
  const Splitting& s = splittings[chosen];
  j["splitting"] = splitting_json(s, chosen);
  const auto cond = theorem_conditions(s, k);
  j["conditions"] = conditions_json(cond);
  j["q"] = detail::q_text(endpoint_shear(s, k));
  std::optional<Fan> end;
  try {
    end = endpoint(s, k);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ConditionsNotSatisfied && e.kind() != ErrorKind::ResultNotAFan) throw;
    j["error"] = e.what();
  }
  if (!end) {
    j["endpoint_class"] = "none";
    j["endpoint_relations"] = Json::array();
    j["output"] = "none";
    return detail::finish(std::move(j), false);
  }
  j["endpoint_class"] = std::string(to_string(classify_fano(*end).classification));
  Json rels = Json::array();
  for (const auto& rel : primitive_relations(*end)) rels.push_back(s.format(rel, true));
  j["endpoint_relations"] = std::move(rels);
  if (out_path.empty()) {
    j["output"] = "stdout";
    j["endpoint_fan"] = fan_json(*end);
  } else {
    write_text_file(out_path, serialize_fan(*end));
    j["output"] = out_path;
  }
  return detail::finish(std::move(j), true);
}

inline Outcome cmd_iso(const std::string& p1, const std::string& p2) {
  Json j = detail::start("iso");
  const Fan f1 = read_fan_file(p1);
  const Fan f2 = read_fan_file(p2);
  j["first"] = p1;
  j["second"] = p2;
  auto map = fan_isomorphism(f1, f2);
  j["isomorphic"] = map.has_value();
  Json matrix = Json::array();
  Json rays = Json::array();
  if (map) {
    for (std::size_t r = 0; r < map->dimension(); ++r) matrix.push_back(to_string(map->matrix().row(r)));
    auto corr = ray_correspondence(f1, f2, *map);
    for (std::size_t r = 0; r < corr.size(); ++r)
      rays.push_back(f1.ray(r).name + " -> " + f2.ray(corr[r]).name);
  }
  j["matrix"] = std::move(matrix);
  j["ray_map"] = std::move(rays);
  return detail::finish(std::move(j), map.has_value());
}

inline Outcome cmd_chain(std::size_t d, const std::string& from_text, const std::string& to_text) {
  if (d < 2) throw Error(ErrorKind::InvalidInput, "--dim must be at least 2");
  Json j = detail::start("chain");
  const BundleSpec from = detail::parse_twists(from_text, d);
  const BundleSpec to = detail::parse_twists(to_text, d);
  j["dim"] = d;
  j["from"] = to_string(from);
  j["to"] = to_string(to);
  const bool ok = congruent(from, to);
  j["congruence"] = from.sum().str() + (ok ? " ≡ " : " ≠ ") + to.sum().str() + " (mod " + std::to_string(d) + ")";
  auto chain = deformation_chain(from, to);
  j["exists"] = chain.has_value();
  Json specs = Json::array();
  if (chain)
    for (const auto& s : chain->specs) specs.push_back(to_string(s));
  j["length"] = chain ? chain->specs.size() : 0;
  j["bundles"] = std::move(specs);
  j["steps"] = chain ? chain_json(*chain) : Json::array();
  return detail::finish(std::move(j), chain.has_value());
}

inline Outcome cmd_catalog_list() {
  Json j = detail::start("catalog list");
  Json list = Json::array();
  for (const auto& e : catalog_entries()) {
    Json item;
    item["name"] = e.name;
    item["dimension"] = e.dimension;
    item["rays"] = e.generators.size();
    item["endpoint_type"] = e.endpoint_type.empty() ? "none" : e.endpoint_type;
    list.push_back(std::move(item));
  }
  j["entries"] = std::move(list);
  j["also"] = "F<a>, hirzebruch(<a>), P<n>, bundle(<d>;<p1>,...)";
  return detail::finish(std::move(j), true);
}

inline Outcome cmd_catalog_show(const std::string& name) {
  Json j = detail::start("catalog show");
  const CatalogEntry e = catalog_entry(name);
  j["entry"] = entry_json(e);
  const Fan f = fan_from_document(e.document());
  j["classification"] = std::string(to_string(classify_fano(f).classification));
  j["computed_relations"] = relation_strings(primitive_relations(f), f);
  j["fan"] = fan_json(f);
  return detail::finish(std::move(j), true);
}

inline Outcome cmd_catalog_verify(const std::string& name) {
  Json j = detail::start("catalog verify");
  std::vector<CatalogEntry> entries;
  if (name == "all")
    entries = catalog_entries();
  else
    entries.push_back(catalog_entry(name));
  std::size_t passed = 0;
  if (entries.size() == 1) {
    const auto r = verify_weakened(entries[0]);
    passed = r.passed();
    const Json fields = weakened_json(r);
    for (const auto& [k, v] : fields.items()) j[k] = v;
  } else {
    Json results = Json::array();
    for (const auto& e : entries) {
      const auto r = verify_weakened(e);
      passed += r.passed();
      results.push_back(weakened_json(r));
    }
    j["results"] = std::move(results);
  }
  j["passed_count"] = passed;
  j["total"] = entries.size();
  return detail::finish(std::move(j), passed == entries.size());
}

inline Outcome cmd_fromrel(const std::string& path, const std::string& out_path) {
  Json j = detail::start("fromrel");
  const RelationDocument doc = parse_relation_document(read_text_file(path));
  const Fan f = fan_from_document(doc);
  j["file"] = path;
  j["dimension"] = f.dimension();
  j["rays"] = f.rays().size();
  j["max_cones"] = f.max_cones().size();
  j["complete"] = is_complete(f);
  if (out_path.empty()) {
    j["output"] = "stdout";
    j["fan"] = fan_json(f);
  } else {
    write_text_file(out_path, serialize_fan(f));
    j["output"] = out_path;
  }
  return detail::finish(std::move(j), true);
}

/// Runs one command line (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact deformation calculus for smooth complete toric fans", "toricdef"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "Emit a JSON object instead of key: value lines");

  std::string file, file2, out_path, name = "all", from, to;
  long long k = 0;
  std::size_t dim = 0, index = 0;

  auto* check = app.add_subcommand("check", "Smoothness, completeness, Fano class and primitive relations");
  check->add_option("fanfile", file)->required();
  auto* relations = app.add_subcommand("relations", "Primitive relations with degrees");
  relations->add_option("fanfile", file)->required();
  auto* split = app.add_subcommand("split", "Normal-form splittings along fibrations over P^1");
  split->add_option("fanfile", file)->required();
  auto* deform = app.add_subcommand("deform", "Endpoint of the one-parameter family");
  deform->add_option("fanfile", file)->required();
  deform->add_option("--k", k, "Family parameter")->required();
  auto* split_opt = deform->add_option("--splitting", index, "Splitting index as listed by 'split'");
  deform->add_option("-o,--out", out_path, "Write the endpoint fan file here");
  auto* iso = app.add_subcommand("iso", "Decide whether two fans are isomorphic");
  iso->add_option("first", file)->required();
  iso->add_option("second", file2)->required();
  auto* chain = app.add_subcommand("chain", "Deformation chain between projective-space bundles");
  chain->add_option("--dim", dim, "Dimension d")->required();
  chain->add_option("--from", from, "Twists p1,...,p_{d-1}")->required();
  chain->add_option("--to", to, "Twists p'1,...,p'_{d-1}")->required();
  auto* catalog = app.add_subcommand("catalog", "Built-in examples");
  catalog->require_subcommand(1);
  auto* list = catalog->add_subcommand("list", "List catalog entries");
  auto* show = catalog->add_subcommand("show", "Show one entry");
  show->add_option("name", name)->required();
  auto* verify = catalog->add_subcommand("verify", "Verify the weakened Fano pipeline");
  verify->add_option("name", name, "Entry name or 'all'");
  auto* fromrel = app.add_subcommand("fromrel", "Build a fan file from a relation file");
  fromrel->add_option("relfile", file)->required();
  fromrel->add_option("-o,--out", out_path, "Write the fan file here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    Outcome o;
    if (check->parsed())
      o = cmd_check(file);
    else if (relations->parsed())
      o = cmd_relations(file);
    else if (split->parsed())
      o = cmd_split(file);
    else if (deform->parsed())
      o = cmd_deform(file, k, split_opt->count() ? std::optional<std::size_t>(index) : std::nullopt, out_path);
    else if (iso->parsed())
      o = cmd_iso(file, file2);
    else if (chain->parsed())
      o = cmd_chain(dim, from, to);
    else if (list->parsed())
      o = cmd_catalog_list();
    else if (show->parsed())
      o = cmd_catalog_show(name);
    else if (verify->parsed())
      o = cmd_catalog_verify(name);
    else
      o = cmd_fromrel(file, out_path);
    if (json)
      out << o.report.dump(2) << '\n';
    else
      render_text(o.report, out);
    return o.status;
  } catch (const Error& e) {
    const int status = is_input_error(e.kind()) ? 2 : 1;
    err << "error: " << e.what() << '\n';
    if (json) {
      Json j = detail::start(command);
      j["error"] = std::string(to_string(e.kind()));
      j["message"] = e.what();
      j["status"] = "error";
      out << j.dump(2) << '\n';
    }
    return status;
  }
}

}  // namespace toricdef::cli
