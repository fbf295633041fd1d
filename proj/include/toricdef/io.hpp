#pragma once

// Text formats.
//
// Fan file:
//   dim <d>
//   ray <name> <i_1> ... <i_d>
//   cone <name> ... <name>
//
// Relation file:
//   dim <d>
//   gens <name> ...
//   rel <name>+<name>+... = <k>*<name> + ...      (or "= 0")
//   basis <name> ... <name>                       (optional)
//
// '#' starts a comment; blank lines are ignored.

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "toricdef/fan.hpp"

namespace toricdef {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

inline std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  return out;
}

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + msg);
}

inline Integer parse_integer(std::string_view tok, std::size_t line) {
  std::string_view digits = tok;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty() ||
      !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    parse_fail(line, "expected an integer, got '" + std::string(tok) + "'");
  if (tok.front() == '+') tok.remove_prefix(1);
  return Integer(std::string(tok));
}

inline bool valid_name(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name)
    if (std::isspace(static_cast<unsigned char>(c)) || c == '+' || c == '=' || c == '*' || c == '#')
      return false;
  return !std::isdigit(static_cast<unsigned char>(name.front())) && name.front() != '-';
}

inline std::size_t parse_size(std::string_view tok, std::size_t line) {
  Integer v = parse_integer(tok, line);
  if (v < 1 || v > 64) parse_fail(line, "dimension out of range");
  return static_cast<std::size_t>(v);
}

// Lines with comments stripped; pairs of (line number, content).
inline std::vector<std::pair<std::size_t, std::string>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::size_t number = 0;
  for (auto raw : split_on(text, '\n')) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    raw = trim(raw);
    if (!raw.empty()) out.emplace_back(number, std::string(raw));
  }
  return out;
}

}  // namespace detail

inline Fan parse_fan(std::string_view text) {
  std::optional<std::size_t> dim;
  std::vector<Ray> rays;
  std::vector<std::vector<std::string>> cones;
  for (const auto& [line, content] : detail::content_lines(text)) {
    auto tok = detail::split_ws(content);
    const std::string& kw = tok[0];
    if (kw == "dim") {
      if (dim) detail::parse_fail(line, "duplicate 'dim'");
      if (tok.size() != 2) detail::parse_fail(line, "'dim' takes one integer");
      dim = detail::parse_size(tok[1], line);
    } else if (kw == "ray") {
      if (!dim) detail::parse_fail(line, "'ray' before 'dim'");
      if (tok.size() != *dim + 2)
        detail::parse_fail(line, "'ray' needs a name and " + std::to_string(*dim) + " coordinates");
      if (!detail::valid_name(tok[1])) detail::parse_fail(line, "invalid ray name '" + tok[1] + "'");
      std::vector<Integer> coords;
      for (std::size_t i = 2; i < tok.size(); ++i) coords.push_back(detail::parse_integer(tok[i], line));
      rays.push_back({tok[1], LatticeVector(std::move(coords))});
    } else if (kw == "cone") {
      if (!dim) detail::parse_fail(line, "'cone' before 'dim'");
      if (tok.size() != *dim + 1)
        detail::parse_fail(line, "'cone' needs " + std::to_string(*dim) + " ray names");
      for (std::size_t i = 1; i < tok.size(); ++i) {
        bool known = std::any_of(rays.begin(), rays.end(), [&](const Ray& r) { return r.name == tok[i]; });
        if (!known) detail::parse_fail(line, "unknown ray '" + tok[i] + "'");
      }
      cones.emplace_back(tok.begin() + 1, tok.end());
    } else {
      detail::parse_fail(line, "unknown keyword '" + kw + "'");
    }
  }
  if (!dim) throw Error(ErrorKind::ParseError, "missing 'dim' line");
  return make_fan(*dim, std::move(rays), cones);
}

/// Canonical form: rays in fan order, cone members in ray order, single spaces.
inline std::string serialize_fan(const Fan& f) {
  std::ostringstream os;
  os << "dim " << f.dimension() << '\n';
  for (const auto& r : f.rays()) {
    os << "ray " << r.name;
    for (const auto& x : r.generator) os << ' ' << x;
    os << '\n';
  }
  for (const auto& c : f.max_cones()) {
    os << "cone";
    for (auto r : c.rays()) os << ' ' << f.ray(r).name;
    os << '\n';
  }
  return os.str();
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorKind::InvalidInput, "failed writing '" + path + "'");
}

inline Fan read_fan_file(const std::string& path) { return parse_fan(read_text_file(path)); }

/// Parses "x1+x4 = x2", "x2+x3+x5 = 0", "x6+x7 = 2*x1 + x3".
inline RelationSpec parse_relation(std::string_view text, std::size_t line = 0) {
  auto sides = detail::split_on(text, '=');
  if (sides.size() != 2) detail::parse_fail(line, "relation needs exactly one '='");
  RelationSpec rel;
  for (auto term : detail::split_on(sides[0], '+')) {
    term = detail::trim(term);
    if (!detail::valid_name(term)) detail::parse_fail(line, "invalid name '" + std::string(term) + "'");
    rel.lhs.emplace_back(term);
  }
  auto rhs = detail::trim(sides[1]);
  if (rhs.empty()) detail::parse_fail(line, "empty right-hand side");
  if (rhs == "0") return rel;
  for (auto term : detail::split_on(rhs, '+')) {
    term = detail::trim(term);
    Integer k = 1;
    auto star = term.find('*');
    if (star != std::string_view::npos) {
      k = detail::parse_integer(detail::trim(term.substr(0, star)), line);
      term = detail::trim(term.substr(star + 1));
      if (k <= 0) detail::parse_fail(line, "coefficients must be positive");
    }
    if (!detail::valid_name(term)) detail::parse_fail(line, "invalid name '" + std::string(term) + "'");
    rel.rhs.emplace_back(k, std::string(term));
  }
  return rel;
}

inline std::string format_relation_spec(const RelationSpec& rel) {
  std::string s;
  for (std::size_t i = 0; i < rel.lhs.size(); ++i) s += (i ? "+" : "") + rel.lhs[i];
  s += " = ";
  if (rel.rhs.empty()) return s + "0";
  for (std::size_t i = 0; i < rel.rhs.size(); ++i) {
    if (i) s += " + ";
    if (rel.rhs[i].first != 1) s += rel.rhs[i].first.str() + "*";
    s += rel.rhs[i].second;
  }
  return s;
}

struct RelationDocument {
  std::size_t dimension = 0;
  std::vector<std::string> generators;
  std::vector<RelationSpec> relations;
  /// Empty when the file gives no 'basis' line.
  std::vector<std::string> basis;
};

inline RelationDocument parse_relation_document(std::string_view text) {
  RelationDocument doc;
  bool have_dim = false, have_gens = false;
  for (const auto& [line, content] : detail::content_lines(text)) {
    auto tok = detail::split_ws(content);
    const std::string& kw = tok[0];
    if (kw == "dim") {
      if (have_dim) detail::parse_fail(line, "duplicate 'dim'");
      if (tok.size() != 2) detail::parse_fail(line, "'dim' takes one integer");
      doc.dimension = detail::parse_size(tok[1], line);
      have_dim = true;
    } else if (kw == "gens") {
      if (have_gens) detail::parse_fail(line, "duplicate 'gens'");
      for (std::size_t i = 1; i < tok.size(); ++i) {
        if (!detail::valid_name(tok[i])) detail::parse_fail(line, "invalid name '" + tok[i] + "'");
        doc.generators.push_back(tok[i]);
      }
      have_gens = true;
    } else if (kw == "rel") {
      if (!have_gens) detail::parse_fail(line, "'rel' before 'gens'");
      auto body = detail::trim(std::string_view(content).substr(3));
      RelationSpec rel = parse_relation(body, line);
      auto check = [&](const std::string& n) {
        if (std::find(doc.generators.begin(), doc.generators.end(), n) == doc.generators.end())
          detail::parse_fail(line, "unknown generator '" + n + "'");
      };
      for (const auto& n : rel.lhs) check(n);
      for (const auto& [k, n] : rel.rhs) check(n);
      doc.relations.push_back(std::move(rel));
    } else if (kw == "basis") {
      if (!doc.basis.empty()) detail::parse_fail(line, "duplicate 'basis'");
      doc.basis.assign(tok.begin() + 1, tok.end());
      if (doc.basis.empty()) detail::parse_fail(line, "'basis' needs generator names");
    } else {
      detail::parse_fail(line, "unknown keyword '" + kw + "'");
    }
  }
  if (!have_dim) throw Error(ErrorKind::ParseError, "missing 'dim' line");
  if (!have_gens) throw Error(ErrorKind::ParseError, "missing 'gens' line");
  return doc;
}

inline std::string serialize_relation_document(const RelationDocument& doc) {
  std::ostringstream os;
  os << "dim " << doc.dimension << "\ngens";
  for (const auto& g : doc.generators) os << ' ' << g;
  os << '\n';
  for (const auto& r : doc.relations) os << "rel " << format_relation_spec(r) << '\n';
  if (!doc.basis.empty()) {
    os << "basis";
    for (const auto& b : doc.basis) os << ' ' << b;
    os << '\n';
  }
  return os.str();
}

inline Fan fan_from_document(const RelationDocument& doc) {
  if (doc.basis.empty()) return fan_from_relations(doc.dimension, doc.generators, doc.relations);
  return fan_from_relations(doc.dimension, doc.generators, doc.relations, doc.basis);
}

}  // namespace toricdef
