#pragma once

#include <string>
#include <utility>
#include <vector>

#include "toricdef/catalog.hpp"
#include "toricdef/scroll.hpp"

namespace support {

using toricdef::Fan;
using toricdef::Integer;

struct NamedFan {
  std::string name;
  Fan fan;
};

inline Fan fan_of(std::size_t d, const std::vector<std::pair<std::string, std::vector<long long>>>& rays,
                  const std::vector<std::vector<std::string>>& cones) {
  std::vector<toricdef::Ray> rs;
  for (const auto& [n, v] : rays) {
    std::vector<Integer> g(v.begin(), v.end());
    rs.push_back({n, toricdef::LatticeVector(std::move(g))});
  }
  return toricdef::make_fan(d, std::move(rs), cones);
}

inline Fan p1() { return fan_of(1, {{"e1", {1}}, {"a1", {-1}}}, {{"e1"}, {"a1"}}); }

inline Fan p2() {
  return fan_of(2, {{"e1", {1, 0}}, {"e2", {0, 1}}, {"a1", {-1, -1}}},
                {{"e1", "e2"}, {"e2", "a1"}, {"e1", "a1"}});
}

inline toricdef::BundleSpec spec(std::vector<long long> p) {
  toricdef::BundleSpec s;
  for (auto x : p) s.twists.push_back(x);
  return s;
}

/// Every twist vector of length n with entries in [0, hi].
inline std::vector<toricdef::BundleSpec> all_specs(std::size_t n, long long hi) {
  std::vector<toricdef::BundleSpec> out;
  std::vector<long long> p(n, 0);
  while (true) {
    out.push_back(spec(p));
    std::size_t i = 0;
    while (i < n && p[i] == hi) p[i++] = 0;
    if (i == n) break;
    ++p[i];
  }
  return out;
}

/// Catalog entries, Hirzebruch surfaces F_0..F_8, P^1..P^4 and the bundles
/// for d in {2,3,4} with twists up to 4.
inline std::vector<NamedFan> corpus() {
  std::vector<NamedFan> out;
  for (const auto& e : toricdef::catalog_entries())
    out.push_back({e.name, toricdef::fan_from_document(e.document())});
  for (int a = 0; a <= 8; ++a) out.push_back({"F" + std::to_string(a), toricdef::hirzebruch(a)});
  for (int n = 1; n <= 4; ++n) out.push_back({"P" + std::to_string(n), toricdef::builtin("P" + std::to_string(n))});
  for (std::size_t d = 3; d <= 4; ++d)
    for (const auto& s : all_specs(d - 1, 4))
      out.push_back({"V" + toricdef::to_string(s), toricdef::bundle_fan(s)});
  return out;
}

/// Rebuilds a fan from its own primitive relations, with the greedy basis.
inline Fan from_own_relations(const Fan& f) {
  std::vector<std::string> names;
  for (const auto& r : f.rays()) names.push_back(r.name);
  std::vector<toricdef::RelationSpec> specs;
  for (const auto& rel : toricdef::primitive_relations(f)) {
    toricdef::RelationSpec s;
    for (auto i : rel.collection) s.lhs.push_back(names[i]);
    for (const auto& [i, c] : rel.support) s.rhs.emplace_back(c, names[i]);
    specs.push_back(std::move(s));
  }
  return toricdef::fan_from_relations(f.dimension(), names, specs);
}

}  // namespace support
