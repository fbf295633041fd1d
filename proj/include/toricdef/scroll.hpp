#pragma once

// Projective-space bundles V(p_1, ..., p_{d-1}) over P^1, the k = 1
// reduction step and deformation chains between bundles.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toricdef/deform.hpp"

namespace toricdef {

struct BundleSpec {
  std::vector<Integer> twists;

  std::size_t dimension() const { return twists.size() + 1; }
  bool operator==(const BundleSpec&) const = default;

  Integer sum() const {
    Integer s = 0;
    for (const auto& p : twists) s += p;
    return s;
  }

  Integer max() const {
    Integer m = 0;
    for (const auto& p : twists) m = std::max(m, p);
    return m;
  }

  /// Twists sorted in descending order.
  BundleSpec sorted() const {
    BundleSpec s = *this;
    std::sort(s.twists.begin(), s.twists.end(), std::greater<>());
    return s;
  }
};

inline std::string to_string(const BundleSpec& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.twists.size(); ++i) out += (i ? "," : "") + s.twists[i].str();
  return out + ")";
}

inline std::vector<std::string> bundle_e_names(std::size_t d) {
  std::vector<std::string> e;
  for (std::size_t i = 1; i < d; ++i) e.push_back("e" + std::to_string(i));
  return e;
}

/// Fan of V(p) from its two primitive relations
///   e_1 + ... + e_{d-1} + a_1 = 0,   b_1 + c_1 = p_1 e_1 + ... + p_{d-1} e_{d-1}
/// with {e_1, ..., e_{d-1}, b_1} as the standard basis.
inline Fan bundle_fan(const BundleSpec& spec) {
  const std::size_t d = spec.dimension();
  if (d < 2) throw Error(ErrorKind::PreconditionViolated, "a bundle needs at least one twist");
  for (const auto& p : spec.twists)
    if (p < 0) throw Error(ErrorKind::PreconditionViolated, "twists must be nonnegative");
  auto gens = bundle_e_names(d);
  RelationSpec fiber{gens, {}};
  fiber.lhs.push_back("a1");
  RelationSpec base{{"b1", "c1"}, {}};
  for (std::size_t i = 0; i + 1 < d; ++i)
    if (spec.twists[i] != 0) base.rhs.emplace_back(spec.twists[i], gens[i]);
  auto basis = gens;
  basis.push_back("b1");
  gens.insert(gens.end(), {"a1", "b1", "c1"});
  return fan_from_relations(d, gens, {fiber, base}, basis);
}

/// The canonical splitting of bundle_fan(spec): b_1 above, c_1 below, fiber
/// pair (e_1, a_1).
inline Splitting bundle_splitting(const Fan& f, std::size_t d) {
  return make_splitting(f, "b1", "c1", bundle_e_names(d), "a1");
}

struct ReduceStep {
  /// Input twists sorted descending.
  BundleSpec input;
  /// Number of nonzero twists.
  std::size_t l = 0;
  /// True for the l = d-1 branch of the formula.
  bool last_branch = false;
  /// b_1 + c'_1 relation of the endpoint, read off the fan and predicted by
  /// the two-branch formula; coefficients keyed by label ("e1", "a1").
  std::map<std::string, Integer> computed;
  std::map<std::string, Integer> expected;
  std::string computed_text;
  std::string expected_text;
  bool matches = false;
  Fan fan;
  /// The endpoint re-presented as a bundle.
  BundleSpec next;
};

namespace detail {

inline std::string bundle_relation_text(const std::map<std::string, Integer>& coeffs, std::size_t d) {
  std::string s = "b1+c'1 = ";
  bool any = false;
  auto term = [&](const std::string& name) {
    auto it = coeffs.find(name);
    if (it == coeffs.end() || it->second == 0) return;
    if (any) s += " + ";
    if (it->second != 1) s += it->second.str() + "*";
    s += name;
    any = true;
  };
  for (const auto& e : bundle_e_names(d)) term(e);
  term("a1");
  return any ? s : s + "0";
}

}  // namespace detail

/// One deformation with k = 1 (shear q = (2, 1, ..., 1)); requires some
/// twist >= 2. The endpoint's b_1 + c'_1 relation is compared against
///   (p_1-1) e_1 + p_2 e_2 + ... + p_l e_l + a_1         if l < d-1
///   (p_1-2) e_1 + (p_2-1) e_2 + ... + (p_l-1) e_l       if l = d-1.
inline ReduceStep reduce_step(const BundleSpec& spec) {
  ReduceStep step;
  step.input = spec.sorted();
  const std::size_t d = spec.dimension();
  if (d < 2 || step.input.twists.front() < 2)
    throw Error(ErrorKind::PreconditionViolated, "reduction needs a twist of at least 2, got " +
                                                      to_string(spec));
  const auto& p = step.input.twists;
  for (const auto& x : p)
    if (x > 0) ++step.l;
  step.last_branch = step.l == d - 1;

  const Fan base = bundle_fan(step.input);
  const Splitting s = bundle_splitting(base, d);
  step.fan = endpoint(s, 1);

  const std::vector<std::size_t> pair{base.require_ray("b1"), base.require_ray("c1")};
  const PrimitiveRelation rel = primitive_relation(step.fan, pair);
  for (const auto& [r, c] : rel.support) {
    std::string name = s.label(r);
    if (name[0] != 'e' && name != "a1")
      throw Error(ErrorKind::InternalError, "unexpected ray " + name + " in the reduced relation");
    step.computed[name] = c;
  }
  const auto names = bundle_e_names(d);
  for (std::size_t i = 0; i < step.l; ++i) {
    Integer c = p[i] - (step.last_branch ? 1 : 0) - (i == 0 ? 1 : 0);
    if (c != 0) step.expected[names[i]] = c;
  }
  if (!step.last_branch) step.expected["a1"] = 1;
  step.computed_text = s.format(rel, true);
  step.expected_text = detail::bundle_relation_text(step.expected, d);
  step.matches = step.computed == step.expected;

  // Any fiber ray can play a_1; the one with the smallest coefficient keeps
  // every twist nonnegative.
  std::vector<Integer> fiber;
  for (const auto& n : names) fiber.push_back(step.computed.count(n) ? step.computed.at(n) : Integer(0));
  fiber.push_back(step.computed.count("a1") ? step.computed.at("a1") : Integer(0));
  const Integer low = *std::min_element(fiber.begin(), fiber.end());
  for (auto& x : fiber) x -= low;
  fiber.erase(std::min_element(fiber.begin(), fiber.end()));
  step.next = BundleSpec{std::move(fiber)}.sorted();
  return step;
}

/// Repeated reduce_step down to twists in {0, 1}; the first entry is the
/// sorted input.
inline std::vector<BundleSpec> descent(const BundleSpec& spec) {
  std::vector<BundleSpec> out{spec.sorted()};
  while (out.back().max() >= 2) out.push_back(reduce_step(out.back()).next);
  return out;
}

inline bool congruent(const BundleSpec& x, const BundleSpec& y) {
  const Integer d = static_cast<long long>(x.dimension());
  Integer r = (x.sum() - y.sum()) % d;
  return r == 0;
}

struct DeformationChain {
  std::vector<BundleSpec> specs;
  std::vector<Fan> fans;
  /// forward[i]: specs[i+1] is the reduce_step of specs[i]; otherwise the
  /// reverse holds.
  std::vector<bool> forward;
};

/// Chain of bundles joining `from` and `to` when their twist sums agree mod d:
/// descend from both ends to the {0,1} normal form and splice.
inline std::optional<DeformationChain> deformation_chain(const BundleSpec& from, const BundleSpec& to) {
  if (from.dimension() != to.dimension())
    throw Error(ErrorKind::InvalidInput, "bundles " + to_string(from) + " and " + to_string(to) +
                                             " have different dimensions");
  if (!congruent(from, to)) return std::nullopt;
  auto down = descent(from);
  auto up = descent(to);
  if (down.back() != up.back())
    throw Error(ErrorKind::InternalError, "descents end at " + to_string(down.back()) + " and " +
                                              to_string(up.back()));
  DeformationChain chain;
  chain.specs = down;
  for (std::size_t i = 0; i + 1 < down.size(); ++i) chain.forward.push_back(true);
  for (std::size_t i = up.size() - 1; i-- > 0;) {
    chain.specs.push_back(up[i]);
    chain.forward.push_back(false);
  }
  for (const auto& s : chain.specs) chain.fans.push_back(bundle_fan(s));
  return chain;
}

}  // namespace toricdef
