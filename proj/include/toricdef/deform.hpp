#pragma once

// Fibrations of a fan over P^1, their normal-form splittings into upper,
// lower and fiber parts, the lower-half shear q^-Sigma, and the endpoint of
// the one-parameter family.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "toricdef/divisor.hpp"
#include "toricdef/fan.hpp"

namespace toricdef {

/// A lattice projection N -> Z carrying the fan onto the fan of P^1, with
/// `upper` mapped to 1 and `lower` to -1.
struct Fibration {
  std::size_t upper = 0;
  std::size_t lower = 0;
  LatticeVector functional;
  /// Cones lying in the kernel, as a complete fan of dimension d-1.
  Fan fiber;
  /// fiber ray index -> ray index in the total fan.
  std::vector<std::size_t> fiber_rays;
  /// Number of rays off the kernel hyperplane.
  std::size_t off_kernel = 0;
};

namespace detail {

inline std::optional<Fibration> fibration_from(const Fan& f, std::size_t upper, std::size_t lower,
                                               std::size_t cone, const LatticeVector& phi) {
  if (dot(phi, f.generator(lower)) != -1) return std::nullopt;
  RaySet kernel = 0;
  for (std::size_t r = 0; r < f.rays().size(); ++r)
    if (dot(phi, f.generator(r)) == 0) kernel |= ray_bit(r);
  for (const auto& c : f.max_cones()) {
    bool pos = false, neg = false;
    for (auto r : c.rays()) {
      Integer v = dot(phi, f.generator(r));
      pos = pos || v > 0;
      neg = neg || v < 0;
    }
    if (pos && neg) return std::nullopt;
  }
  const std::size_t d = f.dimension();
  const std::size_t drop = f.max_cones()[cone].position(upper);
  Fibration fib;
  fib.upper = upper;
  fib.lower = lower;
  fib.functional = phi;
  fib.fiber_rays = indices_of(kernel);
  fib.off_kernel = f.rays().size() - fib.fiber_rays.size();
  std::vector<Ray> rays;
  for (auto r : fib.fiber_rays) {
    LatticeVector c = f.coordinates_in(cone, f.generator(r));
    std::vector<Integer> kept;
    for (std::size_t i = 0; i < d; ++i)
      if (i != drop) kept.push_back(c[i]);
    rays.push_back({f.ray(r).name, LatticeVector(std::move(kept))});
  }
  std::set<RaySet> seen;
  std::vector<Cone> cones;
  for (const auto& c : f.max_cones()) {
    RaySet m = c.mask() & kernel;
    if (static_cast<std::size_t>(std::popcount(m)) != d - 1 || !seen.insert(m).second) continue;
    std::vector<std::size_t> idx;
    for (auto r : indices_of(m))
      idx.push_back(static_cast<std::size_t>(
          std::lower_bound(fib.fiber_rays.begin(), fib.fiber_rays.end(), r) - fib.fiber_rays.begin()));
    cones.emplace_back(std::move(idx));
  }
  if (cones.empty()) return std::nullopt;
  try {
    fib.fiber = make_fan(d - 1, std::move(rays), std::move(cones));
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!is_complete(fib.fiber)) return std::nullopt;
  return fib;
}

}  // namespace detail

/// All fibrations over P^1 induced by two-element primitive collections
/// {upper, lower}. Each ordering of the pair is reported separately.
inline std::vector<Fibration> fibrations(const Fan& f) {
  std::vector<Fibration> out;
  if (f.dimension() < 2) return out;
  for (const auto& p : primitive_collections(f)) {
    if (p.size() != 2) continue;
    for (auto [u, v] : {std::pair{p[0], p[1]}, std::pair{p[1], p[0]}}) {
      std::set<LatticeVector> tried;
      for (std::size_t c = 0; c < f.max_cones().size(); ++c) {
        const Cone& sigma = f.max_cones()[c];
        if (!sigma.contains(u)) continue;
        if (!f.find_max_cone((sigma.mask() & ~ray_bit(u)) | ray_bit(v))) continue;
        LatticeVector phi = f.cone_inverse(c).row(sigma.position(u));
        if (!tried.insert(phi).second) continue;
        if (auto fib = detail::fibration_from(f, u, v, c, phi)) out.push_back(std::move(*fib));
      }
    }
  }
  return out;
}

enum class FiberKind { ProjectiveSpace, BundleOverP1, Other };

constexpr std::string_view to_string(FiberKind k) {
  switch (k) {
    case FiberKind::ProjectiveSpace: return "ProjectiveSpace";
    case FiberKind::BundleOverP1: return "BundleOverP1";
    case FiberKind::Other: return "Other";
  }
  return "?";
}

/// The fan of P^n: n+1 rays whose only primitive relation is "sum = 0".
inline bool is_projective_space(const Fan& g) {
  if (g.rays().size() != g.dimension() + 1) return false;
  auto rels = primitive_relations(g);
  return rels.size() == 1 && rels[0].collection.size() == g.rays().size() && rels[0].support.empty();
}

/// Ordered ray pairs (x, y) of g such that g is a bundle over P^1 with D_x and
/// D_y fibers: x, y are the only rays off the kernel of a fibration, their
/// classes agree in Pic, and their stars are isomorphic.
inline std::vector<std::pair<std::size_t, std::size_t>> bundle_fiber_pairs(const Fan& g) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (g.dimension() < 2) return out;
  std::optional<DivisorClassData> classes;
  for (const auto& fib : fibrations(g)) {
    if (fib.off_kernel != 2) continue;
    std::pair pair{fib.upper, fib.lower};
    if (std::find(out.begin(), out.end(), pair) != out.end()) continue;
    if (!classes) classes = class_group(g);
    if (classes->class_of_ray(fib.upper) != classes->class_of_ray(fib.lower)) continue;
    if (!fan_isomorphism(star_fan(g, fib.upper), star_fan(g, fib.lower))) continue;
    out.push_back(pair);
  }
  return out;
}

/// A fan in the normal form of the family construction: {e_1..e_{d-1}, b_1}
/// is the standard basis, the fiber fan lives in the last-coordinate-zero
/// hyperplane, b rays lie above it and c rays below. Ray indices agree with
/// the input fan.
struct Splitting {
  Fan base_fan;
  UnimodularMap coordinate_change;
  std::vector<std::size_t> e, a, b, c;
  std::vector<std::size_t> sigma_plus, sigma_minus;
  /// Fiber fan in the first d-1 coordinates; rays ordered e_1..e_{d-1}, a_1..a_rho.
  Fan sigma_tilde;

  std::size_t dimension() const { return base_fan.dimension(); }
  const LatticeVector& coords(std::size_t ray) const { return base_fan.generator(ray); }

  /// "e1", "a2", "b1", "c1" (or "c'1" when primed).
  std::string label(std::size_t ray, bool primed = false) const {
    auto find = [&](const std::vector<std::size_t>& v, std::string_view prefix) -> std::string {
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] == ray) return std::string(prefix) + std::to_string(i + 1);
      return {};
    };
    for (auto [v, p] : {std::pair{&e, "e"}, std::pair{&a, "a"}, std::pair{&b, "b"}}) {
      auto s = find(*v, p);
      if (!s.empty()) return s;
    }
    return find(c, primed ? "c'" : "c");
  }

  std::size_t label_rank(std::size_t ray) const {
    std::size_t group = 0;
    for (const auto* v : {&e, &a, &b, &c}) {
      for (std::size_t i = 0; i < v->size(); ++i)
        if ((*v)[i] == ray) return group * kMaxRays + i;
      ++group;
    }
    return 4 * kMaxRays + ray;
  }

  std::string format(const PrimitiveRelation& rel, bool primed = false) const {
    return format_relation(
        rel, [&](std::size_t r) { return label(r, primed); },
        [&](std::size_t r) { return label_rank(r); });
  }
};

/// Builds the splitting with b_1 = upper, c_1 = lower, the given ordered
/// e-rays and a_1; nullopt when the normal-form hypotheses fail.
inline std::optional<Splitting> try_make_splitting(const Fan& f, std::size_t upper, std::size_t lower,
                                                   const std::vector<std::size_t>& e_rays,
                                                   std::size_t a1) {
  const std::size_t d = f.dimension();
  if (d < 2 || e_rays.size() != d - 1) return std::nullopt;
  const RaySet e_mask = mask_of(e_rays);
  if (static_cast<std::size_t>(std::popcount(e_mask)) != d - 1) return std::nullopt;
  for (auto r : {upper, lower, a1})
    if (r >= f.rays().size() || (e_mask & ray_bit(r))) return std::nullopt;
  if (upper == lower || a1 == upper || a1 == lower) return std::nullopt;
  if (!f.find_max_cone(e_mask | ray_bit(upper)) || !f.find_max_cone(e_mask | ray_bit(lower)))
    return std::nullopt;

  std::vector<LatticeVector> cols;
  for (auto r : e_rays) cols.push_back(f.generator(r));
  cols.push_back(f.generator(upper));
  Splitting s;
  s.coordinate_change = UnimodularMap(inverse_unimodular(IntMatrix::from_columns(cols, d)));
  s.base_fan = f.transformed(s.coordinate_change);
  const Fan& g = s.base_fan;
  auto last = [&](std::size_t r) -> const Integer& { return g.generator(r)[d - 1]; };
  if (last(lower) != -1) return std::nullopt;
  RaySet kernel = 0;
  for (std::size_t r = 0; r < g.rays().size(); ++r)
    if (last(r) == 0) kernel |= ray_bit(r);
  if (!(kernel & ray_bit(a1))) return std::nullopt;

  s.e = e_rays;
  s.a = {a1};
  s.b = {upper};
  s.c = {lower};
  for (std::size_t r = 0; r < g.rays().size(); ++r) {
    if (r == a1 || r == upper || r == lower || (e_mask & ray_bit(r))) continue;
    if (last(r) == 0)
      s.a.push_back(r);
    else if (last(r) > 0)
      s.b.push_back(r);
    else
      s.c.push_back(r);
  }
  for (std::size_t i = 0; i < g.max_cones().size(); ++i) {
    bool pos = false, neg = false;
    for (auto r : g.max_cones()[i].rays()) {
      pos = pos || last(r) > 0;
      neg = neg || last(r) < 0;
    }
    if (pos && neg) return std::nullopt;
    (neg ? s.sigma_minus : s.sigma_plus).push_back(i);
  }

  std::vector<std::size_t> tilde_order = s.e;
  tilde_order.insert(tilde_order.end(), s.a.begin(), s.a.end());
  std::vector<std::size_t> slot(g.rays().size(), 0);
  std::vector<Ray> rays;
  for (std::size_t i = 0; i < tilde_order.size(); ++i) {
    slot[tilde_order[i]] = i;
    const auto& gen = g.generator(tilde_order[i]);
    rays.push_back({g.ray(tilde_order[i]).name,
                    LatticeVector(std::vector<Integer>(gen.begin(), gen.begin() + (d - 1)))});
  }
  std::set<RaySet> seen;
  std::vector<Cone> cones;
  for (const auto& c : g.max_cones()) {
    RaySet m = c.mask() & kernel;
    if (static_cast<std::size_t>(std::popcount(m)) != d - 1 || !seen.insert(m).second) continue;
    std::vector<std::size_t> idx;
    for (auto r : indices_of(m)) idx.push_back(slot[r]);
    cones.emplace_back(std::move(idx));
  }
  try {
    s.sigma_tilde = make_fan(d - 1, std::move(rays), std::move(cones));
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!is_complete(s.sigma_tilde)) return std::nullopt;
  return s;
}

/// Name-based variant; throws PreconditionViolated when the hypotheses fail.
inline Splitting make_splitting(const Fan& f, std::string_view b1, std::string_view c1,
                                const std::vector<std::string>& e_rays, std::string_view a1) {
  std::vector<std::size_t> e;
  for (const auto& n : e_rays) e.push_back(f.require_ray(n));
  auto s = try_make_splitting(f, f.require_ray(b1), f.require_ray(c1), e, f.require_ray(a1));
  if (!s) throw Error(ErrorKind::PreconditionViolated, "labels do not define a normal-form splitting");
  return *std::move(s);
}

struct FiberType {
  FiberKind kind = FiberKind::Other;
  /// Names of (e_1, a_1) when they form a valid fiber pair.
  std::optional<std::pair<std::string, std::string>> fiber_pair;
};

/// Classifies the fiber fan and checks that (e_1, a_1) is an admissible pair.
inline FiberType fiber_type(const Splitting& s) {
  const Fan& t = s.sigma_tilde;
  const std::size_t a1 = s.e.size();
  std::pair<std::string, std::string> names{t.ray(0).name, t.ray(a1).name};
  if (is_projective_space(t)) return {FiberKind::ProjectiveSpace, names};
  for (const auto& [x, y] : bundle_fiber_pairs(t))
    if (x == 0 && y == a1) return {FiberKind::BundleOverP1, names};
  return {};
}

/// Enumerates normal-form splittings. For each fibration the fiber decides
/// which (e_1, a_1) pairs are admissible: every ordered pair for a projective
/// space, every fiber pair for a bundle over P^1, and one default labeling
/// otherwise. The remaining e-rays are the lexicographically first choice.
inline std::vector<Splitting> find_splittings(const Fan& f) {
  std::vector<Splitting> out;
  const std::size_t d = f.dimension();
  std::set<std::tuple<std::size_t, std::size_t, std::vector<std::size_t>, std::size_t>> seen;
  for (const auto& fib : fibrations(f)) {
    const Fan& g = fib.fiber;
    const auto& to_total = fib.fiber_rays;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    bool fallback = false;
    if (is_projective_space(g)) {
      for (std::size_t x = 0; x < g.rays().size(); ++x)
        for (std::size_t y = 0; y < g.rays().size(); ++y)
          if (x != y) pairs.emplace_back(x, y);
    } else {
      pairs = bundle_fiber_pairs(g);
      if (pairs.empty()) {
        fallback = true;
        for (std::size_t x = 0; x < g.rays().size(); ++x)
          for (std::size_t y = 0; y < g.rays().size(); ++y)
            if (x != y) pairs.emplace_back(x, y);
      }
    }
    for (const auto& [x, y] : pairs) {
      const std::size_t e1 = to_total[x];
      const std::size_t a1 = to_total[y];
      std::vector<std::size_t> rest;
      for (auto r : to_total)
        if (r != e1 && r != a1) rest.push_back(r);
      std::optional<Splitting> found;
      for_each_combination(rest.size(), d - 2, [&](const std::vector<std::size_t>& idx) {
        std::vector<std::size_t> e{e1};
        for (auto i : idx) e.push_back(rest[i]);
        found = try_make_splitting(f, fib.upper, fib.lower, e, a1);
        return !found;
      });
      if (!found) continue;
      if (!seen.emplace(fib.upper, fib.lower, found->e, a1).second) continue;
      out.push_back(std::move(*found));
      if (fallback) break;
    }
  }
  return out;
}

struct ConditionReport {
  bool first = true;   // b_{j,1} = 0 for j >= 2
  bool second = true;  // k c_{j,d} + c_{j,1} >= 0 for all j
  std::vector<std::string> violations;

  bool holds() const { return first && second; }
};

inline ConditionReport theorem_conditions(const Splitting& s, const Integer& k) {
  if (k < 0) throw Error(ErrorKind::InvalidInput, "k must be nonnegative");
  ConditionReport rep;
  const std::size_t d = s.dimension();
  for (std::size_t j = 1; j < s.b.size(); ++j) {
    const Integer& x = s.coords(s.b[j])[0];
    if (x != 0) {
      rep.first = false;
      rep.violations.push_back("b_{" + std::to_string(j + 1) + ",1} = " + x.str() + " != 0");
    }
  }
  for (std::size_t j = 0; j < s.c.size(); ++j) {
    const auto& c = s.coords(s.c[j]);
    Integer v = k * c[d - 1] + c[0];
    if (v < 0) {
      rep.second = false;
      rep.violations.push_back("k*c_{" + std::to_string(j + 1) + "," + std::to_string(d) +
                               "} + c_{" + std::to_string(j + 1) + ",1} = " + v.str() + " < 0");
    }
  }
  return rep;
}

/// q^-Sigma: Sigma^+ together with the images of the cones of Sigma^- under
/// shear_map(q). The union is revalidated as a fan.
inline Fan q_minus(const Splitting& s, std::span<const Integer> q) {
  const std::size_t d = s.dimension();
  if (q.size() != d - 1)
    throw Error(ErrorKind::DimensionMismatch, "q needs " + std::to_string(d - 1) + " entries");
  const UnimodularMap shear = shear_map(q);
  std::vector<Ray> rays = s.base_fan.rays();
  for (auto& r : rays)
    if (r.generator[d - 1] < 0) r.generator = shear(r.generator);
  Fan out;
  try {
    out = make_fan(d, std::move(rays), s.base_fan.max_cones());
  } catch (const Error& e) {
    throw Error(ErrorKind::ResultNotAFan, e.what());
  }
  if (!is_complete(out)) throw Error(ErrorKind::ResultNotAFan, "sheared fan is not complete");
  return out;
}

/// (2k, -k a_{1,2}, ..., -k a_{1,d-1}).
inline std::vector<Integer> endpoint_shear(const Splitting& s, const Integer& k) {
  const std::size_t d = s.dimension();
  std::vector<Integer> q(d - 1);
  q[0] = 2 * k;
  const auto& a1 = s.coords(s.a.at(0));
  for (std::size_t j = 1; j + 1 < d; ++j) q[j] = -k * a1[j];
  return q;
}

/// General fiber of the family built from `s` with parameter k.
inline Fan endpoint(const Splitting& s, const Integer& k) {
  FiberType ft = fiber_type(s);
  if (ft.kind == FiberKind::Other)
    throw Error(ErrorKind::ConditionsNotSatisfied,
                "fiber is neither a projective space nor a bundle over P^1 with fiber pair (e1, a1)");
  auto rep = theorem_conditions(s, k);
  if (!rep.holds()) {
    std::string why;
    for (const auto& v : rep.violations) why += (why.empty() ? "" : "; ") + v;
    throw Error(ErrorKind::ConditionsNotSatisfied, why);
  }
  auto q = endpoint_shear(s, k);
  return q_minus(s, q);
}

/// The linear equivalences obtained from the dual basis of {e_1..e_{d-1}, b_1}:
/// D_j + sum_i a_{i,j} A_i + sum_{i>=2} b_{i,j} B_i + sum_i c_{i,j} C_i for
/// j < d, and B_1 + sum_{i>=2} b_{i,d} B_i - C_1 + sum_{i>=2} c_{i,d} C_i.
inline std::vector<TDivisor> principal_divisors(const Splitting& s) {
  const std::size_t d = s.dimension();
  const std::size_t n = s.base_fan.rays().size();
  std::vector<TDivisor> out;
  for (std::size_t j = 0; j + 1 < d; ++j) {
    TDivisor div{std::vector<Integer>(n, Integer(0))};
    div.coefficients[s.e[j]] = 1;
    for (auto r : s.a) div.coefficients[r] = s.coords(r)[j];
    for (std::size_t i = 1; i < s.b.size(); ++i) div.coefficients[s.b[i]] = s.coords(s.b[i])[j];
    for (auto r : s.c) div.coefficients[r] = s.coords(r)[j];
    out.push_back(std::move(div));
  }
  TDivisor last{std::vector<Integer>(n, Integer(0))};
  last.coefficients[s.b[0]] = 1;
  for (std::size_t i = 1; i < s.b.size(); ++i) last.coefficients[s.b[i]] = s.coords(s.b[i])[d - 1];
  last.coefficients[s.c[0]] = -1;
  for (std::size_t i = 1; i < s.c.size(); ++i) last.coefficients[s.c[i]] = s.coords(s.c[i])[d - 1];
  out.push_back(std::move(last));
  return out;
}

}  // namespace toricdef
