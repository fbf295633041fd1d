#pragma once

// Smooth fans: validation, completeness, primitive collections and
// relations, unimodular equivalence, and reconstruction of a fan from a
// primitive-relation presentation.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "toricdef/lattice.hpp"

namespace toricdef {

/// Bitmask over the ray indices of a fan.
using RaySet = std::uint64_t;
inline constexpr std::size_t kMaxRays = 64;

inline RaySet ray_bit(std::size_t i) { return RaySet{1} << i; }

inline std::vector<std::size_t> indices_of(RaySet s) {
  std::vector<std::size_t> out;
  while (s) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(s)));
    s &= s - 1;
  }
  return out;
}

inline RaySet mask_of(std::span<const std::size_t> idx) {
  RaySet m = 0;
  for (auto i : idx) m |= ray_bit(i);
  return m;
}

/// Calls `f(subset)` for every k-subset of {0..n-1} in lexicographic order;
/// stops early when `f` returns false.
template <class F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (;;) {
    if (!f(std::as_const(idx))) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct Ray {
  std::string name;
  LatticeVector generator;

  friend bool operator==(const Ray&, const Ray&) = default;
};

/// Ray indices of a simplicial cone, kept sorted.
class Cone {
 public:
  Cone() = default;
  explicit Cone(std::vector<std::size_t> rays) : rays_(std::move(rays)) {
    std::sort(rays_.begin(), rays_.end());
    mask_ = mask_of(rays_);
  }

  const std::vector<std::size_t>& rays() const noexcept { return rays_; }
  std::size_t size() const noexcept { return rays_.size(); }
  RaySet mask() const noexcept { return mask_; }
  bool contains(std::size_t ray) const { return (mask_ & ray_bit(ray)) != 0; }
  /// Position of `ray` within rays(), which is also its row in the cone inverse.
  std::size_t position(std::size_t ray) const {
    return static_cast<std::size_t>(std::lower_bound(rays_.begin(), rays_.end(), ray) -
                                    rays_.begin());
  }

  friend bool operator==(const Cone& a, const Cone& b) { return a.rays_ == b.rays_; }

 private:
  std::vector<std::size_t> rays_;
  RaySet mask_ = 0;
};

class Fan;
Fan make_fan(std::size_t dimension, std::vector<Ray> rays, std::vector<Cone> max_cones);

/// A validated smooth fan given by its rays and maximal (d-dimensional) cones.
/// Immutable after construction; only make_fan builds one from raw data.
class Fan {
 public:
  Fan() = default;

  std::size_t dimension() const noexcept { return dim_; }
  const std::vector<Ray>& rays() const noexcept { return rays_; }
  const std::vector<Cone>& max_cones() const noexcept { return cones_; }
  const Ray& ray(std::size_t i) const { return rays_.at(i); }
  const LatticeVector& generator(std::size_t i) const { return rays_.at(i).generator; }

  std::optional<std::size_t> ray_index(std::string_view name) const {
    for (std::size_t i = 0; i < rays_.size(); ++i)
      if (rays_[i].name == name) return i;
    return std::nullopt;
  }
  std::size_t require_ray(std::string_view name) const {
    if (auto i = ray_index(name)) return *i;
    throw Error(ErrorKind::UnknownName, "no ray named '" + std::string(name) + "'");
  }

  /// Inverse of the matrix whose columns are the cone's generators (in
  /// sorted ray order); row i gives the coordinate along rays()[i].
  const IntMatrix& cone_inverse(std::size_t cone) const { return inverses_.at(cone); }

  IntMatrix cone_basis(std::size_t cone) const {
    std::vector<LatticeVector> cols;
    for (auto r : cones_.at(cone).rays()) cols.push_back(rays_[r].generator);
    return IntMatrix::from_columns(cols, dim_);
  }

  /// Coordinates of v in the basis of a maximal cone.
  LatticeVector coordinates_in(std::size_t cone, const LatticeVector& v) const {
    return inverses_.at(cone) * v;
  }

  bool is_face(RaySet s) const {
    return std::any_of(cones_.begin(), cones_.end(),
                       [s](const Cone& c) { return (c.mask() & s) == s; });
  }

  std::optional<std::size_t> find_max_cone(RaySet s) const {
    for (std::size_t i = 0; i < cones_.size(); ++i)
      if (cones_[i].mask() == s) return i;
    return std::nullopt;
  }

  RaySet all_rays() const {
    return rays_.size() == kMaxRays ? ~RaySet{0} : ray_bit(rays_.size()) - 1;
  }

  /// Image of the fan under a lattice automorphism; validity is preserved.
  Fan transformed(const UnimodularMap& map) const {
    if (map.dimension() != dim_) throw Error(ErrorKind::DimensionMismatch, "transform dimension");
    Fan out = *this;
    for (auto& r : out.rays_) r.generator = map(r.generator);
    const IntMatrix back = map.inverse().matrix();
    for (auto& inv : out.inverses_) inv = inv * back;
    return out;
  }

  friend bool operator==(const Fan& a, const Fan& b) {
    return a.dim_ == b.dim_ && a.rays_ == b.rays_ && a.cones_ == b.cones_;
  }

 private:
  friend Fan make_fan(std::size_t, std::vector<Ray>, std::vector<Cone>);

  std::size_t dim_ = 0;
  std::vector<Ray> rays_;
  std::vector<Cone> cones_;
  std::vector<IntMatrix> inverses_;
};

namespace detail {

// Given the coordinates A (rows: rays of sigma not in tau, columns: rays of
// tau not in sigma) of tau's extra generators in sigma's basis, decides
// whether some mu >= 0, mu != 0 has A mu >= 0, i.e. whether the cones share a
// point outside their common face.
inline bool cones_overlap(const std::vector<std::vector<Integer>>& a) {
  const std::size_t s = a.size();
  const std::size_t t = s ? a.front().size() : 0;
  if (t == 0) return false;
  for (const auto& row : a)
    if (std::all_of(row.begin(), row.end(), [](const Integer& x) { return x < 0; })) return false;
  for (std::size_t j = 0; j < t; ++j) {
    bool nonneg = true;
    for (std::size_t i = 0; i < s; ++i) nonneg = nonneg && a[i][j] >= 0;
    if (nonneg) return true;
  }
  // Vertex enumeration of {mu >= 0, sum mu = 1, A mu >= 0}: a nonempty
  // polytope has a vertex cut out by t-1 tight inequalities and the sum.
  std::vector<std::vector<Rational>> ineq;
  for (std::size_t j = 0; j < t; ++j) {
    std::vector<Rational> row(t, Rational(0));
    row[j] = 1;
    ineq.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < s; ++i) {
    std::vector<Rational> row;
    for (std::size_t j = 0; j < t; ++j) row.emplace_back(a[i][j]);
    ineq.push_back(std::move(row));
  }
  bool overlap = false;
  for_each_combination(ineq.size(), t - 1, [&](const std::vector<std::size_t>& tight) {
    std::vector<std::vector<Rational>> lhs;
    std::vector<std::vector<Rational>> rhs;
    for (auto k : tight) {
      lhs.push_back(ineq[k]);
      rhs.push_back({Rational(0)});
    }
    lhs.emplace_back(t, Rational(1));
    rhs.push_back({Rational(1)});
    auto sol = solve_rational(lhs, rhs);
    if (!sol.unique(t)) return true;
    for (const auto& row : ineq) {
      Rational v = 0;
      for (std::size_t j = 0; j < t; ++j) v += row[j] * sol.x[j][0];
      if (v < 0) return true;
    }
    overlap = true;
    return false;
  });
  return overlap;
}

}  // namespace detail

/// Validates rays and maximal cones and builds the fan. Throws Error with
/// kind DimensionMismatch, NonPrimitiveRay, SingularCone, BadFaceStructure,
/// DanglingRay or InvalidInput.
inline Fan make_fan(std::size_t dimension, std::vector<Ray> rays, std::vector<Cone> max_cones) {
  if (dimension == 0) throw Error(ErrorKind::InvalidInput, "fan dimension must be positive");
  if (rays.size() > kMaxRays)
    throw Error(ErrorKind::InvalidInput, "at most " + std::to_string(kMaxRays) + " rays supported");
  std::set<std::string> names;
  std::set<LatticeVector> generators;
  for (const auto& r : rays) {
    if (r.name.empty()) throw Error(ErrorKind::InvalidInput, "empty ray name");
    if (!names.insert(r.name).second)
      throw Error(ErrorKind::InvalidInput, "duplicate ray name '" + r.name + "'");
    if (r.generator.size() != dimension)
      throw Error(ErrorKind::DimensionMismatch,
                  "ray '" + r.name + "' has " + std::to_string(r.generator.size()) +
                      " coordinates, expected " + std::to_string(dimension));
    if (!is_primitive(r.generator))
      throw Error(ErrorKind::NonPrimitiveRay,
                  "ray '" + r.name + "' generator " + to_string(r.generator) + " is not primitive");
    if (!generators.insert(r.generator).second)
      throw Error(ErrorKind::BadFaceStructure,
                  "ray '" + r.name + "' repeats generator " + to_string(r.generator));
  }
  if (max_cones.empty())
    throw Error(ErrorKind::InvalidInput, "a fan needs at least one d-dimensional cone");

  Fan fan;
  fan.dim_ = dimension;
  fan.rays_ = std::move(rays);
  RaySet used = 0;
  std::set<RaySet> seen;
  for (const auto& c : max_cones) {
    for (auto r : c.rays())
      if (r >= fan.rays_.size()) throw Error(ErrorKind::InvalidInput, "cone refers to unknown ray");
    if (c.size() != dimension)
      throw Error(ErrorKind::InvalidInput, "maximal cone with " + std::to_string(c.size()) +
                                               " rays in dimension " + std::to_string(dimension));
    if (!seen.insert(c.mask()).second)
      throw Error(ErrorKind::BadFaceStructure, "maximal cone listed twice");
    std::vector<LatticeVector> gens;
    for (auto r : c.rays()) gens.push_back(fan.rays_[r].generator);
    if (!extends_to_basis(gens, dimension)) {
      std::string list;
      for (auto r : c.rays()) list += (list.empty() ? "" : " ") + fan.rays_[r].name;
      throw Error(ErrorKind::SingularCone, "cone {" + list + "} is not unimodular");
    }
    fan.inverses_.push_back(inverse_unimodular(IntMatrix::from_columns(gens, dimension)));
    used |= c.mask();
  }
  fan.cones_ = std::move(max_cones);
  for (std::size_t i = 0; i < fan.rays_.size(); ++i)
    if (!(used & ray_bit(i)))
      throw Error(ErrorKind::DanglingRay, "ray '" + fan.rays_[i].name + "' lies in no maximal cone");

  for (std::size_t i = 0; i < fan.cones_.size(); ++i) {
    const Cone& sigma = fan.cones_[i];
    const IntMatrix& inv = fan.inverses_[i];
    for (std::size_t j = i + 1; j < fan.cones_.size(); ++j) {
      const Cone& tau = fan.cones_[j];
      const auto only_sigma = indices_of(sigma.mask() & ~tau.mask());
      const auto only_tau = indices_of(tau.mask() & ~sigma.mask());
      std::vector<std::vector<Integer>> a(only_sigma.size(), std::vector<Integer>(only_tau.size()));
      for (std::size_t c = 0; c < only_tau.size(); ++c) {
        LatticeVector coords = inv * fan.rays_[only_tau[c]].generator;
        for (std::size_t r = 0; r < only_sigma.size(); ++r)
          a[r][c] = coords[sigma.position(only_sigma[r])];
      }
      if (detail::cones_overlap(a))
        throw Error(ErrorKind::BadFaceStructure, "maximal cones " + std::to_string(i) + " and " +
                                                     std::to_string(j) +
                                                     " overlap beyond their common face");
    }
  }
  return fan;
}

/// Convenience overload naming cone members by ray name.
inline Fan make_fan(std::size_t dimension, std::vector<Ray> rays,
                    const std::vector<std::vector<std::string>>& cones) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < rays.size(); ++i) index.emplace(rays[i].name, i);
  std::vector<Cone> cs;
  for (const auto& c : cones) {
    std::vector<std::size_t> idx;
    for (const auto& n : c) {
      auto it = index.find(n);
      if (it == index.end()) throw Error(ErrorKind::UnknownName, "cone refers to unknown ray '" + n + "'");
      idx.push_back(it->second);
    }
    std::size_t before = idx.size();
    Cone cone(std::move(idx));
    if (indices_of(cone.mask()).size() != before)
      throw Error(ErrorKind::InvalidInput, "cone repeats a ray");
    cs.push_back(std::move(cone));
  }
  return make_fan(dimension, std::move(rays), std::move(cs));
}

/// Every ridge lies in exactly two maximal cones and the dual graph is
/// connected. All maximal cones are d-dimensional by construction.
inline bool is_complete(const Fan& f) {
  std::map<RaySet, std::vector<std::size_t>> ridges;
  for (std::size_t i = 0; i < f.max_cones().size(); ++i)
    for (auto r : f.max_cones()[i].rays()) ridges[f.max_cones()[i].mask() & ~ray_bit(r)].push_back(i);
  std::vector<std::size_t> parent(f.max_cones().size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& [ridge, cones] : ridges) {
    if (cones.size() != 2) return false;
    parent[find(cones[0])] = find(cones[1]);
  }
  for (std::size_t i = 0; i < parent.size(); ++i)
    if (find(i) != find(0)) return false;
  return true;
}

/// Minimal sets of rays spanning no cone, ordered by size then lexicographically.
inline std::vector<std::vector<std::size_t>> primitive_collections(const Fan& f) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t n = f.rays().size();
  for (std::size_t k = 2; k <= std::min(n, f.dimension() + 1); ++k) {
    for_each_combination(n, k, [&](const std::vector<std::size_t>& idx) {
      RaySet m = mask_of(idx);
      if (f.is_face(m)) return true;
      for (auto i : idx)
        if (!f.is_face(m & ~ray_bit(i))) return true;
      out.push_back(idx);
      return true;
    });
  }
  return out;
}

inline bool is_primitive_collection(const Fan& f, RaySet m) {
  if (m == 0 || f.is_face(m)) return false;
  for (auto i : indices_of(m))
    if (!f.is_face(m & ~ray_bit(i))) return false;
  return true;
}

struct PrimitiveRelation {
  std::vector<std::size_t> collection;
  /// (ray index, positive coefficient), ascending by ray index.
  std::vector<std::pair<std::size_t, Integer>> support;
  Integer degree;

  Integer coefficient(std::size_t ray) const {
    for (const auto& [r, c] : support)
      if (r == ray) return c;
    return 0;
  }
};

inline PrimitiveRelation primitive_relation(const Fan& f, std::span<const std::size_t> collection) {
  const RaySet m = mask_of(collection);
  if (!is_primitive_collection(f, m))
    throw Error(ErrorKind::NotAPrimitiveCollection, "ray set is not a primitive collection");
  PrimitiveRelation rel;
  rel.collection = indices_of(m);
  LatticeVector sum(f.dimension());
  for (auto i : rel.collection) sum += f.generator(i);
  Integer total = 0;
  if (!sum.is_zero()) {
    bool found = false;
    for (std::size_t c = 0; c < f.max_cones().size() && !found; ++c) {
      LatticeVector coords = f.coordinates_in(c, sum);
      if (std::any_of(coords.begin(), coords.end(), [](const Integer& x) { return x < 0; })) continue;
      found = true;
      const auto& rays = f.max_cones()[c].rays();
      for (std::size_t p = 0; p < rays.size(); ++p)
        if (coords[p] > 0) {
          rel.support.emplace_back(rays[p], coords[p]);
          total += coords[p];
        }
    }
    if (!found)
      throw Error(ErrorKind::NoContainingCone,
                  "sum " + to_string(sum) + " of a primitive collection lies in no cone");
  }
  rel.degree = Integer(rel.collection.size()) - total;
  return rel;
}

inline std::vector<PrimitiveRelation> primitive_relations(const Fan& f) {
  std::vector<PrimitiveRelation> out;
  for (const auto& p : primitive_collections(f)) out.push_back(primitive_relation(f, p));
  return out;
}

/// Renders "x+y = 2*z + w" (or "x+y = 0"). `label` names rays and `rank`
/// orders the terms on each side.
inline std::string format_relation(const PrimitiveRelation& rel,
                                   const std::function<std::string(std::size_t)>& label,
                                   const std::function<std::size_t(std::size_t)>& rank) {
  auto by_rank = [&](std::size_t a, std::size_t b) { return rank(a) < rank(b); };
  std::vector<std::size_t> lhs = rel.collection;
  std::sort(lhs.begin(), lhs.end(), by_rank);
  auto support = rel.support;
  std::sort(support.begin(), support.end(),
            [&](const auto& a, const auto& b) { return by_rank(a.first, b.first); });
  std::string s;
  for (std::size_t i = 0; i < lhs.size(); ++i) s += (i ? "+" : "") + label(lhs[i]);
  s += " = ";
  if (support.empty()) return s + "0";
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (i) s += " + ";
    if (support[i].second != 1) s += support[i].second.str() + "*";
    s += label(support[i].first);
  }
  return s;
}

inline std::string format_relation(const Fan& f, const PrimitiveRelation& rel) {
  return format_relation(
      rel, [&](std::size_t i) { return f.ray(i).name; }, [](std::size_t i) { return i; });
}

/// Searches for a lattice automorphism carrying f1 onto f2 by sending the
/// ordered basis of f1's first maximal cone to every ordering of every
/// maximal cone of f2.
inline std::optional<UnimodularMap> fan_isomorphism(const Fan& f1, const Fan& f2) {
  if (f1.dimension() != f2.dimension())
    throw Error(ErrorKind::DimensionMismatch, "fans of dimension " + std::to_string(f1.dimension()) +
                                                  " and " + std::to_string(f2.dimension()));
  if (f1.rays().size() != f2.rays().size() || f1.max_cones().size() != f2.max_cones().size())
    return std::nullopt;
  std::map<LatticeVector, std::size_t> target;
  for (std::size_t i = 0; i < f2.rays().size(); ++i) target.emplace(f2.generator(i), i);
  std::set<RaySet> target_cones;
  for (const auto& c : f2.max_cones()) target_cones.insert(c.mask());

  const IntMatrix& inv = f1.cone_inverse(0);
  const std::size_t d = f1.dimension();
  for (const auto& tau : f2.max_cones()) {
    std::vector<std::size_t> order = tau.rays();
    do {
      IntMatrix b2(d, d);
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t r = 0; r < d; ++r) b2(r, c) = f2.generator(order[c])[r];
      IntMatrix m = b2 * inv;
      std::vector<std::size_t> image(f1.rays().size());
      bool ok = true;
      RaySet hit = 0;
      for (std::size_t i = 0; i < f1.rays().size() && ok; ++i) {
        auto it = target.find(m * f1.generator(i));
        if (it == target.end() || (hit & ray_bit(it->second))) {
          ok = false;
          break;
        }
        hit |= ray_bit(it->second);
        image[i] = it->second;
      }
      for (std::size_t c = 0; c < f1.max_cones().size() && ok; ++c) {
        RaySet img = 0;
        for (auto r : f1.max_cones()[c].rays()) img |= ray_bit(image[r]);
        ok = target_cones.count(img) > 0;
      }
      if (ok) return UnimodularMap(std::move(m));
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return std::nullopt;
}

/// Ray index correspondence induced by an isomorphism found by fan_isomorphism.
inline std::vector<std::size_t> ray_correspondence(const Fan& f1, const Fan& f2,
                                                   const UnimodularMap& map) {
  std::map<LatticeVector, std::size_t> target;
  for (std::size_t i = 0; i < f2.rays().size(); ++i) target.emplace(f2.generator(i), i);
  std::vector<std::size_t> image;
  for (const auto& r : f1.rays()) {
    auto it = target.find(map(r.generator));
    if (it == target.end()) throw Error(ErrorKind::InvalidInput, "map does not carry rays to rays");
    image.push_back(it->second);
  }
  return image;
}

/// Quotient fan of the cones containing `ray`, in N / Z·ray.
inline Fan star_fan(const Fan& f, std::size_t ray) {
  if (f.dimension() < 2) throw Error(ErrorKind::InvalidInput, "star of a ray needs dimension >= 2");
  std::optional<std::size_t> base;
  for (std::size_t c = 0; c < f.max_cones().size(); ++c)
    if (f.max_cones()[c].contains(ray)) {
      base = c;
      break;
    }
  if (!base) throw Error(ErrorKind::InvalidInput, "ray lies in no maximal cone");
  const std::size_t drop = f.max_cones()[*base].position(ray);
  auto project = [&](const LatticeVector& v) {
    LatticeVector c = f.coordinates_in(*base, v);
    std::vector<Integer> out;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (i != drop) out.push_back(c[i]);
    return LatticeVector(std::move(out));
  };
  std::map<std::size_t, std::size_t> new_index;
  std::vector<Ray> rays;
  std::vector<Cone> cones;
  for (const auto& c : f.max_cones()) {
    if (!c.contains(ray)) continue;
    std::vector<std::size_t> members;
    for (auto r : c.rays()) {
      if (r == ray) continue;
      auto [it, fresh] = new_index.emplace(r, rays.size());
      if (fresh) rays.push_back({f.ray(r).name, project(f.generator(r))});
      members.push_back(it->second);
    }
    cones.emplace_back(std::move(members));
  }
  return make_fan(f.dimension() - 1, std::move(rays), std::move(cones));
}

/// Formal relation lhs_1 + ... + lhs_k = sum c_i * rhs_i over generator names.
struct RelationSpec {
  std::vector<std::string> lhs;
  std::vector<std::pair<Integer, std::string>> rhs;
};

/// Solves the relations for all generators not in `basis_cone` (which
/// receives the standard basis, in order), then takes as maximal cones all
/// unimodular d-subsets containing no left-hand side collection.
inline Fan fan_from_relations(std::size_t dimension, const std::vector<std::string>& generators,
                              const std::vector<RelationSpec>& relations,
                              const std::vector<std::string>& basis_cone) {
  const std::size_t n = generators.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i)
    if (!index.emplace(generators[i], i).second)
      throw Error(ErrorKind::InvalidInput, "duplicate generator '" + generators[i] + "'");
  auto lookup = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) throw Error(ErrorKind::UnknownName, "unknown generator '" + name + "'");
    return it->second;
  };
  if (basis_cone.size() != dimension)
    throw Error(ErrorKind::InvalidInput, "basis cone needs exactly " + std::to_string(dimension) +
                                             " generators");
  std::vector<std::optional<std::size_t>> basis_slot(n);
  for (std::size_t j = 0; j < dimension; ++j) {
    auto i = lookup(basis_cone[j]);
    if (basis_slot[i]) throw Error(ErrorKind::InvalidInput, "basis cone repeats a generator");
    basis_slot[i] = j;
  }
  std::vector<std::size_t> unknowns;
  std::vector<std::size_t> unknown_slot(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    if (!basis_slot[i]) {
      unknown_slot[i] = unknowns.size();
      unknowns.push_back(i);
    }

  std::vector<RaySet> collections;
  std::vector<std::vector<Rational>> a;
  std::vector<std::vector<Rational>> b;
  for (const auto& rel : relations) {
    std::vector<Integer> coeff(n, Integer(0));
    RaySet lhs = 0;
    for (const auto& name : rel.lhs) {
      auto i = lookup(name);
      coeff[i] += 1;
      lhs |= ray_bit(i);
    }
    for (const auto& [k, name] : rel.rhs) coeff[lookup(name)] -= k;
    collections.push_back(lhs);
    std::vector<Rational> row(unknowns.size(), Rational(0));
    std::vector<Rational> rhs(dimension, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (coeff[i] == 0) continue;
      if (basis_slot[i])
        rhs[*basis_slot[i]] -= Rational(coeff[i]);
      else
        row[unknown_slot[i]] += Rational(coeff[i]);
    }
    a.push_back(std::move(row));
    b.push_back(std::move(rhs));
  }

  std::vector<LatticeVector> gens(n, LatticeVector(dimension));
  for (std::size_t i = 0; i < n; ++i)
    if (basis_slot[i]) gens[i][*basis_slot[i]] = 1;
  if (!unknowns.empty()) {
    if (a.empty())
      throw Error(ErrorKind::UnderdeterminedRelations, "no relations for non-basis generators");
    auto sol = solve_rational(a, b);
    if (!sol.consistent)
      throw Error(ErrorKind::InconsistentRelations, "relations have no common solution");
    if (sol.rank < unknowns.size())
      throw Error(ErrorKind::UnderdeterminedRelations,
                  "relations do not determine every generator");
    for (std::size_t u = 0; u < unknowns.size(); ++u)
      for (std::size_t j = 0; j < dimension; ++j) {
        const Rational& x = sol.x[u][j];
        if (boost::multiprecision::denominator(x) != 1)
          throw Error(ErrorKind::InconsistentRelations,
                      "generator '" + generators[unknowns[u]] + "' is not integral");
        gens[unknowns[u]][j] = boost::multiprecision::numerator(x);
      }
  }
  std::set<LatticeVector> distinct;
  std::vector<Ray> rays;
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_primitive(gens[i]))
      throw Error(ErrorKind::InconsistentRelations,
                  "generator '" + generators[i] + "' solves to non-primitive " + to_string(gens[i]));
    if (!distinct.insert(gens[i]).second)
      throw Error(ErrorKind::InconsistentRelations,
                  "generator '" + generators[i] + "' coincides with another generator");
    rays.push_back({generators[i], gens[i]});
  }

  std::vector<Cone> cones;
  bool singular_seen = false;
  for_each_combination(n, dimension, [&](const std::vector<std::size_t>& idx) {
    const RaySet m = mask_of(idx);
    for (auto c : collections)
      if ((c & m) == c) return true;
    std::vector<LatticeVector> cols;
    for (auto i : idx) cols.push_back(gens[i]);
    Integer det = determinant(IntMatrix::from_columns(cols, dimension));
    if (det == 0) return true;
    if (det != 1 && det != -1) {
      singular_seen = true;
      return true;
    }
    cones.emplace_back(idx);
    return true;
  });
  if (cones.empty())
    throw Error(ErrorKind::ResultSingular, "no unimodular cone avoids the primitive collections");
  Fan fan = make_fan(dimension, std::move(rays), std::move(cones));
  if (!is_complete(fan)) {
    if (singular_seen)
      throw Error(ErrorKind::ResultSingular,
                  "relations force a singular cone; the smooth part is not complete");
    throw Error(ErrorKind::ResultNotComplete, "reconstructed fan is not complete");
  }
  return fan;
}

/// Greedy basis choice: the first d-subset (in generator order) avoiding every
/// left-hand side for which reconstruction succeeds.
inline Fan fan_from_relations(std::size_t dimension, const std::vector<std::string>& generators,
                              const std::vector<RelationSpec>& relations) {
  std::vector<std::set<std::string>> lhs;
  for (const auto& r : relations) lhs.emplace_back(r.lhs.begin(), r.lhs.end());
  std::optional<Error> first;
  std::optional<Fan> result;
  for_each_combination(generators.size(), dimension, [&](const std::vector<std::size_t>& idx) {
    std::set<std::string> chosen;
    std::vector<std::string> basis;
    for (auto i : idx) {
      chosen.insert(generators[i]);
      basis.push_back(generators[i]);
    }
    for (const auto& c : lhs)
      if (std::includes(chosen.begin(), chosen.end(), c.begin(), c.end())) return true;
    try {
      result = fan_from_relations(dimension, generators, relations, basis);
      return false;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::UnknownName || e.kind() == ErrorKind::InvalidInput) throw;
      if (!first) first = e;
      return true;
    }
  });
  if (result) return *std::move(result);
  if (first) throw *first;
  throw Error(ErrorKind::UnderdeterminedRelations, "no candidate basis cone");
}

}  // namespace toricdef
