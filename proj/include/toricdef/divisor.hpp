#pragma once

// Divisor classes, homogeneous-coordinate data, and the Fano tests.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "toricdef/fan.hpp"

namespace toricdef {

/// T-invariant divisor sum_rho coeff_rho * D_rho, indexed by ray index.
struct TDivisor {
  std::vector<Integer> coefficients;

  static TDivisor anticanonical(const Fan& f) {
    return {std::vector<Integer>(f.rays().size(), Integer(1))};
  }

  static TDivisor from_names(const Fan& f, const std::map<std::string, Integer>& coeffs) {
    TDivisor d{std::vector<Integer>(f.rays().size(), Integer(0))};
    for (const auto& [name, c] : coeffs) d.coefficients[f.require_ray(name)] = c;
    return d;
  }
};

/// Presentation of Pic(V) = Z^{G(Sigma)} / M.
struct DivisorClassData {
  /// d x |G(Sigma)|; row i is the image of the i-th dual basis vector of M.
  IntMatrix relation_matrix;
  std::size_t picard_rank = 0;
  /// |G(Sigma)| x picard_rank; row rho is the class of D_rho.
  IntMatrix class_matrix;

  LatticeVector class_of_ray(std::size_t ray) const { return class_matrix.row(ray); }

  LatticeVector class_of(const TDivisor& d) const {
    if (d.coefficients.size() != class_matrix.rows())
      throw Error(ErrorKind::DimensionMismatch, "divisor has wrong number of coefficients");
    LatticeVector out(picard_rank);
    for (std::size_t r = 0; r < class_matrix.rows(); ++r)
      for (std::size_t c = 0; c < picard_rank; ++c) out[c] += d.coefficients[r] * class_matrix(r, c);
    return out;
  }
};

/// Diagonalizes the ray matrix; the trailing columns of the column transform
/// give coordinates on the cokernel. Torsion cannot occur for a smooth fan
/// with a full-dimensional cone, so any invariant factor other than 1 is an
/// internal error.
inline DivisorClassData class_group(const Fan& f) {
  const std::size_t d = f.dimension();
  const std::size_t n = f.rays().size();
  DivisorClassData data;
  data.relation_matrix = IntMatrix(d, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < d; ++i) data.relation_matrix(i, j) = f.generator(j)[i];
  auto diag = diagonalize(data.relation_matrix);
  for (const auto& x : diag.diagonal)
    if (x != 1)
      throw Error(ErrorKind::InternalError, "class group has torsion or the rays do not span N");
  data.picard_rank = n - d;
  data.class_matrix = IntMatrix(n, data.picard_rank);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < data.picard_rank; ++c)
      data.class_matrix(r, c) = diag.column_transform(r, d + c);
  return data;
}

/// For each maximal cone sigma, the rays outside sigma: the variables of the
/// monomial prod_{rho not in sigma} X_rho whose common zeros form Z.
struct IrrelevantData {
  std::vector<std::vector<std::size_t>> monomials;
};

inline IrrelevantData irrelevant_data(const Fan& f) {
  IrrelevantData data;
  for (const auto& c : f.max_cones()) data.monomials.push_back(indices_of(f.all_rays() & ~c.mask()));
  return data;
}

enum class NefStatus { Ample, NefNotAmple, NotNef };
enum class FanoClass { Fano, WeakFanoNotFano, NotWeakFano };

constexpr std::string_view to_string(NefStatus s) {
  switch (s) {
    case NefStatus::Ample: return "Ample";
    case NefStatus::NefNotAmple: return "NefNotAmple";
    case NefStatus::NotNef: return "NotNef";
  }
  return "?";
}

constexpr std::string_view to_string(FanoClass c) {
  switch (c) {
    case FanoClass::Fano: return "Fano";
    case FanoClass::WeakFanoNotFano: return "WeakFanoNotFano";
    case FanoClass::NotWeakFano: return "NotWeakFano";
  }
  return "?";
}

/// Linear functional m_sigma with <m_sigma, e_rho> = -coeff_rho on sigma.
inline LatticeVector support_functional(const Fan& f, std::size_t cone, const TDivisor& d) {
  const auto& rays = f.max_cones()[cone].rays();
  const IntMatrix& inv = f.cone_inverse(cone);
  LatticeVector m(f.dimension());
  for (std::size_t j = 0; j < f.dimension(); ++j)
    for (std::size_t i = 0; i < rays.size(); ++i) m[j] -= inv(i, j) * d.coefficients[rays[i]];
  return m;
}

/// Convexity test of the support function of D on a complete fan.
inline NefStatus nef_ample_status(const Fan& f, const TDivisor& d) {
  if (d.coefficients.size() != f.rays().size())
    throw Error(ErrorKind::DimensionMismatch, "divisor has wrong number of coefficients");
  bool strict = true;
  for (std::size_t c = 0; c < f.max_cones().size(); ++c) {
    const LatticeVector m = support_functional(f, c, d);
    for (std::size_t r = 0; r < f.rays().size(); ++r) {
      if (f.max_cones()[c].contains(r)) continue;
      const Integer lhs = dot(m, f.generator(r));
      const Integer rhs = -d.coefficients[r];
      if (lhs < rhs) return NefStatus::NotNef;
      if (lhs == rhs) strict = false;
    }
  }
  return strict ? NefStatus::Ample : NefStatus::NefNotAmple;
}

/// Fano class from the anticanonical degrees of the primitive relations.
inline FanoClass classify_by_degrees(const std::vector<PrimitiveRelation>& relations) {
  bool positive = true;
  for (const auto& r : relations) {
    if (r.degree < 0) return FanoClass::NotWeakFano;
    if (r.degree == 0) positive = false;
  }
  return positive ? FanoClass::Fano : FanoClass::WeakFanoNotFano;
}

inline FanoClass classify_by_support(NefStatus s) {
  switch (s) {
    case NefStatus::Ample: return FanoClass::Fano;
    case NefStatus::NefNotAmple: return FanoClass::WeakFanoNotFano;
    case NefStatus::NotNef: return FanoClass::NotWeakFano;
  }
  return FanoClass::NotWeakFano;
}

struct FanoReport {
  FanoClass classification = FanoClass::NotWeakFano;
  NefStatus anticanonical = NefStatus::NotNef;
  std::vector<PrimitiveRelation> relations;
  std::vector<Integer> degrees;
};

/// Classifies -K by both the support-function test and the primitive-relation
/// degrees; the two must agree. Bigness of a nef -K is automatic on a
/// complete toric variety and is not tested separately.
inline FanoReport classify_fano(const Fan& f) {
  FanoReport report;
  report.anticanonical = nef_ample_status(f, TDivisor::anticanonical(f));
  report.relations = primitive_relations(f);
  for (const auto& r : report.relations) report.degrees.push_back(r.degree);
  report.classification = classify_by_support(report.anticanonical);
  const FanoClass by_degree = classify_by_degrees(report.relations);
  if (by_degree != report.classification)
    throw Error(ErrorKind::InternalError,
                "support function says " + std::string(to_string(report.classification)) +
                    " but relation degrees say " + std::string(to_string(by_degree)));
  return report;
}

}  // namespace toricdef
