#pragma once

// Slow, independent reference computations used only by the tests. Nothing
// here calls the library's linear algebra.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "toricdef/fan.hpp"

namespace oracle {

using Mat = std::vector<std::vector<long long>>;

/// Laplace expansion along the first row.
inline long long cofactor_det(const Mat& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  long long total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    Mat minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<long long> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    long long term = m[0][c] * cofactor_det(minor);
    total += (c % 2 == 0) ? term : -term;
  }
  return total;
}

inline long long to_ll(const toricdef::Integer& x) { return static_cast<long long>(x); }

inline std::vector<long long> to_ll(const toricdef::LatticeVector& v) {
  std::vector<long long> out;
  for (const auto& x : v) out.push_back(to_ll(x));
  return out;
}

/// Columns -> square matrix.
inline Mat from_columns(const std::vector<std::vector<long long>>& cols) {
  const std::size_t n = cols.size();
  Mat m(n, std::vector<long long>(n));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) m[r][c] = cols[c][r];
  return m;
}

/// k vectors in Z^d extend to a basis iff the gcd of their k x k minors is 1.
inline bool minors_extend(const std::vector<std::vector<long long>>& vs, std::size_t d) {
  const std::size_t k = vs.size();
  if (k == 0) return true;
  long long g = 0;
  std::vector<bool> pick(d, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  do {
    Mat m;
    for (std::size_t r = 0; r < d; ++r) {
      if (!pick[r]) continue;
      std::vector<long long> row;
      for (std::size_t c = 0; c < k; ++c) row.push_back(vs[c][r]);
      m.push_back(row);
    }
    g = std::gcd(g, cofactor_det(m));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return g == 1;
}

/// Cramer's rule: is x a nonnegative combination of the columns (a basis)?
inline bool in_cone(const std::vector<std::vector<long long>>& cols, const std::vector<long long>& x) {
  const long long det = cofactor_det(from_columns(cols));
  if (det == 0) return false;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    auto replaced = cols;
    replaced[i] = x;
    long long num = cofactor_det(from_columns(replaced));
    if ((det > 0 && num < 0) || (det < 0 && num > 0)) return false;
  }
  return true;
}

inline bool fan_contains(const toricdef::Fan& f, const std::vector<long long>& x) {
  for (const auto& c : f.max_cones()) {
    std::vector<std::vector<long long>> cols;
    for (auto r : c.rays()) cols.push_back(to_ll(f.generator(r)));
    if (in_cone(cols, x)) return true;
  }
  return false;
}

/// Samples `samples` random integer directions with a fixed seed; the fan is
/// judged complete iff every sample lies in a maximal cone.
inline bool monte_carlo_complete(const toricdef::Fan& f, int samples = 1000, unsigned seed = 20261015) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> coord(-1000, 1000);
  for (int s = 0; s < samples; ++s) {
    std::vector<long long> x(f.dimension());
    do {
      for (auto& v : x) v = coord(rng);
    } while (std::all_of(x.begin(), x.end(), [](long long v) { return v == 0; }));
    if (!fan_contains(f, x)) return false;
  }
  return true;
}

/// All minimal ray subsets not inside a maximal cone, by exhaustive search.
inline std::set<std::vector<std::size_t>> brute_primitive_collections(const toricdef::Fan& f) {
  const std::size_t n = f.rays().size();
  std::vector<std::uint64_t> cones;
  for (const auto& c : f.max_cones()) cones.push_back(c.mask());
  auto is_face = [&](std::uint64_t m) {
    return std::any_of(cones.begin(), cones.end(), [&](std::uint64_t c) { return (c & m) == m; });
  };
  std::set<std::vector<std::size_t>> out;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
    if (is_face(m)) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < n && minimal; ++i)
      if ((m >> i & 1) && !is_face(m & ~(std::uint64_t{1} << i))) minimal = false;
    if (!minimal) continue;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (m >> i & 1) idx.push_back(i);
    out.insert(idx);
  }
  return out;
}

/// A random unimodular matrix as a product of elementary operations.
inline Mat random_unimodular(std::size_t d, std::mt19937_64& rng, int steps = 6) {
  Mat m(d, std::vector<long long>(d, 0));
  for (std::size_t i = 0; i < d; ++i) m[i][i] = 1;
  if (d < 2) return m;
  std::uniform_int_distribution<std::size_t> idx(0, d - 1);
  std::uniform_int_distribution<int> k(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t a = idx(rng), b = idx(rng);
    if (a == b) {
      for (auto& x : m[a]) x = -x;
      continue;
    }
    int c = k(rng);
    for (std::size_t j = 0; j < d; ++j) m[a][j] += c * m[b][j];
  }
  return m;
}

}  // namespace oracle
