#pragma once

// Random generators shared by the property tests.

#include "weil/abelian.hpp"
#include "weil/exact_determinant.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

namespace weil::test {

using abelian::Integer;
using abelian::IntMatrix;

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, long lo,
                               long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

// Random U in GL(n, Z) together with its inverse, as a product of
// elementary operations.
inline std::pair<IntMatrix, IntMatrix> random_unimodular(std::mt19937& rng, std::size_t n,
                                                         int steps = 12) {
  IntMatrix u = IntMatrix::identity(n);
  IntMatrix inv = IntMatrix::identity(n);
  if (n == 0) return {u, inv};
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<long> coef(-2, 2);
  std::uniform_int_distribution<int> kind(0, 2);
  for (int s = 0; s < steps; ++s) {
    const std::size_t a = idx(rng), b = idx(rng);
    switch (kind(rng)) {
      case 0:  // swap
        u.swap_rows(a, b);
        inv.swap_cols(a, b);
        break;
      case 1:  // negate
        u.negate_row(a);
        for (std::size_t i = 0; i < n; ++i) inv(i, a) = -inv(i, a);
        break;
      default:
        if (a == b) break;
        {
          const Integer c = coef(rng);
          // E = I + c e_{ab}; E^{-1} = I - c e_{ab}.
          u.add_row_multiple(a, b, c);
          inv.add_col_multiple(b, a, -c);
        }
    }
  }
  return {u, inv};
}

inline euler::RealMatrix random_real(std::mt19937& rng, Eigen::Index rows, Eigen::Index cols) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  euler::RealMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

inline euler::RealMatrix random_invertible(std::mt19937& rng, Eigen::Index n) {
  // Diagonally dominated so the condition number stays small.
  euler::RealMatrix m = random_real(rng, n, n);
  m += 3 * euler::RealMatrix::Identity(n, n);
  return m;
}

// A random exact complex in disguise together with the data the product
// oracle needs. In split coordinates V_i = R^{r_{i-1}} + R^{r_i} and T_i
// sends the second summand identically onto the first summand of V_{i+1};
// each V_i is then rewritten through a random invertible B_i.
struct RandomExact {
  euler::BasedRealComplex complex;
  std::vector<std::size_t> ranks;
  std::vector<euler::RealMatrix> b;
};

inline RandomExact random_exact(std::mt19937& rng, std::size_t maps) {
  std::uniform_int_distribution<std::size_t> rank_dist(0, 3);
  std::vector<std::size_t> ranks(maps);
  for (auto& r : ranks) r = rank_dist(rng);
  std::vector<std::size_t> dims(maps + 1);
  for (std::size_t i = 0; i <= maps; ++i)
    dims[i] = (i > 0 ? ranks[i - 1] : 0) + (i < maps ? ranks[i] : 0);

  std::vector<euler::RealMatrix> b(maps + 1);
  for (std::size_t i = 0; i <= maps; ++i) b[i] = random_invertible(rng, static_cast<Eigen::Index>(dims[i]));
  std::vector<euler::RealMatrix> t;
  for (std::size_t i = 0; i < maps; ++i) {
    const auto rows = static_cast<Eigen::Index>(dims[i + 1]);
    const auto cols = static_cast<Eigen::Index>(dims[i]);
    euler::RealMatrix split = euler::RealMatrix::Zero(rows, cols);
    const auto r = static_cast<Eigen::Index>(ranks[i]);
    const auto offset = static_cast<Eigen::Index>(i > 0 ? ranks[i - 1] : 0);
    for (Eigen::Index k = 0; k < r; ++k) split(k, offset + k) = 1;
    t.push_back(b[i + 1] * split * b[i].inverse());
  }
  return {euler::BasedRealComplex(dims, t), ranks, b};
}

inline long double relative_difference(long double a, long double b) {
  return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b));
}

}  // namespace weil::test
