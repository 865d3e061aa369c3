#include "weil/abelian.hpp"
#include "weil/errors.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <functional>
#include <random>

using namespace weil::abelian;
using weil::test::random_matrix;
using weil::test::random_unimodular;

namespace {

// gcd of all k x k minors, by enumeration.
Integer determinantal_divisor(const IntMatrix& m, std::size_t k) {
  Integer g = 0;
  std::vector<std::size_t> rows(k), cols(k);
  std::function<void(std::size_t, std::size_t, std::vector<std::size_t>&, std::size_t,
                     const std::function<void()>&)>
      choose = [&](std::size_t start, std::size_t n, std::vector<std::size_t>& out, std::size_t depth,
                   const std::function<void()>& leaf) {
        if (depth == out.size()) {
          leaf();
          return;
        }
        for (std::size_t i = start; i < n; ++i) {
          out[depth] = i;
          choose(i + 1, n, out, depth + 1, leaf);
        }
      };
  choose(0, m.rows(), rows, 0, [&] {
    choose(0, m.cols(), cols, 0, [&] {
      IntMatrix sub(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rows[i], cols[j]);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), determinant(sub).get_mpz_t());
    });
  });
  return g;
}

// Invariant factors d_k = D_k / D_{k-1} from determinantal divisors.
std::vector<Integer> invariant_factors_by_minors(const IntMatrix& m) {
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    const Integer dk = determinantal_divisor(m, k);
    if (dk == 0) break;
    out.push_back(dk / prev);
    prev = dk;
  }
  return out;
}

void check_snf(const IntMatrix& m) {
  const SnfResult s = smith_normal_form(m);
  CHECK(s.U * m * s.V == s.D);
  CHECK(abs(determinant(s.U)) == 1);
  CHECK(abs(determinant(s.V)) == 1);
  CHECK(s.D.is_diagonal());
  const std::size_t n = std::min(m.rows(), m.cols());
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(s.D(i, i) >= 0);
    if (i + 1 < n && s.D(i, i) != 0)
      CHECK(mpz_divisible_p(s.D(i + 1, i + 1).get_mpz_t(), s.D(i, i).get_mpz_t()));
    if (s.D(i, i) == 0 && i + 1 < n) CHECK(s.D(i + 1, i + 1) == 0);
  }
}

}  // namespace

TEST_CASE("smith normal form: identity and zero") {
  const auto id = smith_normal_form(IntMatrix::identity(2));
  CHECK(id.D == IntMatrix::identity(2));
  const auto zero = smith_normal_form(IntMatrix(2, 3));
  CHECK(zero.D == IntMatrix(2, 3));
  const auto empty = smith_normal_form(IntMatrix(0, 3));
  CHECK(empty.D.rows() == 0);
  CHECK(empty.V == IntMatrix::identity(3));
}

TEST_CASE("smith normal form of [[2,4],[6,8]]") {
  const IntMatrix m{{2, 4}, {6, 8}};
  // gcd of entries is 2 and |det| = |16 - 24| = 8, so the diagonal is (2, 4).
  CHECK(determinantal_divisor(m, 1) == 2);
  CHECK(abs(determinant(m)) == 8);
  const auto s = smith_normal_form(m);
  CHECK(s.D == (IntMatrix{{2, 0}, {0, 4}}));
  check_snf(m);
}

TEST_CASE("smith normal form: random matrices against determinantal divisors") {
  std::mt19937 rng(20261016);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  for (int trial = 0; trial < 150; ++trial) {
    const IntMatrix m = random_matrix(rng, dim(rng), dim(rng), -6, 6);
    check_snf(m);
    CHECK(smith_diagonal(m) == invariant_factors_by_minors(m));
  }
}

TEST_CASE("smith normal form: rank-deficient and large-entry inputs") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const IntMatrix a = random_matrix(rng, 5, 2, -9, 9);
    const IntMatrix b = random_matrix(rng, 2, 6, -9, 9);
    const IntMatrix m = a * b;
    check_snf(m);
    CHECK(rank(m) <= 2);
  }
  IntMatrix big{{1, 0}, {0, 1}};
  big(0, 0) = Integer("123456789012345678901234567890");
  big(1, 1) = Integer("987654321098765432109876543210");
  check_snf(big);
  CHECK(smith_diagonal(big) == invariant_factors_by_minors(big));
}

TEST_CASE("smith normal form is deterministic") {
  const IntMatrix m{{4, 6, 2}, {6, 9, 3}, {2, 5, 7}};
  const auto a = smith_normal_form(m);
  const auto b = smith_normal_form(m);
  CHECK(a.U == b.U);
  CHECK(a.V == b.V);
  CHECK(a.D == b.D);
}

TEST_CASE("FgAbGroup normal form") {
  CHECK(FgAbGroup().is_trivial());
  CHECK(FgAbGroup().torsion_order() == 1);
  CHECK(FgAbGroup::cyclic(1).is_trivial());
  CHECK(FgAbGroup::cyclic(0) == FgAbGroup::free(1));
  const Integer orders[] = {6, 4};
  CHECK(FgAbGroup::from_cyclic_orders(1, orders) == FgAbGroup(1, {2, 12}));
  CHECK(FgAbGroup(1, {2, 12}).to_string() == "Z + Z/2 + Z/12");
  CHECK(FgAbGroup::free(2).to_string() == "Z^2");
  CHECK(FgAbGroup().to_string() == "0");
  CHECK_THROWS_AS(FgAbGroup(0, {4, 6}), weil::ValidationError);
  CHECK_THROWS_AS(FgAbGroup(0, {1}), weil::ValidationError);
  CHECK(FgAbGroup::cyclic(2).direct_sum(FgAbGroup::cyclic(3)) == FgAbGroup::cyclic(6));
}

TEST_CASE("group_from_presentation examples") {
  CHECK(group_from_presentation(IntMatrix(0, 2), 2) == FgAbGroup::free(2));
  CHECK(group_from_presentation(IntMatrix{{2}}, 1) == FgAbGroup::cyclic(2));
  const IntMatrix rel{{2, 0}, {0, 4}, {0, 0}};
  CHECK(group_from_presentation(rel, 2) == FgAbGroup(0, {2, 4}));
  CHECK_THROWS_AS(group_from_presentation(IntMatrix{{1, 2, 3}}, 2), weil::ValidationError);
}

TEST_CASE("group_from_presentation is invariant under unimodular changes") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const IntMatrix rel = random_matrix(rng, 3, 3, -5, 5);
    const FgAbGroup g = group_from_presentation(rel, 3);
    const auto [u, u_inv] = random_unimodular(rng, 3);
    CHECK(group_from_presentation(u * rel, 3) == g);
    // Permuting generators permutes the columns.
    IntMatrix permuted = rel;
    permuted.swap_cols(0, 2);
    CHECK(group_from_presentation(permuted, 3) == g);
    const auto [v, v_inv] = random_unimodular(rng, 3);
    CHECK(group_from_presentation(rel * v, 3) == g);
  }
}

TEST_CASE("kernel_basis and image_contains") {
  const IntMatrix m{{2, 4, 6}};
  const IntMatrix k = kernel_basis(m);
  CHECK(k.cols() == 2);
  CHECK((m * k).is_zero());
  const Integer v1[] = {4};
  const Integer v2[] = {3};
  CHECK(image_contains(m, v1));
  CHECK_FALSE(image_contains(m, v2));
  const IntMatrix col{{2}, {0}};
  const Integer in[] = {6, 0};
  const Integer out[] = {6, 1};
  CHECK(image_contains(col, in));
  CHECK_FALSE(image_contains(col, out));
}

TEST_CASE("complex_cohomology examples") {
  const IntMatrix times5{{5}};
  const CochainComplex mult({1, 1}, {times5});
  CHECK(complex_cohomology(mult, 1) == FgAbGroup::cyclic(5));
  CHECK(complex_cohomology(mult, 0) == FgAbGroup::trivial());
  const CochainComplex zero({1, 1}, {IntMatrix{{0}}});
  CHECK(complex_cohomology(zero, 0) == FgAbGroup::free(1));
  CHECK(complex_cohomology(zero, 1) == FgAbGroup::free(1));
  CHECK_THROWS_AS(complex_cohomology(zero, 2), weil::ValidationError);
}

TEST_CASE("complex_cohomology rejects malformed complexes") {
  CHECK_THROWS_AS(CochainComplex({1, 1, 1}, {IntMatrix{{1}}, IntMatrix{{1}}}), weil::MalformedComplex);
  CHECK_THROWS_AS(CochainComplex({1, 2}, {IntMatrix{{1}}}), weil::ValidationError);
  CHECK_THROWS_AS(CochainComplex({1, 1}, {}), weil::ValidationError);
}

namespace {

// A complex built as a direct sum of elementary pieces 0 -> Z -(k)-> Z -> 0
// and free Z's, conjugated by random unimodular changes of basis in each
// degree. Its cohomology is known from the pieces.
struct KnownComplex {
  CochainComplex complex;
  std::vector<FgAbGroup> cohomology;
  std::vector<std::size_t> boundary_ranks;
};

KnownComplex random_known_complex(std::mt19937& rng) {
  std::uniform_int_distribution<int> small(0, 2);
  std::uniform_int_distribution<long> mult(-6, 6);
  const std::size_t degrees = 4;
  std::vector<std::size_t> dims(degrees, 0);
  struct Piece {
    std::size_t degree;
    long k;
  };
  std::vector<Piece> pieces;
  std::vector<std::size_t> free_extra(degrees, 0);
  for (std::size_t p = 0; p + 1 < degrees; ++p)
    for (int n = small(rng); n > 0; --n) pieces.push_back({p, mult(rng)});
  for (std::size_t p = 0; p < degrees; ++p) free_extra[p] = static_cast<std::size_t>(small(rng));

  for (const auto& pc : pieces) {
    ++dims[pc.degree];
    ++dims[pc.degree + 1];
  }
  for (std::size_t p = 0; p < degrees; ++p) dims[p] += free_extra[p];

  std::vector<IntMatrix> bounds;
  for (std::size_t p = 0; p + 1 < degrees; ++p) bounds.emplace_back(dims[p + 1], dims[p]);
  std::vector<std::size_t> cursor(degrees, 0);
  std::vector<std::vector<Integer>> torsion(degrees);
  std::vector<std::size_t> free_rank = free_extra;
  std::vector<std::size_t> ranks(degrees - 1, 0);
  for (const auto& pc : pieces) {
    const std::size_t src = cursor[pc.degree]++;
    const std::size_t dst = cursor[pc.degree + 1]++;
    bounds[pc.degree](dst, src) = pc.k;
    if (pc.k == 0) {
      ++free_rank[pc.degree];
      ++free_rank[pc.degree + 1];
    } else {
      ++ranks[pc.degree];
      torsion[pc.degree + 1].push_back(pc.k);
    }
  }
  // Free summands sit after the piece coordinates and have zero maps.
  std::vector<IntMatrix> u(degrees), u_inv(degrees);
  for (std::size_t p = 0; p < degrees; ++p) std::tie(u[p], u_inv[p]) = random_unimodular(rng, dims[p]);
  for (std::size_t p = 0; p + 1 < degrees; ++p) bounds[p] = u[p + 1] * bounds[p] * u_inv[p];

  KnownComplex out{CochainComplex(dims, bounds), {}, ranks};
  for (std::size_t p = 0; p < degrees; ++p)
    out.cohomology.push_back(FgAbGroup::from_cyclic_orders(free_rank[p], torsion[p]));
  return out;
}

}  // namespace

TEST_CASE("complex_cohomology on random complexes with known cohomology") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    const KnownComplex k = random_known_complex(rng);
    std::size_t dim_sum = 0, rank_twice = 0, free_sum = 0;
    for (std::size_t q = 0; q < k.cohomology.size(); ++q) {
      const FgAbGroup h = complex_cohomology(k.complex, q);
      CHECK(h == k.cohomology[q]);
      dim_sum += k.complex.dims()[q];
      free_sum += h.free_rank();
    }
    for (const auto& b : k.complex.boundaries()) rank_twice += 2 * rank(b);
    // Rank-nullity: every boundary rank is counted once at its source and
    // once at its target.
    CHECK(dim_sum == rank_twice + free_sum);
  }
}

TEST_CASE("complex_cohomology is invariant under a further change of basis") {
  std::mt19937 rng(515);
  for (int trial = 0; trial < 20; ++trial) {
    const KnownComplex k = random_known_complex(rng);
    const auto& dims = k.complex.dims();
    std::vector<IntMatrix> u(dims.size()), u_inv(dims.size());
    for (std::size_t p = 0; p < dims.size(); ++p) std::tie(u[p], u_inv[p]) = random_unimodular(rng, dims[p]);
    std::vector<IntMatrix> b = k.complex.boundaries();
    for (std::size_t p = 0; p < b.size(); ++p) b[p] = u[p + 1] * b[p] * u_inv[p];
    const CochainComplex changed(dims, b);
    for (std::size_t q = 0; q < dims.size(); ++q)
      CHECK(complex_cohomology(changed, q) == complex_cohomology(k.complex, q));
  }
}
