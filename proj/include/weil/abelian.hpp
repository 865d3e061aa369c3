#pragma once

// Exact integer linear algebra: dense integer matrices, Smith normal form,
// finitely generated abelian groups and the cohomology of integer cochain
// complexes.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace weil::abelian {

using Integer = mpz_class;

// Dense row-major matrix over Z.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  // Diagonal matrix of the given shape; extra diagonal slots stay zero.
  static IntMatrix diagonal(std::size_t rows, std::size_t cols,
                            std::span<const Integer> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  bool is_zero() const;
  bool is_diagonal() const;
  IntMatrix transpose() const;

  // Row operations used by Smith reduction and by tests that build
  // unimodular changes of basis.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t i);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend std::vector<Integer> operator*(const IntMatrix& a, std::span<const Integer> v);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

// Fraction-free (Bareiss) determinant of a square matrix.
Integer determinant(const IntMatrix& m);

// U * M * V = D with U, V unimodular and D diagonal, non-negative, each
// nonzero entry dividing the next.
struct SnfResult {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
};

SnfResult smith_normal_form(const IntMatrix& m);

// Nonzero diagonal of the Smith form without tracking U and V. This is the
// path used on large coboundary matrices.
std::vector<Integer> smith_diagonal(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);

// Columns form a Z-basis of {x : M x = 0}.
IntMatrix kernel_basis(const IntMatrix& m);

// Whether v lies in the Z-span of the columns of M.
bool image_contains(const IntMatrix& m, std::span<const Integer> v);

// Z^r + Z/a_1 + ... + Z/a_k with 2 <= a_1 | a_2 | ... | a_k.
class FgAbGroup {
 public:
  FgAbGroup() = default;
  // Throws ValidationError unless the factors already form a divisibility
  // chain of integers >= 2.
  FgAbGroup(std::size_t free_rank, std::vector<Integer> invariant_factors);

  static FgAbGroup trivial() { return {}; }
  static FgAbGroup free(std::size_t rank) { return FgAbGroup(rank, {}); }
  // Z/n; n = 1 gives the trivial group and n = 0 gives Z.
  static FgAbGroup cyclic(const Integer& n);
  // Normalizes an arbitrary list of cyclic orders (entries 0 count as Z).
  static FgAbGroup from_cyclic_orders(std::size_t free_rank,
                                      std::span<const Integer> orders);

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Integer>& invariant_factors() const { return factors_; }
  Integer torsion_order() const;
  bool is_trivial() const { return free_rank_ == 0 && factors_.empty(); }
  bool is_finite() const { return free_rank_ == 0; }

  FgAbGroup direct_sum(const FgAbGroup& other) const;

  // "0", "Z", "Z^2 + Z/2 + Z/6".
  std::string to_string() const;

  friend bool operator==(const FgAbGroup&, const FgAbGroup&) = default;

 private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> factors_;
};

// Z^generators modulo the row span of `relations`.
FgAbGroup group_from_presentation(const IntMatrix& relations, std::size_t generators);

// 0 -> C^0 -> C^1 -> ... -> C^N -> 0 over free Z-modules. boundaries[p] is
// the (dims[p+1] x dims[p]) matrix of C^p -> C^{p+1} acting on columns.
class CochainComplex {
 public:
  CochainComplex() = default;
  // Throws ValidationError on shape mismatch and MalformedComplex when some
  // boundaries[p+1] * boundaries[p] is nonzero.
  CochainComplex(std::vector<std::size_t> dims, std::vector<IntMatrix> boundaries);

  std::size_t top_degree() const { return dims_.empty() ? 0 : dims_.size() - 1; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<IntMatrix>& boundaries() const { return boundaries_; }

 private:
  std::vector<std::size_t> dims_;
  std::vector<IntMatrix> boundaries_;
};

// ker(boundaries[q]) / im(boundaries[q-1]); maps past either end are zero.
FgAbGroup complex_cohomology(const CochainComplex& c, std::size_t q);

}  // namespace weil::abelian
