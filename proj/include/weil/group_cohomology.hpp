#pragma once

// Cochain complexes of a finite group G acting on a lattice A = Z^rank.
//
// The homogeneous complex has C^p = Map_G(G^{p+1}, A). An equivariant map is
// fixed by its values on tuples (e, g_1, ..., g_p), so C^p is free of rank
// |G|^p * rank with basis indexed by (g_1, ..., g_p) in base-|G| order and
// then by the coordinate of A.

#include "weil/abelian.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace weil::gcoh {

using abelian::CochainComplex;
using abelian::FgAbGroup;
using abelian::IntMatrix;

// Elements are 0..order-1; table[a * order + b] is the index of a*b.
class FiniteGroup {
 public:
  // Throws ValidationError if the table is not a group law.
  FiniteGroup(std::size_t order, std::vector<std::size_t> table, std::size_t identity);

  static FiniteGroup trivial();
  static FiniteGroup cyclic(std::size_t n);
  static FiniteGroup symmetric3();
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

  std::size_t order() const { return order_; }
  std::size_t identity() const { return identity_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a * order_ + b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }

 private:
  std::size_t order_;
  std::vector<std::size_t> table_;
  std::size_t identity_;
  std::vector<std::size_t> inverse_;
};

// Left action of G on Z^rank by integer matrices.
class GModuleAction {
 public:
  // Throws ValidationError unless g -> action[g] is a homomorphism into
  // GL(rank, Z).
  GModuleAction(const FiniteGroup& group, std::size_t rank, std::vector<IntMatrix> action);

  static GModuleAction trivial(const FiniteGroup& group, std::size_t rank = 1);
  // Z with g acting by the sign of a homomorphism G -> {+1, -1}.
  static GModuleAction sign(const FiniteGroup& group, const std::vector<int>& signs);

  std::size_t rank() const { return rank_; }
  std::size_t group_order() const { return action_.size(); }
  const IntMatrix& operator[](std::size_t g) const { return action_[g]; }

 private:
  std::size_t rank_;
  std::vector<IntMatrix> action_;
};

struct ComplexBudget {
  // Largest allowed free rank of any single cochain group.
  std::size_t max_rows = 20000;
};

CochainComplex build_homogeneous_complex(const FiniteGroup& g, const GModuleAction& a,
                                         std::size_t p_max, ComplexBudget budget = {});

CochainComplex build_inhomogeneous_complex(const FiniteGroup& g, const GModuleAction& a,
                                           std::size_t p_max, ComplexBudget budget = {});

// H^q of the homogeneous complex.
FgAbGroup group_cohomology_q(const FiniteGroup& g, const GModuleAction& a, std::size_t q,
                             ComplexBudget budget = {});

}  // namespace weil::gcoh
