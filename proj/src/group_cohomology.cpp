#include "weil/group_cohomology.hpp"

#include "weil/errors.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <utility>

namespace weil::gcoh {

FiniteGroup::FiniteGroup(std::size_t order, std::vector<std::size_t> table, std::size_t identity)
    : order_(order), table_(std::move(table)), identity_(identity), inverse_(order, order) {
  if (order_ == 0) throw ValidationError("FiniteGroup: order must be positive");
  if (table_.size() != order_ * order_)
    throw ValidationError("FiniteGroup: table must have order^2 entries");
  if (identity_ >= order_) throw ValidationError("FiniteGroup: identity index out of range");
  for (std::size_t v : table_)
    if (v >= order_) throw ValidationError("FiniteGroup: table entry out of range");
  for (std::size_t a = 0; a < order_; ++a)
    if (mul(identity_, a) != a || mul(a, identity_) != a)
      throw ValidationError("FiniteGroup: identity is not two-sided");
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = 0; b < order_; ++b)
      for (std::size_t c = 0; c < order_; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw ValidationError("FiniteGroup: table is not associative");
  for (std::size_t a = 0; a < order_; ++a) {
    for (std::size_t b = 0; b < order_; ++b)
      if (mul(a, b) == identity_ && mul(b, a) == identity_) inverse_[a] = b;
    if (inverse_[a] == order_) throw ValidationError("FiniteGroup: element without inverse");
  }
}

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) throw ValidationError("FiniteGroup::cyclic: order must be positive");
  std::vector<std::size_t> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = (a + b) % n;
  return FiniteGroup(n, std::move(t), 0);
}

FiniteGroup FiniteGroup::symmetric3() {
  // Permutations of {0,1,2} in lexicographic order; composition (p*q)(x) = p(q(x)).
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto index_of = [&](const std::array<int, 3>& q) {
    for (std::size_t i = 0; i < perms.size(); ++i)
      if (perms[i] == q) return i;
    return perms.size();
  };
  std::vector<std::size_t> t(36);
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
      t[a * 6 + b] = index_of(c);
    }
  return FiniteGroup(6, std::move(t), 0);
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t n = a.order() * b.order();
  std::vector<std::size_t> t(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t l = a.mul(x / b.order(), y / b.order());
      const std::size_t r = b.mul(x % b.order(), y % b.order());
      t[x * n + y] = l * b.order() + r;
    }
  return FiniteGroup(n, std::move(t), a.identity() * b.order() + b.identity());
}

GModuleAction::GModuleAction(const FiniteGroup& group, std::size_t rank,
                             std::vector<IntMatrix> action)
    : rank_(rank), action_(std::move(action)) {
  if (action_.size() != group.order())
    throw ValidationError("GModuleAction: need one matrix per group element");
  for (const auto& m : action_) {
    if (m.rows() != rank_ || m.cols() != rank_)
      throw ValidationError("GModuleAction: action matrix has the wrong shape");
    if (abs(abelian::determinant(m)) != 1)
      throw ValidationError("GModuleAction: action matrix is not invertible over Z");
  }
  if (action_[group.identity()] != IntMatrix::identity(rank_))
    throw ValidationError("GModuleAction: identity does not act trivially");
  for (std::size_t g = 0; g < group.order(); ++g)
    for (std::size_t h = 0; h < group.order(); ++h)
      if (action_[group.mul(g, h)] != action_[g] * action_[h])
        throw ValidationError("GModuleAction: action is not a homomorphism");
}

GModuleAction GModuleAction::trivial(const FiniteGroup& group, std::size_t rank) {
  return GModuleAction(group, rank, std::vector<IntMatrix>(group.order(), IntMatrix::identity(rank)));
}

GModuleAction GModuleAction::sign(const FiniteGroup& group, const std::vector<int>& signs) {
  if (signs.size() != group.order()) throw ValidationError("GModuleAction::sign: one sign per element");
  std::vector<IntMatrix> m;
  for (int s : signs) m.push_back(IntMatrix{{s}});
  return GModuleAction(group, 1, std::move(m));
}

namespace {

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

// Checked |G|^p * rank against the budget, guarding overflow.
std::size_t term_rank(std::size_t order, std::size_t p, std::size_t rank, ComplexBudget budget) {
  std::size_t r = rank;
  for (std::size_t i = 0; i < p; ++i) {
    if (r > budget.max_rows / std::max<std::size_t>(order, 1) + 1) {
      r = budget.max_rows + 1;
      break;
    }
    r *= order;
  }
  if (r > budget.max_rows)
    throw BudgetExceeded("cochain group in degree " + std::to_string(p) + " has rank above the " +
                         std::to_string(budget.max_rows) + "-row budget");
  return r;
}

std::vector<std::size_t> decode(std::size_t index, std::size_t length, std::size_t n) {
  std::vector<std::size_t> t(length);
  for (std::size_t k = length; k-- > 0;) {
    t[k] = index % n;
    index /= n;
  }
  return t;
}

std::size_t encode(const std::vector<std::size_t>& t, std::size_t n) {
  std::size_t idx = 0;
  for (std::size_t g : t) idx = idx * n + g;
  return idx;
}

void add_block(IntMatrix& m, std::size_t row_tuple, std::size_t col_tuple, const IntMatrix& block,
               long sign) {
  const std::size_t r = block.rows();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (sgn(block(i, j)) != 0) m(row_tuple * r + i, col_tuple * r + j) += sign * block(i, j);
}

void check_inputs(const FiniteGroup& g, const GModuleAction& a, std::size_t p_max) {
  if (p_max < 1) throw ValidationError("cochain complex: p_max must be at least 1");
  if (a.group_order() != g.order())
    throw ValidationError("cochain complex: action is defined on a group of another order");
  if (a[g.identity()] != IntMatrix::identity(a.rank()))
    throw ValidationError("cochain complex: action does not match group");
}

}  // namespace

CochainComplex build_homogeneous_complex(const FiniteGroup& g, const GModuleAction& a,
                                         std::size_t p_max, ComplexBudget budget) {
  check_inputs(g, a, p_max);
  const std::size_t n = g.order();
  const std::size_t r = a.rank();
  const IntMatrix id = IntMatrix::identity(r);
  std::vector<std::size_t> dims;
  for (std::size_t p = 0; p <= p_max; ++p) dims.push_back(term_rank(n, p, r, budget));

  std::vector<IntMatrix> boundaries;
  for (std::size_t p = 0; p < p_max; ++p) {
    IntMatrix d(dims[p + 1], dims[p]);
    const std::size_t targets = power(n, p + 1);
    for (std::size_t row = 0; row < targets; ++row) {
      // Target tuple (e, g_1, ..., g_{p+1}).
      const auto t = decode(row, p + 1, n);
      // i = 0: f(g_1, ..., g_{p+1}) = g_1 . f(e, g_1^{-1} g_2, ..., g_1^{-1} g_{p+1}).
      const std::size_t g1_inv = g.inverse(t[0]);
      std::vector<std::size_t> shifted;
      for (std::size_t k = 1; k <= p; ++k) shifted.push_back(g.mul(g1_inv, t[k]));
      add_block(d, row, encode(shifted, n), a[t[0]], 1);
      // i >= 1: drop g_i, keeping e in front.
      for (std::size_t i = 1; i <= p + 1; ++i) {
        std::vector<std::size_t> face;
        for (std::size_t k = 0; k <= p; ++k)
          if (k != i - 1) face.push_back(t[k]);
        add_block(d, row, encode(face, n), id, (i % 2 == 0) ? 1 : -1);
      }
    }
    boundaries.push_back(std::move(d));
  }
  return CochainComplex(std::move(dims), std::move(boundaries));
}

CochainComplex build_inhomogeneous_complex(const FiniteGroup& g, const GModuleAction& a,
                                           std::size_t p_max, ComplexBudget budget) {
  check_inputs(g, a, p_max);
  const std::size_t n = g.order();
  const std::size_t r = a.rank();
  const IntMatrix id = IntMatrix::identity(r);
  std::vector<std::size_t> dims;
  for (std::size_t p = 0; p <= p_max; ++p) dims.push_back(term_rank(n, p, r, budget));

  std::vector<IntMatrix> boundaries;
  for (std::size_t p = 0; p < p_max; ++p) {
    IntMatrix d(dims[p + 1], dims[p]);
    const std::size_t targets = power(n, p + 1);
    for (std::size_t row = 0; row < targets; ++row) {
      const auto t = decode(row, p + 1, n);
      // g_1 . f(g_2, ..., g_{p+1})
      add_block(d, row, encode({t.begin() + 1, t.end()}, n), a[t[0]], 1);
      // (-1)^i f(..., g_i g_{i+1}, ...)
      for (std::size_t i = 1; i <= p; ++i) {
        std::vector<std::size_t> merged;
        for (std::size_t k = 0; k <= p; ++k) {
          if (k == i - 1) {
            merged.push_back(g.mul(t[k], t[k + 1]));
            ++k;
          } else {
            merged.push_back(t[k]);
          }
        }
        add_block(d, row, encode(merged, n), id, (i % 2 == 0) ? 1 : -1);
      }
      // (-1)^{p+1} f(g_1, ..., g_p)
      add_block(d, row, encode({t.begin(), t.end() - 1}, n), id, ((p + 1) % 2 == 0) ? 1 : -1);
    }
    boundaries.push_back(std::move(d));
  }
  return CochainComplex(std::move(dims), std::move(boundaries));
}

FgAbGroup group_cohomology_q(const FiniteGroup& g, const GModuleAction& a, std::size_t q,
                             ComplexBudget budget) {
  return abelian::complex_cohomology(build_homogeneous_complex(g, a, q + 1, budget), q);
}

}  // namespace weil::gcoh
