#include "weil/abelian.hpp"

#include "weil/errors.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <utility>

namespace weil::abelian {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw ValidationError("IntMatrix: ragged initializer");
    for (long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(std::size_t rows, std::size_t cols,
                              std::span<const Integer> entries) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < entries.size() && i < rows && i < cols; ++i) m(i, i) = entries[i];
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return sgn(v) == 0; });
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && sgn((*this)(i, j)) != 0) return false;
  return true;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (sgn(factor) == 0) return;
  Integer* d = &data_[dst * cols_];
  const Integer* s = &data_[src * cols_];
  for (std::size_t j = 0; j < cols_; ++j)
    if (sgn(s[j]) != 0) mpz_addmul(d[j].get_mpz_t(), s[j].get_mpz_t(), factor.get_mpz_t());
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (sgn(factor) == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    const Integer& s = (*this)(i, src);
    if (sgn(s) != 0) mpz_addmul((*this)(i, dst).get_mpz_t(), s.get_mpz_t(), factor.get_mpz_t());
  }
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) {
    Integer& v = (*this)(i, j);
    v = -v;
  }
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw ValidationError("IntMatrix product: shape mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Integer& bkj = b(k, j);
        if (sgn(bkj) != 0) mpz_addmul(c(i, j).get_mpz_t(), aik.get_mpz_t(), bkj.get_mpz_t());
      }
    }
  }
  return c;
}

std::vector<Integer> operator*(const IntMatrix& a, std::span<const Integer> v) {
  if (a.cols() != v.size()) throw ValidationError("IntMatrix-vector product: shape mismatch");
  std::vector<Integer> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (sgn(a(i, j)) != 0 && sgn(v[j]) != 0)
        mpz_addmul(out[i].get_mpz_t(), a(i, j).get_mpz_t(), v[j].get_mpz_t());
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("determinant: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(a(p, k)) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = std::move(v);
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace {

// Smith reduction in place on `a`. When `u`/`v` are non-null the row and
// column operations are replayed on them so that u * original * v = a.
// Pivot rule: smallest nonzero absolute value, ties broken by row-major
// position.
class SmithReducer {
 public:
  SmithReducer(IntMatrix& a, IntMatrix* u, IntMatrix* v) : a_(a), u_(u), v_(v) {}

  void run() {
    const std::size_t limit = std::min(a_.rows(), a_.cols());
    for (std::size_t t = 0; t < limit; ++t) {
      auto pivot = find_pivot(t);
      if (!pivot) break;
      move_to(t, pivot->first, pivot->second);
      reduce_at(t);
      if (sgn(a_(t, t)) < 0) {
        a_.negate_row(t);
        if (u_) u_->negate_row(t);
      }
    }
  }

 private:
  std::optional<std::pair<std::size_t, std::size_t>> find_pivot(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t i = t; i < a_.rows(); ++i) {
      for (std::size_t j = t; j < a_.cols(); ++j) {
        const Integer& x = a_(i, j);
        if (sgn(x) == 0) continue;
        if (!best || mpz_cmpabs(x.get_mpz_t(), best_abs.get_mpz_t()) < 0) {
          best = {i, j};
          best_abs = abs(x);
          if (best_abs == 1) return best;
        }
      }
    }
    return best;
  }

  void move_to(std::size_t t, std::size_t i, std::size_t j) {
    if (i != t) {
      a_.swap_rows(t, i);
      if (u_) u_->swap_rows(t, i);
    }
    if (j != t) {
      a_.swap_cols(t, j);
      if (v_) v_->swap_cols(t, j);
    }
  }

  void row_op(std::size_t dst, std::size_t src, const Integer& f) {
    a_.add_row_multiple(dst, src, f);
    if (u_) u_->add_row_multiple(dst, src, f);
  }

  void col_op(std::size_t dst, std::size_t src, const Integer& f) {
    a_.add_col_multiple(dst, src, f);
    if (v_) v_->add_col_multiple(dst, src, f);
  }

  // Smallest nonzero entry in row t / column t beyond the pivot.
  std::optional<std::pair<std::size_t, std::size_t>> smaller_in_cross(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs = abs(a_(t, t));
    for (std::size_t i = t + 1; i < a_.rows(); ++i) {
      if (sgn(a_(i, t)) != 0 && mpz_cmpabs(a_(i, t).get_mpz_t(), best_abs.get_mpz_t()) < 0) {
        best = {i, t};
        best_abs = abs(a_(i, t));
      }
    }
    for (std::size_t j = t + 1; j < a_.cols(); ++j) {
      if (sgn(a_(t, j)) != 0 && mpz_cmpabs(a_(t, j).get_mpz_t(), best_abs.get_mpz_t()) < 0) {
        best = {t, j};
        best_abs = abs(a_(t, j));
      }
    }
    return best;
  }

  void reduce_at(std::size_t t) {
    Integer q;
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < a_.rows(); ++i) {
        if (sgn(a_(i, t)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a_(i, t).get_mpz_t(), a_(t, t).get_mpz_t());
        row_op(i, t, -q);
        if (sgn(a_(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < a_.cols(); ++j) {
        if (sgn(a_(t, j)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a_(t, j).get_mpz_t(), a_(t, t).get_mpz_t());
        col_op(j, t, -q);
        if (sgn(a_(t, j)) != 0) clean = false;
      }
      if (!clean) {
        if (auto p = smaller_in_cross(t)) move_to(t, p->first, p->second);
        continue;
      }
      // Row and column t are clear; enforce that the pivot divides the rest.
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < a_.rows() && !offender; ++i)
        for (std::size_t j = t + 1; j < a_.cols(); ++j)
          if (sgn(a_(i, j)) != 0 && !mpz_divisible_p(a_(i, j).get_mpz_t(), a_(t, t).get_mpz_t())) {
            offender = i;
            break;
          }
      if (!offender) return;
      row_op(t, *offender, Integer(1));
    }
  }

  IntMatrix& a_;
  IntMatrix* u_;
  IntMatrix* v_;
};

}  // namespace

SnfResult smith_normal_form(const IntMatrix& m) {
  SnfResult r{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols())};
  SmithReducer(r.D, &r.U, &r.V).run();
  return r;
}

std::vector<Integer> smith_diagonal(const IntMatrix& m) {
  IntMatrix a = m;
  SmithReducer(a, nullptr, nullptr).run();
  std::vector<Integer> diag;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()) && sgn(a(i, i)) != 0; ++i)
    diag.push_back(a(i, i));
  return diag;
}

std::size_t rank(const IntMatrix& m) { return smith_diagonal(m).size(); }

IntMatrix kernel_basis(const IntMatrix& m) {
  const SnfResult s = smith_normal_form(m);
  std::size_t r = 0;
  while (r < std::min(m.rows(), m.cols()) && sgn(s.D(r, r)) != 0) ++r;
  IntMatrix k(m.cols(), m.cols() - r);
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t j = r; j < m.cols(); ++j) k(i, j - r) = s.V(i, j);
  return k;
}

bool image_contains(const IntMatrix& m, std::span<const Integer> v) {
  if (v.size() != m.rows()) throw ValidationError("image_contains: vector length mismatch");
  const SnfResult s = smith_normal_form(m);
  const std::vector<Integer> w = s.U * v;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const bool has_pivot = i < m.cols() && sgn(s.D(i, i)) != 0;
    if (!has_pivot) {
      if (sgn(w[i]) != 0) return false;
    } else if (!mpz_divisible_p(w[i].get_mpz_t(), s.D(i, i).get_mpz_t())) {
      return false;
    }
  }
  return true;
}

FgAbGroup::FgAbGroup(std::size_t free_rank, std::vector<Integer> invariant_factors)
    : free_rank_(free_rank), factors_(std::move(invariant_factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2)
      throw ValidationError("FgAbGroup: invariant factor " + factors_[i].get_str() + " is below 2");
    if (i > 0 && !mpz_divisible_p(factors_[i].get_mpz_t(), factors_[i - 1].get_mpz_t()))
      throw ValidationError("FgAbGroup: " + factors_[i - 1].get_str() + " does not divide " +
                            factors_[i].get_str());
  }
}

FgAbGroup FgAbGroup::cyclic(const Integer& n) {
  const Integer a = abs(n);
  if (a == 0) return free(1);
  if (a == 1) return trivial();
  return FgAbGroup(0, {a});
}

FgAbGroup FgAbGroup::from_cyclic_orders(std::size_t free_rank, std::span<const Integer> orders) {
  std::vector<Integer> finite;
  for (const auto& o : orders) {
    if (sgn(o) == 0)
      ++free_rank;
    else
      finite.push_back(abs(o));
  }
  const IntMatrix diag = IntMatrix::diagonal(finite.size(), finite.size(), finite);
  std::vector<Integer> factors;
  for (auto& d : smith_diagonal(diag))
    if (d > 1) factors.push_back(std::move(d));
  return FgAbGroup(free_rank, std::move(factors));
}

Integer FgAbGroup::torsion_order() const {
  Integer p = 1;
  for (const auto& f : factors_) p *= f;
  return p;
}

FgAbGroup FgAbGroup::direct_sum(const FgAbGroup& other) const {
  std::vector<Integer> orders = factors_;
  orders.insert(orders.end(), other.factors_.begin(), other.factors_.end());
  return from_cyclic_orders(free_rank_ + other.free_rank_, orders);
}

std::string FgAbGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank_ > 0) {
    os << 'Z';
    if (free_rank_ > 1) os << '^' << free_rank_;
    first = false;
  }
  for (const auto& f : factors_) {
    os << (first ? "" : " + ") << "Z/" << f;
    first = false;
  }
  return os.str();
}

FgAbGroup group_from_presentation(const IntMatrix& relations, std::size_t generators) {
  if (relations.cols() != generators && !(relations.rows() == 0))
    throw ValidationError("group_from_presentation: relations have " +
                          std::to_string(relations.cols()) + " columns, expected " +
                          std::to_string(generators));
  const std::vector<Integer> diag = smith_diagonal(relations);
  std::vector<Integer> factors;
  for (const auto& d : diag)
    if (d > 1) factors.push_back(d);
  return FgAbGroup(generators - diag.size(), std::move(factors));
}

CochainComplex::CochainComplex(std::vector<std::size_t> dims, std::vector<IntMatrix> boundaries)
    : dims_(std::move(dims)), boundaries_(std::move(boundaries)) {
  const std::size_t expected = dims_.empty() ? 0 : dims_.size() - 1;
  if (boundaries_.size() != expected)
    throw ValidationError("CochainComplex: " + std::to_string(dims_.size()) + " terms need " +
                          std::to_string(expected) + " boundaries, got " +
                          std::to_string(boundaries_.size()));
  for (std::size_t p = 0; p < boundaries_.size(); ++p) {
    const auto& b = boundaries_[p];
    if (b.rows() != dims_[p + 1] || b.cols() != dims_[p])
      throw ValidationError("CochainComplex: boundary " + std::to_string(p) + " has shape " +
                            std::to_string(b.rows()) + "x" + std::to_string(b.cols()) +
                            ", expected " + std::to_string(dims_[p + 1]) + "x" +
                            std::to_string(dims_[p]));
  }
  for (std::size_t p = 0; p + 1 < boundaries_.size(); ++p) {
    if (!(boundaries_[p + 1] * boundaries_[p]).is_zero())
      throw MalformedComplex("CochainComplex: boundary " + std::to_string(p + 1) + " o " +
                             std::to_string(p) + " is not zero");
  }
}

FgAbGroup complex_cohomology(const CochainComplex& c, std::size_t q) {
  if (c.dims().empty()) {
    if (q == 0) return FgAbGroup::trivial();
    throw ValidationError("complex_cohomology: degree out of range");
  }
  if (q > c.top_degree())
    throw ValidationError("complex_cohomology: degree " + std::to_string(q) +
                          " exceeds top degree " + std::to_string(c.top_degree()));
  const std::size_t outgoing = q < c.top_degree() ? rank(c.boundaries()[q]) : 0;
  std::vector<Integer> incoming;
  if (q > 0) incoming = smith_diagonal(c.boundaries()[q - 1]);
  // ker(d_q) is saturated in C^q, so the torsion of ker/im is the torsion
  // of C^q / im(d_{q-1}).
  std::vector<Integer> factors;
  for (const auto& d : incoming)
    if (d > 1) factors.push_back(d);
  return FgAbGroup(c.dims()[q] - outgoing - incoming.size(), std::move(factors));
}

}  // namespace weil::abelian
