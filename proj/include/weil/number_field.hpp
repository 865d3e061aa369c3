#pragma once

// Classical invariants of Q and of quadratic fields Q(sqrt(d)): signature,
// roots of unity, class number from binary quadratic forms, fundamental
// unit and regulator from continued fractions. Nothing here evaluates an
// L-function.

#include "weil/abelian.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace weil::nf {

using abelian::FgAbGroup;
using abelian::Integer;

// Why d fails to be a fundamental discriminant, or nullopt if it is one.
std::optional<std::string> fundamental_discriminant_failure(long d);
bool is_fundamental_discriminant(long d);

// Either Q or the quadratic field of a fundamental discriminant.
class FieldId {
 public:
  static FieldId rationals() { return FieldId(1, true); }
  // Throws ValidationError naming the failed criterion.
  static FieldId quadratic(long d);
  // "Q" (or "q") for the rationals, otherwise a decimal discriminant.
  static FieldId parse(std::string_view text);

  bool is_rational() const { return rational_; }
  // 1 for Q.
  long discriminant() const { return d_; }
  bool is_imaginary() const { return !rational_ && d_ < 0; }
  bool is_real_quadratic() const { return !rational_ && d_ > 0; }
  // "Q" or the discriminant in decimal.
  std::string name() const;

  // Q first, then by |d|, negative before positive.
  std::strong_ordering operator<=>(const FieldId& other) const;
  bool operator==(const FieldId& other) const = default;

 private:
  FieldId(long d, bool rational) : d_(d), rational_(rational) {}
  long d_;
  bool rational_;
};

// Q together with every fundamental discriminant |d| <= bound, in FieldId order.
std::vector<FieldId> corpus(long bound);

// Kronecker symbol (d/n).
int kronecker_symbol(long d, unsigned long n);

// a -> (d/a), the real primitive character of conductor |d|.
class KroneckerCharacter {
 public:
  explicit KroneckerCharacter(const FieldId& field);

  long discriminant() const { return d_; }
  unsigned long modulus() const { return q_; }
  int operator()(long a) const;
  bool is_even() const { return d_ > 0; }
  const std::vector<int>& values() const { return values_; }

 private:
  long d_;
  unsigned long q_;
  std::vector<int> values_;
};

// a x^2 + b x y + c y^2
struct BinaryForm {
  long a = 0;
  long b = 0;
  long c = 0;

  long discriminant() const { return b * b - 4 * a * c; }
  auto operator<=>(const BinaryForm&) const = default;
};

// Reduced positive definite forms of discriminant d < 0:
// |b| <= a <= c, and b >= 0 when |b| = a or a = c.
std::vector<BinaryForm> reduced_definite_forms(long d);
BinaryForm reduce_definite(BinaryForm f);

// Reduced indefinite forms of discriminant d > 0 (0 < b < sqrt d and
// sqrt d - b < 2|a| < sqrt d + b), grouped into cycles of the reduction
// operator. Each cycle is one proper equivalence class.
std::vector<std::vector<BinaryForm>> reduced_indefinite_cycles(long d);

// Imaginary: number of reduced forms (h). Real: number of cycles (h+).
// Throws ValidationError for non-fundamental d.
std::size_t enumerate_reduced_forms(long d);

// Independent recount of the same quantity. Imaginary: reduce every form in
// a box of non-reduced representatives and count distinct results. Real:
// count cycles of Zagier-reduced forms (a, c > 0, b > a + c).
std::size_t recount_classes(long d);

// Dirichlet composition of primitive forms of equal discriminant, unreduced.
BinaryForm compose(const BinaryForm& f, const BinaryForm& g);

// Class group of an imaginary quadratic field as an abstract group.
FgAbGroup imaginary_class_group(long d);

// The unit (x + y sqrt d) / 2.
struct QuadraticUnit {
  Integer x;
  Integer y;
  bool operator==(const QuadraticUnit&) const = default;
};

struct FundamentalUnit {
  QuadraticUnit unit;
  // log(unit), absolute error well below 1e-12.
  long double regulator = 0;
  // Norm of the unit, +1 or -1.
  int norm = 0;
};

// Smallest unit > 1 of the ring of integers of Q(sqrt d), d > 0, from the
// continued fraction of (sigma + sqrt d) / 2 with sigma = d mod 2.
FundamentalUnit continued_fraction_unit(long d);

// log((x + y sqrt d) / 2) evaluated at 50 significant digits.
long double log_quadratic(long d, const QuadraticUnit& u);

struct QuadraticFieldInvariants {
  FieldId field = FieldId::rationals();
  int r1 = 1;
  int r2 = 0;
  // |mu(F)|
  int w = 2;
  // Class number and, for real fields, the narrow class number.
  long h = 1;
  std::optional<long> narrow_h;
  std::optional<QuadraticUnit> fundamental_unit;
  // Real fields only; 0 otherwise.
  int unit_norm = 0;
  // 1 when the unit rank is zero.
  long double regulator = 1;
  // Abstract class group. Imaginary fields get the structure from form
  // composition; otherwise a single cyclic factor of order h.
  FgAbGroup class_group;

  int degree() const { return r1 + 2 * r2; }
  std::size_t unit_rank() const { return static_cast<std::size_t>(r1 + r2 - 1); }
};

QuadraticFieldInvariants field_invariants(const FieldId& field);

}  // namespace weil::nf
