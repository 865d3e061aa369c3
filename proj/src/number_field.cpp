#include "weil/number_field.hpp"

#include "weil/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

namespace weil::nf {

namespace {

long mod(long a, long m) {
  const long r = a % m;
  return r < 0 ? r + m : r;
}

long isqrt(long n) {
  long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::optional<long> square_factor(long n) {
  n = std::labs(n);
  for (long p = 2; p * p <= n; ++p)
    if (n % (p * p) == 0) return p;
  return std::nullopt;
}

// Jacobi symbol (a/n), n odd and positive.
int jacobi(long a, unsigned long n) {
  unsigned long x = static_cast<unsigned long>(mod(a, static_cast<long>(n)));
  int result = 1;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      const unsigned long r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, n);
    if (x % 4 == 3 && n % 4 == 3) result = -result;
    x %= n;
  }
  return n == 1 ? result : 0;
}

void require_fundamental(long d) {
  if (auto why = fundamental_discriminant_failure(d)) throw ValidationError(*why);
}

// x < sqrt(D) for non-square D > 0.
bool below_sqrt(long x, long D) { return x < 0 || x * x < D; }
// x > sqrt(D) for non-square D > 0.
bool above_sqrt(long x, long D) { return x > 0 && x * x > D; }

bool is_reduced_indefinite(const BinaryForm& f, long D) {
  const long two_a = 2 * std::labs(f.a);
  return f.b > 0 && below_sqrt(f.b, D) && above_sqrt(two_a + f.b, D) && below_sqrt(two_a - f.b, D);
}

// Right neighbour (c, b', c') with b' = -b mod 2|c| and sqrt D - 2|c| < b' < sqrt D.
BinaryForm rho(const BinaryForm& f, long D) {
  const long s = isqrt(D);
  const long m = 2 * std::labs(f.c);
  const long b = s - mod(s + f.b, m);
  return {f.c, b, (b * b - D) / (4 * f.c)};
}

BinaryForm zagier_step(const BinaryForm& f, long D) {
  const long s = isqrt(D);
  const long n = (f.b + s) / (2 * f.c) + 1;
  return {f.c, 2 * f.c * n - f.b, f.a - f.b * n + f.c * n * n};
}

struct Egcd {
  long g, x, y;
};

// g = x a + y b, g >= 0.
Egcd egcd(long a, long b) {
  long old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const long q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
    std::tie(old_t, t) = std::pair{t, old_t - q * t};
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

}  // namespace

std::optional<std::string> fundamental_discriminant_failure(long d) {
  const std::string ds = std::to_string(d);
  if (d == 0) return "0 is not a fundamental discriminant";
  if (d == 1) return "1 is the discriminant of Q itself; use the Q marker";
  const long r = mod(d, 4);
  if (r == 2 || r == 3)
    return ds + " is not a fundamental discriminant: " + ds + " = " + std::to_string(r) +
           " (mod 4)";
  if (r == 1) {
    if (auto p = square_factor(d))
      return ds + " is not a fundamental discriminant: divisible by " + std::to_string(*p) + "^2";
    return std::nullopt;
  }
  const long m = d / 4;
  const long rm = mod(m, 4);
  if (rm == 0 || rm == 1)
    return ds + " is not a fundamental discriminant: " + ds + "/4 = " + std::to_string(rm) +
           " (mod 4), need 2 or 3";
  if (auto p = square_factor(m))
    return ds + " is not a fundamental discriminant: " + ds + "/4 is divisible by " +
           std::to_string(*p) + "^2";
  return std::nullopt;
}

bool is_fundamental_discriminant(long d) { return !fundamental_discriminant_failure(d); }

FieldId FieldId::quadratic(long d) {
  require_fundamental(d);
  return FieldId(d, false);
}

FieldId FieldId::parse(std::string_view text) {
  if (text == "Q" || text == "q") return rationals();
  long d = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, d);
  if (ec != std::errc{} || ptr != end || text.empty())
    throw ValidationError("'" + std::string(text) + "' is neither Q nor an integer discriminant");
  return quadratic(d);
}

std::string FieldId::name() const { return rational_ ? "Q" : std::to_string(d_); }

std::strong_ordering FieldId::operator<=>(const FieldId& other) const {
  if (rational_ != other.rational_) return rational_ ? std::strong_ordering::less
                                                     : std::strong_ordering::greater;
  if (auto c = std::labs(d_) <=> std::labs(other.d_); c != 0) return c;
  return d_ <=> other.d_;
}

std::vector<FieldId> corpus(long bound) {
  std::vector<FieldId> out{FieldId::rationals()};
  for (long a = 3; a <= bound; ++a)
    for (long d : {-a, a})
      if (is_fundamental_discriminant(d)) out.push_back(FieldId::quadratic(d));
  return out;
}

int kronecker_symbol(long d, unsigned long n) {
  if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
  int result = 1;
  if (n % 2 == 0) {
    if (d % 2 == 0) return 0;
    unsigned e = 0;
    while (n % 2 == 0) {
      n /= 2;
      ++e;
    }
    const long r = mod(d, 8);
    if (e % 2 == 1 && (r == 3 || r == 5)) result = -result;
  }
  if (n == 1) return result;
  return result * jacobi(d, n);
}

KroneckerCharacter::KroneckerCharacter(const FieldId& field)
    : d_(field.discriminant()), q_(static_cast<unsigned long>(std::labs(field.discriminant()))) {
  values_.reserve(q_);
  for (unsigned long a = 0; a < q_; ++a) values_.push_back(kronecker_symbol(d_, a));
}

int KroneckerCharacter::operator()(long a) const {
  return values_[static_cast<std::size_t>(mod(a, static_cast<long>(q_)))];
}

std::vector<BinaryForm> reduced_definite_forms(long d) {
  if (d >= 0) throw ValidationError("reduced_definite_forms: discriminant must be negative");
  std::vector<BinaryForm> out;
  const long amax = isqrt(-d / 3);
  for (long a = 1; a <= amax; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      const long num = b * b - d;
      if (num % (4 * a) != 0) continue;
      const long c = num / (4 * a);
      if (c < a) continue;
      if (b < 0 && a == c) continue;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      out.push_back({a, b, c});
    }
  }
  return out;
}

BinaryForm reduce_definite(BinaryForm f) {
  const long d = f.discriminant();
  if (d >= 0 || f.a <= 0) throw ValidationError("reduce_definite: form is not positive definite");
  for (;;) {
    if (f.b > f.a || f.b <= -f.a) {
      // Translate b into (-a, a].
      f.b = f.a - mod(f.a - f.b, 2 * f.a);
      f.c = (f.b * f.b - d) / (4 * f.a);
    }
    if (f.a > f.c) {
      f = {f.c, -f.b, f.a};
      continue;
    }
    break;
  }
  if (f.b < 0 && f.a == f.c) f.b = -f.b;
  return f;
}

std::vector<std::vector<BinaryForm>> reduced_indefinite_cycles(long d) {
  if (d <= 0) throw ValidationError("reduced_indefinite_cycles: discriminant must be positive");
  std::vector<BinaryForm> forms;
  for (long b = 1; below_sqrt(b, d); ++b) {
    if (mod(b * b - d, 4) != 0) continue;
    const long n = (d - b * b) / 4;  // = -a c > 0
    for (long a = 1; a <= n; ++a) {
      if (n % a != 0) continue;
      for (long sa : {a, -a}) {
        const BinaryForm f{sa, b, -n / sa};
        if (is_reduced_indefinite(f, d)) forms.push_back(f);
      }
    }
  }
  std::sort(forms.begin(), forms.end());
  std::set<BinaryForm> seen;
  std::vector<std::vector<BinaryForm>> cycles;
  for (const auto& start : forms) {
    if (seen.count(start)) continue;
    std::vector<BinaryForm> cycle;
    BinaryForm f = start;
    do {
      if (!is_reduced_indefinite(f, d) || !seen.insert(f).second)
        throw std::logic_error("reduced_indefinite_cycles: reduction left the reduced set");
      cycle.push_back(f);
      f = rho(f, d);
    } while (f != start);
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

std::size_t enumerate_reduced_forms(long d) {
  require_fundamental(d);
  if (d < 0) return reduced_definite_forms(d).size();
  return reduced_indefinite_cycles(d).size();
}

std::size_t recount_classes(long d) {
  require_fundamental(d);
  if (d < 0) {
    // Every class has a representative with 0 <= b < 2a and a <= sqrt(|d|/3);
    // sweeping a larger box also feeds non-reduced forms through reduction.
    std::set<BinaryForm> classes;
    const long amax = std::max(2 * isqrt(-d), 4L);
    for (long a = 1; a <= amax; ++a)
      for (long b = 0; b < 2 * a; ++b) {
        const long num = b * b - d;
        if (num % (4 * a) != 0) continue;
        const BinaryForm f{a, b, num / (4 * a)};
        if (std::gcd(std::gcd(f.a, f.b), f.c) != 1) continue;
        classes.insert(reduce_definite(f));
      }
    return classes.size();
  }
  std::vector<BinaryForm> forms;
  for (long b = isqrt(d) + 1; b <= d; ++b) {
    if (mod(b * b - d, 4) != 0) continue;
    const long n = (b * b - d) / 4;
    for (long a = 1; a * a <= n; ++a) {
      if (n % a != 0) continue;
      const long c = n / a;
      if (a + c >= b) continue;
      forms.push_back({a, b, c});
      if (a != c) forms.push_back({c, b, a});
    }
  }
  std::set<BinaryForm> all(forms.begin(), forms.end());
  std::set<BinaryForm> seen;
  std::size_t cycles = 0;
  for (const auto& start : all) {
    if (seen.count(start)) continue;
    ++cycles;
    BinaryForm f = start;
    do {
      if (!all.count(f) || !seen.insert(f).second)
        throw std::logic_error("recount_classes: Zagier step left the reduced set");
      f = zagier_step(f, d);
    } while (f != start);
  }
  return cycles;
}

BinaryForm compose(const BinaryForm& f1_in, const BinaryForm& f2_in) {
  BinaryForm f1 = f1_in, f2 = f2_in;
  const long D = f1.discriminant();
  if (f2.discriminant() != D) throw ValidationError("compose: discriminants differ");
  if (f1.a > f2.a) std::swap(f1, f2);
  const long s = (f1.b + f2.b) / 2;
  const long n = f2.b - s;
  long y1 = 0, d = f1.a;
  if (f2.a % f1.a != 0) {
    const Egcd e = egcd(f2.a, f1.a);
    y1 = e.x;
    d = e.g;
  }
  long x2 = 0, y2 = -1, d1 = d;
  if (s % d != 0) {
    const Egcd e = egcd(s, d);
    x2 = e.x;
    y2 = -e.y;
    d1 = e.g;
  }
  const long v1 = f1.a / d1;
  const long v2 = f2.a / d1;
  const long r = mod(y1 * y2 * n - x2 * f2.c, v1);
  const long b3 = f2.b + 2 * v2 * r;
  const long a3 = v1 * v2;
  const long num = b3 * b3 - D;
  if (num % (4 * a3) != 0) throw std::logic_error("compose: inconsistent result");
  return {a3, b3, num / (4 * a3)};
}

FgAbGroup imaginary_class_group(long d) {
  require_fundamental(d);
  if (d > 0) throw ValidationError("imaginary_class_group: discriminant must be negative");
  const std::vector<BinaryForm> elems = reduced_definite_forms(d);
  std::map<BinaryForm, std::size_t> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = i;
  auto product = [&](std::size_t i, std::size_t j) {
    return index.at(reduce_definite(compose(elems[i], elems[j])));
  };
  // Greedy generating set, then the Cayley-graph presentation
  // e_{x g} = e_x + e_g (g in the generating set), e_identity = 0.
  const std::size_t h = elems.size();
  const std::size_t identity = index.at(reduce_definite(elems[0]));
  std::vector<std::size_t> gens;
  std::vector<bool> reached(h, false);
  reached[identity] = true;
  std::vector<std::size_t> subgroup{identity};
  for (std::size_t g = 0; g < h; ++g) {
    if (reached[g]) continue;
    gens.push_back(g);
    for (std::size_t k = 0; k < subgroup.size(); ++k) {
      for (std::size_t gen : gens) {
        const std::size_t next = product(subgroup[k], gen);
        if (!reached[next]) {
          reached[next] = true;
          subgroup.push_back(next);
        }
      }
    }
  }
  abelian::IntMatrix rel(h * gens.size() + 1, h);
  std::size_t row = 0;
  for (std::size_t x = 0; x < h; ++x)
    for (std::size_t g : gens) {
      rel(row, x) += 1;
      rel(row, g) += 1;
      rel(row, product(x, g)) -= 1;
      ++row;
    }
  rel(row, identity) = 1;
  return abelian::group_from_presentation(rel, h);
}

long double log_quadratic(long d, const QuadraticUnit& u) {
  using Big = boost::multiprecision::cpp_bin_float_50;
  const Big x(u.x.get_str());
  const Big y(u.y.get_str());
  const Big value = (x + y * boost::multiprecision::sqrt(Big(d))) / 2;
  return static_cast<long double>(boost::multiprecision::log(value));
}

FundamentalUnit continued_fraction_unit(long d) {
  require_fundamental(d);
  if (d < 0) throw ValidationError("continued_fraction_unit: discriminant must be positive");
  const long sigma = mod(d, 2);
  const long s = isqrt(d);
  // omega_k = (P + sqrt d) / Q, starting from (sigma + sqrt d) / 2.
  long P = sigma, Q = 2;
  // Convergent recurrences seeded with p_{-2} = 0, p_{-1} = 1, q_{-2} = 1, q_{-1} = 0.
  Integer p_prev = 0, p = 1, q_prev = 1, q = 0;
  for (long step = 0; step < 100'000'000; ++step) {
    if (Q <= 0) throw std::logic_error("continued_fraction_unit: non-positive denominator");
    const long a = (P + s) / Q;
    Integer p_next = a * p + p_prev;
    Integer q_next = a * q + q_prev;
    p_prev = std::move(p);
    p = std::move(p_next);
    q_prev = std::move(q);
    q = std::move(q_next);
    // p - q * conj(omega) = (2p - sigma q + q sqrt d) / 2.
    QuadraticUnit u{2 * p - sigma * q, q};
    const Integer norm4 = u.x * u.x - d * u.y * u.y;
    if (abs(norm4) == 4) {
      FundamentalUnit out;
      out.norm = sgn(norm4);
      out.regulator = log_quadratic(d, u);
      out.unit = std::move(u);
      return out;
    }
    const long P_next = a * Q - P;
    Q = (d - P_next * P_next) / Q;
    P = P_next;
  }
  throw std::logic_error("continued_fraction_unit: period not found");
}

QuadraticFieldInvariants field_invariants(const FieldId& field) {
  QuadraticFieldInvariants inv;
  inv.field = field;
  if (field.is_rational()) return inv;
  const long d = field.discriminant();
  if (d < 0) {
    inv.r1 = 0;
    inv.r2 = 1;
    inv.w = d == -3 ? 6 : d == -4 ? 4 : 2;
    inv.h = static_cast<long>(enumerate_reduced_forms(d));
    inv.class_group = imaginary_class_group(d);
    if (inv.class_group.torsion_order() != inv.h)
      throw std::logic_error("field_invariants: class group order disagrees with form count");
    return inv;
  }
  inv.r1 = 2;
  inv.r2 = 0;
  inv.w = 2;
  const long narrow = static_cast<long>(enumerate_reduced_forms(d));
  const FundamentalUnit fu = continued_fraction_unit(d);
  inv.narrow_h = narrow;
  inv.unit_norm = fu.norm;
  inv.fundamental_unit = fu.unit;
  inv.regulator = fu.regulator;
  if (fu.norm == 1 && narrow % 2 != 0)
    throw std::logic_error("field_invariants: odd narrow class number with a norm +1 unit");
  inv.h = fu.norm == 1 ? narrow / 2 : narrow;
  inv.class_group = FgAbGroup::cyclic(inv.h);
  return inv;
}

}  // namespace weil::nf
