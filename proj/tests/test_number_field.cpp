#include "weil/errors.hpp"
#include "weil/number_field.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>

using namespace weil::nf;

namespace {

long pow_mod(long base, long exp, long mod) {
  long r = 1;
  base %= mod;
  if (base < 0) base += mod;
  while (exp > 0) {
    if (exp & 1) r = r * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return r;
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

bool is_square(long n) {
  if (n < 0) return false;
  const auto r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(n))));
  for (long s = std::max(0L, r - 1); s <= r + 1; ++s)
    if (s * s == n) return true;
  return false;
}

// Smallest y > 0 with d y^2 +- 4 a square: the fundamental unit (x + y sqrt d)/2.
std::pair<long, long> brute_force_unit(long d) {
  for (long y = 1; y < 2000000; ++y)
    for (long sign : {-4L, 4L}) {
      const long x2 = d * y * y + sign;
      if (is_square(x2)) return {std::lround(std::sqrt(static_cast<double>(x2))), y};
    }
  return {0, 0};
}

}  // namespace

TEST_CASE("fundamental discriminants") {
  for (long d : {-3L, -4L, -7L, -8L, -15L, -20L, -23L, -84L, 5L, 8L, 12L, 13L, 40L, 229L})
    CHECK(is_fundamental_discriminant(d));
  for (long d : {-16L, -12L, 0L, 1L, 2L, 3L, 4L, 6L, 9L, 16L, 18L, 20L, 25L, 45L})
    CHECK_FALSE(is_fundamental_discriminant(d));
  CHECK_THROWS_AS(FieldId::quadratic(6), weil::ValidationError);
  CHECK_THROWS_AS(FieldId::quadratic(1), weil::ValidationError);
  CHECK_THROWS_AS(FieldId::parse("x"), weil::ValidationError);
  CHECK(FieldId::parse("Q").is_rational());
  CHECK(FieldId::parse("q").is_rational());
  CHECK(FieldId::parse("-23") == FieldId::quadratic(-23));
  CHECK(fundamental_discriminant_failure(6).has_value());
  CHECK_FALSE(fundamental_discriminant_failure(-23).has_value());
}

TEST_CASE("corpus ordering and size") {
  const auto c = corpus(30);
  REQUIRE(!c.empty());
  CHECK(c.front().is_rational());
  CHECK(c[1] == FieldId::quadratic(-3));
  CHECK(c[2] == FieldId::quadratic(-4));
  CHECK(c[3] == FieldId::quadratic(5));
  // Fundamental discriminants with |d| <= 30, counted directly.
  std::size_t expected = 1;
  for (long d = -30; d <= 30; ++d) {
    if (d == 0 || d == 1) continue;
    const long m = ((d % 4) + 4) % 4;
    bool squarefree = true;
    for (long p = 2; p * p <= std::abs(d); ++p)
      if (std::abs(d) % (p * p) == 0) squarefree = false;
    if (m == 1 && squarefree) ++expected;
    if (m == 0) {
      const long e = d / 4;
      const long em = ((e % 4) + 4) % 4;
      bool sf = true;
      for (long p = 2; p * p <= std::abs(e); ++p)
        if (std::abs(e) % (p * p) == 0) sf = false;
      if ((em == 2 || em == 3) && sf) ++expected;
    }
  }
  CHECK(c.size() == expected);
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i - 1] < c[i]);
}

TEST_CASE("kronecker symbol examples") {
  CHECK(kronecker_symbol(-4, 1) == 1);
  CHECK(kronecker_symbol(-4, 2) == 0);
  CHECK(kronecker_symbol(-4, 3) == -1);
  CHECK(kronecker_symbol(-4, 5) == 1);
  CHECK(kronecker_symbol(5, 2) == -1);
  CHECK(kronecker_symbol(-3, 2) == -1);
  CHECK(kronecker_symbol(-7, 2) == 1);
  CHECK(kronecker_symbol(8, 2) == 0);
  CHECK(kronecker_symbol(5, 4) == 1);
  CHECK(kronecker_symbol(-23, 23) == 0);
}

TEST_CASE("kronecker symbol agrees with Euler's criterion") {
  for (const auto& f : corpus(200)) {
    if (f.is_rational()) continue;
    const long d = f.discriminant();
    for (long p = 3; p < 100; ++p) {
      if (!is_prime(p)) continue;
      const long e = pow_mod(d, (p - 1) / 2, p);
      const int expected = e == 0 ? 0 : (e == 1 ? 1 : -1);
      CAPTURE(d);
      CAPTURE(p);
      CHECK(kronecker_symbol(d, static_cast<unsigned long>(p)) == expected);
    }
  }
}

TEST_CASE("character invariants") {
  for (const auto& f : corpus(150)) {
    if (f.is_rational()) continue;
    const KroneckerCharacter chi(f);
    const long q = static_cast<long>(chi.modulus());
    CHECK(q == std::abs(f.discriminant()));
    CHECK(chi(1) == 1);
    CHECK(chi(-1) == (f.discriminant() > 0 ? 1 : -1));
    CHECK(chi.is_even() == (f.discriminant() > 0));
    long sum = 0;
    for (long a = 0; a < q; ++a) {
      sum += chi(a);
      CHECK((chi(a) == 0) == (std::gcd(a, q) != 1));
      CHECK(chi(a + q) == chi(a));
      for (long b = 0; b < q; b += 7) CHECK(chi(a * b) == chi(a) * chi(b));
    }
    CHECK(sum == 0);
  }
}

TEST_CASE("reduced definite forms") {
  CHECK(reduced_definite_forms(-4) == std::vector<BinaryForm>{{1, 0, 1}});
  CHECK(reduced_definite_forms(-23).size() == 3);
  CHECK(reduced_definite_forms(-47).size() == 5);
  CHECK(reduced_definite_forms(-84).size() == 4);
  for (const auto& f : reduced_definite_forms(-71)) CHECK(f.discriminant() == -71);
  CHECK(reduce_definite({3, 5, 4}) == BinaryForm{2, 1, 3});  // disc 25 - 48 = -23
  CHECK(reduce_definite({1, 0, 1}) == BinaryForm{1, 0, 1});
}

TEST_CASE("class numbers from forms") {
  const std::pair<long, std::size_t> imaginary[] = {{-3, 1},  {-4, 1},  {-7, 1},  {-8, 1},  {-15, 2},
                                                    {-20, 2}, {-23, 3}, {-47, 5}, {-71, 7}, {-84, 4}};
  for (auto [d, h] : imaginary) {
    CAPTURE(d);
    CHECK(enumerate_reduced_forms(d) == h);
  }
  // Narrow class numbers.
  const std::pair<long, std::size_t> real[] = {{5, 1}, {8, 1}, {12, 2}, {13, 1}, {40, 2}, {60, 4}, {229, 3}, {316, 6}};
  for (auto [d, h] : real) {
    CAPTURE(d);
    CHECK(enumerate_reduced_forms(d) == h);
  }
  CHECK(reduced_indefinite_cycles(5).size() == 1);
  CHECK_THROWS_AS(enumerate_reduced_forms(-12), weil::ValidationError);
}

TEST_CASE("class number recount agrees over the corpus") {
  for (const auto& f : corpus(300)) {
    if (f.is_rational()) continue;
    CAPTURE(f.discriminant());
    CHECK(enumerate_reduced_forms(f.discriminant()) == recount_classes(f.discriminant()));
  }
}

TEST_CASE("composition is a group law on classes") {
  for (long d : {-23L, -47L, -84L, -56L}) {
    const auto forms = reduced_definite_forms(d);
    const std::set<BinaryForm> classes(forms.begin(), forms.end());
    const BinaryForm one = reduce_definite({1, d % 2 == 0 ? 0 : 1, d % 2 == 0 ? -d / 4 : (1 - d) / 4});
    CHECK(classes.count(one) == 1);
    auto mul = [](const BinaryForm& f, const BinaryForm& g) { return reduce_definite(compose(f, g)); };
    for (const auto& f : forms) {
      CHECK(mul(f, one) == f);
      CHECK(mul(f, reduce_definite({f.a, -f.b, f.c})) == one);
      for (const auto& g : forms) {
        CHECK(compose(f, g).discriminant() == d);
        CHECK(classes.count(mul(f, g)) == 1);
        CHECK(mul(f, g) == mul(g, f));
        for (const auto& k : forms) CHECK(mul(mul(f, g), k) == mul(f, mul(g, k)));
      }
    }
  }
}

TEST_CASE("class group structure") {
  CHECK(imaginary_class_group(-84) == FgAbGroup(0, {2, 2}));
  CHECK(imaginary_class_group(-56) == FgAbGroup::cyclic(4));
  CHECK(imaginary_class_group(-23) == FgAbGroup::cyclic(3));
  CHECK(imaginary_class_group(-4).is_trivial());
  for (const auto& f : corpus(300))
    if (f.is_imaginary())
      CHECK(imaginary_class_group(f.discriminant()).torsion_order() == enumerate_reduced_forms(f.discriminant()));
}

TEST_CASE("continued fraction units") {
  const auto u5 = continued_fraction_unit(5);
  CHECK(u5.unit == QuadraticUnit{1, 1});
  CHECK(u5.norm == -1);
  CHECK(static_cast<double>(u5.regulator) == doctest::Approx(0.48121182505960344).epsilon(1e-15));
  const auto u8 = continued_fraction_unit(8);
  CHECK(u8.unit == QuadraticUnit{2, 1});
  CHECK(static_cast<double>(u8.regulator) == doctest::Approx(0.88137358701954302).epsilon(1e-15));
  const auto u12 = continued_fraction_unit(12);
  CHECK(u12.unit == QuadraticUnit{4, 1});
  CHECK(u12.norm == 1);
  CHECK(static_cast<double>(u12.regulator) == doctest::Approx(1.3169578969248167).epsilon(1e-15));
  const auto u13 = continued_fraction_unit(13);
  CHECK(u13.unit == QuadraticUnit{3, 1});
  CHECK(u13.norm == -1);
}

TEST_CASE("continued fraction units satisfy the norm equation") {
  for (const auto& f : corpus(300)) {
    if (!f.is_real_quadratic()) continue;
    const long d = f.discriminant();
    const auto u = continued_fraction_unit(d);
    const Integer n = u.unit.x * u.unit.x - d * u.unit.y * u.unit.y;
    CAPTURE(d);
    CHECK(n == 4 * u.norm);
    CHECK(u.unit.x > 0);
    CHECK(u.unit.y > 0);
    CHECK(u.regulator > 0);
    const double approx = std::log((u.unit.x.get_d() + u.unit.y.get_d() * std::sqrt(static_cast<double>(d))) / 2);
    CHECK(static_cast<double>(u.regulator) == doctest::Approx(approx).epsilon(1e-9));
  }
}

TEST_CASE("continued fraction unit is minimal") {
  for (const auto& f : corpus(100)) {
    if (!f.is_real_quadratic()) continue;
    const long d = f.discriminant();
    const auto [x, y] = brute_force_unit(d);
    CAPTURE(d);
    CHECK(continued_fraction_unit(d).unit == QuadraticUnit{x, y});
  }
}

TEST_CASE("field invariants") {
  const auto q = field_invariants(FieldId::rationals());
  CHECK(q.r1 == 1);
  CHECK(q.r2 == 0);
  CHECK(q.w == 2);
  CHECK(q.h == 1);
  CHECK(q.regulator == 1);
  CHECK(q.unit_rank() == 0);
  CHECK(q.degree() == 1);

  const auto m3 = field_invariants(FieldId::quadratic(-3));
  CHECK(m3.r1 == 0);
  CHECK(m3.r2 == 1);
  CHECK(m3.w == 6);
  CHECK(m3.h == 1);
  CHECK(field_invariants(FieldId::quadratic(-4)).w == 4);
  CHECK(field_invariants(FieldId::quadratic(-23)).class_group == FgAbGroup::cyclic(3));

  const auto r5 = field_invariants(FieldId::quadratic(5));
  CHECK(r5.r1 == 2);
  CHECK(r5.w == 2);
  CHECK(r5.h == 1);
  CHECK(r5.narrow_h == 1);
  CHECK(r5.unit_norm == -1);
  CHECK(r5.unit_rank() == 1);

  const auto r79 = field_invariants(FieldId::quadratic(316));
  CHECK(r79.h == 3);
  CHECK(r79.narrow_h == 6);
}

TEST_CASE("narrow class number relation") {
  for (const auto& f : corpus(300)) {
    if (!f.is_real_quadratic()) continue;
    const auto inv = field_invariants(f);
    CAPTURE(f.discriminant());
    REQUIRE(inv.narrow_h.has_value());
    CHECK(*inv.narrow_h == inv.h * (inv.unit_norm == 1 ? 2 : 1));
    CHECK(inv.class_group.torsion_order() == inv.h);
  }
}
