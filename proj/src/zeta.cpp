#include "weil/zeta.hpp"

#include "weil/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace weil::zeta {

namespace {

constexpr long double kHalfLogTwoPi = 0.918938533204672741780329736405617639861L;

// B_{2k} / (2k (2k - 1)) for k = 1..10.
constexpr std::array<long double, 10> kStirling = {
    1.0L / 12.0L,
    -1.0L / 360.0L,
    1.0L / 1260.0L,
    -1.0L / 1680.0L,
    1.0L / 1188.0L,
    -691.0L / 360360.0L,
    1.0L / 156.0L,
    -3617.0L / 122400.0L,
    43867.0L / 244188.0L,
    -174611.0L / 125400.0L,
};

long double to_real(const mpq_class& q) {
  return static_cast<long double>(q.get_num().get_d()) / static_cast<long double>(q.get_den().get_d());
}

}  // namespace

long double log_gamma(long double x) {
  if (!(x > 0)) throw std::domain_error("log_gamma: argument must be positive");
  // Gamma(x) = Gamma(x + n) / (x (x+1) ... (x+n-1)).
  long double shift = 1;
  long double log_shift = 0;
  while (x < 24) {
    shift *= x;
    x += 1;
    if (shift > 1e300L) {
      log_shift += std::log(shift);
      shift = 1;
    }
  }
  log_shift += std::log(shift);
  const long double inv = 1 / x;
  const long double inv2 = inv * inv;
  long double series = 0;
  long double power = inv;
  for (long double c : kStirling) {
    series += c * power;
    power *= inv2;
  }
  return (x - 0.5L) * std::log(x) - x + kHalfLogTwoPi + series - log_shift;
}

mpq_class L_at_zero(const nf::KroneckerCharacter& chi) {
  if (chi.is_even()) throw ParityError("L_at_zero: character is even; L(0, chi) vanishes");
  mpz_class sum = 0;
  for (unsigned long a = 1; a < chi.modulus(); ++a) sum += chi(static_cast<long>(a)) * mpz_class(a);
  mpq_class value(-sum, mpz_class(chi.modulus()));
  value.canonicalize();
  return value;
}

long double L_prime_at_zero(const nf::KroneckerCharacter& chi) {
  if (!chi.is_even()) throw ParityError("L_prime_at_zero: character is odd; use L_at_zero");
  const long double q = static_cast<long double>(chi.modulus());
  long double sum = 0;
  for (unsigned long a = 1; a < chi.modulus(); ++a) {
    const int c = chi(static_cast<long>(a));
    if (c != 0) sum += c * log_gamma(static_cast<long double>(a) / q);
  }
  return sum;
}

ZetaStarValue zeta_star_at_zero(const nf::FieldId& field) {
  const mpq_class zeta_zero(-1, 2);
  ZetaStarValue z;
  if (field.is_rational()) {
    z.order = 0;
    z.exact_leading = zeta_zero;
    z.leading = to_real(zeta_zero);
    return z;
  }
  const nf::KroneckerCharacter chi(field);
  if (field.is_imaginary()) {
    const mpq_class value = zeta_zero * L_at_zero(chi);
    z.order = 0;
    z.exact_leading = value;
    z.leading = to_real(value);
    return z;
  }
  z.order = 1;
  z.leading = -0.5L * L_prime_at_zero(chi);
  return z;
}

}  // namespace weil::zeta
