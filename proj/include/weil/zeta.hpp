#pragma once

// The analytic side: leading Taylor coefficient of the Dedekind zeta
// function of Q or a quadratic field at s = 0, from
// zeta_F(s) = zeta(s) L(s, chi_d) with zeta(0) = -1/2. Takes no input from
// class numbers, regulators or roots of unity.

#include "weil/number_field.hpp"

#include <gmpxx.h>

#include <optional>

namespace weil::zeta {

// log Gamma(x) for x > 0: upward recurrence to x >= 24, then the Stirling
// series through the B_20 term, in long double.
long double log_gamma(long double x);

// L(0, chi) = -(1/q) sum_{a=1}^{q-1} chi(a) a for an odd character.
// Throws ParityError for an even character.
mpq_class L_at_zero(const nf::KroneckerCharacter& chi);

// L'(0, chi) = sum_{a=1}^{q-1} chi(a) log Gamma(a/q) for an even character.
// Throws ParityError for an odd character.
long double L_prime_at_zero(const nf::KroneckerCharacter& chi);

struct ZetaStarValue {
  // Order of vanishing at s = 0.
  unsigned order = 0;
  // lim_{s->0} zeta_F(s) s^{-order}
  long double leading = 0;
  // Set when the leading coefficient is rational (order 0).
  std::optional<mpq_class> exact_leading;
};

ZetaStarValue zeta_star_at_zero(const nf::FieldId& field);

}  // namespace weil::zeta
