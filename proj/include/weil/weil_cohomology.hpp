#pragma once

// Weil-etale cohomology of the compactified spectrum Y-bar of the ring of
// integers of Q or a quadratic field, the cup-product-with-psi complex on
// its realification, and the check that its Euler characteristic matches
// the leading coefficient of the Dedekind zeta function at s = 0.
//
// Groups are assembled from the field invariants:
//   compact support  H^0 = 0, H^1 = Z^{r-1}, H^2 = Z^{r-1} + Cl(F), H^3 = Z/w
//   open             H^0 = Z, H^1 = 0, H^2 as above,             H^3 = Z/w
// with r = r1 + r2. The groups are assumed to vanish above degree 3.

#include "weil/abelian.hpp"
#include "weil/exact_determinant.hpp"
#include "weil/number_field.hpp"
#include "weil/zeta.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace weil::etale {

using abelian::FgAbGroup;
using GroupProfile = std::array<FgAbGroup, 4>;

// H^2(W_F, Z) is the Pontryagin dual of the norm-one idele class group. It is
// not finitely generated and is reported as text only.
inline constexpr std::string_view kWeilGroupH2Note =
    "H^2(W_F, Z) = (C^1_F)^D, the Pontryagin dual of the norm-one idele class group; "
    "not finitely generated, not computed";

struct CohomologyProfile {
  GroupProfile compact;
  GroupProfile open;
  std::string metadata{kWeilGroupH2Note};
};

GroupProfile compact_support_profile(const nf::QuadraticFieldInvariants& inv);
GroupProfile open_profile(const nf::QuadraticFieldInvariants& inv);
CohomologyProfile cohomology_profile(const nf::QuadraticFieldInvariants& inv);

// Which matrix sits between H^1 (x) R and H^2 (x) R. Direct uses
// (log|u_j|_v) with rows indexed by fundamental units and columns by the
// retained archimedean places; Inverse uses its inverse.
enum class PsiOrientation { Direct, Inverse };

std::string_view orientation_name(PsiOrientation o);

// Orientation that reproduces |zeta*_F(0)| on Q(sqrt 5), computed once.
PsiOrientation resolved_orientation();

struct PsiComplex {
  // Archimedean places kept as the H^1 basis, as indices into the ordered
  // list of places (the last place is dropped).
  std::vector<std::size_t> places;
  // 0 -> H^0 -> H^1 -> H^2 -> H^3 -> 0 with compact-support groups.
  euler::GradedGroupComplex graded;

  const euler::BasedRealComplex& realified() const { return graded.realified(); }
};

// log|u_j|_v over fundamental units u_j and retained places v.
euler::RealMatrix unit_log_matrix(const nf::QuadraticFieldInvariants& inv);

PsiComplex psi_complex(const nf::QuadraticFieldInvariants& inv, PsiOrientation o);
PsiComplex psi_complex(const nf::QuadraticFieldInvariants& inv);

enum class Verdict { Pass, Fail };

struct VerificationReport {
  nf::QuadraticFieldInvariants invariants;
  CohomologyProfile profile;
  bool psi_exact = false;
  long double chi = 0;
  std::optional<mpq_class> chi_exact;
  zeta::ZetaStarValue zeta_star;
  // |chi| / |zeta_star.leading|
  long double ratio = 0;
  long double relative_error = 0;
  // | |chi| - hR/w | / (hR/w)
  long double identity_error = 0;
  bool order_matches = false;
  // Set when both sides are rational: chi == -zeta_F(0) exactly.
  std::optional<bool> exact_match;
  Verdict verdict = Verdict::Fail;
  long double tolerance = 0;
  PsiOrientation orientation = PsiOrientation::Direct;
  double elapsed_ms = 0;
  std::vector<std::string> notes;
};

inline constexpr long double kIdentityTolerance = 1e-12L;

// tol bounds | |chi| / |zeta*_F(0)| - 1 |. Throws ValidationError if tol <= 0.
VerificationReport verify_field(const nf::FieldId& field, long double tol);

}  // namespace weil::etale
