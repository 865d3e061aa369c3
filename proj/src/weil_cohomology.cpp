#include "weil/weil_cohomology.hpp"

#include "weil/errors.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace weil::etale {

GroupProfile compact_support_profile(const nf::QuadraticFieldInvariants& inv) {
  const std::size_t r = inv.unit_rank();
  return {
      FgAbGroup::trivial(),
      FgAbGroup::free(r),
      FgAbGroup::free(r).direct_sum(inv.class_group),
      FgAbGroup::cyclic(inv.w),
  };
}

GroupProfile open_profile(const nf::QuadraticFieldInvariants& inv) {
  const GroupProfile compact = compact_support_profile(inv);
  return {FgAbGroup::free(1), FgAbGroup::trivial(), compact[2], compact[3]};
}

CohomologyProfile cohomology_profile(const nf::QuadraticFieldInvariants& inv) {
  return {compact_support_profile(inv), open_profile(inv)};
}

std::string_view orientation_name(PsiOrientation o) {
  return o == PsiOrientation::Direct ? "direct" : "inverse";
}

euler::RealMatrix unit_log_matrix(const nf::QuadraticFieldInvariants& inv) {
  const auto r = static_cast<Eigen::Index>(inv.unit_rank());
  euler::RealMatrix m(r, r);
  if (r == 0) return m;
  // Only real quadratic fields have positive unit rank here: one unit and
  // the place sqrt(d) -> +sqrt(d), where the fundamental unit exceeds 1.
  m(0, 0) = inv.regulator;
  return m;
}

PsiComplex psi_complex(const nf::QuadraticFieldInvariants& inv, PsiOrientation o) {
  PsiComplex psi;
  const std::size_t places = static_cast<std::size_t>(inv.r1 + inv.r2);
  for (std::size_t v = 0; v + 1 < places; ++v) psi.places.push_back(v);

  const auto r = static_cast<Eigen::Index>(inv.unit_rank());
  euler::RealMatrix cup = unit_log_matrix(inv);
  if (o == PsiOrientation::Inverse && r > 0) cup = cup.inverse().eval();

  const GroupProfile groups = compact_support_profile(inv);
  std::vector<euler::RealMatrix> maps{
      euler::RealMatrix::Zero(r, 0),
      cup,
      euler::RealMatrix::Zero(0, r),
  };
  psi.graded = euler::GradedGroupComplex({groups.begin(), groups.end()}, std::move(maps));
  return psi;
}

PsiOrientation resolved_orientation() {
  static const PsiOrientation resolved = [] {
    const auto field = nf::FieldId::quadratic(5);
    const auto inv = nf::field_invariants(field);
    const long double target = std::fabs(zeta::zeta_star_at_zero(field).leading);
    PsiOrientation best = PsiOrientation::Direct;
    long double best_err = INFINITY;
    for (auto o : {PsiOrientation::Direct, PsiOrientation::Inverse}) {
      const auto chi = euler::euler_characteristic(psi_complex(inv, o).graded);
      const long double err = std::fabs(std::fabs(chi.value()) / target - 1);
      if (err < best_err) {
        best_err = err;
        best = o;
      }
    }
    if (best_err > 1e-9L)
      throw std::logic_error("resolved_orientation: neither orientation matches zeta*(0) on Q(sqrt 5)");
    return best;
  }();
  return resolved;
}

PsiComplex psi_complex(const nf::QuadraticFieldInvariants& inv) {
  return psi_complex(inv, resolved_orientation());
}

VerificationReport verify_field(const nf::FieldId& field, long double tol) {
  if (!(tol > 0)) throw ValidationError("verify_field: tolerance must be positive");
  const auto start = std::chrono::steady_clock::now();

  VerificationReport rep;
  rep.tolerance = tol;
  rep.orientation = resolved_orientation();
  rep.invariants = nf::field_invariants(field);
  rep.profile = cohomology_profile(rep.invariants);
  rep.zeta_star = zeta::zeta_star_at_zero(field);

  const PsiComplex psi = psi_complex(rep.invariants, rep.orientation);
  rep.psi_exact = euler::check_exact(psi.realified());
  rep.order_matches = rep.zeta_star.order == psi.realified().dims()[1];
  if (!rep.order_matches) rep.notes.push_back("vanishing order differs from the rank of H^1");

  if (!rep.psi_exact) {
    rep.notes.push_back("psi-complex is not exact");
  } else {
    const euler::EulerCharacteristic chi = euler::euler_characteristic(psi.graded);
    rep.chi = chi.value();
    rep.chi_exact = chi.exact();

    const auto& inv = rep.invariants;
    const long double hrw = static_cast<long double>(inv.h) * inv.regulator / inv.w;
    rep.identity_error = std::fabs(std::fabs(rep.chi) - hrw) / hrw;
    if (rep.identity_error > kIdentityTolerance)
      rep.notes.push_back("|chi| differs from hR/w beyond 1e-12");

    rep.ratio = std::fabs(rep.chi) / std::fabs(rep.zeta_star.leading);
    rep.relative_error = std::fabs(rep.ratio - 1);
    if (rep.relative_error > tol) rep.notes.push_back("|chi| differs from |zeta*(0)| beyond tolerance");

    if (rep.chi_exact && rep.zeta_star.exact_leading) {
      rep.exact_match = *rep.chi_exact == -*rep.zeta_star.exact_leading;
      if (!*rep.exact_match) rep.notes.push_back("exact chi differs from -zeta_F(0)");
    }
  }
  rep.verdict = rep.notes.empty() ? Verdict::Pass : Verdict::Fail;
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace weil::etale
