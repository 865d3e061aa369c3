#pragma once

// Determinant of a based exact complex of real vector spaces and the Euler
// characteristic of a complex of finitely generated abelian groups whose
// realification is exact.
//
// A complex 0 -> V_0 -> V_1 -> ... -> V_n -> 0 is stored as the dimensions
// of V_0..V_n together with the matrices of T_i : V_i -> V_{i+1} in the
// standard bases. Other bases are handled by rewriting the matrices with
// change_basis().
//
// Changing the basis of V_i by a matrix M multiplies the determinant by
// det(M)^{(-1)^i}.

#include "weil/abelian.hpp"

#include <Eigen/Dense>
#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace weil::euler {

using Real = long double;
using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

// Singular values at or below tol * (largest singular value) count as zero.
inline constexpr Real kDefaultTolerance = 1e-10L;

class BasedRealComplex {
 public:
  // The empty complex.
  BasedRealComplex() = default;
  // maps[i] is dims[i+1] x dims[i]. Throws ValidationError on shape mismatch.
  BasedRealComplex(std::vector<std::size_t> dims, std::vector<RealMatrix> maps);

  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<RealMatrix>& maps() const { return maps_; }
  // Number of maps, n in V_0..V_n.
  std::size_t length() const { return maps_.size(); }

 private:
  std::vector<std::size_t> dims_;
  std::vector<RealMatrix> maps_;
};

std::size_t numerical_rank(const RealMatrix& m, Real tol = kDefaultTolerance);

bool check_exact(const BasedRealComplex& c, Real tol = kDefaultTolerance);

// Hooks for the choices the determinant is independent of. Tests use them
// to randomize those choices; production code leaves them empty.
struct DeterminantOptions {
  Real tol = kDefaultTolerance;
  // Receives an orthonormal basis (columns) of the image I of the
  // second-to-last map and returns the basis of I actually used.
  std::function<RealMatrix(const RealMatrix&)> image_basis;
  // Receives the least-squares lifts (columns) through the last map of a
  // two-map complex and a matrix whose columns span that map's kernel;
  // returns the lifts actually used.
  std::function<RealMatrix(const RealMatrix& lifts, const RealMatrix& kernel)> adjust_lifts;
};

// Throws ExactnessError if check_exact fails.
Real determinant_exact(const BasedRealComplex& c, const DeterminantOptions& options = {});

// Rewrites the complex so that the standard basis of V_i stands for the
// columns of bases[i].
BasedRealComplex change_basis(const BasedRealComplex& c, std::span<const RealMatrix> bases);

// Groups A_0..A_n with real maps between the free parts A_i (x) R.
class GradedGroupComplex {
 public:
  GradedGroupComplex() = default;
  GradedGroupComplex(std::vector<abelian::FgAbGroup> groups, std::vector<RealMatrix> realified_maps);

  const std::vector<abelian::FgAbGroup>& groups() const { return groups_; }
  const BasedRealComplex& realified() const { return realified_; }

 private:
  std::vector<abelian::FgAbGroup> groups_;
  BasedRealComplex realified_;
};

struct EulerCharacteristic {
  // prod |(A_i)_tor|^{(-1)^i}, exact.
  mpq_class torsion;
  // Determinant of the realified complex in bases coming from Z-bases.
  Real determinant = 1;
  // True when every realified space is zero; then value() is exact.
  bool determinant_trivial = true;

  Real value() const;
  std::optional<mpq_class> exact() const;
};

// Only |value()| is meaningful: Z-bases are defined up to GL(r, Z).
EulerCharacteristic euler_characteristic(const GradedGroupComplex& g,
                                         const DeterminantOptions& options = {});

}  // namespace weil::euler
