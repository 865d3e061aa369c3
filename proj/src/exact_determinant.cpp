#include "weil/exact_determinant.hpp"

#include "weil/errors.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace weil::euler {

namespace {

Real determinant_of(const RealMatrix& m) {
  if (m.rows() == 0) return 1;
  return Eigen::FullPivLU<RealMatrix>(m).determinant();
}

Real largest_singular_value(const RealMatrix& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<RealMatrix> svd(m);
  return svd.singularValues()(0);
}

// Least-squares (minimum norm) solution of a x = b.
RealMatrix solve(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols() == 0 || b.cols() == 0) return RealMatrix::Zero(a.cols(), b.cols());
  return a.completeOrthogonalDecomposition().solve(b);
}

// Orthonormal basis of the column space of m.
RealMatrix image_basis(const RealMatrix& m, Real tol) {
  if (m.size() == 0) return RealMatrix::Zero(m.rows(), 0);
  Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  Eigen::Index k = 0;
  while (k < s.size() && s(k) > tol * s(0)) ++k;
  return svd.matrixU().leftCols(k);
}

Real determinant_rec(const std::vector<std::size_t>& dims, const std::vector<RealMatrix>& maps,
                     const DeterminantOptions& opt) {
  const std::size_t n = maps.size();
  if (n == 0) return 1;
  if (n == 1) return determinant_of(maps[0]);
  if (n == 2) {
    // d_1..d_r are the images of the basis of V_0, d_{r+1}..d_{r+s} lift
    // the basis of V_2; the determinant compares their wedge with the
    // standard wedge of V_1.
    const auto r = static_cast<Eigen::Index>(dims[0]);
    const auto s = static_cast<Eigen::Index>(dims[2]);
    const auto mid = static_cast<Eigen::Index>(dims[1]);
    RealMatrix lifts = solve(maps[1], RealMatrix::Identity(s, s));
    if (opt.adjust_lifts) lifts = opt.adjust_lifts(lifts, maps[0]);
    RealMatrix d(mid, r + s);
    d.leftCols(r) = maps[0];
    d.rightCols(s) = lifts;
    return determinant_of(d);
  }
  // Split at I = image(T_{n-2}) in V_{n-1}:
  //   0 -> V_0 -> ... -> V_{n-2} -> I -> 0  and  0 -> I -> V_{n-1} -> V_n -> 0,
  // and combine as delta_1 * delta_2^{(-1)^n}.
  RealMatrix basis = image_basis(maps[n - 2], opt.tol);
  if (opt.image_basis) basis = opt.image_basis(basis);
  const auto k = static_cast<std::size_t>(basis.cols());

  std::vector<std::size_t> first_dims(dims.begin(), dims.begin() + static_cast<long>(n - 1));
  first_dims.push_back(k);
  std::vector<RealMatrix> first_maps(maps.begin(), maps.begin() + static_cast<long>(n - 2));
  first_maps.push_back(solve(basis, maps[n - 2]));

  const std::vector<std::size_t> second_dims{k, dims[n - 1], dims[n]};
  const std::vector<RealMatrix> second_maps{basis, maps[n - 1]};

  const Real d1 = determinant_rec(first_dims, first_maps, opt);
  const Real d2 = determinant_rec(second_dims, second_maps, opt);
  return n % 2 == 0 ? d1 * d2 : d1 / d2;
}

}  // namespace

BasedRealComplex::BasedRealComplex(std::vector<std::size_t> dims, std::vector<RealMatrix> maps)
    : dims_(std::move(dims)), maps_(std::move(maps)) {
  const std::size_t expected = dims_.empty() ? 0 : dims_.size() - 1;
  if (maps_.size() != expected)
    throw ValidationError("BasedRealComplex: " + std::to_string(dims_.size()) + " spaces need " +
                          std::to_string(expected) + " maps");
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    if (static_cast<std::size_t>(maps_[i].rows()) != dims_[i + 1] ||
        static_cast<std::size_t>(maps_[i].cols()) != dims_[i])
      throw ValidationError("BasedRealComplex: map " + std::to_string(i) + " has the wrong shape");
  }
}

std::size_t numerical_rank(const RealMatrix& m, Real tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<RealMatrix> svd(m);
  const auto& s = svd.singularValues();
  std::size_t r = 0;
  while (r < static_cast<std::size_t>(s.size()) && s(static_cast<Eigen::Index>(r)) > tol * s(0) &&
         s(static_cast<Eigen::Index>(r)) > 0)
    ++r;
  return r;
}

bool check_exact(const BasedRealComplex& c, Real tol) {
  const auto& dims = c.dims();
  const auto& maps = c.maps();
  std::vector<std::size_t> ranks;
  for (const auto& m : maps) ranks.push_back(numerical_rank(m, tol));
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const std::size_t in = i > 0 ? ranks[i - 1] : 0;
    const std::size_t out = i < maps.size() ? ranks[i] : 0;
    if (in + out != dims[i]) return false;
  }
  for (std::size_t i = 0; i + 1 < maps.size(); ++i) {
    const RealMatrix comp = maps[i + 1] * maps[i];
    const Real bound = tol * largest_singular_value(maps[i + 1]) * largest_singular_value(maps[i]);
    if (largest_singular_value(comp) > bound) return false;
  }
  return true;
}

Real determinant_exact(const BasedRealComplex& c, const DeterminantOptions& options) {
  if (!check_exact(c, options.tol))
    throw ExactnessError("determinant_exact: complex is not exact");
  return determinant_rec(c.dims(), c.maps(), options);
}

BasedRealComplex change_basis(const BasedRealComplex& c, std::span<const RealMatrix> bases) {
  if (bases.size() != c.dims().size())
    throw ValidationError("change_basis: need one basis per space");
  for (std::size_t i = 0; i < bases.size(); ++i) {
    const auto d = static_cast<Eigen::Index>(c.dims()[i]);
    if (bases[i].rows() != d || bases[i].cols() != d)
      throw ValidationError("change_basis: basis " + std::to_string(i) + " has the wrong shape");
  }
  std::vector<RealMatrix> maps;
  for (std::size_t i = 0; i < c.maps().size(); ++i) {
    const RealMatrix image = c.maps()[i] * bases[i];
    maps.push_back(bases[i + 1].rows() == 0 ? image : RealMatrix(bases[i + 1].fullPivLu().solve(image)));
  }
  return BasedRealComplex(c.dims(), std::move(maps));
}

GradedGroupComplex::GradedGroupComplex(std::vector<abelian::FgAbGroup> groups,
                                       std::vector<RealMatrix> realified_maps)
    : groups_(std::move(groups)) {
  std::vector<std::size_t> dims;
  for (const auto& g : groups_) dims.push_back(g.free_rank());
  realified_ = BasedRealComplex(std::move(dims), std::move(realified_maps));
}

Real EulerCharacteristic::value() const {
  const Real t = static_cast<Real>(torsion.get_num().get_d()) /
                 static_cast<Real>(torsion.get_den().get_d());
  return t / determinant;
}

std::optional<mpq_class> EulerCharacteristic::exact() const {
  if (!determinant_trivial) return std::nullopt;
  return torsion;
}

EulerCharacteristic euler_characteristic(const GradedGroupComplex& g,
                                         const DeterminantOptions& options) {
  EulerCharacteristic chi;
  chi.torsion = 1;
  for (std::size_t i = 0; i < g.groups().size(); ++i) {
    const mpz_class order = g.groups()[i].torsion_order();
    if (i % 2 == 0)
      chi.torsion *= order;
    else
      chi.torsion /= order;
  }
  chi.torsion.canonicalize();
  chi.determinant = determinant_exact(g.realified(), options);
  for (std::size_t d : g.realified().dims())
    if (d != 0) chi.determinant_trivial = false;
  return chi;
}

}  // namespace weil::euler
