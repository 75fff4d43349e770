#include "preserverlab/geometry.hpp"

#include <cmath>
#include <string>

namespace plab {

namespace {

void require_same_dim(const RVector& a, const RVector& b) {
  if (a.size() != b.size())
    throw DimensionError("vector dimension mismatch: " + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()));
}

}  // namespace

double area(const RVector& a, const RVector& b) {
  require_same_dim(a, b);
  const double na2 = a.squaredNorm();
  const double nb2 = b.squaredNorm();
  const double ip = a.dot(b);
  double radicand = na2 * nb2 - ip * ip;
  if (radicand < 0.0) {
    if (radicand >= -1e-12 * na2 * nb2)
      radicand = 0.0;
    else
      throw NumericalError("area radicand " + std::to_string(radicand) +
                           " below the cancellation floor");
  }
  return std::sqrt(radicand);
}

double area_polarized(const RVector& a, const RVector& b) {
  require_same_dim(a, b);
  const double na = a.norm();
  if (na == 0.0) return 0.0;
  const RVector rej = b - (a.dot(b) / (na * na)) * a;
  return na * rej.norm();
}

Eigen::Vector3d cross(const RVector& v, const RVector& w) {
  if (v.size() != 3 || w.size() != 3)
    throw DimensionError("cross product requires dimension 3");
  Eigen::Vector3d a = v, b = w;
  return a.cross(b);
}

AreaPreservingVerdict is_area_preserving_linear(const RMatrix& A) {
  if (A.rows() != A.cols()) throw DimensionError("expected a square matrix");
  const int d = static_cast<int>(A.rows());
  if (d < 2) throw DimensionError("area preservation needs dimension >= 2");

  constexpr double tol = 1e-9;
  if (d == 2) {
    if (std::abs(std::abs(A.determinant()) - 1.0) <= tol)
      return AreaPreservingVerdict{true, std::nullopt};
    // Any independent pair witnesses the distortion; use the singular
    // directions for consistency with the general case.
    Eigen::JacobiSVD<RMatrix> solver(A, Eigen::ComputeFullV);
    return AreaPreservingVerdict{
        false, std::make_pair(RVector(solver.matrixV().col(0)),
                              RVector(solver.matrixV().col(1)))};
  }

  Eigen::JacobiSVD<RMatrix> solver(A, Eigen::ComputeFullV);
  const RVector s = solver.singularValues();
  int far = 0, near = 0;
  for (int i = 0; i < d; ++i) {
    if (std::abs(s(i) - 1.0) > std::abs(s(far) - 1.0)) far = i;
    if (std::abs(s(i) - 1.0) < std::abs(s(near) - 1.0)) near = i;
  }
  if (std::abs(s(far) - 1.0) <= tol) return AreaPreservingVerdict{true, std::nullopt};
  if (near == far) near = (far + 1) % d;
  return AreaPreservingVerdict{
      false, std::make_pair(RVector(solver.matrixV().col(far)),
                            RVector(solver.matrixV().col(near)))};
}

}  // namespace plab
