#include "preserverlab/pauli.hpp"

#include <cmath>
#include <string>

#include "preserverlab/geometry.hpp"

namespace plab {

namespace {

void require_rotation_like(const RMatrix& R, const char* who) {
  if (R.rows() != 3 || R.cols() != 3)
    throw DimensionError(std::string(who) + " requires a 3x3 matrix");
  const double defect = (R.transpose() * R - RMatrix::Identity(3, 3)).norm();
  if (defect > 1e-8)
    throw StructureError(std::string(who) + ": input is not orthogonal, defect " +
                         std::to_string(defect));
}

}  // namespace

CMatrix iota(const RVector& v) {
  if (v.size() != 3) throw DimensionError("iota requires a 3-vector");
  const double a = v(0), b = v(1), c = v(2);
  CMatrix m(2, 2);
  m(0, 0) = Complex(a, 0.0);
  m(0, 1) = Complex(b, c);
  m(1, 0) = Complex(b, -c);
  m(1, 1) = Complex(-a, 0.0);
  return m;
}

RVector iota_inv(const CMatrix& C) {
  if (C.rows() != 2 || C.cols() != 2) throw DimensionError("iota_inv requires a 2x2 matrix");
  require_hermitian(C);
  const double scale = std::max(1.0, C.norm());
  if (std::abs(C.trace()) > 1e-12 * scale)
    throw StructureError("iota_inv: input is not traceless");
  RVector v(3);
  v(0) = 0.5 * (C(0, 0) - C(1, 1)).real();
  v(1) = 0.5 * (C(0, 1) + C(1, 0)).real();
  v(2) = 0.5 * (C(0, 1) - C(1, 0)).imag();
  return v;
}

double comm_cross_residual(const RVector& v, const RVector& w) {
  const CMatrix lhs = commutator(iota(v), iota(w));
  const CMatrix rhs = Complex(0.0, -2.0) * iota(cross(v, w));
  return (lhs - rhs).norm() / std::max(1.0, v.norm() * w.norm());
}

CMatrix su2_from_rotation(const RMatrix& R) {
  require_rotation_like(R, "su2_from_rotation");
  if (R.determinant() <= 0.0)
    throw StructureError("su2_from_rotation: determinant must be positive");

  // Shepperd's method: branch on the largest of tr R and the diagonal
  // entries so the divisor stays well away from zero.
  const double t = R.trace();
  double q0, q1, q2, q3;
  if (t >= R(0, 0) && t >= R(1, 1) && t >= R(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + t);
    q0 = 0.25 * s;
    q1 = (R(2, 1) - R(1, 2)) / s;
    q2 = (R(0, 2) - R(2, 0)) / s;
    q3 = (R(1, 0) - R(0, 1)) / s;
  } else if (R(0, 0) >= R(1, 1) && R(0, 0) >= R(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + R(0, 0) - R(1, 1) - R(2, 2));
    q1 = 0.25 * s;
    q0 = (R(2, 1) - R(1, 2)) / s;
    q2 = (R(0, 1) + R(1, 0)) / s;
    q3 = (R(0, 2) + R(2, 0)) / s;
  } else if (R(1, 1) >= R(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 - R(0, 0) + R(1, 1) - R(2, 2));
    q2 = 0.25 * s;
    q0 = (R(0, 2) - R(2, 0)) / s;
    q1 = (R(0, 1) + R(1, 0)) / s;
    q3 = (R(1, 2) + R(2, 1)) / s;
  } else {
    const double s = 2.0 * std::sqrt(1.0 - R(0, 0) - R(1, 1) + R(2, 2));
    q3 = 0.25 * s;
    q0 = (R(1, 0) - R(0, 1)) / s;
    q1 = (R(0, 2) + R(2, 0)) / s;
    q2 = (R(1, 2) + R(2, 1)) / s;
  }

  const double norm = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
  q0 /= norm;
  q1 /= norm;
  q2 /= norm;
  q3 /= norm;

  CMatrix u(2, 2);
  u(0, 0) = Complex(q0, q1);
  u(0, 1) = Complex(-q3, q2);
  u(1, 0) = Complex(q3, q2);
  u(1, 1) = Complex(q0, -q1);
  return canonical_sign(u);
}

CMatrix canonical_sign(const CMatrix& U) {
  if (U.rows() != 2 || U.cols() != 2)
    throw DimensionError("canonical_sign requires a 2x2 matrix");
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Complex e = U(i, j);
      if (std::abs(e) <= 1e-12) continue;
      double sign;
      if (std::abs(e.real()) > 1e-12 * std::abs(e))
        sign = e.real() > 0.0 ? 1.0 : -1.0;
      else
        sign = e.imag() > 0.0 ? 1.0 : -1.0;
      return sign * U;
    }
  }
  return U;
}

ImproperSplit split_improper(const RMatrix& O) {
  require_rotation_like(O, "split_improper");
  if (O.determinant() >= 0.0)
    throw StructureError("split_improper: expected an improper orthogonal matrix");
  RMatrix s = RMatrix::Identity(3, 3);
  s(2, 2) = -1.0;
  return ImproperSplit{O * s, s};
}

}  // namespace plab
