#include "doctest.h"

#include <cmath>

#include "preserverlab/gauge.hpp"
#include "preserverlab/geometry.hpp"
#include "preserverlab/harness.hpp"
#include "preserverlab/pauli.hpp"
#include "preserverlab/rng.hpp"

using namespace plab;

namespace {

RVector vec3(double a, double b, double c) {
  RVector v(3);
  v << a, b, c;
  return v;
}

}  // namespace

TEST_CASE("iota on the standard basis") {
  const CMatrix m1 = iota(vec3(1, 0, 0));
  CMatrix z(2, 2);
  z << 1, 0, 0, -1;
  CHECK((m1 - z).norm() == 0.0);

  const CMatrix m2 = iota(vec3(0, 1, 0));
  CMatrix x(2, 2);
  x << 0, 1, 1, 0;
  CHECK((m2 - x).norm() == 0.0);

  const CMatrix m3 = iota(vec3(0, 0, 1));
  CMatrix y(2, 2);
  y << Complex(0, 0), Complex(0, 1), Complex(0, -1), Complex(0, 0);
  CHECK((m3 - y).norm() == 0.0);
}

TEST_CASE("iota lands in traceless hermitian matrices and inverts") {
  Rng rng(61);
  for (int i = 0; i < 200; ++i) {
    const RVector v = rng.gaussian_vector(3);
    const CMatrix m = iota(v);
    CHECK(std::abs(m.trace()) < 1e-15);
    CHECK((m - m.adjoint()).norm() == 0.0);
    CHECK((iota_inv(m) - v).norm() < 1e-14 * std::max(1.0, v.norm()));
    // The map scales |v| to sqrt(2) |v| in Frobenius norm.
    CHECK(m.norm() == doctest::Approx(std::sqrt(2.0) * v.norm()).epsilon(1e-12));
  }
}

TEST_CASE("iota_inv validates its input") {
  CHECK_THROWS_AS(iota_inv(CMatrix::Identity(2, 2)), StructureError);  // trace 2
  CMatrix skew(2, 2);
  skew << 0, 1, -1, 0;
  CHECK_THROWS_AS(iota_inv(skew), StructureError);
  CHECK_THROWS_AS(iota_inv(CMatrix::Zero(3, 3)), DimensionError);
}

TEST_CASE("commutators intertwine with the cross product") {
  Rng rng(67);
  for (int i = 0; i < 300; ++i) {
    const RVector v = rng.gaussian_vector(3);
    const RVector w = rng.gaussian_vector(3);
    CHECK(comm_cross_residual(v, w) < 1e-12);
  }
}

TEST_CASE("commutator determinant equals four times the squared cross norm") {
  CHECK(det_comm_2d(iota(vec3(1, 0, 0)), iota(vec3(0, 1, 0))) ==
        doctest::Approx(4.0).epsilon(1e-14));
  Rng rng(71);
  for (int i = 0; i < 200; ++i) {
    const RVector v = rng.gaussian_vector(3);
    const RVector w = rng.gaussian_vector(3);
    const double lhs = det_comm_2d(iota(v), iota(w));
    const double rhs = 4.0 * cross(v, w).squaredNorm();
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, rhs));
  }
}

TEST_CASE("su2_from_rotation on frozen rotations") {
  const CMatrix id = su2_from_rotation(RMatrix::Identity(3, 3));
  CHECK((id - CMatrix::Identity(2, 2)).norm() < 1e-14);

  // A half turn about the first axis lifts to +-i diag(1, -1); the
  // canonical representative breaks the tie toward positive imaginary part.
  RMatrix half = RMatrix::Identity(3, 3);
  half(1, 1) = -1.0;
  half(2, 2) = -1.0;
  const CMatrix u = su2_from_rotation(half);
  CMatrix z(2, 2);
  z << Complex(0, 1), 0, 0, Complex(0, -1);
  CHECK((u - z).norm() < 1e-14);
}

TEST_CASE("su2_from_rotation intertwines the adjoint action") {
  Rng rng(73);
  for (int trial = 0; trial < 50; ++trial) {
    const RMatrix r = haar_orthogonal(3, 500 + trial).determinant() > 0
                          ? haar_orthogonal(3, 500 + trial)
                          : RMatrix(-haar_orthogonal(3, 500 + trial));
    const CMatrix u = su2_from_rotation(r);
    CHECK(std::abs(std::abs(u.determinant()) - 1.0) < 1e-12);
    CHECK((u * u.adjoint() - CMatrix::Identity(2, 2)).norm() < 1e-12);
    for (int i = 0; i < 5; ++i) {
      const RVector v = rng.gaussian_vector(3);
      const CMatrix lhs = iota(r * v);
      const CMatrix rhs = u * iota(v) * u.adjoint();
      CHECK((lhs - rhs).norm() < 1e-10 * std::max(1.0, v.norm()));
    }
    // The result is already in canonical sign.
    CHECK((su2_from_rotation(r) - canonical_sign(u)).norm() == 0.0);
  }
}

TEST_CASE("su2_from_rotation exercises every extraction branch") {
  // Half turns about each axis drive the quaternion weight onto a different
  // component; together with the identity all four branches run.
  for (int axis = 0; axis < 3; ++axis) {
    RMatrix r = -RMatrix::Identity(3, 3);
    r(axis, axis) = 1.0;
    const CMatrix u = su2_from_rotation(r);
    Rng rng(81 + axis);
    for (int i = 0; i < 5; ++i) {
      const RVector v = rng.gaussian_vector(3);
      CHECK((iota(r * v) - u * iota(v) * u.adjoint()).norm() < 1e-12);
    }
  }
}

TEST_CASE("su2_from_rotation rejects improper and non-orthogonal input") {
  RMatrix refl = RMatrix::Identity(3, 3);
  refl(2, 2) = -1.0;
  CHECK_THROWS_AS(su2_from_rotation(refl), StructureError);
  CHECK_THROWS_AS(su2_from_rotation(2.0 * RMatrix::Identity(3, 3)), StructureError);
  CHECK_THROWS_AS(su2_from_rotation(RMatrix::Identity(4, 4)), DimensionError);
}

TEST_CASE("canonical_sign pins the global sign deterministically") {
  CMatrix u(2, 2);
  u << Complex(-0.6, 0), Complex(0.8, 0), Complex(-0.8, 0), Complex(-0.6, 0);
  const CMatrix c = canonical_sign(u);
  CHECK(c(0, 0).real() > 0.0);
  CHECK((canonical_sign(c) - c).norm() == 0.0);
  CHECK((canonical_sign(CMatrix(-c)) - c).norm() == 0.0);

  // Leading entry purely imaginary: the tie-break takes positive imaginary.
  CMatrix v(2, 2);
  v << Complex(0, -1), Complex(0, 0), Complex(0, 0), Complex(0, 1);
  CHECK(canonical_sign(v)(0, 0).imag() > 0.0);
}

TEST_CASE("split_improper factors out the fixed reflection") {
  Rng rng(83);
  for (int trial = 0; trial < 30; ++trial) {
    RMatrix o = haar_orthogonal(3, 900 + trial);
    if (o.determinant() > 0) o.col(0) *= -1.0;
    const ImproperSplit split = split_improper(o);
    CHECK(split.rotation.determinant() > 0.0);
    CHECK((split.rotation * split.rotation.transpose() - RMatrix::Identity(3, 3)).norm() <
          1e-12);
    RMatrix s = RMatrix::Identity(3, 3);
    s(2, 2) = -1.0;
    CHECK((split.reflection - s).norm() == 0.0);
    CHECK((split.rotation * split.reflection - o).norm() < 1e-13);
  }
}

TEST_CASE("split_improper rejects proper rotations") {
  CHECK_THROWS_AS(split_improper(RMatrix::Identity(3, 3)), StructureError);
}

TEST_CASE("entrywise conjugation acts as the fixed reflection under iota") {
  Rng rng(89);
  RMatrix s = RMatrix::Identity(3, 3);
  s(2, 2) = -1.0;
  for (int i = 0; i < 100; ++i) {
    const RVector v = rng.gaussian_vector(3);
    CHECK((conjugate_entrywise(iota(v)) - iota(s * v)).norm() < 1e-15);
  }
}
