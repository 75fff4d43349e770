#include "doctest.h"

#include <cmath>

#include "preserverlab/linalg.hpp"
#include "preserverlab/rng.hpp"

using namespace plab;

namespace {

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

}  // namespace

TEST_CASE("commutator of the first two spin matrices") {
  const CMatrix c = commutator(pauli_z(), pauli_x());
  CMatrix expect(2, 2);
  expect << 0, 2, -2, 0;
  CHECK((c - expect).norm() == 0.0);
}

TEST_CASE("commutator of commuting matrices vanishes") {
  Rng rng(1);
  const CMatrix a = rng.gaussian_hermitian(4);
  const CMatrix b = 3.0 * a * a - 2.0 * a + CMatrix::Identity(4, 4);
  CHECK(commutator(a, b).norm() < 1e-12 * a.norm() * b.norm());
}

TEST_CASE("commutator rejects shape mismatches") {
  CHECK_THROWS_AS(commutator(CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)),
                  DimensionError);
}

TEST_CASE("hermiticity gate accepts and rejects correctly") {
  CHECK(is_hermitian(pauli_x()));
  CMatrix skew(2, 2);
  skew << 0, 1, -1, 0;
  CHECK_FALSE(is_hermitian(skew));
  CHECK_THROWS_AS(require_hermitian(skew), StructureError);

  // A deviation below the relative tolerance passes; above it fails.
  CMatrix nearly = pauli_x();
  nearly(0, 1) += 1e-15;
  CHECK(is_hermitian(nearly));
  nearly(0, 1) += 1e-9;
  CHECK_FALSE(is_hermitian(nearly));
}

TEST_CASE("eigendecomposition of a frozen 2x2 matrix") {
  CMatrix a(2, 2);
  a << 2, 1, 1, 2;
  const SpectralDecomposition dec = eig_hermitian(a);
  CHECK(dec.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(dec.eigenvalues(1) == doctest::Approx(3.0).epsilon(1e-13));
  const CMatrix rebuilt =
      dec.eigenvectors * dec.eigenvalues.cast<Complex>().asDiagonal() *
      dec.eigenvectors.adjoint();
  CHECK((rebuilt - a).norm() < 1e-13);
}

TEST_CASE("eigendecomposition of a frozen complex matrix") {
  // I plus the antisymmetric imaginary spin matrix: eigenvalues 0 and 2.
  CMatrix a(2, 2);
  a << Complex(1, 0), Complex(0, 1), Complex(0, -1), Complex(1, 0);
  const SpectralDecomposition dec = eig_hermitian(a);
  CHECK(std::abs(dec.eigenvalues(0)) < 1e-13);
  CHECK(dec.eigenvalues(1) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK((dec.eigenvectors.adjoint() * dec.eigenvectors - CMatrix::Identity(2, 2)).norm() <
        1e-13);
}

TEST_CASE("eigendecomposition rejects non-hermitian input") {
  CMatrix skew(2, 2);
  skew << 0, 1, -1, 0;
  CHECK_THROWS_AS(eig_hermitian(skew), StructureError);
}

TEST_CASE("singular values of frozen matrices") {
  CMatrix m(2, 2);
  m << 3, 0, 4, 0;
  const RVector s = singular_values(m);
  CHECK(s(0) == doctest::Approx(5.0).epsilon(1e-13));
  CHECK(std::abs(s(1)) < 1e-13);

  CMatrix c(2, 2);
  c << 0, 2, -2, 0;
  const RVector sc = singular_values(c);
  CHECK(sc(0) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(sc(1) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("svd reconstructs and orders descending") {
  Rng rng(2);
  const CMatrix m = rng.gaussian_complex_matrix(5);
  const SingularValueDecomposition dec = svd(m);
  for (int i = 0; i + 1 < 5; ++i) CHECK(dec.singular_values(i) >= dec.singular_values(i + 1));
  CHECK(dec.singular_values.minCoeff() >= 0.0);
  const CMatrix rebuilt =
      dec.u * dec.singular_values.cast<Complex>().asDiagonal() * dec.v.adjoint();
  CHECK((rebuilt - m).norm() < 1e-12 * m.norm());
}

TEST_CASE("conjugate_entrywise flips the imaginary part only") {
  Rng rng(3);
  const CMatrix m = rng.gaussian_complex_matrix(3);
  const CMatrix c = conjugate_entrywise(m);
  CHECK((c.real() - m.real()).norm() == 0.0);
  CHECK((c.imag() + m.imag()).norm() == 0.0);
}

TEST_CASE("supported dimension gate") {
  CHECK_NOTHROW(require_supported_dim(2));
  CHECK_NOTHROW(require_supported_dim(8));
  CHECK_THROWS_AS(require_supported_dim(1), DimensionError);
  CHECK_THROWS_AS(require_supported_dim(9), DimensionError);
}

TEST_CASE("rank-one projection wrapper") {
  CVector x(2);
  x << Complex(1, 0), Complex(0, 1);
  CHECK_THROWS_AS(RankOneProjection{x}, StructureError);  // norm sqrt(2)

  x /= x.norm();
  const RankOneProjection p{x};
  const CMatrix pm = p.matrix();
  CHECK((pm * pm - pm).norm() < 1e-14);
  CHECK(std::abs(pm.trace().real() - 1.0) < 1e-14);

  const RankOneProjection q = RankOneProjection::from_matrix(pm);
  CHECK((q.matrix() - pm).norm() < 1e-12);

  CHECK_THROWS_AS(RankOneProjection::from_matrix(0.5 * pm), StructureError);
  CHECK_THROWS_AS(RankOneProjection::from_matrix(CMatrix::Identity(2, 2)), StructureError);
}
