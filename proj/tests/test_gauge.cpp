#include "doctest.h"

#include <array>
#include <cmath>

#include "preserverlab/gauge.hpp"
#include "preserverlab/harness.hpp"
#include "preserverlab/rng.hpp"

using namespace plab;

TEST_CASE("gauge values on a frozen singular-value list") {
  // (2, 2): the singular values of [[0, 2], [-2, 0]].
  const std::array<double, 2> s{2.0, 2.0};
  CHECK(GaugeNorm::schatten(1).gauge(s) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(GaugeNorm::schatten(2).gauge(s) ==
        doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(GaugeNorm::schatten(3).gauge(s) ==
        doctest::Approx(std::pow(16.0, 1.0 / 3.0)).epsilon(1e-14));
  CHECK(GaugeNorm::operator_norm().gauge(s) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(GaugeNorm::kyfan(1).gauge(s) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(GaugeNorm::kyfan(2).gauge(s) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("gauge ignores order and sign") {
  const std::array<double, 3> a{3.0, -4.0, 0.0};
  const std::array<double, 3> b{-4.0, 0.0, 3.0};
  for (const GaugeNorm& n : standard_battery(3)) {
    CHECK(n.gauge(a) == n.gauge(b));
  }
  CHECK(GaugeNorm::schatten(2).gauge(a) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(GaugeNorm::kyfan(2).gauge(a) == doctest::Approx(7.0).epsilon(1e-15));
}

TEST_CASE("descriptor parsing round-trips") {
  for (const char* desc : {"operator", "schatten:1", "schatten:2.5", "schatten:inf",
                           "kyfan:1", "kyfan:4"}) {
    const GaugeNorm n = GaugeNorm::parse(desc);
    CHECK(GaugeNorm::parse(n.str()) == n);
  }
  CHECK(GaugeNorm::parse("schatten:inf") == GaugeNorm::schatten(
      std::numeric_limits<double>::infinity()));
}

TEST_CASE("bad descriptors and parameters are rejected") {
  for (const char* desc : {"", "spectral", "schatten:", "schatten:0.5", "schatten:-1",
                           "schatten:abc", "kyfan:0", "kyfan:-2", "kyfan:1.5", "kyfan:"}) {
    CHECK_THROWS_AS(GaugeNorm::parse(desc), ParameterError);
  }
  CHECK_THROWS_AS(GaugeNorm::schatten(0.99), ParameterError);
  CHECK_THROWS_AS(GaugeNorm::kyfan(0), ParameterError);
  const std::array<double, 2> s{1.0, 1.0};
  CHECK_THROWS_AS(GaugeNorm::kyfan(3).gauge(s), ParameterError);
}

TEST_CASE("standard battery contents") {
  const std::vector<GaugeNorm> battery = standard_battery(4);
  REQUIRE(battery.size() == 8);  // schatten 1, 2, 3, inf and kyfan 1..4
  CHECK(battery[0] == GaugeNorm::schatten(1));
  CHECK(battery[3] == GaugeNorm::schatten(std::numeric_limits<double>::infinity()));
  CHECK(battery[4] == GaugeNorm::kyfan(1));
  CHECK(battery[7] == GaugeNorm::kyfan(4));
}

TEST_CASE("ui_norm equals the gauge of the singular values") {
  Rng rng(31);
  const CMatrix m = rng.gaussian_complex_matrix(4);
  const RVector s = singular_values(m);
  for (const GaugeNorm& n : standard_battery(4)) {
    CHECK(ui_norm(n, m) ==
          doctest::Approx(n.gauge(std::span<const double>(s.data(), 4))).epsilon(1e-14));
  }
}

TEST_CASE("unitary invariance on random instances") {
  Rng rng(37);
  for (int d : {2, 3, 5}) {
    const CMatrix u = haar_unitary(d, 100 + d);
    const CMatrix v = haar_unitary(d, 200 + d);
    for (int i = 0; i < 50; ++i) {
      const CMatrix a = rng.gaussian_complex_matrix(d);
      for (const GaugeNorm& n : standard_battery(d)) {
        const double lhs = ui_norm(n, u * a * v);
        const double rhs = ui_norm(n, a);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, rhs));
      }
    }
  }
}

TEST_CASE("norm axioms hold on random instances") {
  Rng rng(41);
  for (int i = 0; i < 50; ++i) {
    const CMatrix a = rng.gaussian_complex_matrix(3);
    const CMatrix b = rng.gaussian_complex_matrix(3);
    for (const GaugeNorm& n : standard_battery(3)) {
      CHECK(ui_norm(n, a + b) <= ui_norm(n, a) + ui_norm(n, b) + 1e-10);
      CHECK(ui_norm(n, -2.0 * a) == doctest::Approx(2.0 * ui_norm(n, a)).epsilon(1e-12));
      CHECK(ui_norm(n, a) >= 0.0);
    }
  }
}

TEST_CASE("comm_norm validates hermiticity") {
  Rng rng(43);
  const CMatrix a = rng.gaussian_hermitian(3);
  const CMatrix b = rng.gaussian_complex_matrix(3);
  CHECK_THROWS_AS(comm_norm(GaugeNorm::schatten(2), a, b), StructureError);
  const CMatrix h = rng.gaussian_hermitian(3);
  CHECK(comm_norm(GaugeNorm::schatten(2), a, h) ==
        doctest::Approx(commutator(a, h).norm()).epsilon(1e-12));
}

TEST_CASE("determinant of a 2x2 commutator from a frozen pair") {
  CMatrix z(2, 2), x(2, 2);
  z << 1, 0, 0, -1;
  x << 0, 1, 1, 0;
  CHECK(det_comm_2d(z, x) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(det_comm_2d(z, z) == 0.0);
  CHECK_THROWS_AS(det_comm_2d(CMatrix::Identity(3, 3), CMatrix::Identity(3, 3)),
                  DimensionError);
}

TEST_CASE("det_comm_2d is nonnegative on random hermitian pairs") {
  Rng rng(47);
  for (int i = 0; i < 300; ++i) {
    const CMatrix a = rng.gaussian_hermitian(2);
    const CMatrix b = rng.gaussian_hermitian(2);
    CHECK(det_comm_2d(a, b) >= 0.0);
  }
}

TEST_CASE("rank-one commutator constant across the battery") {
  CHECK(rank_one_comm_constant(GaugeNorm::schatten(1), 4) ==
        doctest::Approx(2.0).epsilon(1e-15));
  CHECK(rank_one_comm_constant(GaugeNorm::schatten(2), 4) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(rank_one_comm_constant(GaugeNorm::operator_norm(), 4) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rank_one_comm_constant(GaugeNorm::kyfan(1), 4) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rank_one_comm_constant(GaugeNorm::kyfan(3), 4) ==
        doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("rank-one commutator identity on random instances") {
  // ||[A, x x*]|| = c(n, d) * sqrt(<A^2 x, x> - <A x, x>^2) for unit x.
  Rng rng(53);
  for (int d : {2, 3, 5}) {
    for (int i = 0; i < 50; ++i) {
      const CMatrix a = rng.gaussian_hermitian(d);
      const CVector x = rng.unit_complex_vector(d);
      const CMatrix p = x * x.adjoint();
      const double mean = (x.adjoint() * a * x)(0, 0).real();
      const double second = (x.adjoint() * a * a * x)(0, 0).real();
      const double s = std::sqrt(std::max(0.0, second - mean * mean));
      if (s < 1e-8) continue;
      for (const GaugeNorm& n : standard_battery(d)) {
        const double lhs = comm_norm(n, a, p);
        const double rhs = rank_one_comm_constant(n, d) * s;
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, rhs));
      }
    }
  }
}
