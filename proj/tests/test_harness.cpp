#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "preserverlab/check.hpp"
#include "preserverlab/geometry.hpp"
#include "preserverlab/harness.hpp"
#include "preserverlab/rng.hpp"

using namespace plab;

TEST_CASE("rules are deterministic and signs are unit") {
  const Rule hash = Rule::seeded_hash(99);
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const RVector v = rng.gaussian_vector(3);
    CHECK(hash.sign_at(v) == hash.sign_at(v));
    CHECK((hash.sign_at(v) == 1 || hash.sign_at(v) == -1));
    CHECK(hash.real_at(v) == hash.real_at(v));
    CHECK(hash.real_at(v) >= -2.0);
    CHECK(hash.real_at(v) <= 2.0);
  }
  // Different seeds decorrelate the signs.
  const Rule other = Rule::seeded_hash(100);
  int agree = 0;
  for (int i = 0; i < 200; ++i) {
    const RVector v = rng.gaussian_vector(3);
    if (hash.sign_at(v) == other.sign_at(v)) ++agree;
  }
  CHECK(agree > 40);
  CHECK(agree < 160);

  const Rule c = Rule::constant(-1.0);
  const RVector ones2 = RVector::Ones(2);
  CHECK(c.sign_at(ones2) == -1);
  CHECK(c.real_at(ones2) == -1.0);

  Rng mrng(2);
  const CMatrix a = mrng.gaussian_hermitian(3);
  CHECK(Rule::trace().real_at(a) == doctest::Approx(a.trace().real()).epsilon(1e-15));
}

TEST_CASE("haar matrices are orthogonal and deterministic") {
  for (int d = 2; d <= 8; ++d) {
    const RMatrix q = haar_orthogonal(d, 7);
    CHECK((q.transpose() * q - RMatrix::Identity(d, d)).norm() <= 1e-12);
    const CMatrix u = haar_unitary(d, 7);
    CHECK((u.adjoint() * u - CMatrix::Identity(d, d)).norm() <= 1e-12);
    CHECK((haar_orthogonal(d, 7) - q).norm() == 0.0);
    CHECK((haar_unitary(d, 7) - u).norm() == 0.0);
    CHECK((haar_orthogonal(d, 8) - q).norm() != 0.0);
  }
  CHECK_THROWS_AS(haar_orthogonal(1, 1), ParameterError);
  CHECK_THROWS_AS(haar_unitary(9, 1), ParameterError);
}

TEST_CASE("haar sampling has no preferred direction") {
  // Column means over independent draws concentrate near zero.
  const int n = 300;
  RVector mean = RVector::Zero(3);
  for (int i = 0; i < n; ++i) mean += haar_orthogonal(3, 5000 + i).col(0);
  mean /= n;
  CHECK(mean.norm() < 0.12);
}

TEST_CASE("zoo members satisfy the properties they are named for") {
  for (int d = 2; d <= 5; ++d) {
    const MapSpec area_spec = make_area_preserver(d, d);
    const auto& lin = std::get<SignedLinearFamily>(area_spec.family);
    CHECK(is_area_preserving_linear(lin.matrix).preserving);
    if (d == 2) {
      CHECK(std::abs(std::abs(lin.matrix.determinant()) - 1.0) <= 1e-12);
    }
    CHECK(check_area(make_map(area_spec), 100, kDefaultCheckTol, 3).pass());
  }
  for (int d : {2, 3}) {
    CHECK(check_comm_norm(make_map(make_comm_preserver(d, d, d == 3)),
                          GaugeNorm::schatten(2), 100, kDefaultCheckTol, 3)
              .pass());
    CHECK(check_projection_orthogonality(make_map(make_projection_map(d, d)),
                                         Direction::Both, 80, kDefaultCheckTol, 3)
              .pass());
  }
}

TEST_CASE("the 2d area zoo is generically non-orthogonal") {
  int non_orthogonal = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto& lin =
        std::get<SignedLinearFamily>(make_area_preserver(2, seed).family);
    const RMatrix g = lin.matrix.transpose() * lin.matrix;
    if ((g - RMatrix::Identity(2, 2)).norm() > 1e-6) ++non_orthogonal;
  }
  CHECK(non_orthogonal >= 8);
}

TEST_CASE("corruption changes outputs by roughly its magnitude") {
  const MapSpec base = make_comm_preserver(2, 5);
  Rng rng(6);
  const CMatrix a = rng.gaussian_hermitian(2);
  const CMatrix clean = make_map(base)(a);
  for (const char* kind : {"scale_singular_value", "nonscalar_offset", "noise"}) {
    const BlackBoxMap m = make_map(corrupt(base, kind, 1e-3, 11));
    const double dev = (m(a) - clean).norm();
    CHECK(dev > 1e-5);
    CHECK(dev < 1e-1);
    CHECK((m(a) - m(a)).norm() == 0.0);  // corrupted maps stay deterministic
  }
  CHECK_THROWS_AS(make_map(corrupt(make_area_preserver(3, 1), "nonscalar_offset",
                                   1e-3, 1)),
                  SpecError);
  CHECK_THROWS_AS(make_map(corrupt(base, "typo", 1e-3, 1)), SpecError);
}

TEST_CASE("make_map validates family data") {
  MapSpec bad_unitary{Space{SpaceKind::Hermitian, 2},
                      ConjugationAffineFamily{2.0 * CMatrix::Identity(2, 2), false,
                                              Rule::constant(1.0), Rule::constant(0.0)}};
  CHECK_THROWS_AS(make_map(bad_unitary), SpecError);

  MapSpec wrong_space{Space{SpaceKind::RealEuclidean, 2},
                      ProjectionMapFamily{CMatrix::Identity(2, 2), false}};
  CHECK_THROWS_AS(make_map(wrong_space), SpecError);

  MapSpec mismatched{Space{SpaceKind::RealEuclidean, 3},
                     SignedLinearFamily{RMatrix::Identity(2, 2), Rule::constant(1.0)}};
  CHECK_THROWS_AS(make_map(mismatched), SpecError);
}

TEST_CASE("projection maps validate their inputs") {
  const BlackBoxMap m = make_map(make_projection_map(2, 9));
  CHECK_THROWS_AS(m(CMatrix(CMatrix::Identity(2, 2))), StructureError);
  Rng rng(10);
  const CMatrix p = rng.rank_one_projection(2);
  CHECK((m(p) * m(p) - m(p)).norm() <= 1e-12);
}

TEST_CASE("map specifications round-trip through JSON") {
  std::vector<MapSpec> specs;
  specs.push_back(make_area_preserver(2, 1));
  specs.push_back(make_area_preserver(4, 2));
  specs.push_back(make_comm_preserver(3, 3, true));
  specs.push_back(make_projection_map(2, 4, false));
  specs.push_back(corrupt(make_comm_preserver(2, 5), "noise", 1e-2, 6));

  TableFamily table;
  Rng rng(7);
  const RVector v = rng.gaussian_vector(3);
  table.entries.push_back(TableEntry{v, RVector(2.0 * v)});
  specs.push_back(MapSpec{Space{SpaceKind::RealEuclidean, 3}, std::move(table)});

  for (const MapSpec& spec : specs) {
    const nlohmann::json j = to_json(spec);
    const MapSpec back = mapspec_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(back.space == spec.space);
  }
}

TEST_CASE("json round-trip preserves doubles exactly") {
  Rng rng(12);
  const RMatrix m = rng.gaussian_matrix(4) * 1e-7;
  const nlohmann::json j = real_matrix_to_json(m);
  const RMatrix back = real_matrix_from_json(nlohmann::json::parse(j.dump()));
  CHECK((back - m).norm() == 0.0);

  const CMatrix c = rng.gaussian_complex_matrix(3);
  const CMatrix cback =
      complex_matrix_from_json(nlohmann::json::parse(complex_matrix_to_json(c).dump()));
  CHECK((cback - c).norm() == 0.0);
}

TEST_CASE("malformed documents raise SpecError with a path") {
  auto parse = [](const char* text) { return mapspec_from_json(nlohmann::json::parse(text)); };
  CHECK_THROWS_AS(parse("{}"), SpecError);
  CHECK_THROWS_AS(parse(R"({"space": {"kind": "real_euclidean", "dim": 2}})"), SpecError);
  CHECK_THROWS_AS(
      parse(R"({"space": {"kind": "complex", "dim": 2}, "family": {"kind": "table", "entries": []}})"),
      SpecError);
  CHECK_THROWS_AS(
      parse(R"({"space": {"kind": "hermitian", "dim": 12}, "family": {"kind": "table", "entries": []}})"),
      SpecError);
  CHECK_THROWS_AS(
      parse(R"({"space": {"kind": "hermitian", "dim": 2}, "family": {"kind": "mystery"}})"),
      SpecError);
}

TEST_CASE("digest ignores key order and is stable") {
  const nlohmann::json a = nlohmann::json::parse(R"({"x": 1, "y": [1, 2.5], "z": "s"})");
  const nlohmann::json b = nlohmann::json::parse(R"({"z": "s", "y": [1, 2.5], "x": 1})");
  CHECK(json_digest(a) == json_digest(b));
  CHECK(json_digest(a).size() == 16);
  const nlohmann::json c = nlohmann::json::parse(R"({"x": 1, "y": [1, 2.5], "z": "t"})");
  CHECK(json_digest(a) != json_digest(c));
}

TEST_CASE("run reports serialize with tool identity and write atomically") {
  RunReport report;
  report.command = "check";
  report.spec_digest = "0123456789abcdef";
  report.parameters = {{"samples", 10}};
  report.result = {{"outcome", "pass"}};
  report.wall_time_s = 0.25;

  const nlohmann::json j = to_json(report);
  CHECK(j.at("tool") == kToolName);
  CHECK(j.at("version") == kToolVersion);
  CHECK(j.at("command") == "check");
  CHECK(j.at("result").at("outcome") == "pass");

  const std::filesystem::path path =
      std::filesystem::temp_directory_path() / "plab_report_test.json";
  write_report_atomic(report, path);
  std::ifstream in(path);
  REQUIRE(in.good());
  const nlohmann::json loaded = nlohmann::json::parse(in);
  CHECK(loaded == j);
  std::filesystem::remove(path);
}

TEST_CASE("check reports serialize their witnesses") {
  RMatrix a = RMatrix::Identity(3, 3);
  a(0, 0) = 2.0;
  MapSpec spec{Space{SpaceKind::RealEuclidean, 3},
               SignedLinearFamily{a, Rule::constant(1.0)}};
  const CheckReport report = check_area(make_map(spec), 50, kDefaultCheckTol, 5);
  const nlohmann::json j = to_json(report);
  CHECK(j.at("kind") == "check-report");
  CHECK(j.at("outcome") == "fail");
  CHECK(j.at("witness").at("input_a").contains("vector"));
  CHECK(j.at("witness").at("lhs").is_number());
}
