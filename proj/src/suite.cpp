#include "preserverlab/suite.hpp"

#include <cmath>

#include "preserverlab/geometry.hpp"
#include "preserverlab/pauli.hpp"
#include "preserverlab/rng.hpp"

namespace plab {

namespace {

constexpr double kSuiteTol = 1e-9;

constexpr std::uint64_t kTagTwoForm = 0x74776f666f726dULL;
constexpr std::uint64_t kTagScaling = 0x7363616c696e67ULL;
constexpr std::uint64_t kTagDetCross = 0x64657463726f73ULL;
constexpr std::uint64_t kTagGaugeEq = 0x6761756765ULL;

RVector traceless_part_r3(const CMatrix& a) {
  const CMatrix t = a - (a.trace() / 2.0) * CMatrix::Identity(2, 2);
  return iota_inv(t);
}

}  // namespace

SuiteReport identity_suite(std::uint64_t seed, int instances_per_identity,
                           const SuiteHooks* hooks) {
  if (instances_per_identity < 1)
    throw ParameterError("instances_per_identity must be positive");

  auto gauge_of = [hooks](const GaugeNorm& n, std::span<const double> s) {
    return hooks && hooks->gauge ? hooks->gauge(n, s) : n.gauge(s);
  };
  auto as_span = [](const RVector& v) {
    return std::span<const double>(v.data(), static_cast<std::size_t>(v.size()));
  };

  SuiteReport report;
  report.seed = seed;
  const std::vector<GaugeNorm> battery = standard_battery(2);

  {
    IdentityResult r{"area-two-form", instances_per_identity, 0.0, kSuiteTol, false};
    Rng rng(splitmix64(seed ^ kTagTwoForm));
    for (int i = 0; i < instances_per_identity; ++i) {
      const int d = kMinDim + i % (kMaxDim - kMinDim + 1);
      const RVector a = rng.gaussian_vector(d);
      const RVector b = rng.gaussian_vector(d);
      const double lhs = area(a, b);
      const double rhs = area_polarized(a, b);
      r.max_rel_err = std::max(r.max_rel_err, std::abs(lhs - rhs) / std::max(1.0, rhs));
    }
    r.pass = r.max_rel_err <= r.tol;
    report.identities.push_back(r);
  }

  {
    IdentityResult r{"comm-scaling-2x2", instances_per_identity, 0.0, kSuiteTol, false};
    Rng rng(splitmix64(seed ^ kTagScaling));
    for (int i = 0; i < instances_per_identity; ++i) {
      const CMatrix a = rng.gaussian_hermitian(2);
      const CMatrix b = rng.gaussian_hermitian(2);
      const GaugeNorm& n = battery[i % battery.size()];
      const double lhs = gauge_of(n, as_span(singular_values(commutator(a, b))));
      const double s = 2.0 * area(traceless_part_r3(a), traceless_part_r3(b));
      const double pair[2] = {s, s};
      const double rhs = gauge_of(n, pair);
      r.max_rel_err = std::max(r.max_rel_err, std::abs(lhs - rhs) / std::max(1.0, rhs));
    }
    r.pass = r.max_rel_err <= r.tol;
    report.identities.push_back(r);
  }

  {
    IdentityResult r{"det-cross", instances_per_identity, 0.0, kSuiteTol, false};
    Rng rng(splitmix64(seed ^ kTagDetCross));
    for (int i = 0; i < instances_per_identity; ++i) {
      const CMatrix a = rng.gaussian_hermitian(2);
      const CMatrix b = rng.gaussian_hermitian(2);
      const double lhs = det_comm_2d(a, b);
      const double rhs =
          4.0 * cross(traceless_part_r3(a), traceless_part_r3(b)).squaredNorm();
      r.max_rel_err = std::max(r.max_rel_err, std::abs(lhs - rhs) / std::max(1.0, rhs));
    }
    r.pass = r.max_rel_err <= r.tol;
    report.identities.push_back(r);
  }

  {
    IdentityResult r{"gauge-equivalence-2x2", instances_per_identity, 0.0, kSuiteTol,
                     false};
    Rng rng(splitmix64(seed ^ kTagGaugeEq));
    for (int i = 0; i < instances_per_identity; ++i) {
      const CMatrix a = rng.gaussian_hermitian(2);
      const CMatrix b = rng.gaussian_hermitian(2);
      const RVector sv = singular_values(commutator(a, b));
      const double s = std::sqrt(det_comm_2d(a, b));
      const double ones[2] = {1.0, 1.0};
      for (const GaugeNorm& n : battery) {
        const double lhs = gauge_of(n, as_span(sv));
        const double rhs = gauge_of(n, ones) * s;
        r.max_rel_err = std::max(r.max_rel_err, std::abs(lhs - rhs) / std::max(1.0, rhs));
      }
    }
    r.pass = r.max_rel_err <= r.tol;
    report.identities.push_back(r);
  }

  report.pass = true;
  for (const IdentityResult& r : report.identities) report.pass = report.pass && r.pass;
  return report;
}

nlohmann::json to_json(const SuiteReport& report) {
  nlohmann::json identities = nlohmann::json::array();
  for (const IdentityResult& r : report.identities)
    identities.push_back({{"name", r.name},
                          {"instances", r.instances},
                          {"max_rel_err", r.max_rel_err},
                          {"tol", r.tol},
                          {"pass", r.pass}});
  return {{"kind", "suite-report"},
          {"seed", report.seed},
          {"identities", std::move(identities)},
          {"pass", report.pass}};
}

}  // namespace plab
