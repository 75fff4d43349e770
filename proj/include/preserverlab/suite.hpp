#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "preserverlab/gauge.hpp"

namespace plab {

// Test seam: lets a caller replace the gauge-function evaluation inside the
// suite, so tests can inject a wrong gauge and watch the suite catch it.
// Production callers leave it empty.
struct SuiteHooks {
  std::function<double(const GaugeNorm&, std::span<const double>)> gauge;
};

struct IdentityResult {
  std::string name;
  int instances = 0;
  double max_rel_err = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::vector<IdentityResult> identities;
  std::uint64_t seed = 0;
  bool pass = false;
};

// Cross-checks the algebraic identities the library is built on, each over
// randomized instances across the supported dimensions:
//   area-two-form        the Gram-determinant and orthogonal-rejection
//                        expressions for parallelogram area agree
//   comm-scaling-2x2     2x2 commutator norms factor through the area of
//                        the traceless parts carried to R^3
//   det-cross            det of a 2x2 commutator equals 4 |v x w|^2 for the
//                        traceless parts
//   gauge-equivalence-2x2 every norm in the standard battery reproduces the
//                        same 2x2 commutator data up to its rank-one constant
SuiteReport identity_suite(std::uint64_t seed, int instances_per_identity = 1000,
                           const SuiteHooks* hooks = nullptr);

nlohmann::json to_json(const SuiteReport& report);

}  // namespace plab
