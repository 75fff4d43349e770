#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "preserverlab/blackbox.hpp"
#include "preserverlab/gauge.hpp"

namespace plab {

enum class CheckOutcome { Pass, Fail, Incomplete };

// A concrete violating input pair with both sides of the tested relation.
struct CheckWitness {
  std::variant<RVector, CMatrix> input_a;
  std::variant<RVector, CMatrix> input_b;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string detail;
};

// Result of a randomized property check. Pass means no violation was found
// within the sampled instances; it is never a proof. Incomplete means the
// map could not be evaluated on part of the plan (table-backed map with a
// missing entry), which is reported as its own outcome rather than folded
// into pass or fail.
struct CheckReport {
  CheckOutcome outcome = CheckOutcome::Pass;
  std::string property;
  int n_samples = 0;  // instances actually evaluated
  double max_abs_err = 0.0;
  double max_rel_err = 0.0;
  std::optional<CheckWitness> witness;
  std::uint64_t seed = 0;
  int forward_violations = 0;
  int backward_violations = 0;
  std::string note;

  bool pass() const { return outcome == CheckOutcome::Pass; }
};

inline constexpr double kDefaultCheckTol = 1e-8;

// Parallelogram-area preservation on Gaussian vector pairs (norms below
// 1e-6 are resampled). Every tenth sample additionally probes
// m(t v) = +- t m(v) for a random scalar t.
CheckReport check_area(const BlackBoxMap& m, int n_samples,
                       double tol = kDefaultCheckTol, std::uint64_t seed = 1);

// | ||[m(A), m(B)]|| - ||[A, B]|| | on Gaussian Hermitian pairs, in the
// given norm, normalized by max(1, ||[A, B]||).
CheckReport check_comm_norm(const BlackBoxMap& m, const GaugeNorm& n, int n_samples,
                            double tol = kDefaultCheckTol, std::uint64_t seed = 1);

// Commutativity preservation in both directions: commuting pairs (A, p(A))
// must stay commuting, and images that commute must come from commuting
// inputs.
CheckReport check_commutativity_bidir(const BlackBoxMap& m, int n_samples,
                                      double tol = kDefaultCheckTol,
                                      std::uint64_t seed = 1);

enum class Direction { Forward, Both };

// Orthogonality preservation for maps on rank-one projections:
// tr(P Q) = 0 implies tr(m(P) m(Q)) = 0, and with Direction::Both also the
// converse. Images are validated to be rank-one projections.
CheckReport check_projection_orthogonality(const BlackBoxMap& m, Direction dir,
                                           int n_samples,
                                           double tol = kDefaultCheckTol,
                                           std::uint64_t seed = 1);

}  // namespace plab
