#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "preserverlab/blackbox.hpp"
#include "preserverlab/gauge.hpp"

namespace plab {

// Default probe seed used when the caller does not supply one.
inline constexpr std::uint64_t kCanonSeed = 0x70726f6265736564ULL;

// Recovered structure of a map m(v) = eps(v) * B v on real vectors.
// eps_at queries the map, so it stays valid for fresh inputs.
struct CanonicalAreaForm {
  RMatrix linear_part;
  std::function<int(const RVector&)> eps_at;
  double residual = 0.0;  // worst normalized deviation on fresh probes
};

// Recovered structure of a map m(A) = tau(A) U A' U* + f(A) I on Hermitian
// matrices, where A' is A or its entrywise conjugate (antiunitary = true).
struct CanonicalCommForm {
  CMatrix unitary;
  bool antiunitary = false;
  std::function<int(const CMatrix&)> tau_at;
  std::function<double(const CMatrix&)> f_at;
  double residual = 0.0;
};

// Recovered structure of a map phi(P) = U P' U* on rank-one projections.
struct ProjectiveForm {
  CMatrix unitary;
  bool antiunitary = false;
  double residual = 0.0;
};

// d = 2 area preservers: recovers B with columns read off the map (signs
// made column-consistent), |det B| within 1e-6 of 1. No orthogonality is
// imposed: the d = 2 family is genuinely larger.
CanonicalAreaForm area_canon_2d(const BlackBoxMap& m, std::uint64_t seed = kCanonSeed);

// d >= 3 area preservers: the linear part is orthogonal. Checks norm
// preservation, fixes relative column signs, polishes to the nearest
// orthogonal matrix and normalizes the global sign (first nonzero entry of
// the first column positive).
CanonicalAreaForm area_canon_highd(const BlackBoxMap& m, std::uint64_t seed = kCanonSeed);

// Maps preserving |<a, b>| on real vectors (d >= 2): same recovered shape
// as the high-dimensional area case.
CanonicalAreaForm wigner_real(const BlackBoxMap& m, std::uint64_t seed = kCanonSeed);

// Commutator-norm preservers on 2x2 Hermitian matrices. The norm argument
// records which norm the caller checked; the recovery itself is norm-free.
CanonicalCommForm comm_canon_2x2(const BlackBoxMap& m, const GaugeNorm& n,
                                 std::uint64_t seed = kCanonSeed);

// Commutator-norm preservers for any supported dimension (delegates to the
// 2x2 routine when d = 2).
CanonicalCommForm comm_canon_general(const BlackBoxMap& m, const GaugeNorm& n,
                                     std::uint64_t seed = kCanonSeed);

// Extends a map on rank-one projections of C^2 to all Hermitian 2x2
// matrices by spectral linearity. Validates complement compatibility
// phi(I - P) = I - phi(P) on 32 samples first (PreconditionError).
BlackBoxMap extend_projection_map(const BlackBoxMap& phi, std::uint64_t seed = kCanonSeed);

// Maps on rank-one projections of C^d preserving |tr(P Q)|: recovers a
// unitary or antiunitary implementation.
ProjectiveForm wigner_complex(const BlackBoxMap& phi, std::uint64_t seed = kCanonSeed);

enum class CanonTarget { Area, CommNorm, WignerReal, WignerComplex, ExtendProjection };

// Every input a canonicalization run will query, in order. Table-backed
// maps built over exactly this plan can be canonicalized without a
// MissingSample. For ExtendProjection the plan also covers the queries the
// extended map issues while comm_canon_2x2 runs on it.
struct QueryPlan {
  std::vector<RVector> vectors;
  std::vector<CMatrix> matrices;
};

QueryPlan query_plan(CanonTarget target, const Space& space,
                     std::uint64_t seed = kCanonSeed);

}  // namespace plab
