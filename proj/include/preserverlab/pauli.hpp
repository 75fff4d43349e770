#pragma once

#include "preserverlab/linalg.hpp"

namespace plab {

// Linear isometry (up to sqrt(2)) between R^3 and traceless Hermitian 2x2
// matrices:
//   (a, b, c)  ->  [ a      b + ic ]
//                  [ b - ic   -a   ]
CMatrix iota(const RVector& v);

// Inverse of iota. The input must be 2x2, Hermitian and traceless within
// 1e-12 * max(1, ||C||_F).
RVector iota_inv(const CMatrix& C);

// || [iota(v), iota(w)] + 2i * iota(v x w) ||_F, normalized by
// max(1, |v| |w|). Zero up to roundoff for all v, w.
double comm_cross_residual(const RVector& v, const RVector& w);

// SU(2) element U with iota(R v) = U iota(v) U* for all v, where R is a
// proper rotation (||R^T R - I||_F <= 1e-8, det R > 0 required). Of the two
// candidates +-U the one returned has its first nonzero entry (row-major)
// with positive real part, ties broken by positive imaginary part.
CMatrix su2_from_rotation(const RMatrix& R);

// Fixes the global sign of a 2x2 unitary by the same rule.
CMatrix canonical_sign(const CMatrix& U);

struct ImproperSplit {
  RMatrix rotation;    // proper
  RMatrix reflection;  // always diag(1, 1, -1)
};

// Splits an improper orthogonal O (det < 0) as rotation * reflection.
// On the iota side the reflection factor is entrywise conjugation.
ImproperSplit split_improper(const RMatrix& O);

}  // namespace plab
