#pragma once

#include <optional>
#include <utility>

#include "preserverlab/linalg.hpp"

namespace plab {

// Parallelogram area sqrt(|a|^2 |b|^2 - <a,b>^2). The radicand is clamped to
// zero when roundoff drives it no lower than -1e-12 * |a|^2 |b|^2; anything
// more negative raises NumericalError.
double area(const RVector& a, const RVector& b);

// The same quantity written through norms of b's component orthogonal to a:
// |a| * |b - <a,b>/|a|^2 * a| (and |a||b| when a = 0). Used as an
// independent cross-check of `area`.
double area_polarized(const RVector& a, const RVector& b);

// Cross product, d = 3 only.
Eigen::Vector3d cross(const RVector& v, const RVector& w);

struct AreaPreservingVerdict {
  bool preserving = false;
  // For a rejected map: a vector pair whose parallelogram area the map
  // distorts, picked from right singular directions.
  std::optional<std::pair<RVector, RVector>> witness;
};

// Decides whether the linear map given by A preserves all parallelogram
// areas: |det A| within 1e-9 of 1 when d = 2, every singular value within
// 1e-9 of 1 when d >= 3.
AreaPreservingVerdict is_area_preserving_linear(const RMatrix& A);

}  // namespace plab
