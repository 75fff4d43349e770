#pragma once

#include <functional>
#include <utility>

#include "preserverlab/linalg.hpp"

namespace plab {

enum class SpaceKind { RealEuclidean, Hermitian };

struct Space {
  SpaceKind kind = SpaceKind::RealEuclidean;
  int dim = 0;
  bool operator==(const Space&) const = default;
};

// A map under investigation, exposed only through evaluation. Checkers and
// canonicalizers never look inside: everything they learn comes from queries.
class BlackBoxMap {
public:
  using VecFn = std::function<RVector(const RVector&)>;
  using MatFn = std::function<CMatrix(const CMatrix&)>;

  static BlackBoxMap euclidean(int dim, VecFn f);
  static BlackBoxMap hermitian(int dim, MatFn f);

  const Space& space() const { return space_; }

  RVector operator()(const RVector& v) const;
  CMatrix operator()(const CMatrix& A) const;

private:
  BlackBoxMap(Space space, VecFn vf, MatFn mf)
      : space_(space), vec_fn_(std::move(vf)), mat_fn_(std::move(mf)) {}
  Space space_;
  VecFn vec_fn_;
  MatFn mat_fn_;
};

}  // namespace plab
