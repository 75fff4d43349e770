#include "preserverlab/blackbox.hpp"

#include <string>

namespace plab {

BlackBoxMap BlackBoxMap::euclidean(int dim, VecFn f) {
  require_supported_dim(dim);
  if (!f) throw ParameterError("null evaluator");
  return BlackBoxMap(Space{SpaceKind::RealEuclidean, dim}, std::move(f), nullptr);
}

BlackBoxMap BlackBoxMap::hermitian(int dim, MatFn f) {
  require_supported_dim(dim);
  if (!f) throw ParameterError("null evaluator");
  return BlackBoxMap(Space{SpaceKind::Hermitian, dim}, nullptr, std::move(f));
}

RVector BlackBoxMap::operator()(const RVector& v) const {
  if (space_.kind != SpaceKind::RealEuclidean)
    throw DimensionError("map acts on Hermitian matrices, not vectors");
  if (v.size() != space_.dim)
    throw DimensionError("expected a vector of dimension " + std::to_string(space_.dim));
  RVector out = vec_fn_(v);
  if (out.size() != space_.dim)
    throw InternalError("evaluator returned a vector of wrong dimension");
  return out;
}

CMatrix BlackBoxMap::operator()(const CMatrix& A) const {
  if (space_.kind != SpaceKind::Hermitian)
    throw DimensionError("map acts on vectors, not Hermitian matrices");
  if (A.rows() != space_.dim || A.cols() != space_.dim)
    throw DimensionError("expected a " + std::to_string(space_.dim) + "x" +
                         std::to_string(space_.dim) + " matrix");
  CMatrix out = mat_fn_(A);
  if (out.rows() != space_.dim || out.cols() != space_.dim)
    throw InternalError("evaluator returned a matrix of wrong dimension");
  return out;
}

}  // namespace plab
