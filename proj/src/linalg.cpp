#include "preserverlab/linalg.hpp"

#include <algorithm>
#include <string>

namespace plab {

void require_square(const CMatrix& A) {
  if (A.rows() != A.cols())
    throw DimensionError("expected square matrix, got " + std::to_string(A.rows()) +
                         "x" + std::to_string(A.cols()));
}

void require_same_shape(const CMatrix& A, const CMatrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw DimensionError("shape mismatch: " + std::to_string(A.rows()) + "x" +
                         std::to_string(A.cols()) + " vs " + std::to_string(B.rows()) +
                         "x" + std::to_string(B.cols()));
}

void require_supported_dim(int d) {
  if (d < kMinDim || d > kMaxDim)
    throw DimensionError("dimension " + std::to_string(d) + " outside supported range [" +
                         std::to_string(kMinDim) + ", " + std::to_string(kMaxDim) + "]");
}

bool is_hermitian(const CMatrix& A, double tol) {
  if (A.rows() != A.cols()) return false;
  const double dev = (A - A.adjoint()).norm();
  return dev <= tol * std::max(1.0, A.norm());
}

void require_hermitian(const CMatrix& A, double tol) {
  require_square(A);
  const double dev = (A - A.adjoint()).norm();
  const double bound = tol * std::max(1.0, A.norm());
  if (dev > bound)
    throw StructureError("matrix is not Hermitian: ||A - A*||_F = " + std::to_string(dev) +
                         " exceeds " + std::to_string(bound));
}

CMatrix commutator(const CMatrix& A, const CMatrix& B) {
  require_square(A);
  require_same_shape(A, B);
  return A * B - B * A;
}

CMatrix conjugate_entrywise(const CMatrix& A) { return A.conjugate(); }

SpectralDecomposition eig_hermitian(const CMatrix& A) {
  require_hermitian(A);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(A);
  if (solver.info() != Eigen::Success)
    throw NumericalError("Hermitian eigensolver failed to converge");
  return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

SingularValueDecomposition svd(const CMatrix& M) {
  Eigen::JacobiSVD<CMatrix> solver(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return SingularValueDecomposition{solver.singularValues(), solver.matrixU(),
                                    solver.matrixV()};
}

RVector singular_values(const CMatrix& M) {
  Eigen::JacobiSVD<CMatrix> solver(M);
  return solver.singularValues();
}

RankOneProjection::RankOneProjection(const CVector& x) : x_(x) {
  const double n = x_.norm();
  if (std::abs(n - 1.0) > 1e-8)
    throw StructureError("projection axis must be a unit vector, |x| = " + std::to_string(n));
  x_ /= n;
}

RankOneProjection RankOneProjection::from_matrix(const CMatrix& P, double tol) {
  require_hermitian(P, std::max(tol, kHermitianTol));
  const auto n = P.rows();
  if (std::abs(P.trace().real() - 1.0) > tol || std::abs(P.trace().imag()) > tol)
    throw StructureError("projection must have trace 1");
  if ((P * P - P).norm() > tol * std::max(1.0, P.norm()))
    throw StructureError("matrix is not idempotent");
  // Range direction: eigenvector of the (approximately) unit eigenvalue.
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(P);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigensolver failed on projection candidate");
  CVector x = solver.eigenvectors().col(n - 1);
  return RankOneProjection(x / x.norm());
}

}  // namespace plab
