#pragma once

#include <complex>

#include <Eigen/Dense>

#include "preserverlab/errors.hpp"

namespace plab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr int kMinDim = 2;
inline constexpr int kMaxDim = 8;

// Hermiticity is accepted up to 1e-12 relative to max(1, ||A||_F).
inline constexpr double kHermitianTol = 1e-12;

void require_square(const CMatrix& A);
void require_same_shape(const CMatrix& A, const CMatrix& B);

// Dimension gate for public entry points that promise 2 <= d <= 8.
void require_supported_dim(int d);

bool is_hermitian(const CMatrix& A, double tol = kHermitianTol);

// Throws StructureError. Deviant inputs are rejected, never symmetrized:
// silently averaging A and A* would mask caller bugs.
void require_hermitian(const CMatrix& A, double tol = kHermitianTol);

CMatrix commutator(const CMatrix& A, const CMatrix& B);

CMatrix conjugate_entrywise(const CMatrix& A);

struct SpectralDecomposition {
  RVector eigenvalues;   // ascending
  CMatrix eigenvectors;  // orthonormal columns; A = V diag(w) V*
};

// Hermitian eigendecomposition. The input must pass require_hermitian.
SpectralDecomposition eig_hermitian(const CMatrix& A);

struct SingularValueDecomposition {
  RVector singular_values;  // descending, nonnegative
  CMatrix u;                // M = u * diag(s) * v*
  CMatrix v;
};

SingularValueDecomposition svd(const CMatrix& M);

// Singular values only, descending.
RVector singular_values(const CMatrix& M);

// Unit vector wrapper for x x*. Stored normalized; construction rejects
// vectors whose norm is farther than 1e-8 from 1.
class RankOneProjection {
public:
  explicit RankOneProjection(const CVector& x);

  // Validates that P is Hermitian, idempotent and has trace 1 within tol,
  // then extracts the range direction.
  static RankOneProjection from_matrix(const CMatrix& P, double tol = 1e-8);

  const CVector& axis() const { return x_; }
  CMatrix matrix() const { return x_ * x_.adjoint(); }
  int dim() const { return static_cast<int>(x_.size()); }

private:
  CVector x_;
};

}  // namespace plab
