#include "preserverlab/canonicalize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "preserverlab/geometry.hpp"
#include "preserverlab/pauli.hpp"
#include "preserverlab/rng.hpp"

namespace plab {

namespace {

constexpr double kProbeTol = 1e-7;       // reconstruction residual gates
constexpr double kDetTol = 1e-6;         // 2d determinant gate
constexpr double kFrameTol = 1e-6;       // orthonormality of assembled frames
constexpr double kClusterTol = 1e-6;     // eigenvalue clustering
constexpr double kTransitionTol = 1e-8;  // |tr(P Q)| validation
constexpr double kComplementTol = 1e-8;
constexpr double kScalarTol = 1e-10;  // tau convention near scalar inputs
constexpr int kValidationProbes = 64;
constexpr int kFreshProbes = 100;
constexpr int kComplementProbes = 32;
constexpr int kProjectionFreshProbes = 50;

constexpr std::uint64_t kTagValidation = 0x9e2f8a64d1c35b07ULL;
constexpr std::uint64_t kTagFresh = 0x517cc1b727220a95ULL;
constexpr std::uint64_t kTagHermFresh = 0x2545f4914f6cdd1dULL;
constexpr std::uint64_t kTagPairs = 0x6c62272e07bb0142ULL;
constexpr std::uint64_t kTagComplement = 0x81dadef4bc2dd44dULL;
constexpr std::uint64_t kTagProjFresh = 0xaef17502108ef2d9ULL;

Rng sub_rng(std::uint64_t seed, std::uint64_t tag) {
  return Rng(splitmix64(seed ^ tag));
}

struct VectorProbes {
  std::vector<RVector> basis;       // e_0 .. e_{d-1}
  std::vector<RVector> sums;        // e_0 + e_j, j = 1 .. d-1
  std::vector<RVector> validation;  // Gaussian
  std::vector<RVector> fresh;       // Gaussian, disjoint stream
};

VectorProbes make_vector_probes(int d, std::uint64_t seed) {
  VectorProbes p;
  for (int j = 0; j < d; ++j) p.basis.push_back(RVector::Unit(d, j));
  for (int j = 1; j < d; ++j)
    p.sums.push_back(RVector::Unit(d, 0) + RVector::Unit(d, j));
  Rng val = sub_rng(seed, kTagValidation);
  for (int i = 0; i < kValidationProbes; ++i) p.validation.push_back(val.gaussian_vector(d));
  Rng fresh = sub_rng(seed, kTagFresh);
  for (int i = 0; i < kFreshProbes; ++i) p.fresh.push_back(fresh.gaussian_vector(d));
  return p;
}

struct HermitianProbes {
  std::vector<CMatrix> diag;  // e_j e_j*
  std::vector<CMatrix> plus;  // onto (e_0 + e_j)/sqrt(2)
  std::vector<CMatrix> imag;  // onto (e_0 + i e_j)/sqrt(2)
};

HermitianProbes make_hermitian_probes(int d) {
  HermitianProbes p;
  for (int j = 0; j < d; ++j) {
    CVector e = CVector::Zero(d);
    e(j) = 1.0;
    p.diag.push_back(e * e.adjoint());
  }
  for (int j = 1; j < d; ++j) {
    CVector x = CVector::Zero(d);
    x(0) = 1.0 / std::sqrt(2.0);
    x(j) = 1.0 / std::sqrt(2.0);
    p.plus.push_back(x * x.adjoint());
    CVector y = CVector::Zero(d);
    y(0) = 1.0 / std::sqrt(2.0);
    y(j) = Complex(0.0, 1.0 / std::sqrt(2.0));
    p.imag.push_back(y * y.adjoint());
  }
  return p;
}

std::vector<CMatrix> make_hermitian_fresh(int d, std::uint64_t seed) {
  Rng rng = sub_rng(seed, kTagHermFresh);
  std::vector<CMatrix> out;
  for (int i = 0; i < kFreshProbes; ++i) out.push_back(rng.gaussian_hermitian(d));
  return out;
}

std::vector<std::pair<CMatrix, CMatrix>> make_projection_pairs(int d, std::uint64_t seed) {
  Rng rng = sub_rng(seed, kTagPairs);
  std::vector<std::pair<CMatrix, CMatrix>> out;
  for (int i = 0; i < kValidationProbes; ++i) {
    CMatrix p = rng.rank_one_projection(d);
    CMatrix q = rng.rank_one_projection(d);
    out.emplace_back(std::move(p), std::move(q));
  }
  return out;
}

std::vector<CMatrix> make_projection_fresh(int d, std::uint64_t seed) {
  Rng rng = sub_rng(seed, kTagProjFresh);
  std::vector<CMatrix> out;
  for (int i = 0; i < kProjectionFreshProbes; ++i)
    out.push_back(rng.rank_one_projection(d));
  return out;
}

std::vector<CMatrix> make_complement_probes(std::uint64_t seed) {
  Rng rng = sub_rng(seed, kTagComplement);
  std::vector<CMatrix> out;
  for (int i = 0; i < kComplementProbes; ++i) out.push_back(rng.rank_one_projection(2));
  return out;
}

enum class LinearKind { AreaTwoD, AreaHighD, WignerReal };

// Shared recovery of m(v) = eps(v) * B v from probe evaluations. The caller
// has validated the space; `kind` controls which structural gates apply.
CanonicalAreaForm reconstruct_signed_linear(const BlackBoxMap& m, LinearKind kind,
                                            std::uint64_t seed) {
  const int d = m.space().dim;
  const VectorProbes probes = make_vector_probes(d, seed);
  const bool orthogonal_expected = kind != LinearKind::AreaTwoD;

  auto check_norm = [&](const RVector& in, const RVector& out) {
    if (!orthogonal_expected) return;
    const double dev = std::abs(out.norm() - in.norm());
    if (dev > kProbeTol * std::max(1.0, in.norm()))
      throw NotAPreserver("norm " + std::to_string(in.norm()) + " mapped to " +
                          std::to_string(out.norm()) + ", scaling is not 1");
  };

  std::vector<RVector> cols;
  cols.reserve(d);
  for (const RVector& e : probes.basis) {
    RVector r = m(e);
    check_norm(e, r);
    cols.push_back(std::move(r));
  }

  // Relative column signs: m(e_0 + e_j) must match +-(r_0 + sigma r_j) for
  // exactly one sigma. Per-input sign flips of the map drop out in the
  // min over the global sign.
  RMatrix b(d, d);
  b.col(0) = cols[0];
  for (int j = 1; j < d; ++j) {
    const RVector img = m(probes.sums[j - 1]);
    check_norm(probes.sums[j - 1], img);
    double dist[2];
    for (int s = 0; s < 2; ++s) {
      const RVector cand = cols[0] + (s == 0 ? 1.0 : -1.0) * cols[j];
      dist[s] = std::min((img - cand).norm(), (img + cand).norm());
    }
    const int pick = dist[0] <= dist[1] ? 0 : 1;
    const double best = dist[pick], other = dist[1 - pick];
    if (best > 1e-6 * std::max(1.0, img.norm()))
      throw NotAPreserver("probe at e_0 + e_" + std::to_string(j) +
                          " matches no signed column combination (distance " +
                          std::to_string(best) + ")");
    if (other - best < 1e-3)
      throw NotAPreserver("column sign for axis " + std::to_string(j) +
                          " is ambiguous");
    b.col(j) = (pick == 0 ? 1.0 : -1.0) * cols[j];
  }

  if (kind == LinearKind::AreaTwoD) {
    const double det_defect = std::abs(std::abs(b.determinant()) - 1.0);
    if (det_defect > kDetTol)
      throw NotAPreserver("determinant modulus deviates from 1 by " +
                          std::to_string(det_defect));
  } else {
    const double defect = (b.transpose() * b - RMatrix::Identity(d, d)).norm();
    if (defect > kFrameTol * d)
      throw NotAPreserver("recovered columns are not orthonormal, defect " +
                          std::to_string(defect));
    // Polish to the nearest orthogonal matrix, then fix the global sign.
    Eigen::JacobiSVD<RMatrix> fit(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
    b = fit.matrixU() * fit.matrixV().transpose();
    for (int i = 0; i < d; ++i) {
      if (std::abs(b(i, 0)) > 1e-6) {
        if (b(i, 0) < 0.0) b = -b;
        break;
      }
    }
  }

  auto probe_residual = [&](const RVector& v) {
    const RVector w = m(v);
    check_norm(v, w);
    const double res = std::min((w - b * v).norm(), (w + b * v).norm());
    return res / std::max(1.0, v.norm());
  };

  std::vector<RVector> validation_images;
  for (const RVector& v : probes.validation) {
    const double res = probe_residual(v);
    if (res > kProbeTol)
      throw NotAPreserver("validation probe deviates from the signed linear form by " +
                          std::to_string(res));
    if (kind == LinearKind::WignerReal) validation_images.push_back(m(v));
  }

  if (kind == LinearKind::WignerReal) {
    // Pairwise |<a, b>| preservation on consecutive validation probes.
    for (int i = 0; i + 1 < static_cast<int>(probes.validation.size()); i += 2) {
      const RVector &a = probes.validation[i], &c = probes.validation[i + 1];
      const double lhs = std::abs(validation_images[i].dot(validation_images[i + 1]));
      const double rhs = std::abs(a.dot(c));
      if (std::abs(lhs - rhs) > 1e-8 * std::max(1.0, a.norm() * c.norm()))
        throw NotAPreserver("|<a,b>| is not preserved on a validation pair");
    }
  }

  double worst = 0.0;
  for (const RVector& v : probes.fresh) worst = std::max(worst, probe_residual(v));
  if (worst > kProbeTol)
    throw NotAPreserver("fresh-probe residual " + std::to_string(worst) +
                        " exceeds the canonical-form tolerance");

  CanonicalAreaForm form;
  form.linear_part = b;
  form.residual = worst;
  BlackBoxMap mc = m;
  RMatrix bc = b;
  form.eps_at = [mc, bc](const RVector& v) -> int {
    const RVector w = mc(v);
    return (w - bc * v).norm() <= (w + bc * v).norm() ? 1 : -1;
  };
  return form;
}

void require_space(const BlackBoxMap& m, SpaceKind kind, const char* who) {
  if (m.space().kind != kind)
    throw DimensionError(std::string(who) + ": map acts on the wrong space");
}

// Eigendecomposition of a map image: structural gate at 1e-6 (reject), then
// solve on the symmetrized matrix so solver preconditions hold exactly.
SpectralDecomposition eig_of_image(const CMatrix& img) {
  if (!is_hermitian(img, kFrameTol))
    throw NotAPreserver("image matrix is not Hermitian");
  const CMatrix sym = 0.5 * (img + img.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigensolver failed on an image matrix");
  return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

struct OutlierSplit {
  double f = 0.0;     // mean of the (d-1)-cluster
  int tau = 1;        // sign of (outlier - f)
  CVector direction;  // outlier eigenvector
};

// Splits the spectrum of m(P) into a (d-1)-fold value f and the outlier
// f + tau. P is a rank-one projection, so a conforming image must have
// exactly this shape.
OutlierSplit split_image(const CMatrix& img, int d) {
  const SpectralDecomposition eig = eig_of_image(img);
  const RVector& w = eig.eigenvalues;
  const double bottom_gap = w(1) - w(0);
  const double top_gap = w(d - 1) - w(d - 2);
  if (std::max(bottom_gap, top_gap) < kClusterTol)
    throw InternalError("cannot separate an outlier eigenvalue: gaps " +
                        std::to_string(bottom_gap) + ", " + std::to_string(top_gap));
  const int idx = top_gap > bottom_gap ? d - 1 : 0;

  double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
  for (int i = 0; i < d; ++i) {
    if (i == idx) continue;
    lo = std::min(lo, w(i));
    hi = std::max(hi, w(i));
    sum += w(i);
  }
  if (hi - lo > kClusterTol)
    throw NotAPreserver("image eigenvalues do not form a (d-1)-cluster, spread " +
                        std::to_string(hi - lo));
  OutlierSplit split;
  split.f = sum / (d - 1);
  const double gap = w(idx) - split.f;
  if (std::abs(std::abs(gap) - 1.0) > kClusterTol)
    throw NotAPreserver("outlier eigenvalue offset " + std::to_string(gap) +
                        " is not +-1");
  split.tau = gap > 0.0 ? 1 : -1;
  split.direction = eig.eigenvectors.col(idx);
  return split;
}

// Range direction of a rank-one projection image.
CVector projection_range(const CMatrix& img, int d) {
  const SpectralDecomposition eig = eig_of_image(img);
  const RVector& w = eig.eigenvalues;
  if (std::abs(w(d - 1) - 1.0) > kFrameTol || std::abs(w(0)) > kFrameTol ||
      (d > 2 && std::abs(w(d - 2)) > kFrameTol))
    throw NotAPreserver("image is not a rank-one projection");
  return eig.eigenvectors.col(d - 1);
}

// Aligns the phase of `col` (the axis-j direction) to the phase of `anchor`
// (the axis-0 direction) using the direction recovered from the probe onto
// (e_0 + e_j)/sqrt(2).
CVector phase_align(const CVector& anchor, const CVector& col, const CVector& mixed,
                    int axis) {
  const Complex a = anchor.dot(mixed);
  const Complex b = col.dot(mixed);
  if (std::abs(a) < 0.1 || std::abs(b) < 0.1)
    throw NotAPreserver("mixing probe for axis " + std::to_string(axis) +
                        " does not overlap the recovered frame");
  Complex phase = b * std::conj(a);
  phase /= std::abs(phase);
  return phase * col;
}

// Antiunitary vote from the probe onto (e_0 + i e_j)/sqrt(2): its image
// range must align with (u_0 + i u_j) (unitary) or (u_0 - i u_j)
// (antiunitary).
bool antiunitary_vote(const CVector& u0, const CVector& uj, const CVector& mixed,
                      int axis) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const CVector plus = (u0 + Complex(0.0, 1.0) * uj) * inv_sqrt2;
  const CVector minus = (u0 - Complex(0.0, 1.0) * uj) * inv_sqrt2;
  const double overlap_plus = std::norm(plus.dot(mixed));
  const double overlap_minus = std::norm(minus.dot(mixed));
  if (std::max(overlap_plus, overlap_minus) < 0.9 ||
      std::min(overlap_plus, overlap_minus) > 0.1)
    throw NotAPreserver("complex superposition probe for axis " + std::to_string(axis) +
                        " is ambiguous: overlaps " + std::to_string(overlap_plus) +
                        ", " + std::to_string(overlap_minus));
  return overlap_minus > overlap_plus;
}

void require_unanimous(const std::vector<bool>& votes) {
  int anti = 0;
  for (bool v : votes) anti += v ? 1 : 0;
  if (anti != 0 && anti != static_cast<int>(votes.size()))
    throw NotAPreserver("conjugation behavior differs across axes: " +
                        std::to_string(anti) + " of " + std::to_string(votes.size()) +
                        " axes vote antiunitary");
}

// Polishes an approximately unitary frame to the nearest unitary and fixes
// the global phase: the first entry (row-major) with modulus above 1e-6 is
// made positive real.
CMatrix polish_unitary(CMatrix u, int d) {
  const double defect = (u.adjoint() * u - CMatrix::Identity(d, d)).norm();
  if (defect > kFrameTol * d)
    throw NotAPreserver("assembled frame is not unitary, defect " +
                        std::to_string(defect));
  Eigen::JacobiSVD<CMatrix> fit(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
  u = fit.matrixU() * fit.matrixV().adjoint();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (std::abs(u(i, j)) > 1e-6) {
        Complex phase = u(i, j) / std::abs(u(i, j));
        return u * std::conj(phase);
      }
    }
  }
  throw InternalError("unitary matrix with no entry above 1e-6");
}

// tau and f for one input, given its image. Near-scalar inputs take tau = +1
// by convention (both signs fit there, so the choice is pinned).
std::pair<int, double> tau_and_f(const CMatrix& u, bool antiunitary, const CMatrix& a,
                                 const CMatrix& img) {
  const int d = static_cast<int>(a.rows());
  const CMatrix id = CMatrix::Identity(d, d);
  const double tra = a.trace().real();
  const double trimg = img.trace().real();
  const CMatrix traceless = a - (a.trace() / static_cast<double>(d)) * id;
  if (traceless.norm() <= kScalarTol * std::max(1.0, a.norm()))
    return {1, (trimg - tra) / d};
  const CMatrix ap = antiunitary ? CMatrix(a.conjugate()) : a;
  const CMatrix core = u * ap * u.adjoint();
  int best_tau = 1;
  double best_f = 0.0;
  double best_res = std::numeric_limits<double>::infinity();
  for (const int tau : {1, -1}) {
    const double f = (trimg - tau * tra) / d;
    const double res = (img - static_cast<double>(tau) * core - f * id).norm();
    if (res < best_res) {
      best_res = res;
      best_tau = tau;
      best_f = f;
    }
  }
  return {best_tau, best_f};
}

// Builds the final form: oracles plus the fresh-probe residual gate.
CanonicalCommForm finalize_comm_form(const BlackBoxMap& m, const CMatrix& u,
                                     bool antiunitary, std::uint64_t seed) {
  const int d = m.space().dim;
  const CMatrix id = CMatrix::Identity(d, d);

  double worst = 0.0;
  for (const CMatrix& a : make_hermitian_fresh(d, seed)) {
    const CMatrix img = m(a);
    const auto [tau, f] = tau_and_f(u, antiunitary, a, img);
    const CMatrix ap = antiunitary ? CMatrix(a.conjugate()) : a;
    const double res =
        (img - static_cast<double>(tau) * u * ap * u.adjoint() - f * id).norm() /
        std::max(1.0, a.norm());
    worst = std::max(worst, res);
  }
  if (worst > kProbeTol)
    throw NotAPreserver("reconstruction residual " + std::to_string(worst) +
                        " exceeds the canonical-form tolerance");

  CanonicalCommForm form;
  form.unitary = u;
  form.antiunitary = antiunitary;
  form.residual = worst;
  BlackBoxMap mc = m;
  CMatrix uc = u;
  form.tau_at = [mc, uc, antiunitary](const CMatrix& a) -> int {
    return tau_and_f(uc, antiunitary, a, mc(a)).first;
  };
  form.f_at = [mc, uc, antiunitary](const CMatrix& a) -> double {
    return tau_and_f(uc, antiunitary, a, mc(a)).second;
  };
  return form;
}

}  // namespace

CanonicalAreaForm area_canon_2d(const BlackBoxMap& m, std::uint64_t seed) {
  require_space(m, SpaceKind::RealEuclidean, "area_canon_2d");
  if (m.space().dim != 2) throw DimensionError("area_canon_2d requires dimension 2");
  return reconstruct_signed_linear(m, LinearKind::AreaTwoD, seed);
}

CanonicalAreaForm area_canon_highd(const BlackBoxMap& m, std::uint64_t seed) {
  require_space(m, SpaceKind::RealEuclidean, "area_canon_highd");
  if (m.space().dim < 3)
    throw DimensionError("area_canon_highd requires dimension >= 3");
  return reconstruct_signed_linear(m, LinearKind::AreaHighD, seed);
}

CanonicalAreaForm wigner_real(const BlackBoxMap& m, std::uint64_t seed) {
  require_space(m, SpaceKind::RealEuclidean, "wigner_real");
  return reconstruct_signed_linear(m, LinearKind::WignerReal, seed);
}

CanonicalCommForm comm_canon_2x2(const BlackBoxMap& m, const GaugeNorm& n,
                                 std::uint64_t seed) {
  require_space(m, SpaceKind::Hermitian, "comm_canon_2x2");
  if (m.space().dim != 2) throw DimensionError("comm_canon_2x2 requires dimension 2");
  (void)n;  // which norm was checked does not enter the recovery

  // Reduce to the traceless part and carry it to R^3: there the map must be
  // a signed orthogonal map, recovered by the shared engine.
  BlackBoxMap mc = m;
  auto xi_fn = [mc](const RVector& v) -> RVector {
    CMatrix img = mc(iota(v));
    if (!is_hermitian(img, kFrameTol))
      throw NotAPreserver("image matrix is not Hermitian");
    img = 0.5 * (img + img.adjoint());
    img -= (img.trace() / 2.0) * CMatrix::Identity(2, 2);
    return iota_inv(img);
  };
  const BlackBoxMap xi = BlackBoxMap::euclidean(3, xi_fn);
  const CanonicalAreaForm r3 = reconstruct_signed_linear(xi, LinearKind::AreaHighD, seed);

  const RMatrix o = r3.linear_part;
  const bool antiunitary = o.determinant() < 0.0;
  const RMatrix rotation = antiunitary ? split_improper(o).rotation : o;
  const CMatrix u = su2_from_rotation(rotation);
  return finalize_comm_form(m, u, antiunitary, seed);
}

CanonicalCommForm comm_canon_general(const BlackBoxMap& m, const GaugeNorm& n,
                                     std::uint64_t seed) {
  require_space(m, SpaceKind::Hermitian, "comm_canon_general");
  const int d = m.space().dim;
  if (d == 2) return comm_canon_2x2(m, n, seed);
  (void)n;

  const HermitianProbes probes = make_hermitian_probes(d);

  std::vector<OutlierSplit> axis_splits;
  axis_splits.reserve(d);
  for (const CMatrix& p : probes.diag) axis_splits.push_back(split_image(m(p), d));

  CMatrix u(d, d);
  u.col(0) = axis_splits[0].direction;
  for (int j = 1; j < d; ++j) {
    const OutlierSplit mixed = split_image(m(probes.plus[j - 1]), d);
    u.col(j) = phase_align(u.col(0), axis_splits[j].direction, mixed.direction, j);
  }

  std::vector<bool> votes;
  for (int j = 1; j < d; ++j) {
    const OutlierSplit mixed = split_image(m(probes.imag[j - 1]), d);
    votes.push_back(antiunitary_vote(u.col(0), u.col(j), mixed.direction, j));
  }
  require_unanimous(votes);
  const bool antiunitary = votes[0];

  return finalize_comm_form(m, polish_unitary(u, d), antiunitary, seed);
}

BlackBoxMap extend_projection_map(const BlackBoxMap& phi, std::uint64_t seed) {
  require_space(phi, SpaceKind::Hermitian, "extend_projection_map");
  if (phi.space().dim != 2)
    throw DimensionError("extend_projection_map requires dimension 2");

  const CMatrix id = CMatrix::Identity(2, 2);
  for (const CMatrix& p : make_complement_probes(seed)) {
    const CMatrix ip = phi(p);
    const CMatrix iq = phi(CMatrix(id - p));
    if ((iq - (id - ip)).norm() > kComplementTol)
      throw PreconditionError(
          "complement compatibility fails: ||phi(I-P) - (I - phi(P))|| = " +
          std::to_string((iq - (id - ip)).norm()));
  }

  BlackBoxMap pc = phi;
  auto extension = [pc, id](const CMatrix& a) -> CMatrix {
    const SpectralDecomposition eig = eig_hermitian(a);
    const double lo = eig.eigenvalues(0), hi = eig.eigenvalues(1);
    if (hi - lo <= 1e-12 * std::max(1.0, std::abs(lo) + std::abs(hi)))
      return 0.5 * (lo + hi) * id;
    const CVector v0 = eig.eigenvectors.col(0);
    const CVector v1 = eig.eigenvectors.col(1);
    return lo * pc(CMatrix(v0 * v0.adjoint())) + hi * pc(CMatrix(v1 * v1.adjoint()));
  };
  return BlackBoxMap::hermitian(2, extension);
}

ProjectiveForm wigner_complex(const BlackBoxMap& phi, std::uint64_t seed) {
  require_space(phi, SpaceKind::Hermitian, "wigner_complex");
  const int d = phi.space().dim;

  for (const auto& [p, q] : make_projection_pairs(d, seed)) {
    const CMatrix ip = phi(p);
    const CMatrix iq = phi(q);
    projection_range(ip, d);
    projection_range(iq, d);
    const double lhs = std::abs((ip * iq).trace());
    const double rhs = std::abs((p * q).trace());
    if (std::abs(lhs - rhs) > kTransitionTol)
      throw NotAPreserver("|tr(P Q)| is not preserved: " + std::to_string(rhs) +
                          " mapped to " + std::to_string(lhs));
  }

  const HermitianProbes probes = make_hermitian_probes(d);
  std::vector<CVector> axes;
  axes.reserve(d);
  for (const CMatrix& p : probes.diag) axes.push_back(projection_range(phi(p), d));

  CMatrix u(d, d);
  u.col(0) = axes[0];
  for (int j = 1; j < d; ++j) {
    const CVector mixed = projection_range(phi(probes.plus[j - 1]), d);
    u.col(j) = phase_align(u.col(0), axes[j], mixed, j);
  }

  std::vector<bool> votes;
  for (int j = 1; j < d; ++j) {
    const CVector mixed = projection_range(phi(probes.imag[j - 1]), d);
    votes.push_back(antiunitary_vote(u.col(0), u.col(j), mixed, j));
  }
  require_unanimous(votes);
  const bool antiunitary = votes[0];

  const CMatrix uhat = polish_unitary(u, d);

  double worst = 0.0;
  for (const CMatrix& p : make_projection_fresh(d, seed)) {
    const CMatrix pp = antiunitary ? CMatrix(p.conjugate()) : p;
    const double res = (phi(p) - uhat * pp * uhat.adjoint()).norm();
    worst = std::max(worst, res);
  }
  if (worst > kProbeTol)
    throw NotAPreserver("reconstruction residual " + std::to_string(worst) +
                        " exceeds the canonical-form tolerance");

  return ProjectiveForm{uhat, antiunitary, worst};
}

QueryPlan query_plan(CanonTarget target, const Space& space, std::uint64_t seed) {
  require_supported_dim(space.dim);
  const int d = space.dim;
  QueryPlan plan;

  auto add_vector_probes = [&plan](int dim, std::uint64_t s) {
    const VectorProbes p = make_vector_probes(dim, s);
    plan.vectors.insert(plan.vectors.end(), p.basis.begin(), p.basis.end());
    plan.vectors.insert(plan.vectors.end(), p.sums.begin(), p.sums.end());
    plan.vectors.insert(plan.vectors.end(), p.validation.begin(), p.validation.end());
    plan.vectors.insert(plan.vectors.end(), p.fresh.begin(), p.fresh.end());
  };

  auto add_structured_hermitian = [&plan](int dim) {
    const HermitianProbes p = make_hermitian_probes(dim);
    plan.matrices.insert(plan.matrices.end(), p.diag.begin(), p.diag.end());
    plan.matrices.insert(plan.matrices.end(), p.plus.begin(), p.plus.end());
    plan.matrices.insert(plan.matrices.end(), p.imag.begin(), p.imag.end());
  };

  // The Hermitian-space query list for a comm-norm canonicalization run.
  auto add_comm_queries = [&](std::uint64_t s) {
    if (d == 2) {
      const VectorProbes p = make_vector_probes(3, s);
      auto add_iota = [&plan](const std::vector<RVector>& vs) {
        for (const RVector& v : vs) plan.matrices.push_back(iota(v));
      };
      add_iota(p.basis);
      add_iota(p.sums);
      add_iota(p.validation);
      add_iota(p.fresh);
    } else {
      add_structured_hermitian(d);
    }
    const auto fresh = make_hermitian_fresh(d, s);
    plan.matrices.insert(plan.matrices.end(), fresh.begin(), fresh.end());
  };

  switch (target) {
    case CanonTarget::Area:
    case CanonTarget::WignerReal:
      if (space.kind != SpaceKind::RealEuclidean)
        throw DimensionError("this target plans over real vectors");
      add_vector_probes(d, seed);
      return plan;
    case CanonTarget::CommNorm: {
      if (space.kind != SpaceKind::Hermitian)
        throw DimensionError("this target plans over Hermitian matrices");
      add_comm_queries(seed);
      return plan;
    }
    case CanonTarget::WignerComplex: {
      if (space.kind != SpaceKind::Hermitian)
        throw DimensionError("this target plans over Hermitian matrices");
      for (const auto& [p, q] : make_projection_pairs(d, seed)) {
        plan.matrices.push_back(p);
        plan.matrices.push_back(q);
      }
      add_structured_hermitian(d);
      const auto fresh = make_projection_fresh(d, seed);
      plan.matrices.insert(plan.matrices.end(), fresh.begin(), fresh.end());
      return plan;
    }
    case CanonTarget::ExtendProjection: {
      if (space.kind != SpaceKind::Hermitian || d != 2)
        throw DimensionError("this target plans over rank-one projections of C^2");
      const CMatrix id = CMatrix::Identity(2, 2);
      for (const CMatrix& p : make_complement_probes(seed)) {
        plan.matrices.push_back(p);
        plan.matrices.push_back(id - p);
      }
      // Queries the extended map issues while comm_canon_2x2 probes it:
      // the eigenprojections of every Hermitian input of that run.
      QueryPlan comm = query_plan(CanonTarget::CommNorm, space, seed);
      for (const CMatrix& h : comm.matrices) {
        const SpectralDecomposition eig = eig_hermitian(h);
        const double lo = eig.eigenvalues(0), hi = eig.eigenvalues(1);
        if (hi - lo <= 1e-12 * std::max(1.0, std::abs(lo) + std::abs(hi))) continue;
        const CVector v0 = eig.eigenvectors.col(0);
        const CVector v1 = eig.eigenvectors.col(1);
        plan.matrices.push_back(v0 * v0.adjoint());
        plan.matrices.push_back(v1 * v1.adjoint());
      }
      return plan;
    }
  }
  throw InternalError("unreachable canonicalization target");
}

}  // namespace plab
