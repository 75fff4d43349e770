#include "preserverlab/check.hpp"

#include <algorithm>
#include <cmath>

#include "preserverlab/geometry.hpp"
#include "preserverlab/rng.hpp"

namespace plab {

namespace {

void require_euclidean(const BlackBoxMap& m, const char* who) {
  if (m.space().kind != SpaceKind::RealEuclidean)
    throw DimensionError(std::string(who) + " expects a map on real vectors");
}

void require_hermitian_space(const BlackBoxMap& m, const char* who) {
  if (m.space().kind != SpaceKind::Hermitian)
    throw DimensionError(std::string(who) + " expects a map on Hermitian matrices");
}

void require_sample_count(int n_samples) {
  if (n_samples < 1) throw ParameterError("n_samples must be positive");
}

// Tracks worst-case errors and the worst witness across samples.
struct ErrorTracker {
  double max_abs = 0.0;
  double max_rel = 0.0;
  double worst_violation = 0.0;
  std::optional<CheckWitness> witness;

  void record(double abs_err, double rel_err, double tol, CheckWitness w) {
    max_abs = std::max(max_abs, abs_err);
    max_rel = std::max(max_rel, rel_err);
    if (rel_err > tol && rel_err > worst_violation) {
      worst_violation = rel_err;
      witness = std::move(w);
    }
  }
};

RVector sample_direction_pairable(Rng& rng, int d) {
  for (;;) {
    RVector v = rng.gaussian_vector(d);
    if (v.norm() >= 1e-6) return v;
  }
}

// Unit x and unit y with <x, y> = 0.
std::pair<CVector, CVector> orthonormal_pair(Rng& rng, int d) {
  const CVector x = rng.unit_complex_vector(d);
  for (;;) {
    CVector y = rng.gaussian_complex_vector(d);
    y -= x.dot(y) * x;
    const double n = y.norm();
    if (n >= 1e-6) return {x, y / n};
  }
}

bool image_is_rank_one_projection(const CMatrix& p, double tol, std::string* why) {
  if (!is_hermitian(p, tol)) {
    *why = "image is not Hermitian";
    return false;
  }
  if ((p * p - p).norm() > tol * std::max(1.0, p.norm())) {
    *why = "image is not idempotent";
    return false;
  }
  if (std::abs(p.trace().real() - 1.0) > tol) {
    *why = "image trace differs from 1";
    return false;
  }
  return true;
}

}  // namespace

CheckReport check_area(const BlackBoxMap& m, int n_samples, double tol,
                       std::uint64_t seed) {
  require_euclidean(m, "check_area");
  require_sample_count(n_samples);
  const int d = m.space().dim;
  Rng rng(seed);
  CheckReport report;
  report.property = "area";
  report.seed = seed;
  ErrorTracker tracker;

  int evaluated = 0;
  try {
    for (int i = 0; i < n_samples; ++i) {
      const RVector a = sample_direction_pairable(rng, d);
      const RVector b = sample_direction_pairable(rng, d);
      const RVector ma = m(a);
      const RVector mb = m(b);
      ++evaluated;

      const double rhs = area(a, b);
      const double lhs = area(ma, mb);
      const double abs_err = std::abs(lhs - rhs);
      const double rel_err = abs_err / std::max(1.0, rhs);
      tracker.record(abs_err, rel_err, tol, CheckWitness{a, b, lhs, rhs, "area"});

      if (i % 10 == 0) {
        const double t = 4.0 * rng.uniform01() - 2.0;
        const RVector scaled = t * a;
        const RVector mscaled = m(scaled);
        const double ref = std::abs(t) * ma.norm();
        const double dev =
            std::min((mscaled - t * ma).norm(), (mscaled + t * ma).norm());
        const double rel = dev / std::max(1.0, ref);
        tracker.record(dev, rel, tol,
                       CheckWitness{a, scaled, dev, 0.0, "quasi-homogeneity"});
      }
    }
  } catch (const MissingSample& e) {
    report.outcome = CheckOutcome::Incomplete;
    report.note = std::string("missing sample: ") + e.what();
  }

  report.n_samples = evaluated;
  report.max_abs_err = tracker.max_abs;
  report.max_rel_err = tracker.max_rel;
  report.witness = tracker.witness;
  if (report.outcome != CheckOutcome::Incomplete) {
    if (tracker.witness) {
      report.outcome = CheckOutcome::Fail;
      report.note = "violation found";
    } else {
      report.note = "no violation found within " + std::to_string(evaluated) + " samples";
    }
  }
  return report;
}

CheckReport check_comm_norm(const BlackBoxMap& m, const GaugeNorm& n, int n_samples,
                            double tol, std::uint64_t seed) {
  require_hermitian_space(m, "check_comm_norm");
  require_sample_count(n_samples);
  const int d = m.space().dim;
  Rng rng(seed);
  CheckReport report;
  report.property = "comm-norm";
  report.seed = seed;
  ErrorTracker tracker;

  int evaluated = 0;
  try {
    for (int i = 0; i < n_samples; ++i) {
      const CMatrix a = rng.gaussian_hermitian(d);
      const CMatrix b = rng.gaussian_hermitian(d);
      const CMatrix ma = m(a);
      const CMatrix mb = m(b);
      ++evaluated;

      const double rhs = comm_norm(n, a, b);
      double lhs = 0.0;
      try {
        lhs = comm_norm(n, ma, mb);
      } catch (const StructureError&) {
        tracker.record(rhs, 1.0, tol,
                       CheckWitness{a, b, 0.0, rhs, "image left Hermitian space"});
        continue;
      }
      const double abs_err = std::abs(lhs - rhs);
      const double rel_err = abs_err / std::max(1.0, rhs);
      tracker.record(abs_err, rel_err, tol, CheckWitness{a, b, lhs, rhs, "comm-norm"});
    }
  } catch (const MissingSample& e) {
    report.outcome = CheckOutcome::Incomplete;
    report.note = std::string("missing sample: ") + e.what();
  }

  report.n_samples = evaluated;
  report.max_abs_err = tracker.max_abs;
  report.max_rel_err = tracker.max_rel;
  report.witness = tracker.witness;
  if (report.outcome != CheckOutcome::Incomplete) {
    if (tracker.witness) {
      report.outcome = CheckOutcome::Fail;
      report.note = "violation found";
    } else {
      report.note = "no violation found within " + std::to_string(evaluated) + " samples";
    }
  }
  return report;
}

CheckReport check_commutativity_bidir(const BlackBoxMap& m, int n_samples, double tol,
                                      std::uint64_t seed) {
  require_hermitian_space(m, "check_commutativity_bidir");
  require_sample_count(n_samples);
  const int d = m.space().dim;
  Rng rng(seed);
  CheckReport report;
  report.property = "commutativity";
  report.seed = seed;
  ErrorTracker tracker;

  const int n_forward = n_samples - n_samples / 2;
  const int n_backward = n_samples / 2;
  int evaluated = 0;
  try {
    for (int i = 0; i < n_forward; ++i) {
      const CMatrix a = rng.gaussian_hermitian(d);
      // A commuting partner: a random polynomial in a, degree < d, rescaled
      // so commutator roundoff stays far below tol.
      CMatrix b = CMatrix::Zero(d, d);
      CMatrix power = CMatrix::Identity(d, d);
      for (int k = 0; k < d; ++k) {
        b += rng.gaussian() * power;
        power = power * a;
      }
      const double bn = b.norm();
      if (bn > 10.0) b *= 10.0 / bn;

      const CMatrix ma = m(a);
      const CMatrix mb = m(b);
      ++evaluated;
      const double lhs = commutator(ma, mb).norm();
      const double scale = std::max(1.0, ma.norm() * mb.norm());
      const double rel = lhs / scale;
      tracker.max_abs = std::max(tracker.max_abs, lhs);
      tracker.max_rel = std::max(tracker.max_rel, rel);
      if (rel > tol) {
        ++report.forward_violations;
        if (!tracker.witness || rel > tracker.worst_violation) {
          tracker.worst_violation = rel;
          tracker.witness = CheckWitness{a, b, lhs, 0.0, "forward commutativity"};
        }
      }
    }
    for (int i = 0; i < n_backward; ++i) {
      const CMatrix a = rng.gaussian_hermitian(d);
      const CMatrix b = rng.gaussian_hermitian(d);
      const CMatrix ma = m(a);
      const CMatrix mb = m(b);
      ++evaluated;
      const double image = commutator(ma, mb).norm() / std::max(1.0, ma.norm() * mb.norm());
      const double source = commutator(a, b).norm() / std::max(1.0, a.norm() * b.norm());
      // Images that commute must come from (near-)commuting inputs. The 1e-3
      // floor keeps borderline sources from flapping the verdict.
      if (image <= tol && source > 1e-3) {
        ++report.backward_violations;
        if (!tracker.witness || source > tracker.worst_violation) {
          tracker.worst_violation = source;
          tracker.witness = CheckWitness{a, b, image, source, "backward commutativity"};
        }
      }
    }
  } catch (const MissingSample& e) {
    report.outcome = CheckOutcome::Incomplete;
    report.note = std::string("missing sample: ") + e.what();
  }

  report.n_samples = evaluated;
  report.max_abs_err = tracker.max_abs;
  report.max_rel_err = tracker.max_rel;
  report.witness = tracker.witness;
  if (report.outcome != CheckOutcome::Incomplete) {
    if (report.forward_violations + report.backward_violations > 0) {
      report.outcome = CheckOutcome::Fail;
      report.note = "violation found";
    } else {
      report.note = "no violation found within " + std::to_string(evaluated) + " samples";
    }
  }
  return report;
}

CheckReport check_projection_orthogonality(const BlackBoxMap& m, Direction dir,
                                           int n_samples, double tol,
                                           std::uint64_t seed) {
  require_hermitian_space(m, "check_projection_orthogonality");
  require_sample_count(n_samples);
  const int d = m.space().dim;
  Rng rng(seed);
  CheckReport report;
  report.property = "projection-orthogonality";
  report.seed = seed;
  ErrorTracker tracker;

  const int n_forward = dir == Direction::Both ? n_samples - n_samples / 2 : n_samples;
  const int n_backward = dir == Direction::Both ? n_samples / 2 : 0;
  int evaluated = 0;
  try {
    for (int i = 0; i < n_forward; ++i) {
      const auto [x, y] = orthonormal_pair(rng, d);
      const CMatrix p = x * x.adjoint();
      const CMatrix q = y * y.adjoint();
      const CMatrix mp = m(p);
      const CMatrix mq = m(q);
      ++evaluated;

      std::string why;
      if (!image_is_rank_one_projection(mp, 1e-6, &why) ||
          !image_is_rank_one_projection(mq, 1e-6, &why)) {
        ++report.forward_violations;
        tracker.record(1.0, 1.0, tol, CheckWitness{p, q, 0.0, 0.0, why});
        continue;
      }
      const double lhs = std::abs((mp * mq).trace());
      tracker.record(lhs, lhs, tol,
                     CheckWitness{p, q, lhs, 0.0, "forward orthogonality"});
      if (lhs > tol) ++report.forward_violations;
    }
    for (int i = 0; i < n_backward; ++i) {
      const CMatrix p = rng.rank_one_projection(d);
      const CMatrix q = rng.rank_one_projection(d);
      const CMatrix mp = m(p);
      const CMatrix mq = m(q);
      ++evaluated;
      const double image = std::abs((mp * mq).trace());
      const double source = std::abs((p * q).trace());
      if (image <= tol && source > 1e-3) {
        ++report.backward_violations;
        if (!tracker.witness || source > tracker.worst_violation) {
          tracker.worst_violation = source;
          tracker.witness = CheckWitness{p, q, image, source, "backward orthogonality"};
        }
      }
    }
  } catch (const MissingSample& e) {
    report.outcome = CheckOutcome::Incomplete;
    report.note = std::string("missing sample: ") + e.what();
  }

  report.n_samples = evaluated;
  report.max_abs_err = tracker.max_abs;
  report.max_rel_err = tracker.max_rel;
  report.witness = tracker.witness;
  if (report.outcome != CheckOutcome::Incomplete) {
    if (tracker.witness) {
      report.outcome = CheckOutcome::Fail;
      report.note = "violation found";
    } else {
      report.note = "no violation found within " + std::to_string(evaluated) + " samples";
    }
  }
  return report;
}

}  // namespace plab
