#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "preserverlab/linalg.hpp"

namespace plab {

// A unitarily invariant norm, represented by its symmetric gauge function on
// singular values. Descriptors: "operator", "schatten:<p>" (p >= 1, "inf"
// allowed), "kyfan:<k>" (k >= 1).
class GaugeNorm {
public:
  enum class Kind { Operator, Schatten, KyFan };

  static GaugeNorm operator_norm();
  static GaugeNorm schatten(double p);  // ParameterError if p < 1 or NaN
  static GaugeNorm kyfan(int k);        // ParameterError if k < 1

  static GaugeNorm parse(std::string_view descriptor);
  std::string str() const;

  Kind kind() const { return kind_; }
  double p() const { return p_; }
  int k() const { return k_; }

  // Value of the gauge function. Entries may be in any order; signs are
  // ignored (the function is symmetric and even). KyFan(k) requires
  // k <= s.size().
  double gauge(std::span<const double> s) const;

  bool operator==(const GaugeNorm&) const = default;

private:
  GaugeNorm(Kind kind, double p, int k) : kind_(kind), p_(p), k_(k) {}
  Kind kind_;
  double p_ = 0.0;
  int k_ = 0;
};

// schatten 1, 2, 3, inf and kyfan 1..d.
std::vector<GaugeNorm> standard_battery(int d);

// ||M|| in the given norm.
double ui_norm(const GaugeNorm& n, const CMatrix& M);

// ||[A, B]|| for Hermitian A, B (inputs are validated).
double comm_norm(const GaugeNorm& n, const CMatrix& A, const CMatrix& B);

// det [A, B] for 2x2 Hermitian A, B. Mathematically nonnegative; roundoff
// negatives above -1e-12 * max(1, scale) are clamped to zero.
double det_comm_2d(const CMatrix& A, const CMatrix& B);

// The constant c(n, d) with |||[A, x x*]||| = c * sqrt(<A^2 x, x> - <A x, x>^2)
// for every Hermitian A and unit x: the gauge of (1, 1, 0, ..., 0).
double rank_one_comm_constant(const GaugeNorm& n, int d);

}  // namespace plab
