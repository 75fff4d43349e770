#include "preserverlab/gauge.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace plab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double parse_p(std::string_view text) {
  if (text == "inf" || text == "Inf" || text == "INF") return kInf;
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw ParameterError("bad Schatten exponent '" + std::string(text) + "'");
  return value;
}

int parse_k(std::string_view text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw ParameterError("bad Ky Fan order '" + std::string(text) + "'");
  return value;
}

}  // namespace

GaugeNorm GaugeNorm::operator_norm() { return GaugeNorm(Kind::Operator, 0.0, 0); }

GaugeNorm GaugeNorm::schatten(double p) {
  if (std::isnan(p) || p < 1.0)
    throw ParameterError("Schatten exponent must satisfy p >= 1");
  return GaugeNorm(Kind::Schatten, p, 0);
}

GaugeNorm GaugeNorm::kyfan(int k) {
  if (k < 1) throw ParameterError("Ky Fan order must satisfy k >= 1");
  return GaugeNorm(Kind::KyFan, 0.0, k);
}

GaugeNorm GaugeNorm::parse(std::string_view descriptor) {
  if (descriptor == "operator") return operator_norm();
  constexpr std::string_view schatten_prefix = "schatten:";
  constexpr std::string_view kyfan_prefix = "kyfan:";
  if (descriptor.substr(0, schatten_prefix.size()) == schatten_prefix)
    return schatten(parse_p(descriptor.substr(schatten_prefix.size())));
  if (descriptor.substr(0, kyfan_prefix.size()) == kyfan_prefix)
    return kyfan(parse_k(descriptor.substr(kyfan_prefix.size())));
  throw ParameterError("unknown norm descriptor '" + std::string(descriptor) + "'");
}

std::string GaugeNorm::str() const {
  switch (kind_) {
    case Kind::Operator:
      return "operator";
    case Kind::Schatten:
      if (p_ == kInf) return "schatten:inf";
      if (p_ == static_cast<double>(static_cast<long long>(p_)))
        return "schatten:" + std::to_string(static_cast<long long>(p_));
      return "schatten:" + std::to_string(p_);
    case Kind::KyFan:
      return "kyfan:" + std::to_string(k_);
  }
  throw InternalError("unreachable norm kind");
}

double GaugeNorm::gauge(std::span<const double> s) const {
  std::vector<double> a(s.begin(), s.end());
  for (double& x : a) x = std::abs(x);
  switch (kind_) {
    case Kind::Operator:
      return a.empty() ? 0.0 : *std::max_element(a.begin(), a.end());
    case Kind::Schatten: {
      if (p_ == kInf) return a.empty() ? 0.0 : *std::max_element(a.begin(), a.end());
      double acc = 0.0;
      for (double x : a) acc += std::pow(x, p_);
      return std::pow(acc, 1.0 / p_);
    }
    case Kind::KyFan: {
      if (k_ > static_cast<int>(a.size()))
        throw ParameterError("Ky Fan order " + std::to_string(k_) +
                             " exceeds the number of singular values " +
                             std::to_string(a.size()));
      std::sort(a.begin(), a.end(), std::greater<>());
      double acc = 0.0;
      for (int i = 0; i < k_; ++i) acc += a[i];
      return acc;
    }
  }
  throw InternalError("unreachable norm kind");
}

std::vector<GaugeNorm> standard_battery(int d) {
  require_supported_dim(d);
  std::vector<GaugeNorm> battery = {GaugeNorm::schatten(1), GaugeNorm::schatten(2),
                                    GaugeNorm::schatten(3), GaugeNorm::schatten(kInf)};
  for (int k = 1; k <= d; ++k) battery.push_back(GaugeNorm::kyfan(k));
  return battery;
}

double ui_norm(const GaugeNorm& n, const CMatrix& M) {
  require_square(M);
  const RVector s = singular_values(M);
  return n.gauge(std::span<const double>(s.data(), static_cast<std::size_t>(s.size())));
}

double comm_norm(const GaugeNorm& n, const CMatrix& A, const CMatrix& B) {
  require_hermitian(A);
  require_hermitian(B);
  require_same_shape(A, B);
  return ui_norm(n, commutator(A, B));
}

double det_comm_2d(const CMatrix& A, const CMatrix& B) {
  require_hermitian(A);
  require_hermitian(B);
  require_same_shape(A, B);
  if (A.rows() != 2) throw DimensionError("det_comm_2d requires 2x2 inputs");
  const Complex det = commutator(A, B).determinant();
  const double scale = std::max(1.0, A.squaredNorm() * B.squaredNorm());
  if (std::abs(det.imag()) > 1e-12 * scale)
    throw NumericalError("commutator determinant has a nonreal component");
  double value = det.real();
  if (value < 0.0) {
    if (value >= -1e-12 * scale)
      value = 0.0;
    else
      throw NumericalError("commutator determinant " + std::to_string(value) +
                           " below the cancellation floor");
  }
  return value;
}

double rank_one_comm_constant(const GaugeNorm& n, int d) {
  require_supported_dim(d);
  std::vector<double> s(static_cast<std::size_t>(d), 0.0);
  s[0] = 1.0;
  s[1] = 1.0;
  return n.gauge(s);
}

}  // namespace plab
