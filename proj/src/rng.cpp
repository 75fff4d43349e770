#include "preserverlab/rng.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace plab {

Rng::Rng(std::uint64_t seed) : gen_(seed) {}

std::uint64_t Rng::next_u64() { return gen_(); }

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1;
  do {
    u1 = uniform01();
  } while (u1 <= 0.0);
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

int Rng::sign() { return uniform01() < 0.5 ? -1 : 1; }

Eigen::VectorXd Rng::gaussian_vector(int d) {
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v(i) = gaussian();
  return v;
}

Eigen::VectorXcd Rng::gaussian_complex_vector(int d) {
  Eigen::VectorXcd v(d);
  for (int i = 0; i < d; ++i) {
    const double re = gaussian();
    const double im = gaussian();
    v(i) = std::complex<double>(re, im);
  }
  return v;
}

Eigen::MatrixXd Rng::gaussian_matrix(int d) {
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = gaussian();
  return m;
}

Eigen::MatrixXcd Rng::gaussian_complex_matrix(int d) {
  Eigen::MatrixXcd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double re = gaussian();
      const double im = gaussian();
      m(i, j) = std::complex<double>(re, im);
    }
  return m;
}

Eigen::MatrixXcd Rng::gaussian_hermitian(int d) {
  Eigen::MatrixXcd m(d, d);
  for (int i = 0; i < d; ++i) {
    m(i, i) = std::complex<double>(gaussian(), 0.0);
    for (int j = i + 1; j < d; ++j) {
      const double re = gaussian();
      const double im = gaussian();
      m(i, j) = std::complex<double>(re, im);
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

Eigen::VectorXd Rng::unit_vector(int d) {
  for (;;) {
    Eigen::VectorXd v = gaussian_vector(d);
    const double n = v.norm();
    if (n >= 1e-6) return v / n;
  }
}

Eigen::VectorXcd Rng::unit_complex_vector(int d) {
  for (;;) {
    Eigen::VectorXcd v = gaussian_complex_vector(d);
    const double n = v.norm();
    if (n >= 1e-6) return v / n;
  }
}

Eigen::MatrixXcd Rng::rank_one_projection(int d) {
  const Eigen::VectorXcd x = unit_complex_vector(d);
  return x * x.adjoint();
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv1a64_double(double x, std::uint64_t h) {
  if (x == 0.0) x = 0.0;  // collapse -0.0
  const auto bits = std::bit_cast<std::uint64_t>(x);
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(bits >> (8 * i));
  return fnv1a64(bytes, 8, h);
}

}  // namespace plab
