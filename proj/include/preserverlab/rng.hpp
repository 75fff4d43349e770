#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace plab {

// Deterministic random source. The engine (mt19937_64) is fully specified by
// the standard; the transforms to uniforms and normals live here because
// std::*_distribution output is implementation-defined and would break
// seed-for-seed reproducibility across toolchains.
class Rng {
public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53 random bits.
  double uniform01();

  // Standard normal via Box-Muller (the spare deviate is cached).
  double gaussian();

  // +1 or -1 with equal probability.
  int sign();

  Eigen::VectorXd gaussian_vector(int d);
  Eigen::VectorXcd gaussian_complex_vector(int d);
  Eigen::MatrixXd gaussian_matrix(int d);
  Eigen::MatrixXcd gaussian_complex_matrix(int d);

  // Hermitian by construction: real diagonal, lower triangle the exact
  // conjugate of the upper one.
  Eigen::MatrixXcd gaussian_hermitian(int d);

  // Gaussian direction, rejecting norms below 1e-6 before normalizing.
  Eigen::VectorXd unit_vector(int d);
  Eigen::VectorXcd unit_complex_vector(int d);

  // Rank-one orthogonal projection x x* onto a random complex direction.
  Eigen::MatrixXcd rank_one_projection(int d);

private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// SplitMix64 scrambler, used to derive independent sub-seeds.
std::uint64_t splitmix64(std::uint64_t x);

// FNV-1a over a byte range, continuing from `h`.
std::uint64_t fnv1a64(const void* data, std::size_t n,
                      std::uint64_t h = 0xcbf29ce484222325ULL);

// Feeds one double into an FNV-1a state, endianness-independent.
// -0.0 is normalized to 0.0 so equal reals hash equally.
std::uint64_t fnv1a64_double(double x, std::uint64_t h);

}  // namespace plab
