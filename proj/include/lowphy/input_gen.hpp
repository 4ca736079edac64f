#pragma once

// Deterministic input construction shared by the benchmark sweep, the verify
// command and the test suites. Draws come from a splitmix64 stream (no
// standard-library distributions) so sequences are identical across
// platforms and runs. Entries are uniform in [-1, 1] for both components;
// pilot and zero-forcing channel matrices get +2I so random draws stay
// comfortably invertible.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

#include "lowphy/complex_matrix.hpp"
#include "lowphy/estimation.hpp"
#include "lowphy/steering.hpp"

namespace lowphy {

struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

  cx complex_pm1() {
    const double re = uniform_pm1();
    const double im = uniform_pm1();
    return {re, im};
  }
};

/// Folds (seed, kernel tag, size) into a sub-stream seed so every machine
/// config of one kernel/size sees identical inputs.
inline std::uint64_t mix_seed(std::uint64_t seed, std::string_view tag,
                              std::uint64_t salt) {
  std::uint64_t h = 1469598103934665603ULL ^ seed;
  for (const char ch : tag) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ULL;
  }
  h ^= salt + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return SplitMix64(h).next();
}

inline ComplexMatrix random_matrix(SplitMix64& rng, std::size_t rows,
                                   std::size_t cols) {
  ComplexMatrix m(rows, cols);
  for (cx& z : m.data()) z = rng.complex_pm1();
  return m;
}

inline ComplexMatrix random_pilot(SplitMix64& rng, std::size_t n) {
  ComplexMatrix x = random_matrix(rng, n, n);
  for (std::size_t i = 0; i < n; ++i) x(i, i) += 2.0;
  return x;
}

/// Exponential correlation model R[i][j] = rho^|i-j| (real, Hermitian, PSD).
inline ComplexMatrix exp_correlation(std::size_t n, double rho = 0.7) {
  ComplexMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t d = i > j ? i - j : j - i;
      r(i, j) = std::pow(rho, static_cast<double>(d));
    }
  return r;
}

struct LseInputs {
  PilotBlock pilot;
  Observation obs;
  ComplexMatrix planted_h;
};

inline LseInputs make_lse_inputs(std::uint64_t seed, std::size_t size) {
  SplitMix64 rng(mix_seed(seed, "lse", size));
  LseInputs in;
  in.planted_h = random_matrix(rng, size, size);
  in.pilot = PilotBlock{random_pilot(rng, size)};
  in.obs = Observation{mat_mul(in.planted_h, in.pilot.x)};
  return in;
}

struct MmseInputs {
  PilotBlock pilot;
  Observation obs;
  ChannelStats stats;
};

inline MmseInputs make_mmse_inputs(std::uint64_t seed, std::size_t size,
                                   double rho = 0.7, double sigma2 = 0.1) {
  SplitMix64 rng(mix_seed(seed, "mmse", size));
  MmseInputs in;
  const ComplexMatrix h0 = random_matrix(rng, size, size);
  in.pilot = PilotBlock{random_pilot(rng, size)};
  in.stats = ChannelStats{exp_correlation(size, rho), sigma2};
  ComplexMatrix y = mat_mul(h0, in.pilot.x);
  const double noise_scale = std::sqrt(sigma2);
  for (cx& z : y.data()) z += noise_scale * rng.complex_pm1();
  in.obs = Observation{y};
  return in;
}

inline ComplexMatrix make_zf_channel(std::uint64_t seed, std::size_t size) {
  SplitMix64 rng(mix_seed(seed, "zf", size));
  ComplexMatrix h = random_matrix(rng, size, size);
  for (std::size_t i = 0; i < size; ++i) h(i, i) += 2.0;
  return h;
}

inline std::vector<cx> make_fft_input(std::uint64_t seed, std::size_t n) {
  SplitMix64 rng(mix_seed(seed, "fft", n));
  std::vector<cx> x(n);
  for (cx& z : x) z = rng.complex_pm1();
  return x;
}

/// size antennas, size/2 users, two paths per user. Main-path angles spread
/// over [-1.2, 1.2] rad with a small jitter so user channels stay well
/// separated; second path sits 0.2 rad off the main one with gain 0.3.
inline SteeringArrayConfig make_beam_config(std::uint64_t seed, std::size_t size) {
  SplitMix64 rng(mix_seed(seed, "beam", size));
  SteeringArrayConfig cfg;
  cfg.num_antennas = size;
  cfg.spacing_wavelengths = 0.5;
  const std::size_t num_users = size / 2;
  cfg.users.resize(num_users);
  for (std::size_t u = 0; u < num_users; ++u) {
    const double main_angle = -1.2 +
                              2.4 * (static_cast<double>(u) + 0.5) /
                                  static_cast<double>(num_users) +
                              0.03 * rng.uniform_pm1();
    const double second_angle = main_angle + 0.2;
    const cx main_gain = std::polar(1.0, std::numbers::pi * rng.uniform_pm1());
    const cx second_gain = std::polar(0.3, std::numbers::pi * rng.uniform_pm1());
    cfg.users[u].paths = {PathComponent{main_angle, main_gain},
                          PathComponent{second_angle, second_gain}};
  }
  return cfg;
}

}  // namespace lowphy
