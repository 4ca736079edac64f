#pragma once

// Uniform linear array beamforming. The steering vector for a plane wave at
// angle theta from broadside, element spacing d/lambda wavelengths, is
//
//   a[m] = exp(-i * 2*pi * (d/lambda) * m * sin(theta)),  m = 0..M-1.
//
// A multipath channel row is the gain-weighted sum of its paths' steering
// vectors; beam weights are the per-antenna (amplitude, phase) of the
// zero-forcing precoder of that channel.
//
// Vectorized steering generation has no vector trig unit: the phasor ramp is
// built by repeated doubling, charging 4 scalar ops per path for the angle
// and step-phasor trig, then per doubling step 3 scalar ops (squaring the
// step multiplier) and one scale_into pass over the extension run. Applying
// a path gain into the channel row is one scale_into (first path) or axpy
// (later paths) pass. Weight extraction after precoding charges 2 scalar ops
// per matrix element (magnitude and argument).

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "lowphy/complex_matrix.hpp"
#include "lowphy/precoding.hpp"
#include "lowphy/split_complex.hpp"
#include "lowphy/vector_machine.hpp"

namespace lowphy {

struct PathComponent {
  double angle_rad = 0.0;  // from array broadside, in [-pi/2, pi/2]
  cx gain{1.0, 0.0};
};

struct UserPaths {
  std::vector<PathComponent> paths;
};

struct SteeringArrayConfig {
  std::size_t num_antennas = 1;
  double spacing_wavelengths = 0.5;
  std::vector<UserPaths> users;

  void validate() const {
    if (num_antennas < 1)
      throw std::invalid_argument("SteeringArrayConfig: need at least one antenna");
    if (!(spacing_wavelengths > 0.0))
      throw std::invalid_argument("SteeringArrayConfig: spacing must be positive");
    if (users.empty())
      throw std::invalid_argument("SteeringArrayConfig: need at least one user");
    constexpr double half_pi = std::numbers::pi / 2.0;
    for (const UserPaths& u : users) {
      if (u.paths.empty())
        throw std::invalid_argument("SteeringArrayConfig: every user needs a path");
      for (const PathComponent& p : u.paths)
        if (!(p.angle_rad >= -half_pi && p.angle_rad <= half_pi))
          throw std::invalid_argument("SteeringArrayConfig: angle outside [-pi/2, pi/2]");
    }
  }
};

struct AntennaWeight {
  double amplitude = 0.0;
  double phase_rad = 0.0;  // principal range (-pi, pi]
};

/// Per user, one (amplitude, phase) pair per antenna element.
struct BeamWeights {
  std::vector<std::vector<AntennaWeight>> users;
};

inline std::vector<cx> steering_vector_ref(std::size_t m_antennas,
                                           double spacing_wavelengths,
                                           double angle_rad) {
  if (m_antennas < 1) throw std::invalid_argument("steering_vector: M must be >= 1");
  const double phase_step =
      -2.0 * std::numbers::pi * spacing_wavelengths * std::sin(angle_rad);
  std::vector<cx> a(m_antennas);
  for (std::size_t m = 0; m < m_antennas; ++m)
    a[m] = std::polar(1.0, phase_step * static_cast<double>(m));
  return a;
}

namespace detail {

// Phasor ramp exp(i * step_phase * m), m = 0..M-1, built by doubling:
// out[len..2len) = out[0..len) * step^len with the multiplier squared between
// steps. Matches steering_vector_ref to roundoff.
inline void steering_ramp_vec(VectorContext& ctx, std::size_t m_antennas,
                              double phase_step, double* re, double* im) {
  ctx.scalar_op(4);  // sin(theta), step phase, cos, sin
  re[0] = 1.0;
  im[0] = 0.0;
  cx mult = std::polar(1.0, phase_step);
  std::size_t len = 1;
  while (len < m_antennas) {
    const std::size_t ext = std::min(len, m_antennas - len);
    sc::scale_into_run(ctx, re, im, re + len, im + len, ext, mult);
    ctx.scalar_op(3);
    mult *= mult;
    len += ext;
  }
}

}  // namespace detail

inline std::vector<cx> steering_vector_vec(VectorContext& ctx, std::size_t m_antennas,
                                           double spacing_wavelengths,
                                           double angle_rad) {
  if (m_antennas < 1) throw std::invalid_argument("steering_vector: M must be >= 1");
  std::vector<double> re(m_antennas), im(m_antennas);
  const double phase_step =
      -2.0 * std::numbers::pi * spacing_wavelengths * std::sin(angle_rad);
  detail::steering_ramp_vec(ctx, m_antennas, phase_step, re.data(), im.data());
  std::vector<cx> a(m_antennas);
  for (std::size_t m = 0; m < m_antennas; ++m) a[m] = cx(re[m], im[m]);
  return a;
}

inline ComplexMatrix build_steered_channel_ref(const SteeringArrayConfig& cfg) {
  cfg.validate();
  ComplexMatrix h(cfg.users.size(), cfg.num_antennas);
  for (std::size_t u = 0; u < cfg.users.size(); ++u)
    for (const PathComponent& p : cfg.users[u].paths) {
      const std::vector<cx> a =
          steering_vector_ref(cfg.num_antennas, cfg.spacing_wavelengths, p.angle_rad);
      for (std::size_t m = 0; m < cfg.num_antennas; ++m) h(u, m) += p.gain * a[m];
    }
  return h;
}

inline ComplexMatrix build_steered_channel_vec(VectorContext& ctx,
                                               const SteeringArrayConfig& cfg) {
  cfg.validate();
  const std::size_t m_ant = cfg.num_antennas;
  sc::SplitMatrix h(cfg.users.size(), m_ant);
  std::vector<double> ramp_re(m_ant), ramp_im(m_ant);
  for (std::size_t u = 0; u < cfg.users.size(); ++u) {
    bool first = true;
    for (const PathComponent& p : cfg.users[u].paths) {
      const double phase_step =
          -2.0 * std::numbers::pi * cfg.spacing_wavelengths * std::sin(p.angle_rad);
      detail::steering_ramp_vec(ctx, m_ant, phase_step, ramp_re.data(), ramp_im.data());
      double* row_re = &h.re[h.idx(u, 0)];
      double* row_im = &h.im[h.idx(u, 0)];
      if (first)
        sc::scale_into_run(ctx, ramp_re.data(), ramp_im.data(), row_re, row_im, m_ant,
                           p.gain);
      else
        sc::axpy_run(ctx, ramp_re.data(), ramp_im.data(), row_re, row_im, m_ant,
                     p.gain);
      first = false;
    }
  }
  return sc::interleave(ctx, h);
}

namespace detail {

inline BeamWeights extract_weights(const ComplexMatrix& w) {
  // w is Nt x Nu; user u's weights run down column u
  BeamWeights bw;
  bw.users.resize(w.cols());
  for (std::size_t u = 0; u < w.cols(); ++u) {
    bw.users[u].resize(w.rows());
    for (std::size_t m = 0; m < w.rows(); ++m) {
      const cx v = w(m, u);
      double phase = std::arg(v);
      if (phase <= -std::numbers::pi) phase += 2.0 * std::numbers::pi;
      bw.users[u][m] = AntennaWeight{std::abs(v), phase};
    }
  }
  return bw;
}

}  // namespace detail

inline BeamWeights beam_weights_ref(const ComplexMatrix& h) {
  return detail::extract_weights(zf_precoder_ref(h));
}

inline BeamWeights beam_weights_vec(VectorContext& ctx, const ComplexMatrix& h) {
  const ComplexMatrix w = zf_precoder_vec(ctx, h);
  ctx.scalar_op(2 * static_cast<std::uint64_t>(w.rows()) * w.cols());
  return detail::extract_weights(w);
}

/// Reassemble the precoder matrix (Nt x Nu) from per-antenna weights.
inline ComplexMatrix beam_matrix(const BeamWeights& bw) {
  if (bw.users.empty()) throw shape_error("beam_matrix: no users");
  const std::size_t m_ant = bw.users.front().size();
  ComplexMatrix w(m_ant, bw.users.size());
  for (std::size_t u = 0; u < bw.users.size(); ++u)
    for (std::size_t m = 0; m < m_ant; ++m)
      w(m, u) = std::polar(bw.users[u][m].amplitude, bw.users[u][m].phase_rad);
  return w;
}

}  // namespace lowphy
