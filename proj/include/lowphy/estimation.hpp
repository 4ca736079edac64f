#pragma once

// Pilot-based channel estimation. Row model per receive antenna: y = h X + n
// with known pilots X (Nt x Nt, invertible). Least squares: H_ls = Y X^-1.
// LMMSE refinement weights the LS estimate by the transmit-side channel
// statistics: H_mmse = H_ls * M with
//
//   M = (R_H + sigma2 * (X X^H)^-1)^-1 * R_H
//
// which is the classic per-antenna LMMSE filter rewritten so it applies
// directly to H_ls; the derivation is worked through in the README. With
// sigma2 = 0 and full-rank R_H the filter collapses to the identity and the
// estimator degenerates to least squares.
//
// The *_vec variants compose the documented split_complex primitives
// (deinterleave, mat_inverse, mat_mul, mat_add, scale), so their ledgers are
// deterministic functions of the input shapes.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "lowphy/complex_matrix.hpp"
#include "lowphy/split_complex.hpp"
#include "lowphy/vector_machine.hpp"

namespace lowphy {

struct PilotBlock {
  ComplexMatrix x;
};

struct Observation {
  ComplexMatrix y;
};

/// Transmit-side correlation R_H plus noise variance sigma^2.
struct ChannelStats {
  ComplexMatrix r_h;
  double sigma2 = 0.0;

  /// R_H must be Hermitian within 1e-12 elementwise and positive
  /// semi-definite: elimination pivots of R_H + eps*I, eps = 1e-12, must have
  /// non-negative real part. sigma2 must be >= 0.
  void validate() const {
    if (r_h.rows() != r_h.cols())
      throw std::invalid_argument("ChannelStats: r_h must be square");
    if (!(sigma2 >= 0.0))
      throw std::invalid_argument("ChannelStats: sigma2 must be >= 0");
    const std::size_t n = r_h.rows();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (std::abs(r_h(i, j) - std::conj(r_h(j, i))) > 1e-12)
          throw std::invalid_argument("ChannelStats: r_h is not Hermitian");

    constexpr double eps = 1e-12;
    ComplexMatrix m = r_h;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += eps;
    for (std::size_t c = 0; c < n; ++c) {
      const cx p = m(c, c);
      if (p.real() < 0.0)
        throw std::invalid_argument("ChannelStats: r_h is not positive semi-definite");
      if (p.real() == 0.0) continue;
      for (std::size_t r = c + 1; r < n; ++r) {
        const cx f = m(r, c) / p;
        for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
      }
    }
  }
};

namespace detail {

inline void check_estimation_shapes(const Observation& y, const PilotBlock& x) {
  if (x.x.rows() != x.x.cols()) throw shape_error("pilot matrix must be square");
  if (y.y.cols() != x.x.rows())
    throw shape_error("observation columns must match pilot dimension");
}

}  // namespace detail

inline ComplexMatrix lse_estimate_ref(const Observation& y, const PilotBlock& x) {
  detail::check_estimation_shapes(y, x);
  return mat_mul(y.y, mat_inverse(x.x));
}

inline ComplexMatrix lse_estimate_vec(VectorContext& ctx, const Observation& y,
                                      const PilotBlock& x) {
  detail::check_estimation_shapes(y, x);
  const sc::SplitMatrix ys = sc::deinterleave(ctx, y.y);
  const sc::SplitMatrix xs = sc::deinterleave(ctx, x.x);
  const sc::SplitMatrix xinv = sc::mat_inverse(ctx, xs);
  return sc::interleave(ctx, sc::mat_mul(ctx, ys, xinv));
}

inline ComplexMatrix mmse_estimate_ref(const Observation& y, const PilotBlock& x,
                                       const ChannelStats& stats) {
  detail::check_estimation_shapes(y, x);
  stats.validate();
  if (stats.r_h.rows() != x.x.rows())
    throw shape_error("r_h dimension must match pilot dimension");

  const ComplexMatrix h_ls = mat_mul(y.y, mat_inverse(x.x));
  const ComplexMatrix gram_inv = mat_inverse(mat_mul(x.x, hermitian_transpose(x.x)));
  const ComplexMatrix base = mat_add(stats.r_h, mat_scale(gram_inv, cx(stats.sigma2, 0.0)));
  const ComplexMatrix filter = mat_mul(mat_inverse(base), stats.r_h);
  return mat_mul(h_ls, filter);
}

inline ComplexMatrix mmse_estimate_vec(VectorContext& ctx, const Observation& y,
                                       const PilotBlock& x, const ChannelStats& stats) {
  detail::check_estimation_shapes(y, x);
  stats.validate();
  if (stats.r_h.rows() != x.x.rows())
    throw shape_error("r_h dimension must match pilot dimension");

  const sc::SplitMatrix ys = sc::deinterleave(ctx, y.y);
  const sc::SplitMatrix xs = sc::deinterleave(ctx, x.x);
  const sc::SplitMatrix rs = sc::deinterleave(ctx, stats.r_h);

  const sc::SplitMatrix h_ls = sc::mat_mul(ctx, ys, sc::mat_inverse(ctx, xs));
  const sc::SplitMatrix gram =
      sc::mat_mul(ctx, xs, sc::hermitian_transpose(ctx, xs));
  const sc::SplitMatrix reg = sc::mat_scale_real(ctx, sc::mat_inverse(ctx, gram),
                                                 stats.sigma2);
  const sc::SplitMatrix base = sc::mat_add(ctx, rs, reg);
  const sc::SplitMatrix filter = sc::mat_mul(ctx, sc::mat_inverse(ctx, base), rs);
  return sc::interleave(ctx, sc::mat_mul(ctx, h_ls, filter));
}

}  // namespace lowphy
