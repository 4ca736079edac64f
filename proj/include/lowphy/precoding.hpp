#pragma once

// Zero-forcing transmit precoder W = H^H (H H^H)^-1 for a channel H with
// Nu <= Nt and full row rank, so that H W = I and inter-user interference
// cancels. The vectorized variant composes the documented split_complex
// primitives (deinterleave, hermitian_transpose, mat_mul, mat_inverse).

#include "lowphy/complex_matrix.hpp"
#include "lowphy/split_complex.hpp"
#include "lowphy/vector_machine.hpp"

namespace lowphy {

inline ComplexMatrix zf_precoder_ref(const ComplexMatrix& h) {
  if (h.rows() > h.cols())
    throw shape_error("zf_precoder: users must not exceed antennas");
  const ComplexMatrix hh = hermitian_transpose(h);
  return mat_mul(hh, mat_inverse(mat_mul(h, hh)));
}

inline ComplexMatrix zf_precoder_vec(VectorContext& ctx, const ComplexMatrix& h) {
  if (h.rows() > h.cols())
    throw shape_error("zf_precoder: users must not exceed antennas");
  const sc::SplitMatrix hs = sc::deinterleave(ctx, h);
  const sc::SplitMatrix hh = sc::hermitian_transpose(ctx, hs);
  const sc::SplitMatrix gram_inv = sc::mat_inverse(ctx, sc::mat_mul(ctx, hs, hh));
  return sc::interleave(ctx, sc::mat_mul(ctx, hh, gram_inv));
}

}  // namespace lowphy
