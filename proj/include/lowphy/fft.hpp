#pragma once

// Radix-4 decimation-in-time FFT over lengths n = 4^k, k >= 1. Input is
// reordered by base-4 digit reversal, then log4(n) stages of 4-point
// butterflies combine sub-transforms with twiddle factors W_N^j = e^(-2*pi*i*j/N).
// Forward transform is unnormalized; the inverse scales by 1/N.
//
// Vectorized variant, per stage: butterflies are vectorized across whichever
// axis is longer. When blocks >= columns ("block mode"), each twiddle column
// j runs one strip-mined pass across the blocks with gathered operands:
// 8 strided loads + 12 arith (three scalar-complex twiddle multiplies, 2 mul
// + 2 macc each) + 16 arith (butterfly combine) + 8 strided stores, plus 3
// scalar ops per column for the twiddle fetch. Otherwise ("column mode")
// each block runs one strip-mined pass across its columns with unit-stride
// operands and vector twiddles: 8 unit loads + 6 strided twiddle loads
// (+3 mul for conjugation when inverting) + 12 + 16 arith + 8 unit stores.
// The digit-reversal reorder costs 2 strided loads + 2 unit stores per
// strip; the inverse adds a 1/N scale pass (2 loads + 2 mul + 2 stores).

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "lowphy/complex_matrix.hpp"
#include "lowphy/split_complex.hpp"
#include "lowphy/vector_machine.hpp"

namespace lowphy {

inline bool is_power_of_four(std::size_t n) {
  if (n < 4) return false;
  while (n % 4 == 0) n /= 4;
  return n == 1;
}

struct FftPlan {
  std::size_t n;
  std::vector<cx> twiddles;                  // W_N^k, k = 0..n-1
  std::vector<std::uint32_t> digit_reversal; // base-4 digit reversal, an involution

  explicit FftPlan(std::size_t length) : n(length) {
    if (!is_power_of_four(n)) throw shape_error("fft length must be a power of 4");
    twiddles.resize(n);
    const double step = -2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k)
      twiddles[k] = std::polar(1.0, step * static_cast<double>(k));

    digit_reversal.resize(n);
    std::size_t digits = 0;
    for (std::size_t t = n; t > 1; t /= 4) ++digits;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t v = i, r = 0;
      for (std::size_t d = 0; d < digits; ++d) {
        r = r * 4 + (v & 3);
        v >>= 2;
      }
      digit_reversal[i] = static_cast<std::uint32_t>(r);
    }
  }
};

namespace detail {

// In-place stages over digit-reversed data. sign = -1 forward, +1 inverse.
inline void radix4_stages_ref(const FftPlan& plan, std::vector<cx>& a, double sign) {
  const std::size_t n = plan.n;
  for (std::size_t len = 4; len <= n; len *= 4) {
    const std::size_t quarter = len / 4;
    const std::size_t step = n / len;
    for (std::size_t base = 0; base < n; base += len) {
      for (std::size_t j = 0; j < quarter; ++j) {
        cx w1 = plan.twiddles[j * step];
        cx w2 = plan.twiddles[2 * j * step];
        cx w3 = plan.twiddles[3 * j * step];
        if (sign > 0) {
          w1 = std::conj(w1);
          w2 = std::conj(w2);
          w3 = std::conj(w3);
        }
        const cx f0 = a[base + j];
        const cx f1 = w1 * a[base + j + quarter];
        const cx f2 = w2 * a[base + j + 2 * quarter];
        const cx f3 = w3 * a[base + j + 3 * quarter];
        const cx t0 = f0 + f2, t1 = f0 - f2;
        const cx t2 = f1 + f3, t3 = f1 - f3;
        // rotation by -j (forward) or +j (inverse) applied to t3
        const cx rot = (sign < 0) ? cx(t3.imag(), -t3.real()) : cx(-t3.imag(), t3.real());
        a[base + j] = t0 + t2;
        a[base + j + quarter] = t1 + rot;
        a[base + j + 2 * quarter] = t0 - t2;
        a[base + j + 3 * quarter] = t1 - rot;
      }
    }
  }
}

}  // namespace detail

inline std::vector<cx> fft_radix4_ref(const FftPlan& plan, std::span<const cx> x) {
  if (x.size() != plan.n) throw shape_error("fft input length does not match plan");
  std::vector<cx> a(plan.n);
  for (std::size_t i = 0; i < plan.n; ++i) a[i] = x[plan.digit_reversal[i]];
  detail::radix4_stages_ref(plan, a, -1.0);
  return a;
}

inline std::vector<cx> ifft_radix4_ref(const FftPlan& plan, std::span<const cx> x) {
  if (x.size() != plan.n) throw shape_error("ifft input length does not match plan");
  std::vector<cx> a(plan.n);
  for (std::size_t i = 0; i < plan.n; ++i) a[i] = x[plan.digit_reversal[i]];
  detail::radix4_stages_ref(plan, a, 1.0);
  const double inv_n = 1.0 / static_cast<double>(plan.n);
  for (cx& z : a) z *= inv_n;
  return a;
}

namespace detail {

struct Butterfly {
  double f0r, f0i, f1r, f1i, f2r, f2i, f3r, f3i;

  // twiddle-multiplied operands in, four outputs out; sign as above
  void combine(double sign, double& o0r, double& o0i, double& o1r, double& o1i,
               double& o2r, double& o2i, double& o3r, double& o3i) const {
    const double t0r = f0r + f2r, t0i = f0i + f2i;
    const double t1r = f0r - f2r, t1i = f0i - f2i;
    const double t2r = f1r + f3r, t2i = f1i + f3i;
    const double t3r = f1r - f3r, t3i = f1i - f3i;
    const double rotr = (sign < 0) ? t3i : -t3i;
    const double roti = (sign < 0) ? -t3r : t3r;
    o0r = t0r + t2r;
    o0i = t0i + t2i;
    o1r = t1r + rotr;
    o1i = t1i + roti;
    o2r = t0r - t2r;
    o2i = t0i - t2i;
    o3r = t1r - rotr;
    o3i = t1i - roti;
  }
};

inline void radix4_stages_vec(VectorContext& ctx, const FftPlan& plan,
                              std::vector<double>& re, std::vector<double>& im,
                              double sign) {
  const std::size_t n = plan.n;
  for (std::size_t len = 4; len <= n; len *= 4) {
    const std::size_t quarter = len / 4;
    const std::size_t blocks = n / len;
    const std::size_t step = n / len;

    if (blocks >= quarter) {
      // block mode: fixed twiddle column, gather across blocks (stride len)
      for (std::size_t j = 0; j < quarter; ++j) {
        ctx.scalar_op(3);
        cx w1 = plan.twiddles[j * step];
        cx w2 = plan.twiddles[2 * j * step];
        cx w3 = plan.twiddles[3 * j * step];
        if (sign > 0) {
          w1 = std::conj(w1);
          w2 = std::conj(w2);
          w3 = std::conj(w3);
        }
        sc::strips(ctx, blocks, [&](std::size_t boff, std::size_t vl) {
          for (int k = 0; k < 8; ++k) ctx.vec_mem(MemKind::load_strided, vl);
          for (int k = 0; k < 3; ++k) {
            ctx.vec_arith(ArithKind::mul, vl);
            ctx.vec_arith(ArithKind::mul, vl);
            ctx.vec_arith(ArithKind::macc, vl);
            ctx.vec_arith(ArithKind::macc, vl);
          }
          for (int k = 0; k < 16; ++k) ctx.vec_arith(ArithKind::add, vl);
          for (std::size_t e = 0; e < vl; ++e) {
            const std::size_t i0 = (boff + e) * len + j;
            const std::size_t i1 = i0 + quarter, i2 = i0 + 2 * quarter,
                              i3 = i0 + 3 * quarter;
            Butterfly bf;
            bf.f0r = re[i0];
            bf.f0i = im[i0];
            bf.f1r = w1.real() * re[i1] - w1.imag() * im[i1];
            bf.f1i = w1.real() * im[i1] + w1.imag() * re[i1];
            bf.f2r = w2.real() * re[i2] - w2.imag() * im[i2];
            bf.f2i = w2.real() * im[i2] + w2.imag() * re[i2];
            bf.f3r = w3.real() * re[i3] - w3.imag() * im[i3];
            bf.f3i = w3.real() * im[i3] + w3.imag() * re[i3];
            bf.combine(sign, re[i0], im[i0], re[i1], im[i1], re[i2], im[i2],
                       re[i3], im[i3]);
          }
          for (int k = 0; k < 8; ++k) ctx.vec_mem(MemKind::store_strided, vl);
        });
      }
    } else {
      // column mode: fixed block, unit-stride across columns, vector twiddles
      for (std::size_t base = 0; base < n; base += len) {
        sc::strips(ctx, quarter, [&](std::size_t joff, std::size_t vl) {
          for (int k = 0; k < 8; ++k) ctx.vec_mem(MemKind::load_unit, vl);
          for (int k = 0; k < 6; ++k) ctx.vec_mem(MemKind::load_strided, vl);
          if (sign > 0)
            for (int k = 0; k < 3; ++k) ctx.vec_arith(ArithKind::mul, vl);
          for (int k = 0; k < 3; ++k) {
            ctx.vec_arith(ArithKind::mul, vl);
            ctx.vec_arith(ArithKind::mul, vl);
            ctx.vec_arith(ArithKind::macc, vl);
            ctx.vec_arith(ArithKind::macc, vl);
          }
          for (int k = 0; k < 16; ++k) ctx.vec_arith(ArithKind::add, vl);
          for (std::size_t e = 0; e < vl; ++e) {
            const std::size_t j = joff + e;
            cx w1 = plan.twiddles[j * step];
            cx w2 = plan.twiddles[2 * j * step];
            cx w3 = plan.twiddles[3 * j * step];
            if (sign > 0) {
              w1 = std::conj(w1);
              w2 = std::conj(w2);
              w3 = std::conj(w3);
            }
            const std::size_t i0 = base + j;
            const std::size_t i1 = i0 + quarter, i2 = i0 + 2 * quarter,
                              i3 = i0 + 3 * quarter;
            Butterfly bf;
            bf.f0r = re[i0];
            bf.f0i = im[i0];
            bf.f1r = w1.real() * re[i1] - w1.imag() * im[i1];
            bf.f1i = w1.real() * im[i1] + w1.imag() * re[i1];
            bf.f2r = w2.real() * re[i2] - w2.imag() * im[i2];
            bf.f2i = w2.real() * im[i2] + w2.imag() * re[i2];
            bf.f3r = w3.real() * re[i3] - w3.imag() * im[i3];
            bf.f3i = w3.real() * im[i3] + w3.imag() * re[i3];
            bf.combine(sign, re[i0], im[i0], re[i1], im[i1], re[i2], im[i2],
                       re[i3], im[i3]);
          }
          for (int k = 0; k < 8; ++k) ctx.vec_mem(MemKind::store_unit, vl);
        });
      }
    }
  }
}

inline std::vector<cx> fft_vec_impl(VectorContext& ctx, const FftPlan& plan,
                                    std::span<const cx> x, double sign) {
  const std::size_t n = plan.n;
  std::vector<double> re(n), im(n);
  sc::strips(ctx, n, [&](std::size_t off, std::size_t vl) {
    ctx.vec_mem(MemKind::load_strided, vl);
    ctx.vec_mem(MemKind::load_strided, vl);
    for (std::size_t e = 0; e < vl; ++e) {
      const cx v = x[plan.digit_reversal[off + e]];
      re[off + e] = v.real();
      im[off + e] = v.imag();
    }
    ctx.vec_mem(MemKind::store_unit, vl);
    ctx.vec_mem(MemKind::store_unit, vl);
  });

  radix4_stages_vec(ctx, plan, re, im, sign);

  if (sign > 0) {
    ctx.scalar_op(1);
    const double inv_n = 1.0 / static_cast<double>(n);
    sc::scale_real_run(ctx, re.data(), im.data(), n, inv_n);
  }

  std::vector<cx> out(n);
  sc::strips(ctx, n, [&](std::size_t off, std::size_t vl) {
    ctx.vec_mem(MemKind::load_unit, vl);
    ctx.vec_mem(MemKind::load_unit, vl);
    for (std::size_t e = 0; e < vl; ++e) out[off + e] = cx(re[off + e], im[off + e]);
    ctx.vec_mem(MemKind::store_strided, vl);
    ctx.vec_mem(MemKind::store_strided, vl);
  });
  return out;
}

}  // namespace detail

inline std::vector<cx> fft_radix4_vec(VectorContext& ctx, const FftPlan& plan,
                                      std::span<const cx> x) {
  if (x.size() != plan.n) throw shape_error("fft input length does not match plan");
  return detail::fft_vec_impl(ctx, plan, x, -1.0);
}

inline std::vector<cx> ifft_radix4_vec(VectorContext& ctx, const FftPlan& plan,
                                       std::span<const cx> x) {
  if (x.size() != plan.n) throw shape_error("ifft input length does not match plan");
  return detail::fft_vec_impl(ctx, plan, x, 1.0);
}

}  // namespace lowphy
