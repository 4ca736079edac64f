#pragma once

// Split-plane complex storage plus the strip-mined primitives the *_vec
// kernels are built from. Every primitive does its arithmetic on the planes
// and charges the VectorContext a fixed instruction mix, so a kernel's ledger
// is a deterministic function of the input shapes (pivot-row swaps in
// mat_inverse depend on the input values, but never on the machine config).
//
// Instruction mixes, per strip of vl elements (each strip opens with set_vl):
//   copy           2 unit loads, 2 unit stores
//   swap           4 unit loads, 4 unit stores
//   add            4 unit loads, 2 add, 2 unit stores
//   scale_real     2 unit loads, 2 mul, 2 unit stores
//   scale          2 unit loads, 2 mul + 2 macc, 2 unit stores   (+1 scalar/run)
//   axpy           4 unit loads, 4 macc, 2 unit stores           (+1 scalar/run)
//   scale_into     2 unit loads, 2 mul + 2 macc, 2 unit stores   (+1 scalar/run)
//   conj_column    2 strided loads, 1 mul, 2 unit stores
//   deinterleave   2 strided loads, 2 unit stores
//   interleave     2 unit loads, 2 strided stores
//
// mat_mul walks each output row strip once and the inner dimension per strip;
// each inner step is one scalar-complex multiply-accumulate: 2 unit loads +
// 4 arith (2 mul + 2 macc on the first step, 4 macc after) + 1 scalar op,
// with the accumulator written back once per strip (2 unit stores).
//
// mat_inverse is Gauss-Jordan over the augmented [A | I] planes. Once per
// call: one scalar op per element (singularity guard) and, per row, one
// scalar op (identity column init) plus a copy of the row into the left
// half. Per column: 3 scalar ops per candidate row for the pivot scan (the
// scalar core finds the max-magnitude row), an optional row swap, 6 scalar
// ops for the pivot reciprocal, a pivot-row scale over the augmented width,
// 2 scalar ops per remaining row for the elimination factor, then per strip
// 2 unit loads of the pivot row and, per remaining row, 2 unit loads +
// 4 macc + 2 unit stores.

#include <cstddef>
#include <vector>

#include "lowphy/complex_matrix.hpp"
#include "lowphy/vector_machine.hpp"

namespace lowphy::sc {

struct SplitMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> re, im;

  SplitMatrix() = default;
  SplitMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), re(r * c), im(r * c) {}

  std::size_t idx(std::size_t i, std::size_t j) const { return i * cols + j; }
};

/// Strip-mining loop: body(offset, vl) per strip, vl granted by set_vl.
template <typename Body>
inline void strips(VectorContext& ctx, std::size_t total, Body&& body) {
  std::size_t off = 0;
  while (off < total) {
    const auto vl = static_cast<std::size_t>(ctx.set_vl(total - off));
    body(off, vl);
    off += vl;
  }
}

inline void copy_run(VectorContext& ctx, const double* sre, const double* sim,
                     double* dre, double* dim, std::size_t len) {
  strips(ctx, len, [&](std::size_t off, std::size_t vl) {
    ctx.vec_mem(MemKind::load_unit, vl);
    ctx.vec_mem(MemKind::load_unit, vl);
    for (std::size_t e = 0; e < vl; ++e) {
      dre[off + e] = sre[off + e];
      dim[off + e] = sim[off + e];
    }
    ctx.vec_mem(MemKind::store_unit, vl);
    ctx.vec_mem(MemKind::store_unit, vl);
  });
}

inline void swap_run(VectorContext& ctx, double* are, double* aim, double* bre,
                     double* bim, std::size_t len) {
  strips(ctx, len, [&](std::size_t off, std::size_t vl) {
    for (int k = 0; k < 4; ++k) ctx.vec_mem(MemKind::load_unit, vl);
    for (std::size_t e = 0; e < vl; ++e) {
      std::swap(are[off + e], bre[off + e]);
      std::swap(aim[off + e], bim[off + e]);
    }
    for (int k = 0; k < 4; ++k) ctx.vec_mem(MemKind::store_unit, vl);
  });
}

/// out = a + b, elementwise complex.
inline void add_run(VectorContext& ctx, const double* are, const double* aim,
                    const double* bre, const double* bim, double* ore, double* oim,
                    std::size_t len) {
  strips(ctx, len, [&](std::size_t off, std::size_t vl) {
    for (int k = 0; k < 4; ++k) ctx.vec_mem(MemKind::load_unit, vl);
    ctx.vec_arith(ArithKind::add, vl);
    ctx.vec_arith(ArithKind::add, vl);
    for (std::size_t e = 0; e < vl; ++e) {
      ore[off + e] = are[off + e] + bre[off + e];
      oim[off + e] = aim[off + e] + bim[off + e];
    }
    ctx.vec_mem(MemKind::store_unit, vl);
    ctx.vec_mem(MemKind::store_unit, vl);
  });
}

inline void scale_real_run(VectorContext& ctx, double* re, double* im,
                           std::size_t len, double s) {
  strips(ctx, len, [&](std::size_t off, std::size_t vl) {
    ctx.vec_mem(MemKind::load_unit, vl);
    ctx.vec_mem(MemKind::load_unit, vl);
    ctx.vec_arith(ArithKind::mul, vl);
    ctx.vec_arith(ArithKind::mul, vl);
    for (std::size_t e = 0; e < vl; ++e) {
      re[off + e] *= s;
      im[off + e] *= s;
    }
    ctx.vec_mem(MemKind::store_unit, vl);
    ctx.vec_mem(MemKind::store_unit, vl);
  });
}

/// row *= s, complex scalar times vector.
inline void scale_run(VectorContext& ctx, double* re, double* im, std::size_t len,
                      cx s) {
  ctx.scalar_op(1);  // negate Im(s) for the macc pair
  const double sr = s.real(), si = s.imag();
  strips(ctx, len, [&](std::size_t off, std::size_t vl) {
    ctx.vec_mem(MemKind::load_unit, vl);
    ctx.vec_mem(MemKind::load_unit, vl);
    ctx.vec_arith(ArithKind::mul, vl);
    ctx.vec_arith(ArithKind::mul, vl);
    ctx.vec_arith(ArithKind::macc, vl);
    ctx.vec_arith(ArithKind::macc, vl);
    for (std::size_t e = 0; e < vl; ++e) {
      const double r = re[off + e], i = im[off + e];
      re[off + e] = sr * r - si * i;
      im[off + e] = sr * i + si * r;
    }
    ctx.vec_mem(MemKind::store_unit, vl);
    ctx.vec_mem(MemKind::store_unit, vl);
  });
}

/// dst += a * src, complex scalar times vector, accumulating.
inline void axpy_run(VectorContext& ctx, const double* sre, const double* sim,
                     double* dre, double* dim, std::size_t len, cx a) {
  ctx.scalar_op(1);
  const double ar = a.real(), ai = a.imag();
  strips(ctx, len, [&](std::size_t off, std::size_t vl) {
    for (int k = 0; k < 4; ++k) ctx.vec_mem(MemKind::load_unit, vl);
    for (int k = 0; k < 4; ++k) ctx.vec_arith(ArithKind::macc, vl);
    for (std::size_t e = 0; e < vl; ++e) {
      dre[off + e] += ar * sre[off + e];
      dre[off + e] -= ai * sim[off + e];
      dim[off + e] += ar * sim[off + e];
      dim[off + e] += ai * sre[off + e];
    }
    ctx.vec_mem(MemKind::store_unit, vl);
    ctx.vec_mem(MemKind::store_unit, vl);
  });
}

/// dst = a * src (no accumulation).
inline void scale_into_run(VectorContext& ctx, const double* sre, const double* sim,
                           double* dre, double* dim, std::size_t len, cx a) {
  ctx.scalar_op(1);
  const double ar = a.real(), ai = a.imag();
  strips(ctx, len, [&](std::size_t off, std::size_t vl) {
    ctx.vec_mem(MemKind::load_unit, vl);
    ctx.vec_mem(MemKind::load_unit, vl);
    ctx.vec_arith(ArithKind::mul, vl);
    ctx.vec_arith(ArithKind::mul, vl);
    ctx.vec_arith(ArithKind::macc, vl);
    ctx.vec_arith(ArithKind::macc, vl);
    for (std::size_t e = 0; e < vl; ++e) {
      const double r = sre[off + e], i = sim[off + e];
      dre[off + e] = ar * r - ai * i;
      dim[off + e] = ar * i + ai * r;
    }
    ctx.vec_mem(MemKind::store_unit, vl);
    ctx.vec_mem(MemKind::store_unit, vl);
  });
}

inline SplitMatrix deinterleave(VectorContext& ctx, const ComplexMatrix& a) {
  SplitMatrix s(a.rows(), a.cols());
  const std::size_t len = a.size();
  strips(ctx, len, [&](std::size_t off, std::size_t vl) {
    ctx.vec_mem(MemKind::load_strided, vl);
    ctx.vec_mem(MemKind::load_strided, vl);
    for (std::size_t e = 0; e < vl; ++e) {
      s.re[off + e] = a.data()[off + e].real();
      s.im[off + e] = a.data()[off + e].imag();
    }
    ctx.vec_mem(MemKind::store_unit, vl);
    ctx.vec_mem(MemKind::store_unit, vl);
  });
  return s;
}

inline ComplexMatrix interleave(VectorContext& ctx, const SplitMatrix& s) {
  ComplexMatrix a(s.rows, s.cols);
  strips(ctx, s.re.size(), [&](std::size_t off, std::size_t vl) {
    ctx.vec_mem(MemKind::load_unit, vl);
    ctx.vec_mem(MemKind::load_unit, vl);
    for (std::size_t e = 0; e < vl; ++e)
      a.data()[off + e] = cx(s.re[off + e], s.im[off + e]);
    ctx.vec_mem(MemKind::store_strided, vl);
    ctx.vec_mem(MemKind::store_strided, vl);
  });
  return a;
}

/// out row j of the Hermitian transpose: gathers column j and conjugates.
inline void conj_column_run(VectorContext& ctx, const SplitMatrix& a, std::size_t col,
                            double* dre, double* dim) {
  strips(ctx, a.rows, [&](std::size_t off, std::size_t vl) {
    ctx.vec_mem(MemKind::load_strided, vl);
    ctx.vec_mem(MemKind::load_strided, vl);
    ctx.vec_arith(ArithKind::mul, vl);  // negate the imaginary plane
    for (std::size_t e = 0; e < vl; ++e) {
      dre[off + e] = a.re[a.idx(off + e, col)];
      dim[off + e] = -a.im[a.idx(off + e, col)];
    }
    ctx.vec_mem(MemKind::store_unit, vl);
    ctx.vec_mem(MemKind::store_unit, vl);
  });
}

inline SplitMatrix hermitian_transpose(VectorContext& ctx, const SplitMatrix& a) {
  SplitMatrix out(a.cols, a.rows);
  for (std::size_t j = 0; j < a.cols; ++j)
    conj_column_run(ctx, a, j, &out.re[out.idx(j, 0)], &out.im[out.idx(j, 0)]);
  return out;
}

inline SplitMatrix mat_mul(VectorContext& ctx, const SplitMatrix& a,
                           const SplitMatrix& b) {
  if (a.cols != b.rows) throw shape_error("mat_mul: inner dimensions differ");
  SplitMatrix c(a.rows, b.cols);
  std::vector<double> accr, acci;
  for (std::size_t i = 0; i < a.rows; ++i) {
    strips(ctx, b.cols, [&](std::size_t off, std::size_t vl) {
      accr.assign(vl, 0.0);
      acci.assign(vl, 0.0);
      for (std::size_t t = 0; t < a.cols; ++t) {
        ctx.vec_mem(MemKind::load_unit, vl);
        ctx.vec_mem(MemKind::load_unit, vl);
        ctx.scalar_op(1);
        const ArithKind first = (t == 0) ? ArithKind::mul : ArithKind::macc;
        ctx.vec_arith(first, vl);
        ctx.vec_arith(first, vl);
        ctx.vec_arith(ArithKind::macc, vl);
        ctx.vec_arith(ArithKind::macc, vl);
        const double ar = a.re[a.idx(i, t)], ai = a.im[a.idx(i, t)];
        const double* br = &b.re[b.idx(t, off)];
        const double* bi = &b.im[b.idx(t, off)];
        for (std::size_t e = 0; e < vl; ++e) {
          accr[e] += ar * br[e];
          accr[e] -= ai * bi[e];
          acci[e] += ar * bi[e];
          acci[e] += ai * br[e];
        }
      }
      ctx.vec_mem(MemKind::store_unit, vl);
      ctx.vec_mem(MemKind::store_unit, vl);
      for (std::size_t e = 0; e < vl; ++e) {
        c.re[c.idx(i, off + e)] = accr[e];
        c.im[c.idx(i, off + e)] = acci[e];
      }
    });
  }
  return c;
}

inline SplitMatrix mat_inverse(VectorContext& ctx, const SplitMatrix& a) {
  if (a.rows != a.cols) throw shape_error("mat_inverse: matrix must be square");
  const std::size_t n = a.rows;
  const std::size_t w = 2 * n;

  SplitMatrix aug(n, w);
  for (std::size_t i = 0; i < n; ++i) {
    copy_run(ctx, &a.re[a.idx(i, 0)], &a.im[a.idx(i, 0)], &aug.re[aug.idx(i, 0)],
             &aug.im[aug.idx(i, 0)], n);
    ctx.scalar_op(1);
    aug.re[aug.idx(i, n + i)] = 1.0;
  }

  ctx.scalar_op(n * n);  // singularity guard: Frobenius norm scan
  double fro2 = 0.0;
  for (std::size_t k = 0; k < a.re.size(); ++k)
    fro2 += a.re[k] * a.re[k] + a.im[k] * a.im[k];
  const double pivot_tol = 1e-12 * std::sqrt(fro2) / static_cast<double>(n);

  std::vector<cx> factors(n);
  for (std::size_t c = 0; c < n; ++c) {
    ctx.scalar_op(3 * (n - c));
    std::size_t piv = c;
    double best = std::abs(cx(aug.re[aug.idx(c, c)], aug.im[aug.idx(c, c)]));
    for (std::size_t r = c + 1; r < n; ++r) {
      const double mag = std::abs(cx(aug.re[aug.idx(r, c)], aug.im[aug.idx(r, c)]));
      if (mag > best) {
        best = mag;
        piv = r;
      }
    }
    if (!(best > pivot_tol)) throw singular_matrix_error(c);
    if (piv != c)
      swap_run(ctx, &aug.re[aug.idx(c, 0)], &aug.im[aug.idx(c, 0)],
               &aug.re[aug.idx(piv, 0)], &aug.im[aug.idx(piv, 0)], w);

    ctx.scalar_op(6);
    const cx inv_p = 1.0 / cx(aug.re[aug.idx(c, c)], aug.im[aug.idx(c, c)]);
    scale_run(ctx, &aug.re[aug.idx(c, 0)], &aug.im[aug.idx(c, 0)], w, inv_p);

    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      ctx.scalar_op(2);
      factors[r] = -cx(aug.re[aug.idx(r, c)], aug.im[aug.idx(r, c)]);
    }

    strips(ctx, w, [&](std::size_t off, std::size_t vl) {
      ctx.vec_mem(MemKind::load_unit, vl);
      ctx.vec_mem(MemKind::load_unit, vl);
      const double* pre = &aug.re[aug.idx(c, off)];
      const double* pim = &aug.im[aug.idx(c, off)];
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c) continue;
        ctx.vec_mem(MemKind::load_unit, vl);
        ctx.vec_mem(MemKind::load_unit, vl);
        for (int k = 0; k < 4; ++k) ctx.vec_arith(ArithKind::macc, vl);
        const double fr = factors[r].real(), fi = factors[r].imag();
        double* dre = &aug.re[aug.idx(r, off)];
        double* dim = &aug.im[aug.idx(r, off)];
        for (std::size_t e = 0; e < vl; ++e) {
          dre[e] += fr * pre[e];
          dre[e] -= fi * pim[e];
          dim[e] += fr * pim[e];
          dim[e] += fi * pre[e];
        }
        ctx.vec_mem(MemKind::store_unit, vl);
        ctx.vec_mem(MemKind::store_unit, vl);
      }
    });
  }

  SplitMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    copy_run(ctx, &aug.re[aug.idx(i, n)], &aug.im[aug.idx(i, n)],
             &inv.re[inv.idx(i, 0)], &inv.im[inv.idx(i, 0)], n);
  return inv;
}

/// Whole matrices treated as flat runs.
inline SplitMatrix mat_add(VectorContext& ctx, const SplitMatrix& a,
                           const SplitMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw shape_error("mat_add: shapes differ");
  SplitMatrix c(a.rows, a.cols);
  add_run(ctx, a.re.data(), a.im.data(), b.re.data(), b.im.data(), c.re.data(),
          c.im.data(), a.re.size());
  return c;
}

inline SplitMatrix mat_scale_real(VectorContext& ctx, const SplitMatrix& a, double s) {
  SplitMatrix c = a;
  scale_real_run(ctx, c.re.data(), c.im.data(), c.re.size(), s);
  return c;
}

}  // namespace lowphy::sc
