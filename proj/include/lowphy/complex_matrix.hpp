#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lowphy {

using cx = std::complex<double>;

struct shape_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown by mat_inverse when no usable pivot exists; carries the column
/// where elimination stalled.
struct singular_matrix_error : std::runtime_error {
  explicit singular_matrix_error(std::size_t col)
      : std::runtime_error("singular matrix: no usable pivot in column " +
                           std::to_string(col)),
        column(col) {}
  std::size_t column;
};

/// Dense row-major complex matrix with value semantics. All operations below
/// return fresh matrices; nothing mutates its inputs.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) throw shape_error("matrix dimensions must be positive");
  }

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cx> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows == 0 || cols == 0) throw shape_error("matrix dimensions must be positive");
    if (data_.size() != rows * cols) throw shape_error("data length must equal rows*cols");
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  cx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<cx>& data() const { return data_; }
  std::vector<cx>& data() { return data_; }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cx> data_;
};

inline bool is_finite(const ComplexMatrix& a) {
  for (const cx& z : a.data())
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

inline ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw shape_error("mat_mul: inner dimensions differ");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t t = 0; t < a.cols(); ++t) {
      const cx f = a(i, t);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += f * b(t, j);
    }
  return c;
}

inline ComplexMatrix hermitian_transpose(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

inline double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const cx& z : a.data()) s += std::norm(z);
  return std::sqrt(s);
}

inline ComplexMatrix mat_add(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw shape_error("mat_add: shapes differ");
  ComplexMatrix c(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.size(); ++k) c.data()[k] = a.data()[k] + b.data()[k];
  return c;
}

inline ComplexMatrix mat_scale(const ComplexMatrix& a, cx s) {
  ComplexMatrix c(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.size(); ++k) c.data()[k] = a.data()[k] * s;
  return c;
}

/// Gauss-Jordan elimination with partial pivoting (largest magnitude in the
/// column). A pivot below 1e-12 * ||A||_F / n is treated as singular.
inline ComplexMatrix mat_inverse(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw shape_error("mat_inverse: matrix must be square");
  const std::size_t n = a.rows();
  const std::size_t w = 2 * n;
  const double pivot_tol = 1e-12 * frobenius_norm(a) / static_cast<double>(n);

  std::vector<cx> aug(n * w);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i * w + j] = a(i, j);
    aug[i * w + n + i] = 1.0;
  }

  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    double best = std::abs(aug[c * w + c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double mag = std::abs(aug[r * w + c]);
      if (mag > best) {
        best = mag;
        piv = r;
      }
    }
    if (!(best > pivot_tol)) throw singular_matrix_error(c);
    if (piv != c)
      for (std::size_t j = 0; j < w; ++j) std::swap(aug[c * w + j], aug[piv * w + j]);

    const cx inv_p = 1.0 / aug[c * w + c];
    for (std::size_t j = 0; j < w; ++j) aug[c * w + j] *= inv_p;

    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const cx f = aug[r * w + c];
      for (std::size_t j = 0; j < w; ++j) aug[r * w + j] -= f * aug[c * w + j];
    }
  }

  ComplexMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug[i * w + n + j];
  return inv;
}

}  // namespace lowphy
