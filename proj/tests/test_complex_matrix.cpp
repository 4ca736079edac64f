#include <catch_amalgamated.hpp>

#include "lowphy/complex_matrix.hpp"
#include "lowphy/input_gen.hpp"
#include "oracles.hpp"

using namespace lowphy;

namespace {

ComplexMatrix diag(std::initializer_list<cx> entries) {
  ComplexMatrix m(entries.size(), entries.size());
  std::size_t i = 0;
  for (const cx v : entries) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("mat_mul identity and diagonal cases") {
  SplitMix64 rng(7);
  const ComplexMatrix a = random_matrix(rng, 3, 3);
  CHECK(mat_mul(ComplexMatrix::identity(3), a) == a);

  const ComplexMatrix d = mat_mul(diag({2.0, 3.0}), diag({5.0, 7.0}));
  CHECK(d == diag({10.0, 21.0}));
}

TEST_CASE("mat_mul matches the triple-loop oracle") {
  SplitMix64 rng(11);
  const ComplexMatrix a = random_matrix(rng, 4, 4);
  const ComplexMatrix b = random_matrix(rng, 4, 4);
  const ComplexMatrix want = oracles::naive_mat_mul(a, b);
  const ComplexMatrix got = mat_mul(a, b);
  for (std::size_t k = 0; k < want.size(); ++k)
    CHECK(std::abs(got.data()[k] - want.data()[k]) < 1e-12);
}

TEST_CASE("mat_mul rejects mismatched shapes") {
  SplitMix64 rng(3);
  const ComplexMatrix a = random_matrix(rng, 2, 3);
  const ComplexMatrix b = random_matrix(rng, 2, 3);
  CHECK_THROWS_AS(mat_mul(a, b), shape_error);
}

TEST_CASE("mat_mul associativity within 1e-9 Frobenius") {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 4; ++trial) {
    const ComplexMatrix a = random_matrix(rng, 8, 8);
    const ComplexMatrix b = random_matrix(rng, 8, 8);
    const ComplexMatrix c = random_matrix(rng, 8, 8);
    const ComplexMatrix left = mat_mul(mat_mul(a, b), c);
    const ComplexMatrix right = mat_mul(a, mat_mul(b, c));
    CHECK(frobenius_norm(mat_add(left, mat_scale(right, -1.0))) < 1e-9);
  }
}

TEST_CASE("hermitian_transpose basics") {
  ComplexMatrix sym(2, 2);
  sym(0, 0) = 1.0;
  sym(0, 1) = 2.0;
  sym(1, 0) = 2.0;
  sym(1, 1) = 3.0;
  CHECK(hermitian_transpose(sym) == sym);

  ComplexMatrix i1(1, 1);
  i1(0, 0) = cx(0.0, 1.0);
  CHECK(hermitian_transpose(i1)(0, 0) == cx(0.0, -1.0));
}

TEST_CASE("hermitian_transpose is an involution, bit-identical") {
  SplitMix64 rng(17);
  const ComplexMatrix a = random_matrix(rng, 5, 3);
  CHECK(hermitian_transpose(hermitian_transpose(a)) == a);
}

TEST_CASE("(AB)^H == B^H A^H elementwise within 1e-12") {
  SplitMix64 rng(19);
  const ComplexMatrix a = random_matrix(rng, 4, 6);
  const ComplexMatrix b = random_matrix(rng, 6, 5);
  const ComplexMatrix lhs = hermitian_transpose(mat_mul(a, b));
  const ComplexMatrix rhs = mat_mul(hermitian_transpose(b), hermitian_transpose(a));
  for (std::size_t k = 0; k < lhs.size(); ++k)
    CHECK(std::abs(lhs.data()[k] - rhs.data()[k]) < 1e-12);
}

TEST_CASE("mat_inverse identity and diagonal") {
  CHECK(mat_inverse(ComplexMatrix::identity(4)) == ComplexMatrix::identity(4));
  CHECK(mat_inverse(diag({2.0, 4.0})) == diag({0.5, 0.25}));
}

TEST_CASE("mat_inverse multiply-back on a well-conditioned 16x16") {
  SplitMix64 rng(23);
  ComplexMatrix a = random_matrix(rng, 16, 16);
  for (std::size_t i = 0; i < 16; ++i) a(i, i) += 2.0;
  const ComplexMatrix prod = mat_mul(a, mat_inverse(a));
  CHECK(frobenius_norm(mat_add(prod, mat_scale(ComplexMatrix::identity(16), -1.0))) < 1e-9);
}

TEST_CASE("mat_inverse round-trip property up to n = 32") {
  SplitMix64 rng(29);
  for (const std::size_t n : {2u, 5u, 8u, 16u, 32u}) {
    ComplexMatrix a = random_matrix(rng, n, n);
    for (std::size_t i = 0; i < n; ++i) a(i, i) += 2.0;
    const ComplexMatrix prod = mat_mul(a, mat_inverse(a));
    const double err =
        frobenius_norm(mat_add(prod, mat_scale(ComplexMatrix::identity(n), -1.0)));
    CHECK(err < 1e-9 * static_cast<double>(n));
  }
}

TEST_CASE("mat_inverse reports the failing column of a singular matrix") {
  ComplexMatrix a(3, 3);
  a(0, 0) = 1.0;
  a(1, 1) = 1.0;  // column 2 is all zero
  try {
    mat_inverse(a);
    FAIL("expected singular_matrix_error");
  } catch (const singular_matrix_error& e) {
    CHECK(e.column == 2);
  }
  CHECK_THROWS_AS(mat_inverse(ComplexMatrix(3, 3)), singular_matrix_error);

  SplitMix64 rng(5);
  CHECK_THROWS_AS(mat_inverse(random_matrix(rng, 2, 3)), shape_error);
}

TEST_CASE("frobenius_norm fixed values") {
  CHECK(frobenius_norm(ComplexMatrix(3, 3)) == 0.0);
  CHECK(frobenius_norm(ComplexMatrix::identity(4)) == 2.0);
  ComplexMatrix m(1, 1);
  m(0, 0) = cx(3.0, 4.0);
  CHECK(frobenius_norm(m) == 5.0);
}

TEST_CASE("mat_add and mat_scale basics") {
  SplitMix64 rng(31);
  const ComplexMatrix a = random_matrix(rng, 3, 4);
  CHECK(mat_add(a, ComplexMatrix(3, 4)) == a);
  CHECK(mat_scale(a, 1.0) == a);
  CHECK(mat_add(mat_scale(ComplexMatrix::identity(2), cx(2.0, 0.0)),
                ComplexMatrix::identity(2)) == diag({3.0, 3.0}));
  CHECK_THROWS_AS(mat_add(a, ComplexMatrix(4, 3)), shape_error);
}

TEST_CASE("matrix constructor validates dimensions and data length") {
  CHECK_THROWS_AS(ComplexMatrix(0, 3), shape_error);
  CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<cx>(3)), shape_error);
  CHECK(is_finite(ComplexMatrix::identity(2)));
  ComplexMatrix bad(1, 1);
  bad(0, 0) = cx(std::numeric_limits<double>::quiet_NaN(), 0.0);
  CHECK(!is_finite(bad));
}
