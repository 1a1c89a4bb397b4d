#include <doctest.h>

#include <cmath>

#include "polargrass/io.hpp"
#include "polargrass/numeric.hpp"
#include "polargrass/random.hpp"

using namespace polargrass;

TEST_CASE("hs_norm: zero, identity and unitary invariance") {
  CHECK(hs_norm(CMatrix::Zero(2, 2)) == 0.0);
  CHECK(hs_norm(CMatrix::Identity(3, 3)) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));

  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix a = random_complex(rng, 4, 4);
    const CMatrix u = random_unitary(rng, 4);
    CHECK(std::abs(hs_norm(u * a * u.adjoint()) - hs_norm(a)) <= 1e-12);
  }
}

TEST_CASE("op_norm is dominated by hs_norm") {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix a = random_complex(rng, 5, 3 + trial % 4);
    CHECK(op_norm(a) <= hs_norm(a) * (1.0 + 1e-14));
  }
}

TEST_CASE("is_positive_definite") {
  CHECK(is_positive_definite(CMatrix::Identity(2, 2), 1e-12));

  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1e-3;
  CHECK_FALSE(is_positive_definite(d, 1e-12));

  // 1 − Z*Z for Z = diag(0.5, 0.9): eigenvalues 0.75 and 0.19.
  CMatrix z = CMatrix::Zero(2, 2);
  z(0, 0) = 0.5;
  z(1, 1) = 0.9;
  const CMatrix m = CMatrix::Identity(2, 2) - z.adjoint() * z;
  CHECK(is_positive_definite(m, 1e-12));
  CHECK(min_hermitian_eigenvalue(m) == doctest::Approx(0.19).epsilon(1e-14));

  CMatrix nh = CMatrix::Identity(2, 2);
  nh(0, 1) = 1.0;
  try {
    is_positive_definite(nh, 1e-12);
    FAIL("expected NonHermitian");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonHermitian);
  }
}

TEST_CASE("inverse_sqrt_hermitian") {
  const CMatrix id = CMatrix::Identity(3, 3);
  CHECK(max_abs(CMatrix(inverse_sqrt_hermitian(id) - id)) <= 1e-15);

  CMatrix four(1, 1);
  four(0, 0) = 4.0;
  CHECK(std::abs(inverse_sqrt_hermitian(four)(0, 0) - 0.5) <= 1e-15);

  Rng rng(13);
  const CMatrix x = random_complex(rng, 5, 5);
  const CMatrix a = x * x.adjoint() + 0.1 * CMatrix::Identity(5, 5);
  const CMatrix b = inverse_sqrt_hermitian(a);
  CHECK(max_abs(CMatrix(b - b.adjoint())) <= 1e-12);
  CHECK(max_abs(CMatrix(b * a * b - CMatrix::Identity(5, 5))) <= 1e-10);

  CMatrix neg = -CMatrix::Identity(2, 2);
  CHECK_THROWS_AS(inverse_sqrt_hermitian(neg), Error);
}

TEST_CASE("principal_angle_distance") {
  CMatrix e1 = CMatrix::Zero(2, 1), e2 = CMatrix::Zero(2, 1), d = CMatrix::Zero(2, 1);
  e1(0, 0) = 1.0;
  e2(1, 0) = 1.0;
  d(0, 0) = d(1, 0) = 1.0 / std::sqrt(2.0);
  const Frame f1 = Frame::from_columns(e1), f2 = Frame::from_columns(e2), fd = Frame::from_columns(d);
  CHECK(principal_angle_distance(f1, f1) <= 1e-15);
  CHECK(principal_angle_distance(f1, f2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(principal_angle_distance(f1, fd) == doctest::Approx(std::sin(M_PI / 4)).epsilon(1e-12));

  const Frame wide = Frame::from_columns(CMatrix::Identity(2, 2));
  CHECK_THROWS_AS(principal_angle_distance(f1, wide), Error);
}

TEST_CASE("principal_angle_distance is a pseudometric") {
  Rng rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    const Frame a = Frame::from_columns(random_complex(rng, 6, 3));
    const Frame b = Frame::from_columns(random_complex(rng, 6, 3));
    const Frame c = Frame::from_columns(random_complex(rng, 6, 3));
    const double ab = principal_angle_distance(a, b);
    CHECK(std::abs(ab - principal_angle_distance(b, a)) <= 1e-9);
    CHECK(principal_angle_distance(a, c) <= ab + principal_angle_distance(b, c) + 1e-9);
  }
}

TEST_CASE("Frame orthonormalizes and rejects dependent columns") {
  Rng rng(15);
  const Frame f = Frame::from_columns(random_complex(rng, 7, 4));
  CHECK(f.orthonormality_residual() <= 1e-10);
  CMatrix dep(3, 2);
  dep << 1, 2, 1, 2, 1, 2;
  CHECK_THROWS_AS(Frame::from_columns(dep), Error);
  CMatrix bad = CMatrix::Identity(2, 2);
  bad(0, 0) = cplx(NAN, 0.0);
  CHECK_THROWS_AS(Frame::from_columns(bad), Error);
}

TEST_CASE("Tolerances must be strictly positive") {
  Tolerances t;
  CHECK_NOTHROW(t.validate());
  t.spd = 0.0;
  CHECK_THROWS_AS(t.validate(), Error);
}

TEST_CASE("JSON matrix round trip at 17 digits") {
  Rng rng(16);
  const CMatrix a = random_complex(rng, 3, 2);
  const json parsed = json::parse(dump_json(matrix_to_json(a)));
  const CMatrix b = matrix_from_json(parsed);
  CHECK(max_abs(CMatrix(a - b)) == 0.0);

  json bad = matrix_to_json(a);
  bad["rows"] = 4;
  CHECK_THROWS_AS(matrix_from_json(bad), ParseError);
}
