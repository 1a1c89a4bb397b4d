#include <doctest.h>

#include <cmath>

#include "polargrass/circle.hpp"
#include "polargrass/polarization.hpp"
#include "polargrass/random.hpp"

using namespace polargrass;

namespace {

const cplx I(0.0, 1.0);

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidArgument;
}

// Symplectic elements for the standard triple: real forms of blocks (a, b)
// with a = (1 − Z*Z)^{-1/2} Q, b = Z(1 − Z*Z)^{-1/2} Q.
RMatrix random_symplectic(Rng& rng, const EigenSplit& split) {
  const Index n = split.n();
  CMatrix a0 = random_complex(rng, n, n);
  CMatrix z = 0.5 * (a0 + a0.transpose());
  z *= rng.uniform(0.1, 0.8) / op_norm(z);
  const CMatrix a = inverse_sqrt_hermitian(CMatrix::Identity(n, n) - z.adjoint() * z);
  const CMatrix q = random_unitary(rng, n);
  CMatrix u(2 * n, 2 * n);
  const CMatrix aq = a * q, bq = z * a * q;
  u << aq, bq.conjugate(), bq, aq.conjugate();
  const CMatrix basis = split.basis();
  return (basis * u * basis.adjoint() * split.space().g_sesq()).real();
}

}  // namespace

TEST_CASE("complexify the standard triple") {
  ComplexifiedSpace s = complexify(standard_triple(1));
  CHECK(max_abs(CMatrix(s.g_sesq() - CMatrix::Identity(2, 2))) == 0.0);
  CMatrix w(2, 2);
  w << 0, 1, -1, 0;
  CHECK(max_abs(CMatrix(s.omega_bilin() - w)) == 0.0);

  Rng rng(31);
  ComplexifiedSpace p = complexify(pullback_triple(random_gl(rng, 6), standard_triple(3)));
  CHECK(p.extended_identity_residual(20, 99) <= 1e-9);
}

TEST_CASE("α is a conjugate-linear isometric involution") {
  Rng rng(32);
  ComplexifiedSpace s = complexify(pullback_triple(random_gl(rng, 4), standard_triple(2)));
  for (int t = 0; t < 10; ++t) {
    const CVector v = random_complex(rng, 4, 1), w = random_complex(rng, 4, 1);
    CHECK(max_abs(CMatrix(ComplexifiedSpace::alpha(ComplexifiedSpace::alpha(v)) - v)) == 0.0);
    CHECK(std::abs(s.g(ComplexifiedSpace::alpha(v), ComplexifiedSpace::alpha(w)) - std::conj(s.g(v, w))) <=
          1e-10 * std::max(1.0, std::abs(s.g(v, w))));
  }
}

TEST_CASE("eigensplit of the standard R2 triple") {
  ComplexifiedSpace s = complexify(standard_triple(1));
  EigenSplit sp = eigensplit(s);
  CMatrix expected(2, 1);
  expected << 1.0 / std::sqrt(2.0), -I / std::sqrt(2.0);
  CHECK(principal_angle_distance(sp.plus_frame(), Frame::from_columns(expected)) <= 1e-12);
  CHECK(max_abs(CMatrix(s.J() * sp.plus() - I * sp.plus())) <= 1e-12);
  CHECK(max_abs(CMatrix(s.J() * sp.minus() + I * sp.minus())) <= 1e-12);
  CHECK(principal_angle_distance(Frame::from_columns(sp.plus().conjugate()), sp.minus_frame()) <= 1e-9);
}

TEST_CASE("eigensplit of the Hilbert transform picks negative modes") {
  const Index N = 5;
  ComplexifiedSpace s = complexify(boson_triple(N));
  EigenSplit sp = eigensplit(s);
  CMatrix neg(2 * N, N);
  for (Index k = 1; k <= N; ++k) neg.col(k - 1) = boson_mode_vector(-static_cast<int>(k), N);
  CHECK(principal_angle_distance(sp.plus_frame(), Frame::from_columns(neg)) <= 1e-10);
}

TEST_CASE("−J swaps L⁺ and L⁻") {
  Rng rng(33);
  const CompatibleTriple t = pullback_triple(random_gl(rng, 4), standard_triple(2));
  const CompatibleTriple tm = CompatibleTriple::make(
      t.g(), ComplexStructure::make(-t.Jm()), BilinearForm::antisymmetric(-t.Omega()));
  EigenSplit a = eigensplit(complexify(t));
  EigenSplit b = eigensplit(complexify(tm));
  CHECK(principal_angle_distance(a.plus_frame(), b.minus_frame()) <= 1e-9);
}

TEST_CASE("L± are g-orthogonal and ω-Lagrangian") {
  Rng rng(34);
  ComplexifiedSpace s = complexify(pullback_triple(random_gl(rng, 6), standard_triple(3)));
  EigenSplit sp = eigensplit(s);
  const CMatrix P = sp.plus(), M = sp.minus();
  CHECK(max_abs(CMatrix(P.transpose() * s.g_sesq() * M.conjugate())) <= 1e-10);
  CHECK(max_abs(CMatrix(P.transpose() * s.omega_bilin() * P)) <= 1e-10);
  CHECK(max_abs(CMatrix(M.transpose() * s.omega_bilin() * M)) <= 1e-10);
  const CMatrix B = sp.basis();
  CHECK(max_abs(CMatrix(B.adjoint() * s.g_sesq() * B - CMatrix::Identity(6, 6))) <= 1e-10);
}

TEST_CASE("paired convention: symmetric Z is Lagrangian, antisymmetric Z is perpendicular") {
  Rng rng(35);
  ComplexifiedSpace s = complexify(pullback_triple(random_gl(rng, 6), standard_triple(3)));
  EigenSplit sp = eigensplit(s);
  const CMatrix zs = random_symmetric_contraction(rng, 3);
  const CMatrix za = random_antisymmetric(rng, 3, 0.7);
  CMatrix c(6, 3);
  c << CMatrix::Identity(3, 3), zs;
  const CMatrix ws = sp.from_coordinates(c);
  CHECK(max_abs(CMatrix(ws.transpose() * s.omega_bilin() * ws)) <= 1e-10 * max_abs(s.omega_bilin()));
  c << CMatrix::Identity(3, 3), za;
  const CMatrix wa = sp.from_coordinates(c);
  CHECK(max_abs(CMatrix(wa.transpose() * s.g_sesq() * wa)) <= 1e-10 * max_abs(s.g_sesq()));
}

TEST_CASE("triple_from_orthogonal") {
  const CompatibleTriple st = standard_triple(2);
  ComplexifiedSpace s = complexify(st);
  EigenSplit sp = eigensplit(s);
  CompatibleTriple back = triple_from_orthogonal(s, OrthogonalPolarization::make(s, sp.plus_frame()));
  CHECK(relative_residual(st.Jm(), back.Jm()) <= 1e-12);
  CHECK(relative_residual(st.Omega(), back.Omega()) <= 1e-12);

  Rng rng(36);
  const RMatrix u = random_orthogonal(rng, 4);
  const Frame w = Frame::from_columns(u.cast<cplx>() * sp.plus());
  CompatibleTriple tw = triple_from_orthogonal(s, OrthogonalPolarization::make(s, w));
  CompatibleTriple pb = pullback_triple(u, st);
  CHECK(relative_residual(pb.Jm(), tw.Jm()) <= 1e-9);
  CHECK(relative_residual(pb.Omega(), tw.Omega()) <= 1e-9);
  CHECK(verify_triple(tw).compatible);

  // W⁺ = span(e1, e2) is fixed by α.
  CMatrix e = CMatrix::Zero(4, 2);
  e(0, 0) = e(1, 1) = 1.0;
  CHECK(kind_of([&] { triple_from_orthogonal(s, Frame::from_columns(e)); }) == ErrorKind::NotRealizable);
  CHECK(kind_of([&] { OrthogonalPolarization::make(s, Frame::from_columns(e)); }) ==
        ErrorKind::NotOrthogonalPolarization);
}

TEST_CASE("triple_from_positive_symplectic") {
  const CompatibleTriple st = standard_triple(2);
  ComplexifiedSpace s = complexify(st);
  EigenSplit sp = eigensplit(s);
  CompatibleTriple back = triple_from_positive_symplectic(s, sp.plus_frame());
  CHECK(relative_residual(st.G(), back.G()) <= 1e-12);

  CHECK(kind_of([&] { triple_from_positive_symplectic(s, sp.minus_frame()); }) == ErrorKind::NotPositive);

  Rng rng(37);
  for (int t = 0; t < 5; ++t) {
    const RMatrix u = random_symplectic(rng, sp);
    REQUIRE(group_membership(u, st).sp);
    const Frame w = Frame::from_columns(u.cast<cplx>() * sp.plus());
    CompatibleTriple tw = triple_from_positive_symplectic(s, w);
    CompatibleTriple pb = pullback_triple(u, st);
    CHECK(relative_residual(pb.G(), tw.G()) <= 1e-9);
    CHECK(relative_residual(pb.Jm(), tw.Jm()) <= 1e-9);
  }
}

TEST_CASE("round trip: eigensplit of J_W recovers W⁺") {
  Rng rng(38);
  const CompatibleTriple st = pullback_triple(random_gl(rng, 6), standard_triple(3));
  ComplexifiedSpace s = complexify(st);
  EigenSplit sp = eigensplit(s);
  for (int t = 0; t < 5; ++t) {
    // Orthogonal flavour: u ∈ O(g) is R⁻¹ Q R with R = G^{1/2}.
    const RMatrix R = sqrt_hermitian(st.G().cast<cplx>()).real();
    const RMatrix uo = R.inverse() * random_orthogonal(rng, 6) * R;
    const Frame wo = Frame::from_columns(uo.cast<cplx>() * sp.plus());
    EigenSplit so = eigensplit(complexify(triple_from_orthogonal(s, wo)));
    CHECK(principal_angle_distance(so.plus_frame(), wo) <= 1e-8);

    const RMatrix us = random_symplectic(rng, sp);
    const Frame ws = Frame::from_columns(us.cast<cplx>() * sp.plus());
    PositiveSymplecticPolarization::make(s, ws);
    EigenSplit ss = eigensplit(complexify(triple_from_positive_symplectic(s, ws)));
    CHECK(principal_angle_distance(ss.plus_frame(), ws) <= 1e-8);
  }
}

TEST_CASE("stabilizer of L⁺ is the unitary group") {
  Rng rng(39);
  const CompatibleTriple st = standard_triple(2);
  ComplexifiedSpace s = complexify(st);
  EigenSplit sp = eigensplit(s);
  for (int t = 0; t < 20; ++t) {
    const RMatrix u = t % 2 ? random_orthogonal(rng, 4) : random_symplectic(rng, sp);
    const Frame w = Frame::from_columns(u.cast<cplx>() * sp.plus());
    const bool fixes = principal_angle_distance(w, sp.plus_frame()) <= 1e-9;
    CHECK(fixes == group_membership(u, st).unitary);
  }
  // A unitary element does fix L⁺.
  const RMatrix J = st.Jm();
  CHECK(principal_angle_distance(Frame::from_columns(J.cast<cplx>() * sp.plus()), sp.plus_frame()) <= 1e-12);
}

TEST_CASE("hermitian_model") {
  ComplexifiedSpace s = complexify(standard_triple(1));
  EigenSplit sp = eigensplit(s);
  RVector x(2);
  x << 1, 0;
  // Ψ(x) = (1, −i)/√2 is the unit L⁺ vector: coordinate of modulus 1.
  CHECK(std::abs(std::abs(hermitian_model(sp, x)(0)) - 1.0) <= 1e-12);

  Rng rng(40);
  const CompatibleTriple t = pullback_triple(random_gl(rng, 6), standard_triple(3));
  ComplexifiedSpace st = complexify(t);
  EigenSplit spt = eigensplit(st);
  for (int k = 0; k < 50; ++k) {
    const RVector v = random_real(rng, 6, 1), w = random_real(rng, 6, 1);
    const CVector pv = hermitian_model(spt, v), pw = hermitian_model(spt, w);
    CHECK(max_abs(CMatrix(hermitian_model(spt, t.Jm() * v) - I * pv)) <= 1e-10 * std::max(1.0, pv.norm()));
    const cplx lhs = pv.dot(pw);  // conj(pv)ᵀ pw
    const cplx pairing = std::conj(lhs);
    const cplx rhs(t.g()(v, w), -t.omega()(v, w));
    CHECK(std::abs(pairing - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("hs_projection_norm") {
  Rng rng(41);
  const CompatibleTriple st = standard_triple(3);
  ComplexifiedSpace s = complexify(st);
  EigenSplit sp = eigensplit(s);
  CHECK(hs_projection_norm(sp.plus_frame(), sp.plus_frame(), s) <= 1e-12);

  // Graph of Z over L⁺: the α(L⁺)-component of the g-normalized graph frame.
  const CMatrix z = random_symmetric_contraction(rng, 3);
  CMatrix c(6, 3);
  c << CMatrix::Identity(3, 3), z;
  const Frame w = Frame::from_columns(sp.from_coordinates(c));
  const CMatrix id = CMatrix::Identity(3, 3);
  const CMatrix normalized = z * inverse_sqrt_hermitian(CMatrix(id + z.adjoint() * z));
  CHECK(std::abs(hs_projection_norm(w, sp.plus_frame(), s) - hs_norm(normalized)) <= 1e-10);
  CHECK(hs_projection_norm(Frame::from_columns(sp.from_coordinates(
                               (CMatrix(6, 3) << id, CMatrix::Zero(3, 3)).finished())),
                           sp.plus_frame(), s) <= 1e-12);

  for (int t = 0; t < 10; ++t) {
    const RMatrix u1 = random_orthogonal(rng, 6), u2 = random_orthogonal(rng, 6);
    const Frame w1 = Frame::from_columns(u1.cast<cplx>() * sp.plus());
    const Frame w2 = Frame::from_columns(u2.cast<cplx>() * sp.plus());
    const double a = hs_projection_norm(w1, w2, s), b = hs_projection_norm(w2, w1, s);
    CHECK(a <= 2.0 * b + 1e-12);
    CHECK(b <= 2.0 * a + 1e-12);
  }
}
