#include <doctest.h>

#include <cmath>

#include "polargrass/circle.hpp"
#include "polargrass/fock.hpp"
#include "polargrass/random.hpp"

using namespace polargrass;

namespace {

double dense_max(const SparseC& m) { return max_abs(CMatrix(m)); }

}  // namespace

TEST_CASE("single mode: c² = 0 and {c, c*} = 1") {
  ComplexifiedSpace s = complexify(fermion_triple(1));
  const FockRep rep = build_fock(s, fermion_polarization(s));
  CHECK(rep.dim() == 2);
  const CMatrix c = CMatrix(rep.creation(0));
  CMatrix expected = CMatrix::Zero(2, 2);
  expected(1, 0) = 1.0;
  CHECK(max_abs(CMatrix(c - expected)) == 0.0);
  CHECK(max_abs(CMatrix(c * c)) == 0.0);
  const CMatrix anti = c * c.adjoint() + c.adjoint() * c;
  CHECK(max_abs(CMatrix(anti - CMatrix::Identity(2, 2))) == 0.0);
}

TEST_CASE("Jordan-Wigner signs on two modes") {
  ComplexifiedSpace s = complexify(fermion_triple(2));
  const FockRep rep = build_fock(s, fermion_polarization(s));
  // c_1 c_0 |∅⟩ = −c_0 c_1 |∅⟩.
  CVector vac = CVector::Zero(4);
  vac(0) = 1.0;
  const CVector a = rep.creation(1) * (rep.creation(0) * vac);
  const CVector b = rep.creation(0) * (rep.creation(1) * vac);
  CHECK(max_abs(CMatrix(a + b)) == 0.0);
  CHECK(std::abs(std::abs(a(3)) - 1.0) == 0.0);
}

TEST_CASE("CAR, adjoint relation, cyclicity and grading at n = 4") {
  ComplexifiedSpace s = complexify(fermion_triple(4));
  const FockRep rep = build_fock(s, fermion_polarization(s));
  CHECK(rep.dim() == 16);
  CHECK(car_exhaustive(rep) <= 1e-12);
  CHECK(adjoint_residual(rep) <= 1e-12);
  CHECK(vacuum_cyclicity_rank(rep) == 16);
  CHECK(grading_respected(rep));
}

TEST_CASE("CAR on random vectors of a rotated polarization") {
  Rng rng(71);
  ComplexifiedSpace s = complexify(fermion_triple(3));
  EigenSplit sp = eigensplit(s);
  const RMatrix u = random_orthogonal(rng, 6);
  const auto pol = OrthogonalPolarization::make(s, Frame::from_columns(u.cast<cplx>() * sp.plus()));
  const FockRep rep = build_fock(s, pol);
  for (int t = 0; t < 20; ++t) {
    const CVector v = random_complex(rng, 6, 1), w = random_complex(rng, 6, 1);
    CHECK(car_check(rep, v, w) <= 1e-12 * std::max(1.0, v.norm() * w.norm()));
  }
  // π(v)² = ½ g(v, αv) for every v.
  const CVector v = random_complex(rng, 6, 1);
  const cplx q = v.transpose() * s.g_sesq() * v;
  const SparseC pv = rep.pi(v);
  SparseC id(rep.dim(), rep.dim());
  id.setIdentity();
  CHECK(dense_max(SparseC(SparseC(pv * pv) - 0.5 * q * id)) <= 1e-12 * std::max(1.0, std::abs(q)));
}

TEST_CASE("DimensionGuard above twelve modes") {
  ComplexifiedSpace s = complexify(fermion_triple(13));
  CHECK_THROWS_AS(build_fock(s, fermion_polarization(s)), Error);
  try {
    build_fock(s, fermion_polarization(s));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionGuard);
  }
}

TEST_CASE("rotated polarizations differ from W⁺ by a finite HS norm") {
  ComplexifiedSpace s = complexify(fermion_triple(4));
  EigenSplit sp = eigensplit(s);
  const OrthogonalPolarization p0 = fermion_polarization(s);
  double prev = 0.0;
  for (double angle : {0.1, 0.3, 0.6}) {
    const RMatrix r = plane_rotation(8, 0, 2, angle);
    const auto p = OrthogonalPolarization::make(s, Frame::from_columns(r.cast<cplx>() * sp.plus()));
    const EquivalenceCertificate c = equivalence_certificate(s, p0, p);
    CHECK(c.equivalent);
    CHECK(std::isfinite(c.hs_norm));
    CHECK(c.hs_norm > prev);
    prev = c.hs_norm;
  }
  // Rotation inside a (p, q) pair commutes with J and fixes W⁺.
  const RMatrix r = plane_rotation(8, 0, 1, 0.5);
  const auto p = OrthogonalPolarization::make(s, Frame::from_columns(r.cast<cplx>() * sp.plus()));
  CHECK(equivalence_certificate(s, p0, p).hs_norm <= 1e-12);
}
