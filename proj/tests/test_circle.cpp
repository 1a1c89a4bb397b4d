#include <doctest.h>

#include <cmath>
#include <numbers>

#include "polargrass/circle.hpp"

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

// J_k(x) for any integer k and real x.
double bessel(int k, double x) {
  double sign = 1.0;
  if (k < 0) {
    k = -k;
    if (k % 2) sign = -sign;
  }
  if (x < 0) {
    x = -x;
    if (k % 2) sign = -sign;
  }
  return sign * std::cyl_bessel_j(static_cast<double>(k), x);
}

// Max |ω(Cx, Cy) − ω(x, y)| over unit mode vectors with |m|, |n| ≤ band.
double omega_band_residual(const CMatrix& c, Index N, Index band) {
  double worst = 0.0;
  for (Index i = 0; i < 2 * N; ++i) {
    if (std::abs(mode_of_index(i, N)) > band) continue;
    for (Index j = 0; j < 2 * N; ++j) {
      if (std::abs(mode_of_index(j, N)) > band) continue;
      const CVector x = CVector::Unit(2 * N, i), y = CVector::Unit(2 * N, j);
      const cplx lhs = boson_omega_modes(c * x, c * y, N);
      worst = std::max(worst, std::abs(lhs - boson_omega_modes(x, y, N)));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("mode indexing round trip") {
  const Index N = 4;
  for (Index i = 0; i < 2 * N; ++i) CHECK(index_of_mode(mode_of_index(i, N), N) == i);
  CHECK(mode_of_index(0, N) == -4);
  CHECK(mode_of_index(3, N) == -1);
  CHECK(mode_of_index(4, N) == 1);
}

TEST_CASE("boson triple: Hilbert transform and weighted pairings") {
  const Index N = 4;
  ComplexifiedSpace s = complexify(boson_triple(N));
  for (int m = -4; m <= 4; ++m) {
    if (!m) continue;
    const CVector e = boson_mode_vector(m, N);
    // J e_m = −i sgn(m) e_m.
    CHECK(max_abs(CMatrix(s.J() * e + I * static_cast<double>(m > 0 ? 1 : -1) * e)) <= 1e-15);
    for (int n = -4; n <= 4; ++n) {
      if (!n) continue;
      const CVector f = boson_mode_vector(n, N);
      const cplx expected_w = m == -n ? cplx(0.0, -m) : cplx(0.0);
      CHECK(std::abs(s.omega(e, f) - expected_w) <= 1e-14);
      const cplx expected_g = m == n ? cplx(std::abs(m)) : cplx(0.0);
      CHECK(std::abs(s.g(e, f) - expected_g) <= 1e-14);
    }
  }
  EigenSplit b = boson_split(s);
  CHECK(principal_angle_distance(b.plus_frame(), eigensplit(s).plus_frame()) <= 1e-12);
  CHECK(max_abs(CMatrix(b.basis().adjoint() * s.g_sesq() * b.basis() - CMatrix::Identity(8, 8))) <= 1e-14);
}

TEST_CASE("composition operator of a rotation is diagonal") {
  const Index N = 6;
  const double delta = 0.37;
  const CompositionMatrix cm = composition_operator(CircleDiffeo::rotation(delta), N, 128);
  for (Index i = 0; i < 2 * N; ++i)
    for (Index j = 0; j < 2 * N; ++j) {
      const cplx expected = i == j ? std::polar(1.0, mode_of_index(j, N) * delta) : cplx(0.0);
      CHECK(std::abs(cm.c(i, j) - expected) <= 1e-13);
    }
  CHECK_FALSE(cm.aliasing_risk);
  CHECK(composition_operator(CircleDiffeo::identity(), N, 40).aliasing_risk);
}

TEST_CASE("composition operator of θ + ε sin θ matches the Bessel expansion") {
  // e^{in(θ + ε sin θ)} = Σ_k J_k(nε) e^{i(n+k)θ}, so c_{mn} = J_{m−n}(nε).
  const Index N = 8;
  const double eps = 0.3;
  const CompositionMatrix cm = composition_operator(CircleDiffeo::fourier_flow({{1, eps}}), N, 256);
  double worst = 0.0;
  for (Index i = 0; i < 2 * N; ++i)
    for (Index j = 0; j < 2 * N; ++j) {
      const int m = mode_of_index(i, N), n = mode_of_index(j, N);
      worst = std::max(worst, std::abs(cm.c(i, j) - bessel(m - n, n * eps)));
    }
  CHECK(worst <= 1e-13);
}

TEST_CASE("composition operator is independent of the thread count") {
  const CircleDiffeo phi = CircleDiffeo::mobius(cplx(0.2, -0.1));
  const CMatrix c1 = composition_operator(phi, 8, 128, 1).c;
  const CMatrix c3 = composition_operator(phi, 8, 128, 3).c;
  CHECK((c1.array() == c3.array()).all());
}

TEST_CASE("smooth specimens preserve ω on band-limited vectors") {
  const Index N = 32;
  for (const auto& phi : {CircleDiffeo::fourier_flow({{1, 0.1}}), CircleDiffeo::fourier_flow({{3, 0.05}}),
                          CircleDiffeo::fourier_flow({{1, 0.2}})}) {
    const CompositionMatrix cm = composition_operator(phi, N, 512);
    CHECK(omega_band_residual(cm.c, N, N / 2) <= 1e-6);
  }
}

TEST_CASE("Möbius maps stabilize L⁺") {
  for (cplx a : {cplx(0.3, 0.0), cplx(0.05, -0.1)}) {
    const GrunskyResult g = grunsky(CircleDiffeo::mobius(a), 32, 512);
    CHECK(max_abs(g.point.Z()) <= 1e-6);
    CHECK(op_norm(g.z_raw) <= 1e-6);
  }
  // Truncation pushes σ_min(a) down exponentially as |a| grows.
  CHECK(kind_of([] { grunsky(CircleDiffeo::mobius(cplx(-0.2, 0.4)), 32, 512); }) == ErrorKind::BlockSingular);
  // Rotations give exactly diagonal a and b = 0.
  CHECK(max_abs(grunsky(CircleDiffeo::rotation(1.1), 8, 128).z_raw) <= 1e-13);
}

TEST_CASE("Möbius boundary map is a circle diffeomorphism") {
  const CircleDiffeo phi = CircleDiffeo::mobius(cplx(0.3, 0.2));
  CHECK_NOTHROW(phi.validate(1024));
  // e^{iφ(θ)} = (z − a)/(1 − ā z) at z = e^{iθ}.
  const cplx a(0.3, 0.2);
  for (double th : {0.0, 1.0, 2.5, 5.0}) {
    const cplx z = std::polar(1.0, th);
    CHECK(std::abs(std::polar(1.0, phi(th)) - (z - a) / (1.0 - std::conj(a) * z)) <= 1e-14);
  }
  CHECK(kind_of([] { CircleDiffeo::mobius(cplx(1.0, 0.0)); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { CircleDiffeo::fourier_flow({{2, 0.6}}); }) == ErrorKind::NotIncreasing);
}

TEST_CASE("Grunsky operator is symmetric and resolution-stable") {
  const CircleDiffeo phi = CircleDiffeo::fourier_flow({{2, 0.3}});
  const GrunskyResult g32 = grunsky(phi, 32, 512);
  const GrunskyResult g64 = grunsky(phi, 64, 1024);
  CHECK(g32.symmetry <= 1e-6);
  CHECK(g64.symmetry <= 1e-6);
  CHECK(siegel_membership(g32.point.Z()).member);
  const double diff = max_abs(CMatrix(g32.point.Z() - g64.point.Z().topLeftCorner(32, 32)));
  CHECK(diff <= 1e-5);
  CHECK(max_abs(g32.point.Z()) >= 1e-3);
}

TEST_CASE("composition coherence: C_{φ2∘φ1} = C_{φ1} C_{φ2}") {
  const Index N = 32, K = 512;
  const CircleDiffeo phi1 = CircleDiffeo::fourier_flow({{1, 0.2}});
  const CircleDiffeo phi2 = CircleDiffeo::fourier_flow({{2, 0.1}});
  const CMatrix c1 = composition_operator(phi1, N, K).c;
  const CMatrix c2 = composition_operator(phi2, N, K).c;
  const CMatrix c12 = composition_operator(CircleDiffeo::compose(phi2, phi1), N, K).c;
  const CMatrix prod = c1 * c2;
  double worst = 0.0;
  for (Index i = 0; i < 2 * N; ++i)
    for (Index j = 0; j < 2 * N; ++j)
      if (std::abs(mode_of_index(i, N)) <= N / 2 && std::abs(mode_of_index(j, N)) <= N / 2)
        worst = std::max(worst, std::abs(prod(i, j) - c12(i, j)));
  CHECK(worst <= 1e-8);

  // Graph route: Z(φ2∘φ1) = u1 · Z(φ2).
  const CompositionBlocks b1 = composition_blocks(c1, N);
  const GrunskyResult g2 = grunsky(phi2, N, K);
  const GrunskyResult g12 = grunsky(CircleDiffeo::compose(phi2, phi1), N, K);
  const CMatrix via = mobius_act_raw(b1.a, b1.b, g2.point.Z());
  CHECK(max_abs(CMatrix(via - g12.point.Z())) <= 1e-5);
}

TEST_CASE("diffeo JSON round trip") {
  const CircleDiffeo phi = CircleDiffeo::compose(CircleDiffeo::mobius(cplx(0.1, 0.2)),
                                                 CircleDiffeo::fourier_flow({{1, 0.1}, {3, 0.02}}));
  const CircleDiffeo back = CircleDiffeo::from_json(json::parse(dump_json(phi.to_json())));
  for (double th : {0.0, 0.7, 3.3}) CHECK(back(th) == phi(th));
  CHECK_THROWS_AS(CircleDiffeo::from_json(json{{"kind", "spline"}}), ParseError);
  CHECK_THROWS_AS(CircleDiffeo::from_json(json{{"kind", "rotation"}, {"delta", 1.0}, {"x", 2}}), ParseError);
}

TEST_CASE("fermion polarization is L⁺ of the standard triple") {
  ComplexifiedSpace s = complexify(fermion_triple(3));
  const OrthogonalPolarization p = fermion_polarization(s);
  CHECK(principal_angle_distance(p.wplus(), eigensplit(s).plus_frame()) <= 1e-12);
  const RMatrix r = plane_rotation(6, 0, 1, 0.4);
  CHECK(group_membership(r, s.triple()).o);
  CHECK(kind_of([] { plane_rotation(4, 1, 1, 0.1); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("torus period matrices") {
  for (cplx tau : {cplx(0.0, 1.0), cplx(0.5, 0.5), cplx(0.0, 2.0), cplx(-1.3, 0.7)}) {
    const TorusPeriod p = torus_period(tau);
    CHECK(std::abs(p.Z.Z()(0, 0) - tau) <= 1e-14);
    CHECK(std::abs(p.a_period - 1.0) <= 1e-15);
    CHECK(p.hodge_residual <= 1e-14);
    CHECK(halfspace_membership(p.Z.Z()).member);
  }
  CHECK(kind_of([] { torus_period(cplx(0.5, -0.5)); }) == ErrorKind::NotUpperHalf);
  CHECK(kind_of([] { torus_period(cplx(0.5, 0.0)); }) == ErrorKind::NotUpperHalf);
}
