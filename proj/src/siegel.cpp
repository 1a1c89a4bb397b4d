#include "polargrass/siegel.hpp"

#include <cmath>
#include <sstream>

namespace polargrass {

namespace {

const cplx I(0.0, 1.0);
constexpr double kBlockTol = 1e-9;
constexpr double kSingularRel = 1e-12;

std::string describe(const char* what, double r) {
  std::ostringstream os;
  os << what << " " << r;
  return os.str();
}

void require_blocks(const CMatrix& a, const CMatrix& b) {
  require_square(a.rows(), a.cols(), "block a");
  if (b.rows() != a.rows() || b.cols() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "blocks a and b differ in shape");
  }
  require_finite(a, "block a");
  require_finite(b, "block b");
}

}  // namespace

SiegelMembership siegel_membership(const CMatrix& z, const Tolerances& tol) {
  require_square(z.rows(), z.cols(), "Siegel point");
  SiegelMembership m;
  m.symmetric = max_abs(CMatrix(z - z.transpose()));
  const Index n = z.rows();
  m.contraction_min = n == 0 ? 1.0 : min_hermitian_eigenvalue(CMatrix::Identity(n, n) - z.adjoint() * z);
  m.member = m.symmetric <= tol.eq && m.contraction_min > tol.spd;
  return m;
}

SiegelPoint SiegelPoint::make(const CMatrix& z, const Tolerances& tol) {
  require_finite(z, "Siegel point");
  SiegelMembership m = siegel_membership(z, tol);
  if (m.symmetric > tol.eq) throw Error(ErrorKind::NotSymmetric, describe("‖Z − Zᵀ‖", m.symmetric));
  if (!(m.contraction_min > tol.spd)) {
    throw Error(ErrorKind::NotContraction, describe("1 − Z*Z minimal eigenvalue", m.contraction_min));
  }
  return SiegelPoint(z);
}

CMatrix BlockSymplectic::assemble() const {
  const Index n = a_.rows();
  CMatrix u(2 * n, 2 * n);
  u << a_, b_.conjugate(), b_, a_.conjugate();
  return u;
}

double BlockSymplectic::identity_residual() const {
  const Index n = a_.rows();
  const CMatrix aa = a_.adjoint() * a_;
  return max_abs(CMatrix(aa - b_.adjoint() * b_ - CMatrix::Identity(n, n))) /
         std::max(1.0, max_abs(aa));
}

double BlockSymplectic::pairing_residual() const {
  const CMatrix l = a_.adjoint() * b_.conjugate();
  const CMatrix r = b_.adjoint() * a_.conjugate();
  return max_abs(CMatrix(l - r)) / std::max(1.0, max_abs(CMatrix(a_.adjoint() * a_)));
}

BlockSymplectic BlockSymplectic::make(const CMatrix& a, const CMatrix& b, const Tolerances&) {
  require_blocks(a, b);
  BlockSymplectic blk(a, b);
  const double r1 = blk.identity_residual();
  const double r2 = blk.pairing_residual();
  if (r1 > kBlockTol) throw Error(ErrorKind::NotSymplectic, describe("a*a − b*b − I", r1));
  if (r2 > kBlockTol) throw Error(ErrorKind::NotSymplectic, describe("a* conj b − b* conj a", r2));
  return blk;
}

BlockSymplectic BlockSymplectic::identity(Index n) {
  return BlockSymplectic(CMatrix::Identity(n, n), CMatrix::Zero(n, n));
}

BlockSymplectic BlockSymplectic::boost(const RVector& t) {
  const Index n = t.size();
  CMatrix a = CMatrix::Zero(n, n), b = CMatrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) {
    a(k, k) = std::cosh(t(k));
    b(k, k) = std::sinh(t(k));
  }
  return BlockSymplectic(a, b);
}

RMatrix BlockSymplectic::to_real(const EigenSplit& split) const {
  if (split.n() != n()) throw Error(ErrorKind::DimensionMismatch, "split and blocks differ in n");
  const CMatrix basis = split.basis();
  const CMatrix u = basis * assemble() * basis.adjoint() * split.space().g_sesq();
  return u.real();
}

BlockSymplectic compose(const BlockSymplectic& b2, const BlockSymplectic& b1) {
  if (b2.n() != b1.n()) throw Error(ErrorKind::DimensionMismatch, "compose: block sizes differ");
  const CMatrix a = b2.a() * b1.a() + b2.b().conjugate() * b1.b();
  const CMatrix b = b2.b() * b1.a() + b2.a().conjugate() * b1.b();
  return BlockSymplectic::make(a, b);
}

HalfspaceMembership halfspace_membership(const CMatrix& z, const Tolerances& tol) {
  require_square(z.rows(), z.cols(), "half-space point");
  HalfspaceMembership m;
  m.symmetric = max_abs(CMatrix(z - z.transpose()));
  const CMatrix im = (z - z.conjugate()) / (2.0 * I);
  m.imag_min = z.rows() == 0 ? 0.0 : min_hermitian_eigenvalue(im);
  m.member = m.symmetric <= tol.eq * std::max(1.0, max_abs(z)) && m.imag_min > tol.spd;
  return m;
}

UpperHalfPoint UpperHalfPoint::make(const CMatrix& z, const Tolerances& tol) {
  require_finite(z, "half-space point");
  HalfspaceMembership m = halfspace_membership(z, tol);
  if (!m.member) {
    std::ostringstream os;
    os << "symmetry residual " << m.symmetric << ", Im Z minimal eigenvalue " << m.imag_min;
    throw Error(ErrorKind::NotUpperHalf, os.str());
  }
  return UpperHalfPoint(z);
}

SiegelPoint graph_operator(const Frame& w, const EigenSplit& split, const Tolerances& tol) {
  if (w.ambient_dim() != split.space().dim() || w.rank() != split.n()) {
    throw Error(ErrorKind::DimensionMismatch, "graph_operator: frame does not match split");
  }
  const Index n = split.n();
  const CMatrix c = split.coordinates(w.matrix());
  const CMatrix cp = c.topRows(n);
  RVector s = singular_values(cp);
  if (!(s(n - 1) > 1e-10 * std::max(1.0, s(0)))) {
    throw Error(ErrorKind::ProjectionSingular, describe("σ_min(P⁺|_W)", s(n - 1)));
  }
  const CMatrix z = cp.transpose().partialPivLu().solve(CMatrix(c.bottomRows(n).transpose())).transpose();
  return SiegelPoint::make(z, tol);
}

Frame graph_frame(const SiegelPoint& z, const EigenSplit& split) {
  const Index n = split.n();
  if (z.n() != n) throw Error(ErrorKind::DimensionMismatch, "graph_frame: Z does not match split");
  CMatrix c(2 * n, n);
  c << CMatrix::Identity(n, n), z.Z();
  return Frame::from_columns(split.from_coordinates(c));
}

BlockSymplectic block_decompose(const RMatrix& u, const EigenSplit& split, const Tolerances& tol) {
  const CompatibleTriple& t = split.space().triple();
  GroupFlags f = group_membership(u, t, tol);
  if (!f.sp) throw Error(ErrorKind::NotSymplectic, describe("‖uᵀΩu − Ω‖", f.r_sp));
  const Index n = split.n();
  const CMatrix U = split.operator_coordinates(u.cast<cplx>());
  const CMatrix a = U.topLeftCorner(n, n);
  const CMatrix b = U.bottomLeftCorner(n, n);
  const double scale = std::max(1.0, max_abs(U));
  const double shape = std::max(max_abs(CMatrix(U.topRightCorner(n, n) - b.conjugate())),
                                max_abs(CMatrix(U.bottomRightCorner(n, n) - a.conjugate()))) /
                       scale;
  if (shape > kBlockTol) throw Error(ErrorKind::ShapeViolation, describe("conj-pairing residual", shape));
  return BlockSymplectic::make(a, b, tol);
}

BlockSymplectic symplectic_inverse(const BlockSymplectic& b) {
  return BlockSymplectic::make(b.a().adjoint(), -b.b().transpose());
}

CMatrix mobius_act_raw(const CMatrix& a, const CMatrix& b, const CMatrix& z) {
  require_blocks(a, b);
  if (z.rows() != a.rows() || z.cols() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "mobius_act: Z does not match blocks");
  }
  const CMatrix den = a + b.conjugate() * z;
  const RVector s = singular_values(den);
  const double scale = std::max(s.size() ? s(0) : 0.0, op_norm(a));
  const double smin = s.size() ? s(s.size() - 1) : 1.0;
  if (!(smin > kSingularRel * scale)) {
    throw Error(ErrorKind::NumericallySingular, describe("σ_min(a + conj(b) Z)", smin));
  }
  const CMatrix num = b + a.conjugate() * z;
  // num · den⁻¹ via the transposed system.
  return den.transpose().partialPivLu().solve(CMatrix(num.transpose())).transpose();
}

SiegelPoint mobius_act(const BlockSymplectic& b, const SiegelPoint& z, const Tolerances& tol) {
  return SiegelPoint::make(mobius_act_raw(b.a(), b.b(), z.Z()), tol);
}

BlockSymplectic sp_from_siegel_point(const SiegelPoint& z) {
  const Index n = z.n();
  const CMatrix a = inverse_sqrt_hermitian(CMatrix::Identity(n, n) - z.Z().adjoint() * z.Z());
  return BlockSymplectic::make(a, z.Z() * a);
}

RestrictedCharacter restricted_character(const BlockSymplectic& blk) {
  const Index n = blk.n();
  const CMatrix& a = blk.a();
  const CMatrix& b = blk.b();
  CVector phase(2 * n);
  phase.head(n).setConstant(I);
  phase.tail(n).setConstant(-I);
  const CMatrix J = phase.asDiagonal();
  const CMatrix u = blk.assemble();
  const CMatrix direct = u.partialPivLu().solve(CMatrix(J * u)) - J;

  const CMatrix bb = b.adjoint() * b;
  CMatrix closed(2 * n, 2 * n);
  closed << bb, b.adjoint() * a.conjugate(), -b.transpose() * a, -bb.conjugate();
  closed *= 2.0 * I;

  RestrictedCharacter rc;
  rc.hs_b = hs_norm(b);
  rc.hs_Jdef = hs_norm(direct);
  rc.hs_Jdef_closed = hs_norm(closed);
  rc.closed_residual = max_abs(CMatrix(direct - closed));
  return rc;
}

UpperHalfPoint disk_to_halfspace(const SiegelPoint& z, const Tolerances& tol) {
  const Index n = z.n();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix den = id - z.Z();
  RVector s = singular_values(den);
  if (n > 0 && !(s(n - 1) > tol.spd)) {
    throw Error(ErrorKind::BoundaryContact, describe("σ_min(I − Z)", s(n - 1)));
  }
  // (I + Z)(I − Z)⁻¹; the two factors commute so either order is exact.
  const CMatrix zh = I * den.partialPivLu().solve(CMatrix(id + z.Z()));
  return UpperHalfPoint::make(zh, tol);
}

}  // namespace polargrass
