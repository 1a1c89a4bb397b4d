#include "polargrass/polarization.hpp"

#include <cmath>
#include <sstream>

#include "polargrass/random.hpp"

namespace polargrass {

namespace {

constexpr double kRankTol = 1e-8;
const cplx I(0.0, 1.0);

std::string describe(const char* what, double r) {
  std::ostringstream os;
  os << what << " " << r;
  return os.str();
}

void require_frame_dim(const ComplexifiedSpace& space, const CMatrix& f, const char* what) {
  if (f.rows() != space.dim()) {
    std::ostringstream os;
    os << what << ": frame ambient dimension " << f.rows() << " vs space " << space.dim();
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
}

double g_scale(const ComplexifiedSpace& space) {
  return std::max(1.0, max_abs(space.g_sesq()));
}

}  // namespace

ComplexifiedSpace::ComplexifiedSpace(CompatibleTriple t)
    : t_(std::move(t)),
      g_(t_.G().cast<cplx>()),
      w_(t_.Omega().cast<cplx>()),
      j_(t_.Jm().cast<cplx>()) {}

cplx ComplexifiedSpace::g(const CVector& v, const CVector& w) const {
  return v.transpose() * g_ * w.conjugate();
}

cplx ComplexifiedSpace::omega(const CVector& v, const CVector& w) const {
  return v.transpose() * w_ * w;
}

CMatrix ComplexifiedSpace::g_orthonormalize(const CMatrix& columns) const {
  const CMatrix gram = columns.adjoint() * g_ * columns;
  Eigen::LLT<CMatrix> llt(0.5 * (gram + gram.adjoint()));
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::RankDeficient, "columns are not independent");
  }
  // X L^{-*}: solve L Yᵀ-style via the triangular view on the adjoint.
  CMatrix lt = llt.matrixU();
  return lt.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(columns);
}

double ComplexifiedSpace::extended_identity_residual(int samples, std::uint64_t seed) const {
  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    CVector v = random_complex(rng, dim(), 1);
    CVector w = random_complex(rng, dim(), 1);
    const cplx gvw = g(v, w);
    const double scale = std::max(1.0, std::abs(gvw));
    worst = std::max(worst, std::abs(gvw - omega(v, j_ * alpha(w))) / scale);
    const cplx wvw = omega(v, w);
    worst = std::max(worst, std::abs(wvw - g(j_ * v, alpha(w))) / std::max(1.0, std::abs(wvw)));
    worst = std::max(worst, std::abs(g(alpha(v), alpha(w)) - std::conj(gvw)) / scale);
  }
  return worst;
}

ComplexifiedSpace complexify(const CompatibleTriple& t, const Tolerances& tol) {
  if (t.n() < 1) throw Error(ErrorKind::InvalidArgument, "cannot complexify a zero space");
  ComplexifiedSpace space(t);
  const double r = space.extended_identity_residual(20, 0x5eed0001ULL);
  if (r > std::max(1e-9, tol.eq)) {
    throw Error(ErrorKind::NotCompatible, describe("extended identity residual", r));
  }
  return space;
}

CMatrix EigenSplit::basis() const {
  CMatrix b(plus_.rows(), 2 * plus_.cols());
  b << plus_, plus_.conjugate();
  return b;
}

CMatrix EigenSplit::coordinates(const CMatrix& x) const {
  return basis().adjoint() * space_.g_sesq() * x;
}

CMatrix EigenSplit::from_coordinates(const CMatrix& c) const { return basis() * c; }

CMatrix EigenSplit::operator_coordinates(const CMatrix& u) const {
  const CMatrix b = basis();
  return b.adjoint() * space_.g_sesq() * u * b;
}

EigenSplit EigenSplit::from_plus(const ComplexifiedSpace& space, const CMatrix& plus,
                                 const Tolerances& tol) {
  require_frame_dim(space, plus, "eigensplit");
  if (plus.cols() != space.n() || numerical_rank(plus, kRankTol) != space.n()) {
    throw Error(ErrorKind::EigenspaceDimension, "L⁺ frame must have rank n");
  }
  const double r = relative_residual(CMatrix(space.J() * plus), CMatrix(I * plus));
  if (r > std::max(tol.eq, 1e-9)) {
    throw Error(ErrorKind::EigenspaceDimension, describe("‖J f − i f‖", r));
  }
  return EigenSplit(space, space.g_orthonormalize(plus));
}

EigenSplit eigensplit(const ComplexifiedSpace& space, const Tolerances& tol) {
  const Index n = space.n();
  const CMatrix R = sqrt_hermitian(space.g_sesq());
  const CMatrix Ri = inverse_sqrt_hermitian(space.g_sesq());
  CMatrix H = I * (R * space.J() * Ri);
  H = 0.5 * (H + H.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(H);
  const RVector& ev = es.eigenvalues();
  Index neg = 0;
  for (Index k = 0; k < ev.size(); ++k) {
    if (ev(k) < 0.0) ++neg;
  }
  if (neg != n) {
    std::ostringstream os;
    os << "ker(J − i) has dimension " << neg << ", expected " << n;
    throw Error(ErrorKind::EigenspaceDimension, os.str());
  }
  // J v = i v  <=>  (iJ) v = −v: the negative half of the spectrum.
  CMatrix plus = Ri * es.eigenvectors().leftCols(n);
  return EigenSplit::from_plus(space, plus, tol);
}

OrthogonalPolarization OrthogonalPolarization::make(const ComplexifiedSpace& space,
                                                    const Frame& wplus, const Tolerances& tol) {
  const CMatrix& f = wplus.matrix();
  require_frame_dim(space, f, "orthogonal polarization");
  if (wplus.rank() != space.n()) {
    throw Error(ErrorKind::NotOrthogonalPolarization, "W⁺ must have rank n");
  }
  const double r = max_abs(CMatrix(f.transpose() * space.g_sesq() * f)) / g_scale(space);
  if (r > std::max(tol.eq, 1e-9)) {
    throw Error(ErrorKind::NotOrthogonalPolarization, describe("g(W⁺, αW⁺) residual", r));
  }
  CMatrix both(f.rows(), 2 * f.cols());
  both << f, f.conjugate();
  if (numerical_rank(both, kRankTol) != space.dim()) {
    throw Error(ErrorKind::NotOrthogonalPolarization, "W⁺ and αW⁺ do not span");
  }
  return OrthogonalPolarization(wplus, r);
}

SymplecticPolarizationReport symplectic_polarization_report(const ComplexifiedSpace& space,
                                                            const CMatrix& f) {
  require_frame_dim(space, f, "symplectic polarization");
  SymplecticPolarizationReport rep;
  const CMatrix& W = space.omega_bilin();
  rep.isotropy = max_abs(CMatrix(f.transpose() * W * f)) / std::max(1.0, max_abs(W));
  const CMatrix pos = -I * (f.transpose() * W * f.conjugate());
  rep.positivity_min = min_hermitian_eigenvalue(pos);
  CMatrix both(f.rows(), 2 * f.cols());
  both << f, f.conjugate();
  rep.span_rank = numerical_rank(both, kRankTol);
  return rep;
}

PositiveSymplecticPolarization PositiveSymplecticPolarization::make(const ComplexifiedSpace& space,
                                                                    const Frame& wplus,
                                                                    const Tolerances& tol) {
  if (wplus.rank() != space.n()) throw Error(ErrorKind::NotLagrangian, "W⁺ must have rank n");
  SymplecticPolarizationReport rep = symplectic_polarization_report(space, wplus.matrix());
  if (rep.isotropy > std::max(tol.eq, 1e-9)) {
    throw Error(ErrorKind::NotLagrangian, describe("ω(W⁺, W⁺) residual", rep.isotropy));
  }
  if (rep.span_rank != space.dim()) {
    throw Error(ErrorKind::NotComplementary, "W⁺ and αW⁺ do not span");
  }
  if (!(rep.positivity_min > tol.spd)) {
    throw Error(ErrorKind::NotPositive, describe("−iω(w, αw) minimal eigenvalue", rep.positivity_min));
  }
  return PositiveSymplecticPolarization(wplus, rep.isotropy, rep.positivity_min);
}

CompatibleTriple triple_from_orthogonal(const ComplexifiedSpace& space, const Frame& wplus,
                                        const Tolerances& tol) {
  require_frame_dim(space, wplus.matrix(), "triple_from_orthogonal");
  if (wplus.rank() != space.n()) throw Error(ErrorKind::NotRealizable, "W⁺ must have rank n");
  const CMatrix fg = space.g_orthonormalize(wplus.matrix());
  const CMatrix pplus = fg * fg.adjoint() * space.g_sesq();
  const Index d = space.dim();
  const CMatrix jw = I * (2.0 * pplus - CMatrix::Identity(d, d));
  const double r = max_abs(RMatrix(jw.imag())) / std::max(1.0, max_abs(jw));
  if (r > tol.eq) throw Error(ErrorKind::NotRealizable, describe("‖[α, J_W]‖", r));
  const RMatrix J = jw.real();
  const RMatrix W = J.transpose() * space.triple().G();
  return CompatibleTriple::make(space.triple().g(), ComplexStructure::make(J, tol),
                                BilinearForm::antisymmetric(0.5 * (W - W.transpose()), tol), tol);
}

CompatibleTriple triple_from_orthogonal(const ComplexifiedSpace& space,
                                        const OrthogonalPolarization& pol, const Tolerances& tol) {
  return triple_from_orthogonal(space, pol.wplus(), tol);
}

CompatibleTriple triple_from_positive_symplectic(const ComplexifiedSpace& space,
                                                 const Frame& wplus, const Tolerances& tol) {
  PositiveSymplecticPolarization::make(space, wplus, tol);
  const CMatrix& f = wplus.matrix();
  const Index n = space.n();
  CMatrix m(f.rows(), 2 * n);
  m << f, f.conjugate();
  CVector phase(2 * n);
  phase.head(n).setConstant(I);
  phase.tail(n).setConstant(-I);
  const CMatrix jw = m * phase.asDiagonal() * m.partialPivLu().inverse();
  const double r = max_abs(RMatrix(jw.imag())) / std::max(1.0, max_abs(jw));
  if (r > tol.eq) throw Error(ErrorKind::NotRealizable, describe("‖[α, J_W]‖", r));
  const RMatrix J = jw.real();
  const RMatrix G = space.triple().Omega() * J;
  const RMatrix Gs = 0.5 * (G + G.transpose());
  const double lmin = min_hermitian_eigenvalue(Gs.cast<cplx>());
  if (!(lmin > tol.spd)) throw Error(ErrorKind::NotPositive, describe("g_W eigenvalue", lmin));
  return CompatibleTriple::make(BilinearForm::symmetric(Gs, tol), ComplexStructure::make(J, tol),
                                space.triple().omega(), tol);
}

CVector hermitian_model(const EigenSplit& split, const RVector& v) {
  const ComplexifiedSpace& s = split.space();
  const CVector vc = v.cast<cplx>();
  const CVector x = (vc - I * (s.J() * vc)) / std::sqrt(2.0);
  return split.plus().adjoint() * s.g_sesq() * x;
}

double hs_projection_norm(const Frame& w1, const Frame& w2, const ComplexifiedSpace& space) {
  require_frame_dim(space, w1.matrix(), "hs_projection_norm");
  require_frame_dim(space, w2.matrix(), "hs_projection_norm");
  const Index k = w2.rank();
  const CMatrix& f2 = w2.matrix();
  CMatrix m(f2.rows(), 2 * k);
  m << f2, f2.conjugate();
  if (m.cols() != space.dim() || numerical_rank(m, kRankTol) != space.dim()) {
    throw Error(ErrorKind::NotComplementary, "W2 and αW2 do not span");
  }
  const CMatrix f1 = space.g_orthonormalize(w1.matrix());
  const CMatrix coeff = m.partialPivLu().solve(f1);
  const CMatrix t = f2.conjugate() * coeff.bottomRows(k);
  const cplx tr = (t.adjoint() * space.g_sesq() * t).trace();
  return std::sqrt(std::max(0.0, tr.real()));
}

}  // namespace polargrass
