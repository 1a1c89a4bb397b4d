#include "polargrass/triples.hpp"

#include <sstream>

namespace polargrass {

namespace {

std::string fmt_residual(const char* what, double r) {
  std::ostringstream os;
  os << what << " residual " << r;
  return os.str();
}

void require_same_dim(Index a, Index b, const char* what) {
  if (a != b || a % 2 != 0) {
    std::ostringstream os;
    os << what << ": dimensions " << a << " and " << b << " (must agree and be even)";
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
}

RMatrix symmetrize(const RMatrix& m) { return 0.5 * (m + m.transpose()); }
RMatrix antisymmetrize(const RMatrix& m) { return 0.5 * (m - m.transpose()); }

bool singular(const RMatrix& m, double tol) {
  RVector s = singular_values(m.cast<cplx>());
  return s.size() == 0 || !(s(s.size() - 1) > tol * std::max(1.0, s(0)));
}

}  // namespace

double relative_residual(const RMatrix& a, const RMatrix& b) {
  return max_abs(RMatrix(a - b)) / std::max(1.0, max_abs(a));
}

double relative_residual(const CMatrix& a, const CMatrix& b) {
  return max_abs(CMatrix(a - b)) / std::max(1.0, max_abs(a));
}

const char* form_kind_name(FormKind kind) {
  return kind == FormKind::Symmetric ? "symmetric" : "antisymmetric";
}

BilinearForm BilinearForm::symmetric(const RMatrix& m, const Tolerances& tol) {
  require_finite(m, "symmetric form");
  require_square(m.rows(), m.cols(), "symmetric form");
  const double r = relative_residual(m, RMatrix(m.transpose()));
  if (r > tol.eq) throw Error(ErrorKind::NotSymmetric, fmt_residual("‖M − Mᵀ‖", r));
  BilinearForm f(FormKind::Symmetric, symmetrize(m));
  if (m.rows() > 0 && !(f.strength() > tol.spd)) {
    throw Error(ErrorKind::NotStrong, fmt_residual("smallest singular value", f.strength()));
  }
  return f;
}

BilinearForm BilinearForm::antisymmetric(const RMatrix& m, const Tolerances& tol) {
  require_finite(m, "antisymmetric form");
  require_square(m.rows(), m.cols(), "antisymmetric form");
  const double r = relative_residual(m, RMatrix(-m.transpose()));
  if (r > tol.eq) throw Error(ErrorKind::NotAntisymmetric, fmt_residual("‖M + Mᵀ‖", r));
  BilinearForm f(FormKind::Antisymmetric, antisymmetrize(m));
  if (m.rows() > 0 && !(f.strength() > tol.spd)) {
    throw Error(ErrorKind::NotStrong, fmt_residual("smallest singular value", f.strength()));
  }
  return f;
}

double BilinearForm::strength() const {
  RVector s = singular_values(m_.cast<cplx>());
  return s.size() == 0 ? 0.0 : s(s.size() - 1);
}

ComplexStructure ComplexStructure::make(const RMatrix& j, const Tolerances& tol) {
  require_finite(j, "complex structure");
  require_square(j.rows(), j.cols(), "complex structure");
  const RMatrix minus_id = -RMatrix::Identity(j.rows(), j.cols());
  const double r = relative_residual(RMatrix(j * j), minus_id);
  if (r > tol.eq) throw Error(ErrorKind::NotAComplexStructure, fmt_residual("‖J² + I‖", r));
  return ComplexStructure(j);
}

double TripleReport::max() const { return std::max({r_g, r_omega, r_J}); }

TripleReport verify_triple(const BilinearForm& g, const ComplexStructure& J,
                           const BilinearForm& omega, const Tolerances& tol) {
  require_same_dim(g.dim(), J.dim(), "verify_triple");
  require_same_dim(g.dim(), omega.dim(), "verify_triple");
  const RMatrix& G = g.matrix();
  const RMatrix& Jm = J.matrix();
  const RMatrix& W = omega.matrix();
  TripleReport rep;
  rep.r_g = relative_residual(G, RMatrix(W * Jm));
  rep.r_omega = relative_residual(W, RMatrix(Jm.transpose() * G));
  rep.r_J = relative_residual(Jm, RMatrix(G.llt().solve(RMatrix(W.transpose()))));
  rep.compatible = rep.max() <= tol.eq;
  return rep;
}

TripleReport verify_triple(const CompatibleTriple& t, const Tolerances& tol) {
  return verify_triple(t.g(), t.J(), t.omega(), tol);
}

CompatibleTriple CompatibleTriple::make(const BilinearForm& g, const ComplexStructure& J,
                                        const BilinearForm& omega, const Tolerances& tol) {
  if (g.kind() != FormKind::Symmetric || omega.kind() != FormKind::Antisymmetric) {
    throw Error(ErrorKind::InvalidArgument, "triple needs a symmetric g and antisymmetric ω");
  }
  const double lmin = min_hermitian_eigenvalue(g.matrix().cast<cplx>());
  if (!(lmin > tol.spd)) throw Error(ErrorKind::NotPositive, fmt_residual("g eigenvalue", lmin));
  TripleReport rep = verify_triple(g, J, omega, tol);
  if (!rep.compatible) throw Error(ErrorKind::NotCompatible, fmt_residual("identity", rep.max()));
  return CompatibleTriple(g, J, omega);
}

CompatibleTriple complete_from_g_J(const BilinearForm& g, const ComplexStructure& J,
                                   const Tolerances& tol) {
  require_same_dim(g.dim(), J.dim(), "complete_from_g_J");
  const RMatrix& G = g.matrix();
  const RMatrix& Jm = J.matrix();
  const RMatrix GJ = G * Jm;
  const double r = max_abs(RMatrix(GJ + GJ.transpose())) / std::max(1.0, max_abs(GJ));
  if (r > tol.eq) throw Error(ErrorKind::NotSkewAdjoint, fmt_residual("‖GJ + JᵀG‖", r));
  auto omega = BilinearForm::antisymmetric(Jm.transpose() * G, tol);
  return CompatibleTriple::make(g, J, omega, tol);
}

CompatibleTriple complete_from_g_omega(const BilinearForm& g, const BilinearForm& omega,
                                       const Tolerances& tol) {
  require_same_dim(g.dim(), omega.dim(), "complete_from_g_omega");
  const RMatrix Jm = g.matrix().lu().solve(RMatrix(omega.matrix().transpose()));
  const RMatrix minus_id = -RMatrix::Identity(Jm.rows(), Jm.cols());
  const double r = relative_residual(RMatrix(Jm * Jm), minus_id);
  if (r > tol.eq) throw Error(ErrorKind::NotAComplexStructure, fmt_residual("‖J² + I‖", r));
  return CompatibleTriple::make(g, ComplexStructure::make(Jm, tol), omega, tol);
}

double j_omega_min_eigenvalue(const ComplexStructure& J, const BilinearForm& omega) {
  const RMatrix G = omega.matrix() * J.matrix();
  return min_hermitian_eigenvalue(symmetrize(G).cast<cplx>());
}

CompatibleTriple complete_from_J_omega(const ComplexStructure& J, const BilinearForm& omega,
                                       const Tolerances& tol) {
  require_same_dim(J.dim(), omega.dim(), "complete_from_J_omega");
  const RMatrix& Jm = J.matrix();
  const RMatrix& W = omega.matrix();
  const RMatrix WJ = W * Jm;
  const double r = max_abs(RMatrix(Jm.transpose() * W + WJ)) / std::max(1.0, max_abs(WJ));
  if (r > tol.eq) throw Error(ErrorKind::NotSkewSymmetric, fmt_residual("‖JᵀΩ + ΩJ‖", r));
  const double lmin = j_omega_min_eigenvalue(J, omega);
  if (!(lmin > tol.spd)) {
    std::ostringstream os;
    os << "g(v, w) := ω(v, Jw) has minimal eigenvalue " << lmin;
    throw Error(ErrorKind::NotPositive, os.str());
  }
  return CompatibleTriple::make(BilinearForm::symmetric(WJ, tol), J, omega, tol);
}

CompatibleTriple pullback_triple(const RMatrix& u, const CompatibleTriple& t,
                                 const Tolerances& tol) {
  require_finite(u, "transform");
  if (u.rows() != t.dim() || u.cols() != t.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "transform does not match triple dimension");
  }
  if (singular(u, tol.spd)) throw Error(ErrorKind::SingularTransform, "u is not invertible");
  const RMatrix ui = u.lu().inverse();
  const RMatrix G = ui.transpose() * t.G() * ui;
  const RMatrix Jm = u * t.Jm() * ui;
  const RMatrix W = ui.transpose() * t.Omega() * ui;
  return CompatibleTriple::make(BilinearForm::symmetric(symmetrize(G), tol),
                                ComplexStructure::make(Jm, tol),
                                BilinearForm::antisymmetric(antisymmetrize(W), tol), tol);
}

GroupFlags group_membership(const RMatrix& u, const CompatibleTriple& t, const Tolerances& tol) {
  GroupFlags f;
  if (u.rows() != t.dim() || u.cols() != t.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "candidate does not match triple dimension");
  }
  if (!u.allFinite() || singular(u, tol.spd)) return f;
  f.gl = true;
  f.r_o = relative_residual(t.G(), RMatrix(u.transpose() * t.G() * u));
  f.r_sp = relative_residual(t.Omega(), RMatrix(u.transpose() * t.Omega() * u));
  f.r_J = relative_residual(RMatrix(u * t.Jm()), RMatrix(t.Jm() * u));
  f.o = f.r_o <= tol.eq;
  f.sp = f.r_sp <= tol.eq;
  f.unitary = f.o && f.sp;
  f.commutes_J = f.r_J <= tol.eq;
  return f;
}

CompatibleTriple standard_triple(Index n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "standard triple needs n ≥ 1");
  RMatrix J = RMatrix::Zero(2 * n, 2 * n);
  for (Index k = 0; k < n; ++k) {
    J(2 * k + 1, 2 * k) = 1.0;
    J(2 * k, 2 * k + 1) = -1.0;
  }
  const RMatrix G = RMatrix::Identity(2 * n, 2 * n);
  return CompatibleTriple::make(BilinearForm::symmetric(G), ComplexStructure::make(J),
                                BilinearForm::antisymmetric(J.transpose()));
}

}  // namespace polargrass
