#pragma once

// Complexification of a compatible triple and polarizations W⁺ ⊕ α(W⁺).
//
// α is entrywise conjugation in the distinguished real basis, so αXα for an
// operator X is conj(X). Pairings on C^{2n}:
//   g(v, w) = vᵀ G conj(w)   (sesquilinear)
//   ω(v, w) = vᵀ Ω w         (bilinear)

#include <cstdint>

#include "polargrass/triples.hpp"

namespace polargrass {

class ComplexifiedSpace {
 public:
  const CompatibleTriple& triple() const noexcept { return t_; }
  Index dim() const noexcept { return t_.dim(); }
  Index n() const noexcept { return t_.n(); }

  /// Complex extensions of G, Ω and J.
  const CMatrix& g_sesq() const noexcept { return g_; }
  const CMatrix& omega_bilin() const noexcept { return w_; }
  const CMatrix& J() const noexcept { return j_; }

  cplx g(const CVector& v, const CVector& w) const;
  cplx omega(const CVector& v, const CVector& w) const;
  static CMatrix alpha(const CMatrix& x) { return x.conjugate(); }

  /// Columns re-orthonormalized for g (Cholesky of the Gram matrix).
  CMatrix g_orthonormalize(const CMatrix& columns) const;

  /// Max over residuals of g(v,w) = ω(v,Jαw), ω(v,w) = g(Jv,αw),
  /// g(αv,αw) = conj g(v,w) on `samples` seeded random vector pairs.
  double extended_identity_residual(int samples, std::uint64_t seed) const;

  friend ComplexifiedSpace complexify(const CompatibleTriple& t, const Tolerances& tol);

 private:
  explicit ComplexifiedSpace(CompatibleTriple t);
  CompatibleTriple t_;
  CMatrix g_, w_, j_;
};

/// Builds H_C and checks the extended identities on 20 fixed-seed random
/// vectors (residual ≤ 1e-9 relative). Rejects n = 0.
ComplexifiedSpace complexify(const CompatibleTriple& t, const Tolerances& tol = {});

/// L⁺ = ker(J − i), L⁻ = ker(J + i) = α(L⁺).
///
/// The frames are g-orthonormal (f_jᵀ G conj f_k = δ_jk), which coincides with
/// standard orthonormality when G = I. Column k of minus() is conj of column k
/// of plus(). basis() = [plus | minus] satisfies basisᴴ G basis = I, so
/// coordinates are basisᴴ G x.
class EigenSplit {
 public:
  /// Uses `plus` (columns spanning L⁺) after g-orthonormalizing them.
  /// Throws EigenspaceDimension if the columns are not an L⁺ frame.
  static EigenSplit from_plus(const ComplexifiedSpace& space, const CMatrix& plus,
                              const Tolerances& tol = {});

  const ComplexifiedSpace& space() const noexcept { return space_; }
  Index n() const noexcept { return plus_.cols(); }
  const CMatrix& plus() const noexcept { return plus_; }
  CMatrix minus() const { return plus_.conjugate(); }
  CMatrix basis() const;

  /// Frames for the standard Hermitian pairing; for subspace comparisons.
  Frame plus_frame() const { return Frame::from_columns(plus_); }
  Frame minus_frame() const { return Frame::from_columns(minus()); }

  /// [x⁺; x⁻] with x = plus x⁺ + minus x⁻.
  CMatrix coordinates(const CMatrix& x) const;
  CMatrix from_coordinates(const CMatrix& c) const;

  /// Operator u on C^{2n} written in the paired basis.
  CMatrix operator_coordinates(const CMatrix& u) const;

 private:
  EigenSplit(ComplexifiedSpace space, CMatrix plus) : space_(std::move(space)), plus_(std::move(plus)) {}
  ComplexifiedSpace space_;
  CMatrix plus_;
};

/// Eigen-decomposition of the Hermitian i·G^{1/2} J G^{-1/2}. Throws
/// EigenspaceDimension when either eigenspace is not n-dimensional.
EigenSplit eigensplit(const ComplexifiedSpace& space, const Tolerances& tol = {});

class OrthogonalPolarization {
 public:
  /// Checks g(W⁺, αW⁺) = 0 and W⁺ + αW⁺ = H_C. Throws
  /// NotOrthogonalPolarization.
  static OrthogonalPolarization make(const ComplexifiedSpace& space, const Frame& wplus,
                                     const Tolerances& tol = {});
  const Frame& wplus() const noexcept { return w_; }
  double orthogonality_residual() const noexcept { return r_orth_; }

 private:
  OrthogonalPolarization(Frame w, double r) : w_(std::move(w)), r_orth_(r) {}
  Frame w_;
  double r_orth_;
};

class PositiveSymplecticPolarization {
 public:
  /// Throws NotLagrangian (isotropy), NotComplementary (spanning) or
  /// NotPositive (−iω(w_j, αw_k) not positive definite).
  static PositiveSymplecticPolarization make(const ComplexifiedSpace& space, const Frame& wplus,
                                             const Tolerances& tol = {});
  const Frame& wplus() const noexcept { return w_; }
  double isotropy_residual() const noexcept { return r_iso_; }
  double positivity_min() const noexcept { return pos_min_; }

 private:
  PositiveSymplecticPolarization(Frame w, double r, double p)
      : w_(std::move(w)), r_iso_(r), pos_min_(p) {}
  Frame w_;
  double r_iso_;
  double pos_min_;
};

/// Residuals of the positive symplectic invariants without throwing.
struct SymplecticPolarizationReport {
  double isotropy = 0.0;
  double positivity_min = 0.0;
  Index span_rank = 0;
};
SymplecticPolarizationReport symplectic_polarization_report(const ComplexifiedSpace& space,
                                                            const CMatrix& wplus);

/// J_W = i(P⁺ − P⁻) with P⁻ the g-orthogonal complement projector,
/// ω_W = J_Wᵀ G. Throws NotRealizable when J_W is not real, i.e. the
/// complement is not α(W⁺).
CompatibleTriple triple_from_orthogonal(const ComplexifiedSpace& space, const Frame& wplus,
                                        const Tolerances& tol = {});
CompatibleTriple triple_from_orthogonal(const ComplexifiedSpace& space,
                                        const OrthogonalPolarization& pol,
                                        const Tolerances& tol = {});

/// J_W from the splitting W⁺ ⊕ αW⁺, g_W = Ω J_W. Validates the positive
/// symplectic invariants first.
CompatibleTriple triple_from_positive_symplectic(const ComplexifiedSpace& space,
                                                 const Frame& wplus, const Tolerances& tol = {});

/// Ψ(v) = (v − iJv)/√2 in L⁺ coordinates.
CVector hermitian_model(const EigenSplit& split, const RVector& v);

/// HS norm (g metric) of the projection of W1 onto α(W2) along W2.
/// Throws NotComplementary if W2 + α(W2) does not span.
double hs_projection_norm(const Frame& w1, const Frame& w2, const ComplexifiedSpace& space);

}  // namespace polargrass
