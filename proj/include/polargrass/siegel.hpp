#pragma once

// Positive symplectic polarizations as the Siegel disk.
//
// Coordinates are taken in the α-paired frames of an EigenSplit, so the disk
// is {Z : Zᵀ = Z, 1 − Z*Z > 0} and u ∈ Sp has block form
//   [[a, conj b], [b, conj a]]
// acting by Z ↦ (b + conj(a) Z)(a + conj(b) Z)⁻¹.

#include "polargrass/polarization.hpp"

namespace polargrass {

struct SiegelMembership {
  double symmetric = 0.0;        // ‖Z − Zᵀ‖_max
  double contraction_min = 0.0;  // smallest eigenvalue of 1 − Z*Z
  bool member = false;
};

SiegelMembership siegel_membership(const CMatrix& z, const Tolerances& tol = {});

class SiegelPoint {
 public:
  /// Throws NotSymmetric or NotContraction.
  static SiegelPoint make(const CMatrix& z, const Tolerances& tol = {});
  const CMatrix& Z() const noexcept { return z_; }
  Index n() const noexcept { return z_.rows(); }

 private:
  explicit SiegelPoint(CMatrix z) : z_(std::move(z)) {}
  CMatrix z_;
};

class BlockSymplectic {
 public:
  /// Checks a*a − b*b = I and a* conj(b) = b* conj(a) within 1e-9 relative to
  /// max(1, ‖a*a‖). Throws NotSymplectic.
  static BlockSymplectic make(const CMatrix& a, const CMatrix& b, const Tolerances& tol = {});
  static BlockSymplectic identity(Index n);

  /// Diagonal boost: a = diag(cosh t_k), b = diag(sinh t_k).
  static BlockSymplectic boost(const RVector& t);

  const CMatrix& a() const noexcept { return a_; }
  const CMatrix& b() const noexcept { return b_; }
  Index n() const noexcept { return a_.rows(); }

  /// [[a, conj b], [b, conj a]].
  CMatrix assemble() const;

  /// The real operator on R^{2n} with these blocks in the split's frames.
  RMatrix to_real(const EigenSplit& split) const;

  double identity_residual() const;  // a*a − b*b − I
  double pairing_residual() const;   // a* conj b − b* conj a

 private:
  BlockSymplectic(CMatrix a, CMatrix b) : a_(std::move(a)), b_(std::move(b)) {}
  CMatrix a_, b_;
};

/// B2 ∘ B1.
BlockSymplectic compose(const BlockSymplectic& b2, const BlockSymplectic& b1);

class UpperHalfPoint {
 public:
  /// Throws NotUpperHalf unless Zᵀ = Z and Im Z is positive definite.
  static UpperHalfPoint make(const CMatrix& z, const Tolerances& tol = {});
  const CMatrix& Z() const noexcept { return z_; }

 private:
  explicit UpperHalfPoint(CMatrix z) : z_(std::move(z)) {}
  CMatrix z_;
};

struct HalfspaceMembership {
  double symmetric = 0.0;
  double imag_min = 0.0;  // smallest eigenvalue of Im Z = (Z − conj Z)/2i
  bool member = false;
};

HalfspaceMembership halfspace_membership(const CMatrix& z, const Tolerances& tol = {});

/// Z = P⁻(P⁺|_W)⁻¹ in paired coordinates. Throws ProjectionSingular when P⁺|_W
/// is not invertible, NotContraction / NotSymmetric when W is not positive.
SiegelPoint graph_operator(const Frame& w, const EigenSplit& split, const Tolerances& tol = {});

/// Orthonormal frame spanning {x + Zx : x ∈ L⁺}.
Frame graph_frame(const SiegelPoint& z, const EigenSplit& split);

/// Throws NotSymplectic if u ∉ Sp, ShapeViolation if the compressed operator
/// is not of the conj-paired shape.
BlockSymplectic block_decompose(const RMatrix& u, const EigenSplit& split,
                                const Tolerances& tol = {});

/// Blocks (a*, −bᵀ).
BlockSymplectic symplectic_inverse(const BlockSymplectic& b);

/// Throws NumericallySingular when σ_min(a + conj(b) Z) ≤ 1e-12 · max(‖a + conj(b) Z‖, ‖a‖).
SiegelPoint mobius_act(const BlockSymplectic& b, const SiegelPoint& z, const Tolerances& tol = {});

/// Same formula on raw blocks without membership checks; used for truncated
/// operators whose identities hold only to quadrature accuracy.
CMatrix mobius_act_raw(const CMatrix& a, const CMatrix& b, const CMatrix& z);

/// a = (1 − Z*Z)^{-1/2} (Hermitian positive), b = Z a; maps 0 to Z.
BlockSymplectic sp_from_siegel_point(const SiegelPoint& z);

struct RestrictedCharacter {
  double hs_b = 0.0;
  double hs_Jdef = 0.0;         // ‖u⁻¹Ju − J‖_HS from the assembled operator
  double hs_Jdef_closed = 0.0;  // same from the 2i[[b*b, ...]] block formula
  double closed_residual = 0.0; // max-entry difference of the two matrices
};

RestrictedCharacter restricted_character(const BlockSymplectic& b);

/// Z_H = i(I + Z)(I − Z)⁻¹. Throws BoundaryContact if I − Z is singular.
UpperHalfPoint disk_to_halfspace(const SiegelPoint& z, const Tolerances& tol = {});

}  // namespace polargrass
