#pragma once

// Compatible triples (g, J, ω) on R^{2n}.
//
// Pairings are ψ(v, w) = vᵀ M w. With the musical maps v ↦ ψ(v, ·) the
// compatibility g(v, w) = ω(v, Jw) reads, in matrix form,
//   G = Ω J,   Ω = Jᵀ G,   J = G⁻¹ Ωᵀ.

#include "polargrass/numeric.hpp"

namespace polargrass {

enum class FormKind { Symmetric, Antisymmetric };

const char* form_kind_name(FormKind kind);

class BilinearForm {
 public:
  /// Validates (anti)symmetry relative to max(1, ‖M‖) and strongness
  /// (σ_min > spd_tol). Throws NotSymmetric / NotAntisymmetric / NotStrong.
  static BilinearForm symmetric(const RMatrix& m, const Tolerances& tol = {});
  static BilinearForm antisymmetric(const RMatrix& m, const Tolerances& tol = {});

  FormKind kind() const noexcept { return kind_; }
  const RMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }
  double operator()(const RVector& v, const RVector& w) const { return v.dot(m_ * w); }

  /// Smallest singular value; the strongness certificate.
  double strength() const;

 private:
  BilinearForm(FormKind kind, RMatrix m) : kind_(kind), m_(std::move(m)) {}
  FormKind kind_;
  RMatrix m_;
};

class ComplexStructure {
 public:
  /// Throws NotAComplexStructure if ‖J² + I‖ > eq_tol (relative).
  static ComplexStructure make(const RMatrix& j, const Tolerances& tol = {});

  const RMatrix& matrix() const noexcept { return j_; }
  Index dim() const noexcept { return j_.rows(); }

 private:
  explicit ComplexStructure(RMatrix j) : j_(std::move(j)) {}
  RMatrix j_;
};

struct TripleReport {
  bool compatible = false;
  double r_g = 0.0;      // G = Ω J
  double r_omega = 0.0;  // Ω = Jᵀ G
  double r_J = 0.0;      // J = G⁻¹ Ωᵀ
  double max() const;
};

class CompatibleTriple {
 public:
  /// Throws NotPositive if g is not positive definite, NotCompatible if the
  /// identities fail at eq_tol.
  static CompatibleTriple make(const BilinearForm& g, const ComplexStructure& J,
                               const BilinearForm& omega, const Tolerances& tol = {});

  const BilinearForm& g() const noexcept { return g_; }
  const ComplexStructure& J() const noexcept { return j_; }
  const BilinearForm& omega() const noexcept { return omega_; }
  const RMatrix& G() const noexcept { return g_.matrix(); }
  const RMatrix& Jm() const noexcept { return j_.matrix(); }
  const RMatrix& Omega() const noexcept { return omega_.matrix(); }

  Index dim() const noexcept { return g_.dim(); }
  Index n() const noexcept { return g_.dim() / 2; }

 private:
  CompatibleTriple(BilinearForm g, ComplexStructure j, BilinearForm omega)
      : g_(std::move(g)), j_(std::move(j)), omega_(std::move(omega)) {}
  BilinearForm g_;
  ComplexStructure j_;
  BilinearForm omega_;
};

/// Residual of each identity, measured as max-entry difference relative to
/// max(1, max-entry of the left side). Throws DimensionMismatch.
TripleReport verify_triple(const BilinearForm& g, const ComplexStructure& J,
                           const BilinearForm& omega, const Tolerances& tol = {});
TripleReport verify_triple(const CompatibleTriple& t, const Tolerances& tol = {});

/// Ω := Jᵀ G. Throws NotSkewAdjoint when ‖GJ + JᵀG‖ > eq_tol.
CompatibleTriple complete_from_g_J(const BilinearForm& g, const ComplexStructure& J,
                                   const Tolerances& tol = {});

/// J := G⁻¹ Ωᵀ. Throws NotAComplexStructure when J² ≠ −I.
CompatibleTriple complete_from_g_omega(const BilinearForm& g, const BilinearForm& omega,
                                       const Tolerances& tol = {});

/// G := Ω J. Throws NotSkewSymmetric when JᵀΩ ≠ −ΩJ and NotPositive, with the
/// offending eigenvalue in the message, when G is not positive definite.
CompatibleTriple complete_from_J_omega(const ComplexStructure& J, const BilinearForm& omega,
                                       const Tolerances& tol = {});

/// Smallest eigenvalue of the candidate G = ΩJ; negative for the (−J, Ω) case.
double j_omega_min_eigenvalue(const ComplexStructure& J, const BilinearForm& omega);

/// (u⁻ᵀGu⁻¹, uJu⁻¹, u⁻ᵀΩu⁻¹). Throws SingularTransform.
CompatibleTriple pullback_triple(const RMatrix& u, const CompatibleTriple& t,
                                 const Tolerances& tol = {});

struct GroupFlags {
  bool gl = false;
  bool o = false;
  bool sp = false;
  bool unitary = false;
  bool commutes_J = false;
  double r_o = 0.0;
  double r_sp = 0.0;
  double r_J = 0.0;
};

GroupFlags group_membership(const RMatrix& u, const CompatibleTriple& t,
                            const Tolerances& tol = {});

/// R^{2n} with coordinates (x_1, y_1, ..., x_n, y_n): G = I,
/// J x_k = y_k, ω(x_k, y_k) = 1.
CompatibleTriple standard_triple(Index n);

/// Relative max-entry residual used throughout: ‖a − b‖_max / max(1, ‖a‖_max).
double relative_residual(const RMatrix& a, const RMatrix& b);
double relative_residual(const CMatrix& a, const CMatrix& b);

}  // namespace polargrass
