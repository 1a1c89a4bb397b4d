#pragma once

// Truncated circle models.
//
// Boson model: modes n ∈ {−N..−1, 1..N}, real coordinates (p_m, q_m) per
// m = 1..N with a_m = (p_m + i q_m)/√2, a_{−m} = conj(a_m). Then
//   g = 2 Re Σ m a_m conj(b_m)  ->  G = diag(m, m)
//   ω = 2 Im Σ m a_m conj(b_m)  ->  Ω = m [[0, −1], [1, 0]]
// and the Hilbert transform a_m ↦ −i sgn(m) a_m is J = [[0, 1], [−1, 0]].
//
// Mode-basis matrices are 2N×2N with rows/columns ordered −N..−1, 1..N.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "polargrass/io.hpp"
#include "polargrass/siegel.hpp"

namespace polargrass {

class CircleDiffeo {
 public:
  /// Boundary map of z ↦ (z − a)/(1 − conj(a) z), |a| < 1.
  static CircleDiffeo mobius(cplx a);
  /// θ + Σ amp sin(kθ).
  static CircleDiffeo fourier_flow(std::vector<std::pair<int, double>> coeffs);
  static CircleDiffeo rotation(double delta);
  static CircleDiffeo identity();
  /// θ ↦ φ2(φ1(θ)).
  static CircleDiffeo compose(const CircleDiffeo& phi2, const CircleDiffeo& phi1);

  static CircleDiffeo from_json(const json& j);
  json to_json() const;

  double operator()(double theta) const { return f_(theta); }
  const std::string& description() const noexcept { return desc_; }

  /// Throws NotIncreasing / NotPeriodic on the K-point grid.
  void validate(Index K) const;

 private:
  CircleDiffeo(std::function<double(double)> f, std::string desc, json repr)
      : f_(std::move(f)), desc_(std::move(desc)), repr_(std::move(repr)) {}
  std::function<double(double)> f_;
  std::string desc_;
  json repr_;
};

/// Mode label of row/column index i in the (−N..−1, 1..N) ordering.
int mode_of_index(Index i, Index N);
Index index_of_mode(int m, Index N);

CompatibleTriple boson_triple(Index N);

/// Complexified mode vector e_m in real coordinates (C^{2N}).
CVector boson_mode_vector(int m, Index N);

/// L⁺ frame f_{−k} = e_{−k}/√k, k = 1..N.
EigenSplit boson_split(const ComplexifiedSpace& space);

/// ω(x, y) = −i Σ n x_n y_{−n} on mode-basis vectors.
cplx boson_omega_modes(const CVector& x, const CVector& y, Index N);

struct CompositionMatrix {
  CMatrix c;                  // mode basis, mean mode dropped
  bool aliasing_risk = false; // K < 8N
};

/// c_{mn} = (1/K) Σ_j e^{in φ(θ_j)} e^{−im θ_j}. Parallel over columns with a
/// fixed per-entry summation order, so the result does not depend on
/// `threads`. Throws NotIncreasing / NotPeriodic.
CompositionMatrix composition_operator(const CircleDiffeo& phi, Index N, Index K,
                                       unsigned threads = 0);

/// Blocks (a, b) of C_φ in the g-normalized paired frames: a maps L⁺ to
/// L⁺, b maps L⁺ to L⁻. Not checked for exact symplecticity.
struct CompositionBlocks {
  CMatrix a, b, u;  // u = D^{1/2} C D^{−1/2} reordered to [L⁺ | L⁻]
};
CompositionBlocks composition_blocks(const CMatrix& c, Index N);

struct GrunskyResult {
  CMatrix z_raw;               // b a⁻¹
  double symmetry = 0.0;       // ‖Z − Zᵀ‖_max
  double sigma_min_a = 0.0;
  SiegelPoint point;           // symmetrized
  bool aliasing_risk = false;
};

/// Throws BlockSingular if σ_min(a) ≤ 1e-8.
GrunskyResult grunsky(const CircleDiffeo& phi, Index N, Index K, unsigned threads = 0,
                      const Tolerances& tol = {});

/// Fermion model: N modes n = 0..N−1, coordinates (p_n, q_n), flat metric,
/// J = multiplication by i. This is the standard triple on R^{2N}.
CompatibleTriple fermion_triple(Index N);
OrthogonalPolarization fermion_polarization(const ComplexifiedSpace& space);

/// Rotation by `angle` in the real coordinate plane (i, j).
RMatrix plane_rotation(Index dim, Index i, Index j, double angle);

struct TorusPeriod {
  UpperHalfPoint Z;
  cplx a_period;   // ∫ over 0 → 1
  cplx b_period;   // ∫ over 0 → τ
  double hodge_residual = 0.0;  // |∗β + iβ| on dx, dy
};

/// Harmonic basis η₁ = dx − (Re τ/Im τ) dy, η₂ = dy/Im τ on C/(Z + τZ),
/// β = η₁ + τη₂. Throws NotUpperHalf when Im τ ≤ 0.
TorusPeriod torus_period(cplx tau, const Tolerances& tol = {});

}  // namespace polargrass
