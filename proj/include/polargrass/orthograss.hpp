#pragma once

// Orthogonal polarizations: block structure of O(H), Fredholm index and the
// chart atlas {W_S}.
//
// Chart S uses the global paired basis with slots l ∈ S swapped: its W_S
// frame has column l equal to e_{-l} (l ∈ S) or e_l (l ∉ S), and its
// complement frame is the conjugate. The symmetric pairing g(x, αy) reads
// [[0, I], [I, 0]] in every such frame, so graphs of orthogonal polarizations
// are antisymmetric in every chart.

#include <set>
#include <vector>

#include "polargrass/polarization.hpp"

namespace polargrass {

class OrthoGraphOperator {
 public:
  /// Throws NotAntisymmetric when ‖Z + Zᵀ‖ > eq_tol.
  static OrthoGraphOperator make(const CMatrix& z, const Tolerances& tol = {});
  const CMatrix& Z() const noexcept { return z_; }
  Index n() const noexcept { return z_.rows(); }

 private:
  explicit OrthoGraphOperator(CMatrix z) : z_(std::move(z)) {}
  CMatrix z_;
};

/// Finite subset of {1..n}; slots are 1-based like the mode labels.
class ChartIndex {
 public:
  ChartIndex() = default;
  /// Throws InvalidChartIndex for entries outside {1..n} or duplicates.
  static ChartIndex make(const std::vector<int>& slots, Index n);

  const std::set<int>& slots() const noexcept { return s_; }
  bool contains(int l) const { return s_.count(l) != 0; }
  ChartIndex toggled(int l) const;
  std::vector<int> sorted() const { return {s_.begin(), s_.end()}; }
  bool operator==(const ChartIndex& o) const { return s_ == o.s_; }

 private:
  std::set<int> s_;
};

struct OrthoBlocks {
  CMatrix a, b, c, d;
};

struct OrthoBlockReport {
  OrthoBlocks blocks;
  double hs_b = 0.0;
  double hs_c = 0.0;
  double unitarity = 0.0;    // max of a*a + c*c − I and aa* + bb* − I
  double alpha_pair = 0.0;   // ‖conj(c) − b‖ and ‖conj(a) − d‖
  bool fredholm_a = false;
  Index index_a = 0;         // dim ker a − dim ker a*
};

/// Throws NotOrthogonal when uᵀGu ≠ G.
OrthoBlockReport ortho_block_check(const RMatrix& u, const EigenSplit& split,
                                   const Tolerances& tol = {});

struct FredholmIndex {
  Index dim_ker = 0;    // dim(W⁺ ∩ αL⁺)
  Index dim_coker = 0;  // dim(αW⁺ ∩ L⁺)
};

FredholmIndex fredholm_index(const Frame& w, const EigenSplit& split);

/// Basis [W_S frame | complement frame] for chart S.
CMatrix chart_basis(const ChartIndex& s, const EigenSplit& split);

/// Frame spanning W_S.
Frame chart_subspace(const ChartIndex& s, const EigenSplit& split);

/// Graph coordinate of W over W_S. Throws OutsideChart if W → W_S is not
/// invertible (σ_min ≤ 1e-10).
OrthoGraphOperator chart_coordinates(const ChartIndex& s, const Frame& w,
                                     const EigenSplit& split, const Tolerances& tol = {});

/// Frame spanning the graph of Z over W_S.
Frame chart_graph_frame(const ChartIndex& s, const CMatrix& z, const EigenSplit& split);

struct ChartResult {
  ChartIndex S;
  OrthoGraphOperator Z;
  std::vector<Index> kernel_dims;  // kernel dimension before each step; last is 0
  Index steps() const { return static_cast<Index>(kernel_dims.size()) - 1; }
};

/// Starts at S = ∅; while W → W_S has a kernel, takes a unit kernel vector,
/// picks the complement slot j of largest modulus and toggles j in S.
/// Throws NoPairing when every complement component is ≤ 1e-10 or the
/// descent does not terminate within n steps.
ChartResult find_chart(const Frame& w, const EigenSplit& split, const Tolerances& tol = {});

/// (a, b; c, d) = Π_{S2}ᵀ Π_{S1}: the identity between the two chart bases.
OrthoBlocks chart_change(const ChartIndex& s1, const ChartIndex& s2, Index n);

/// Z₂ = (c + dZ₁)(a + bZ₁)⁻¹. Throws OutsideChart if σ_min(a + bZ₁) ≤ 1e-10.
OrthoGraphOperator transition(const ChartIndex& s1, const ChartIndex& s2,
                              const OrthoGraphOperator& z1, const Tolerances& tol = {});

/// Analytic directional derivative [dW − Ψ(Z) bW](a + bZ)⁻¹.
CMatrix transition_derivative(const ChartIndex& s1, const ChartIndex& s2, const CMatrix& z1,
                              const CMatrix& w);

struct HolomorphyReport {
  double fd_error = 0.0;  // central difference vs analytic derivative
  double cr_error = 0.0;  // D along iW − i·(D along W), both by differences
  double residual() const { return std::max(fd_error, cr_error); }
};

/// Central differences with step h along an antisymmetric direction W.
HolomorphyReport holomorphy_check(const ChartIndex& s1, const ChartIndex& s2,
                                  const OrthoGraphOperator& z1, const CMatrix& w,
                                  double step = 1e-5, const Tolerances& tol = {});

/// fd_error(h/2) / fd_error(h); ≈ 1/4 for a second-order difference.
double holomorphy_step_ratio(const ChartIndex& s1, const ChartIndex& s2,
                             const OrthoGraphOperator& z1, const CMatrix& w, double step);

}  // namespace polargrass
