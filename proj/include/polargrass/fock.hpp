#pragma once

// Fermionic Fock representation of the Clifford algebra of (H_C, g) attached
// to an orthogonal polarization W⁺.
//
// Basis vectors are subsets of {1..n} stored as bitmasks (bit k−1 for w_k);
// creation w_k ∧ inserts with sign (−1)^{#elements below k}. CAR convention:
// π(v)π(w) + π(w)π(v) = g(v, αw)·1 with no factor 2.

#include <Eigen/SparseCore>
#include <vector>

#include "polargrass/polarization.hpp"

namespace polargrass {

using SparseC = Eigen::SparseMatrix<cplx>;

constexpr Index kFockMaxModes = 12;

class FockRep {
 public:
  Index n() const noexcept { return n_; }
  Index dim() const noexcept { return Index(1) << n_; }

  /// π(w_k), k = 0..n−1 (0-based).
  const SparseC& creation(Index k) const { return create_.at(static_cast<std::size_t>(k)); }
  SparseC annihilation(Index k) const { return creation(k).adjoint(); }

  /// g-orthonormal W⁺ frame used for the generators.
  const CMatrix& frame() const noexcept { return frame_; }
  const ComplexifiedSpace& space() const noexcept { return space_; }

  /// Linear extension along W⁺ ⊕ αW⁺.
  SparseC pi(const CVector& v) const;

  /// Generators w_1..w_n, αw_1..αw_n as columns.
  CMatrix generators() const;

  friend FockRep build_fock(const ComplexifiedSpace& space, const OrthogonalPolarization& pol);

 private:
  FockRep(ComplexifiedSpace space, CMatrix frame, std::vector<SparseC> create)
      : space_(std::move(space)), frame_(std::move(frame)), n_(frame_.cols()), create_(std::move(create)) {}
  ComplexifiedSpace space_;
  CMatrix frame_;
  Index n_;
  std::vector<SparseC> create_;
};

/// Throws DimensionGuard when n > 12.
FockRep build_fock(const ComplexifiedSpace& space, const OrthogonalPolarization& pol);

/// ‖π(v)π(w) + π(w)π(v) − g(v, αw)·1‖_max.
double car_check(const FockRep& rep, const CVector& v, const CVector& w);

/// Max CAR residual over all ordered pairs of generators.
double car_exhaustive(const FockRep& rep);

/// max_k ‖π(αw_k) − π(w_k)*‖_max with π(αw_k) from the linear extension.
double adjoint_residual(const FockRep& rep);

/// Rank of the vectors obtained by applying all creation monomials to the
/// vacuum.
Index vacuum_cyclicity_rank(const FockRep& rep);

/// Every nonzero of every creation matrix raises subset size by one.
bool grading_respected(const FockRep& rep);

struct EquivalenceCertificate {
  double hs_norm = 0.0;
  bool equivalent = true;
};

EquivalenceCertificate equivalence_certificate(const ComplexifiedSpace& space,
                                               const OrthogonalPolarization& pol1,
                                               const OrthogonalPolarization& pol2);

}  // namespace polargrass
