#pragma once

// Dense real/complex matrix substrate shared by every other module.
//
// All subspaces are carried as orthonormal frames; every definiteness test,
// inverse square root and operator norm goes through a single Hermitian
// eigen-decomposition kernel.

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace polargrass {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Tolerance ladder: construction (spd), algebraic identities (eq) and
/// quadrature-contaminated quantities (cr).
struct Tolerances {
  double eq = 1e-10;
  double spd = 1e-12;
  double cr = 1e-6;

  void validate() const;
};

enum class ErrorKind {
  DimensionMismatch,
  NonFinite,
  NonHermitian,
  NotPositiveDefinite,
  RankMismatch,
  RankDeficient,
  NotSymmetric,
  NotAntisymmetric,
  NotStrong,
  NotAComplexStructure,
  NotSkewAdjoint,
  NotCompatible,
  NotSkewSymmetric,
  NotPositive,
  SingularTransform,
  EigenspaceDimension,
  NotRealizable,
  NotLagrangian,
  NotComplementary,
  NotOrthogonalPolarization,
  ProjectionSingular,
  NotContraction,
  NotSymplectic,
  NotOrthogonal,
  ShapeViolation,
  NumericallySingular,
  BoundaryContact,
  NotUpperHalf,
  OutsideChart,
  NoPairing,
  InvalidChartIndex,
  NotIncreasing,
  NotPeriodic,
  BlockSingular,
  DimensionGuard,
  InvalidArgument,
};

const char* error_name(ErrorKind kind);

/// Domain error carrying a stable name (used verbatim in CLI reports).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  const char* name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

void require_finite(const CMatrix& a, const char* what);
void require_finite(const RMatrix& a, const char* what);
void require_square(Index rows, Index cols, const char* what);

double hs_norm(const CMatrix& a);
double op_norm(const CMatrix& a);
double max_abs(const CMatrix& a);
double max_abs(const RMatrix& a);

/// Smallest eigenvalue of the Hermitian part (A + A*)/2.
double min_hermitian_eigenvalue(const CMatrix& a);

/// True iff the smallest eigenvalue of (A + A*)/2 exceeds `tol`.
/// Throws NonHermitian when ‖A − A*‖ > tol.
bool is_positive_definite(const CMatrix& a, double tol);

/// B Hermitian with B A B = I. Throws NotPositiveDefinite.
CMatrix inverse_sqrt_hermitian(const CMatrix& a);
CMatrix sqrt_hermitian(const CMatrix& a);

/// Singular values, descending.
RVector singular_values(const CMatrix& a);

/// Number of singular values above rel_tol * σ_max.
Index numerical_rank(const CMatrix& a, double rel_tol);

/// Orthonormal basis of the numerical null space (columns), rank decided
/// by singular values relative to max(largest, reference).
CMatrix null_space(const CMatrix& a, double rel_tol, double reference = 0.0);

/// Subspace of C^d carried by an orthonormal column frame.
class Frame {
 public:
  /// QR-orthonormalizes the columns; throws RankDeficient if they are not
  /// independent at `rel_tol` relative to the largest singular value.
  static Frame from_columns(const CMatrix& columns, double rel_tol = 1e-10);

  const CMatrix& matrix() const noexcept { return q_; }
  Index ambient_dim() const noexcept { return q_.rows(); }
  Index rank() const noexcept { return q_.cols(); }

  /// Orthogonal projector F F*.
  CMatrix projector() const { return q_ * q_.adjoint(); }

  /// Residual ‖F*F − I‖ (max entry).
  double orthonormality_residual() const;

 private:
  explicit Frame(CMatrix q) : q_(std::move(q)) {}
  CMatrix q_;
};

/// Operator norm of the difference of orthogonal projectors. Zero iff the
/// frames span the same subspace. Throws RankMismatch.
double principal_angle_distance(const Frame& f1, const Frame& f2);

}  // namespace polargrass
