#include "polargrass/numeric.hpp"

#include <cmath>
#include <sstream>

namespace polargrass {

void Tolerances::validate() const {
  if (!(eq > 0.0) || !(spd > 0.0) || !(cr > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "tolerances must be strictly positive");
  }
}

const char* error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotAntisymmetric: return "NotAntisymmetric";
    case ErrorKind::NotStrong: return "NotStrong";
    case ErrorKind::NotAComplexStructure: return "NotAComplexStructure";
    case ErrorKind::NotSkewAdjoint: return "NotSkewAdjoint";
    case ErrorKind::NotCompatible: return "NotCompatible";
    case ErrorKind::NotSkewSymmetric: return "NotSkewSymmetric";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::SingularTransform: return "SingularTransform";
    case ErrorKind::EigenspaceDimension: return "EigenspaceDimension";
    case ErrorKind::NotRealizable: return "NotRealizable";
    case ErrorKind::NotLagrangian: return "NotLagrangian";
    case ErrorKind::NotComplementary: return "NotComplementary";
    case ErrorKind::NotOrthogonalPolarization: return "NotOrthogonalPolarization";
    case ErrorKind::ProjectionSingular: return "ProjectionSingular";
    case ErrorKind::NotContraction: return "NotContraction";
    case ErrorKind::NotSymplectic: return "NotSymplectic";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::ShapeViolation: return "ShapeViolation";
    case ErrorKind::NumericallySingular: return "NumericallySingular";
    case ErrorKind::BoundaryContact: return "BoundaryContact";
    case ErrorKind::NotUpperHalf: return "NotUpperHalf";
    case ErrorKind::OutsideChart: return "OutsideChart";
    case ErrorKind::NoPairing: return "NoPairing";
    case ErrorKind::InvalidChartIndex: return "InvalidChartIndex";
    case ErrorKind::NotIncreasing: return "NotIncreasing";
    case ErrorKind::NotPeriodic: return "NotPeriodic";
    case ErrorKind::BlockSingular: return "BlockSingular";
    case ErrorKind::DimensionGuard: return "DimensionGuard";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

void require_finite(const CMatrix& a, const char* what) {
  if (!a.allFinite()) throw Error(ErrorKind::NonFinite, std::string(what) + " has non-finite entries");
}

void require_finite(const RMatrix& a, const char* what) {
  if (!a.allFinite()) throw Error(ErrorKind::NonFinite, std::string(what) + " has non-finite entries");
}

void require_square(Index rows, Index cols, const char* what) {
  if (rows != cols) {
    std::ostringstream os;
    os << what << " must be square, got " << rows << "x" << cols;
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
}

double hs_norm(const CMatrix& a) { return a.norm(); }

double op_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  // Largest eigenvalue of A*A keeps the Hermitian kernel the only backend.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a.adjoint() * a, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double max_abs(const CMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }
double max_abs(const RMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double min_hermitian_eigenvalue(const CMatrix& a) {
  require_square(a.rows(), a.cols(), "matrix");
  CMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_positive_definite(const CMatrix& a, double tol) {
  require_square(a.rows(), a.cols(), "matrix");
  const double asym = max_abs(CMatrix(a - a.adjoint()));
  if (asym > tol) {
    std::ostringstream os;
    os << "‖A − A*‖ = " << asym;
    throw Error(ErrorKind::NonHermitian, os.str());
  }
  return min_hermitian_eigenvalue(a) > tol;
}

namespace {

CMatrix hermitian_power(const CMatrix& a, double power) {
  require_square(a.rows(), a.cols(), "matrix");
  require_finite(a, "matrix");
  CMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const RVector& ev = es.eigenvalues();
  if (ev.size() > 0 && !(ev.minCoeff() > 0.0)) {
    std::ostringstream os;
    os << "smallest eigenvalue " << ev.minCoeff();
    throw Error(ErrorKind::NotPositiveDefinite, os.str());
  }
  RVector p = ev.array().pow(power).matrix();
  return es.eigenvectors() * p.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

CMatrix inverse_sqrt_hermitian(const CMatrix& a) { return hermitian_power(a, -0.5); }
CMatrix sqrt_hermitian(const CMatrix& a) { return hermitian_power(a, 0.5); }

RVector singular_values(const CMatrix& a) {
  if (a.size() == 0) return RVector();
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues();
}

Index numerical_rank(const CMatrix& a, double rel_tol) {
  RVector s = singular_values(a);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * s(0)) ++r;
  }
  return r;
}

CMatrix null_space(const CMatrix& a, double rel_tol, double reference) {
  const Index cols = a.cols();
  if (a.rows() == 0) return CMatrix::Identity(cols, cols);
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  Index r = 0;
  const double top = std::max(s.size() > 0 ? s(0) : 0.0, reference);
  if (top > 0.0) {
    for (Index i = 0; i < s.size(); ++i) {
      if (s(i) > rel_tol * top) ++r;
    }
  }
  return svd.matrixV().rightCols(cols - r);
}

Frame Frame::from_columns(const CMatrix& columns, double rel_tol) {
  require_finite(columns, "frame columns");
  if (columns.cols() > columns.rows()) {
    throw Error(ErrorKind::RankDeficient, "more columns than ambient dimension");
  }
  const Index k = columns.cols();
  if (k > 0 && numerical_rank(columns, rel_tol) < k) {
    throw Error(ErrorKind::RankDeficient, "frame columns are linearly dependent");
  }
  Eigen::HouseholderQR<CMatrix> qr(columns);
  CMatrix q = qr.householderQ() * CMatrix::Identity(columns.rows(), k);
  return Frame(std::move(q));
}

double Frame::orthonormality_residual() const {
  return max_abs(CMatrix(q_.adjoint() * q_ - CMatrix::Identity(rank(), rank())));
}

double principal_angle_distance(const Frame& f1, const Frame& f2) {
  if (f1.ambient_dim() != f2.ambient_dim() || f1.rank() != f2.rank()) {
    std::ostringstream os;
    os << "frames " << f1.ambient_dim() << "x" << f1.rank() << " and " << f2.ambient_dim() << "x"
       << f2.rank();
    throw Error(ErrorKind::RankMismatch, os.str());
  }
  return op_norm(f1.projector() - f2.projector());
}

}  // namespace polargrass
