#include "polargrass/orthograss.hpp"

#include <sstream>

namespace polargrass {

namespace {

constexpr double kRankTol = 1e-8;
constexpr double kChartTol = 1e-10;
const cplx I(0.0, 1.0);

std::string describe(const char* what, double r) {
  std::ostringstream os;
  os << what << " " << r;
  return os.str();
}

// Π_S: column l−1 is the W_S slot, column n+l−1 its complement.
RMatrix chart_permutation(const ChartIndex& s, Index n) {
  RMatrix p = RMatrix::Zero(2 * n, 2 * n);
  for (Index k = 0; k < n; ++k) {
    const bool swap = s.contains(static_cast<int>(k + 1));
    p(swap ? n + k : k, k) = 1.0;
    p(swap ? k : n + k, n + k) = 1.0;
  }
  return p;
}

double sigma_min_rel(const CMatrix& m) {
  RVector s = singular_values(m);
  if (s.size() == 0) return 1.0;
  return s(s.size() - 1) / std::max(1.0, s(0));
}

CMatrix right_divide(const CMatrix& num, const CMatrix& den) {
  return den.transpose().partialPivLu().solve(CMatrix(num.transpose())).transpose();
}

CMatrix psi(const OrthoBlocks& q, const CMatrix& z) {
  return right_divide(q.c + q.d * z, q.a + q.b * z);
}

Index intersection_dim(const CMatrix& a, const CMatrix& b) {
  CMatrix both(a.rows(), a.cols() + b.cols());
  both << a, b;
  return numerical_rank(a, kRankTol) + numerical_rank(b, kRankTol) - numerical_rank(both, kRankTol);
}

}  // namespace

OrthoGraphOperator OrthoGraphOperator::make(const CMatrix& z, const Tolerances& tol) {
  require_square(z.rows(), z.cols(), "graph operator");
  require_finite(z, "graph operator");
  const double r = max_abs(CMatrix(z + z.transpose())) / std::max(1.0, max_abs(z));
  if (r > tol.eq) throw Error(ErrorKind::NotAntisymmetric, describe("‖Z + Zᵀ‖", r));
  return OrthoGraphOperator(z);
}

ChartIndex ChartIndex::make(const std::vector<int>& slots, Index n) {
  ChartIndex c;
  for (int l : slots) {
    if (l < 1 || l > n) {
      std::ostringstream os;
      os << "slot " << l << " outside 1.." << n;
      throw Error(ErrorKind::InvalidChartIndex, os.str());
    }
    if (!c.s_.insert(l).second) {
      throw Error(ErrorKind::InvalidChartIndex, "duplicate slot " + std::to_string(l));
    }
  }
  return c;
}

ChartIndex ChartIndex::toggled(int l) const {
  ChartIndex c = *this;
  if (!c.s_.erase(l)) c.s_.insert(l);
  return c;
}

OrthoBlockReport ortho_block_check(const RMatrix& u, const EigenSplit& split, const Tolerances& tol) {
  GroupFlags f = group_membership(u, split.space().triple(), tol);
  if (!f.o) throw Error(ErrorKind::NotOrthogonal, describe("‖uᵀGu − G‖", f.r_o));
  const Index n = split.n();
  const CMatrix U = split.operator_coordinates(u.cast<cplx>());
  OrthoBlockReport r;
  r.blocks = {U.topLeftCorner(n, n), U.topRightCorner(n, n), U.bottomLeftCorner(n, n),
              U.bottomRightCorner(n, n)};
  const OrthoBlocks& q = r.blocks;
  const CMatrix id = CMatrix::Identity(n, n);
  r.hs_b = hs_norm(q.b);
  r.hs_c = hs_norm(q.c);
  r.unitarity = std::max(max_abs(CMatrix(q.a.adjoint() * q.a + q.c.adjoint() * q.c - id)),
                         max_abs(CMatrix(q.a * q.a.adjoint() + q.b * q.b.adjoint() - id)));
  r.alpha_pair = std::max(max_abs(CMatrix(q.c.conjugate() - q.b)),
                          max_abs(CMatrix(q.a.conjugate() - q.d)));
  const Index ker_a = n - numerical_rank(q.a, kRankTol);
  const Index ker_as = n - numerical_rank(CMatrix(q.a.adjoint()), kRankTol);
  r.index_a = ker_a - ker_as;
  r.fredholm_a = true;
  return r;
}

FredholmIndex fredholm_index(const Frame& w, const EigenSplit& split) {
  if (w.ambient_dim() != split.space().dim()) {
    throw Error(ErrorKind::DimensionMismatch, "fredholm_index: frame does not match split");
  }
  FredholmIndex fi;
  fi.dim_ker = intersection_dim(w.matrix(), split.minus());
  fi.dim_coker = intersection_dim(CMatrix(w.matrix().conjugate()), split.plus());
  return fi;
}

CMatrix chart_basis(const ChartIndex& s, const EigenSplit& split) {
  return split.basis() * chart_permutation(s, split.n()).cast<cplx>();
}

Frame chart_subspace(const ChartIndex& s, const EigenSplit& split) {
  return Frame::from_columns(chart_basis(s, split).leftCols(split.n()));
}

OrthoGraphOperator chart_coordinates(const ChartIndex& s, const Frame& w, const EigenSplit& split,
                                     const Tolerances& tol) {
  const Index n = split.n();
  if (w.ambient_dim() != split.space().dim() || w.rank() != n) {
    throw Error(ErrorKind::DimensionMismatch, "chart_coordinates: frame does not match split");
  }
  const CMatrix c = chart_permutation(s, n).transpose().cast<cplx>() * split.coordinates(w.matrix());
  const CMatrix cp = c.topRows(n);
  const double smin = sigma_min_rel(cp);
  if (!(smin > kChartTol)) throw Error(ErrorKind::OutsideChart, describe("σ_min(W → W_S)", smin));
  return OrthoGraphOperator::make(right_divide(c.bottomRows(n), cp), tol);
}

Frame chart_graph_frame(const ChartIndex& s, const CMatrix& z, const EigenSplit& split) {
  const Index n = split.n();
  CMatrix c(2 * n, n);
  c << CMatrix::Identity(n, n), z;
  return Frame::from_columns(chart_basis(s, split) * c);
}

ChartResult find_chart(const Frame& w, const EigenSplit& split, const Tolerances& tol) {
  const Index n = split.n();
  if (w.ambient_dim() != split.space().dim() || w.rank() != n) {
    throw Error(ErrorKind::DimensionMismatch, "find_chart: frame does not match split");
  }
  const CMatrix coords = split.coordinates(w.matrix());
  // Kernel measured against the whole frame: a tiny block is not full rank.
  const double scale = op_norm(coords);
  ChartIndex s;
  std::vector<Index> dims;
  for (Index step = 0; step <= n; ++step) {
    const CMatrix c = chart_permutation(s, n).transpose().cast<cplx>() * coords;
    const CMatrix cp = c.topRows(n);
    const CMatrix ker = null_space(cp, kRankTol, scale);
    dims.push_back(ker.cols());
    if (ker.cols() == 0) {
      return {s, OrthoGraphOperator::make(right_divide(c.bottomRows(n), cp), tol), dims};
    }
    const CVector m = c.bottomRows(n) * ker.col(0);
    Index j = 0;
    const double mag = m.cwiseAbs().maxCoeff(&j);
    if (!(mag > 1e-10)) throw Error(ErrorKind::NoPairing, describe("largest pairing", mag));
    s = s.toggled(static_cast<int>(j + 1));
  }
  throw Error(ErrorKind::NoPairing, "kernel did not vanish within n steps");
}

OrthoBlocks chart_change(const ChartIndex& s1, const ChartIndex& s2, Index n) {
  const CMatrix m = (chart_permutation(s2, n).transpose() * chart_permutation(s1, n)).cast<cplx>();
  return {m.topLeftCorner(n, n), m.topRightCorner(n, n), m.bottomLeftCorner(n, n),
          m.bottomRightCorner(n, n)};
}

OrthoGraphOperator transition(const ChartIndex& s1, const ChartIndex& s2,
                              const OrthoGraphOperator& z1, const Tolerances& tol) {
  const OrthoBlocks q = chart_change(s1, s2, z1.n());
  const CMatrix den = q.a + q.b * z1.Z();
  const double smin = sigma_min_rel(den);
  if (!(smin > kChartTol)) throw Error(ErrorKind::OutsideChart, describe("σ_min(a + bZ₁)", smin));
  return OrthoGraphOperator::make(right_divide(q.c + q.d * z1.Z(), den), tol);
}

CMatrix transition_derivative(const ChartIndex& s1, const ChartIndex& s2, const CMatrix& z1,
                              const CMatrix& w) {
  const OrthoBlocks q = chart_change(s1, s2, z1.rows());
  const CMatrix den = q.a + q.b * z1;
  const CMatrix value = right_divide(q.c + q.d * z1, den);
  return right_divide(q.d * w - value * q.b * w, den);
}

HolomorphyReport holomorphy_check(const ChartIndex& s1, const ChartIndex& s2,
                                  const OrthoGraphOperator& z1, const CMatrix& w, double step,
                                  const Tolerances& tol) {
  if (w.rows() != z1.n() || w.cols() != z1.n()) {
    throw Error(ErrorKind::DimensionMismatch, "holomorphy_check: direction shape");
  }
  transition(s1, s2, z1, tol);  // domain check
  const OrthoBlocks q = chart_change(s1, s2, z1.n());
  const CMatrix& z = z1.Z();
  const double h = step;
  const CMatrix fd = (psi(q, z + h * w) - psi(q, z - h * w)) / (2.0 * h);
  const CMatrix fdi = (psi(q, z + (I * h) * w) - psi(q, z - (I * h) * w)) / (2.0 * h);
  HolomorphyReport r;
  r.fd_error = max_abs(CMatrix(fd - transition_derivative(s1, s2, z, w)));
  r.cr_error = max_abs(CMatrix(fdi - I * fd));
  return r;
}

double holomorphy_step_ratio(const ChartIndex& s1, const ChartIndex& s2,
                             const OrthoGraphOperator& z1, const CMatrix& w, double step) {
  const double e1 = holomorphy_check(s1, s2, z1, w, step).fd_error;
  const double e2 = holomorphy_check(s1, s2, z1, w, step / 2.0).fd_error;
  return e1 > 0.0 ? e2 / e1 : 0.0;
}

}  // namespace polargrass
