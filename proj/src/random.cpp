#include "polargrass/random.hpp"

#include <cmath>

namespace polargrass {

RMatrix random_real(Rng& rng, Index rows, Index cols) {
  RMatrix a(rows, cols);
  for (Index k = 0; k < cols; ++k)
    for (Index i = 0; i < rows; ++i) a(i, k) = rng.normal();
  return a;
}

CMatrix random_complex(Rng& rng, Index rows, Index cols) {
  CMatrix a(rows, cols);
  for (Index k = 0; k < cols; ++k)
    for (Index i = 0; i < rows; ++i) a(i, k) = rng.complex_normal();
  return a;
}

RMatrix random_orthogonal(Rng& rng, Index n) {
  Eigen::HouseholderQR<RMatrix> qr(random_real(rng, n, n));
  RMatrix q = qr.householderQ();
  const RMatrix& r = qr.matrixQR();
  for (Index k = 0; k < n; ++k) {
    if (r(k, k) < 0.0) q.col(k) *= -1.0;
  }
  return q;
}

CMatrix random_unitary(Rng& rng, Index n) {
  Eigen::HouseholderQR<CMatrix> qr(random_complex(rng, n, n));
  CMatrix q = qr.householderQ();
  const CMatrix& r = qr.matrixQR();
  for (Index k = 0; k < n; ++k) {
    const double m = std::abs(r(k, k));
    if (m > 0.0) q.col(k) *= r(k, k) / m;
  }
  return q;
}

RMatrix random_gl(Rng& rng, Index n, double spread) {
  RMatrix q1 = random_orthogonal(rng, n);
  RMatrix q2 = random_orthogonal(rng, n);
  RVector s(n);
  for (Index i = 0; i < n; ++i) s(i) = std::exp(rng.uniform(-spread, spread));
  return q1 * s.asDiagonal() * q2;
}

CMatrix random_symmetric_contraction(Rng& rng, Index n, double lo, double hi) {
  CMatrix a = random_complex(rng, n, n);
  CMatrix z = 0.5 * (a + a.transpose());
  const double target = rng.uniform(lo, hi);
  const double nz = op_norm(z);
  return nz > 0.0 ? CMatrix(z * (target / nz)) : z;
}

CMatrix random_antisymmetric(Rng& rng, Index n, double scale) {
  CMatrix a = random_complex(rng, n, n);
  CMatrix z = 0.5 * (a - a.transpose());
  const double nz = op_norm(z);
  return nz > 0.0 ? CMatrix(z * (scale / nz)) : z;
}

}  // namespace polargrass
