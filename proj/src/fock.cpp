#include "polargrass/fock.hpp"

#include <bit>
#include <sstream>

namespace polargrass {

namespace {

double sparse_max_abs(const SparseC& m) {
  double r = 0.0;
  for (Index k = 0; k < m.outerSize(); ++k)
    for (SparseC::InnerIterator it(m, k); it; ++it) r = std::max(r, std::abs(it.value()));
  return r;
}

SparseC identity_sparse(Index d) {
  SparseC id(d, d);
  id.setIdentity();
  return id;
}

}  // namespace

FockRep build_fock(const ComplexifiedSpace& space, const OrthogonalPolarization& pol) {
  const Index n = pol.wplus().rank();
  if (n > kFockMaxModes) {
    std::ostringstream os;
    os << "n = " << n << " exceeds " << kFockMaxModes;
    throw Error(ErrorKind::DimensionGuard, os.str());
  }
  const Index d = Index(1) << n;
  std::vector<SparseC> create;
  for (Index k = 0; k < n; ++k) {
    std::vector<Eigen::Triplet<cplx>> trip;
    const unsigned bit = 1u << k;
    for (Index s = 0; s < d; ++s) {
      const auto mask = static_cast<unsigned>(s);
      if (mask & bit) continue;
      const int below = std::popcount(mask & (bit - 1u));
      trip.emplace_back(static_cast<Index>(mask | bit), s, below % 2 ? -1.0 : 1.0);
    }
    SparseC c(d, d);
    c.setFromTriplets(trip.begin(), trip.end());
    create.push_back(std::move(c));
  }
  return FockRep(space, space.g_orthonormalize(pol.wplus().matrix()), std::move(create));
}

SparseC FockRep::pi(const CVector& v) const {
  if (v.size() != space_.dim()) throw Error(ErrorKind::DimensionMismatch, "vector does not match space");
  const CVector x = frame_.adjoint() * space_.g_sesq() * v;
  const CVector y = frame_.transpose() * space_.g_sesq() * v;
  SparseC out(dim(), dim());
  for (Index k = 0; k < n_; ++k) {
    const SparseC& c = creation(k);
    if (x(k) != cplx(0.0)) out += x(k) * c;
    if (y(k) != cplx(0.0)) out += y(k) * SparseC(c.adjoint());
  }
  return out;
}

CMatrix FockRep::generators() const {
  CMatrix g(frame_.rows(), 2 * n_);
  g << frame_, frame_.conjugate();
  return g;
}

double car_check(const FockRep& rep, const CVector& v, const CVector& w) {
  const SparseC pv = rep.pi(v);
  const SparseC pw = rep.pi(w);
  const cplx gvaw = v.transpose() * rep.space().g_sesq() * w;  // g(v, αw)
  const SparseC anti = SparseC(pv * pw) + SparseC(pw * pv);
  return sparse_max_abs(SparseC(anti - gvaw * identity_sparse(rep.dim())));
}

double car_exhaustive(const FockRep& rep) {
  const CMatrix gens = rep.generators();
  double worst = 0.0;
  for (Index i = 0; i < gens.cols(); ++i)
    for (Index j = 0; j < gens.cols(); ++j)
      worst = std::max(worst, car_check(rep, gens.col(i), gens.col(j)));
  return worst;
}

double adjoint_residual(const FockRep& rep) {
  double worst = 0.0;
  for (Index k = 0; k < rep.n(); ++k) {
    const CVector y = rep.frame().col(k).conjugate();
    const SparseC lhs = rep.pi(y);
    const SparseC rhs = SparseC(rep.pi(rep.frame().col(k)).adjoint());
    worst = std::max(worst, sparse_max_abs(SparseC(lhs - rhs)));
  }
  return worst;
}

Index vacuum_cyclicity_rank(const FockRep& rep) {
  const Index d = rep.dim();
  CMatrix states(d, d);
  for (Index s = 0; s < d; ++s) {
    CVector v = CVector::Zero(d);
    v(0) = 1.0;
    // Apply creations for the elements of s, highest first.
    for (Index k = rep.n() - 1; k >= 0; --k) {
      if (static_cast<unsigned>(s) & (1u << k)) v = rep.creation(k) * v;
    }
    states.col(s) = v;
  }
  return numerical_rank(states, 1e-12);
}

bool grading_respected(const FockRep& rep) {
  for (Index k = 0; k < rep.n(); ++k) {
    const SparseC& c = rep.creation(k);
    for (Index col = 0; col < c.outerSize(); ++col) {
      for (SparseC::InnerIterator it(c, col); it; ++it) {
        if (it.value() == cplx(0.0)) continue;
        const int from = std::popcount(static_cast<unsigned>(it.col()));
        const int to = std::popcount(static_cast<unsigned>(it.row()));
        if (to != from + 1) return false;
      }
    }
  }
  return true;
}

EquivalenceCertificate equivalence_certificate(const ComplexifiedSpace& space,
                                               const OrthogonalPolarization& pol1,
                                               const OrthogonalPolarization& pol2) {
  EquivalenceCertificate cert;
  cert.hs_norm = hs_projection_norm(pol1.wplus(), pol2.wplus(), space);
  cert.equivalent = true;
  return cert;
}

}  // namespace polargrass
