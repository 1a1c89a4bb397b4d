#include "polargrass/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

namespace polargrass {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const cplx I(0.0, 1.0);

std::string describe(const char* what, double r) {
  std::ostringstream os;
  os << what << " " << r;
  return os.str();
}

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

CircleDiffeo CircleDiffeo::mobius(cplx a) {
  if (!(std::abs(a) < 1.0)) throw Error(ErrorKind::InvalidArgument, "Möbius parameter needs |a| < 1");
  json repr = {{"kind", "mobius"}, {"a", complex_to_json(a)}};
  const cplx ac = std::conj(a);
  // arg((z − a)/(1 − āz)) = θ − 2 arg(1 − ā e^{iθ}); Re(1 − āz) > 0 keeps it continuous.
  auto f = [ac](double theta) {
    const cplx q = 1.0 - ac * std::polar(1.0, theta);
    return theta - 2.0 * std::atan2(q.imag(), q.real());
  };
  return CircleDiffeo(f, "mobius(" + fmt_double(a.real()) + "," + fmt_double(a.imag()) + ")", repr);
}

CircleDiffeo CircleDiffeo::fourier_flow(std::vector<std::pair<int, double>> coeffs) {
  json jc = json::array();
  for (const auto& [k, amp] : coeffs) {
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "fourier_flow frequencies must be ≥ 1");
    if (!std::isfinite(amp)) throw Error(ErrorKind::NonFinite, "fourier_flow amplitude");
    jc.push_back(json::array({k, amp}));
  }
  // φ' = 1 + Σ amp k cos(kθ) must stay positive.
  constexpr int kGrid = 8192;
  for (int j = 0; j < kGrid; ++j) {
    const double th = kTwoPi * j / kGrid;
    double d = 1.0;
    for (const auto& [k, amp] : coeffs) d += amp * k * std::cos(k * th);
    if (!(d > 0.0)) throw Error(ErrorKind::NotIncreasing, describe("φ' at grid point", d));
  }
  auto f = [coeffs](double theta) {
    double v = theta;
    for (const auto& [k, amp] : coeffs) v += amp * std::sin(k * theta);
    return v;
  };
  return CircleDiffeo(f, "fourier_flow", json{{"kind", "fourier_flow"}, {"coeffs", jc}});
}

CircleDiffeo CircleDiffeo::rotation(double delta) {
  if (!std::isfinite(delta)) throw Error(ErrorKind::NonFinite, "rotation angle");
  return CircleDiffeo([delta](double theta) { return theta + delta; }, "rotation",
                      json{{"kind", "rotation"}, {"delta", delta}});
}

CircleDiffeo CircleDiffeo::identity() {
  return CircleDiffeo([](double theta) { return theta; }, "identity", json{{"kind", "identity"}});
}

CircleDiffeo CircleDiffeo::compose(const CircleDiffeo& phi2, const CircleDiffeo& phi1) {
  auto f2 = phi2.f_;
  auto f1 = phi1.f_;
  return CircleDiffeo([f2, f1](double theta) { return f2(f1(theta)); },
                      phi2.desc_ + "∘" + phi1.desc_,
                      json{{"kind", "compose"}, {"outer", phi2.repr_}, {"inner", phi1.repr_}});
}

CircleDiffeo CircleDiffeo::from_json(const json& j) {
  if (!j.is_object()) throw ParseError("diffeo: expected an object");
  const json& kind = require_field(j, "kind", "diffeo");
  if (!kind.is_string()) throw ParseError("diffeo: 'kind' must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "mobius") {
    reject_unknown_keys(j, {"kind", "a"}, "diffeo");
    return mobius(complex_from_json(require_field(j, "a", "diffeo")));
  }
  if (k == "fourier_flow") {
    reject_unknown_keys(j, {"kind", "coeffs"}, "diffeo");
    const json& c = require_field(j, "coeffs", "diffeo");
    if (!c.is_array()) throw ParseError("diffeo: 'coeffs' must be an array");
    std::vector<std::pair<int, double>> coeffs;
    for (const json& e : c) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number()) {
        throw ParseError("diffeo: each coefficient must be [k, amp]");
      }
      coeffs.emplace_back(e[0].get<int>(), e[1].get<double>());
    }
    return fourier_flow(std::move(coeffs));
  }
  if (k == "rotation") {
    reject_unknown_keys(j, {"kind", "delta"}, "diffeo");
    return rotation(number_field(j, "delta", "diffeo"));
  }
  if (k == "identity") {
    reject_unknown_keys(j, {"kind"}, "diffeo");
    return identity();
  }
  if (k == "compose") {
    reject_unknown_keys(j, {"kind", "outer", "inner"}, "diffeo");
    return compose(from_json(require_field(j, "outer", "diffeo")),
                   from_json(require_field(j, "inner", "diffeo")));
  }
  throw ParseError("diffeo: unknown kind '" + k + "'");
}

json CircleDiffeo::to_json() const { return repr_; }

void CircleDiffeo::validate(Index K) const {
  if (K < 2) throw Error(ErrorKind::InvalidArgument, "quadrature needs K ≥ 2");
  double prev = f_(0.0);
  for (Index j = 0; j < K; ++j) {
    const double th = kTwoPi * static_cast<double>(j) / static_cast<double>(K);
    const double v = f_(th);
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "diffeo value");
    if (j > 0 && !(v > prev)) throw Error(ErrorKind::NotIncreasing, "φ not increasing at " + fmt_double(th));
    const double gap = f_(th + kTwoPi) - v - kTwoPi;
    if (std::abs(gap) > 1e-10) throw Error(ErrorKind::NotPeriodic, describe("φ(θ+2π) − φ(θ) − 2π", gap));
    prev = v;
  }
  if (!(f_(kTwoPi) > prev)) throw Error(ErrorKind::NotIncreasing, "φ not increasing at wrap-around");
}

int mode_of_index(Index i, Index N) {
  return i < N ? static_cast<int>(i - N) : static_cast<int>(i - N + 1);
}

Index index_of_mode(int m, Index N) { return m < 0 ? N + m : N + m - 1; }

CompatibleTriple boson_triple(Index N) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "boson model needs N ≥ 1");
  RMatrix G = RMatrix::Zero(2 * N, 2 * N), J = G, W = G;
  for (Index m = 1; m <= N; ++m) {
    const Index p = 2 * (m - 1), q = p + 1;
    const double w = static_cast<double>(m);
    G(p, p) = G(q, q) = w;
    J(p, q) = 1.0;
    J(q, p) = -1.0;
    W(p, q) = -w;
    W(q, p) = w;
  }
  return CompatibleTriple::make(BilinearForm::symmetric(G), ComplexStructure::make(J),
                                BilinearForm::antisymmetric(W));
}

CVector boson_mode_vector(int m, Index N) {
  if (m == 0 || std::abs(m) > N) throw Error(ErrorKind::InvalidArgument, "mode outside cutoff");
  CVector e = CVector::Zero(2 * N);
  const Index p = 2 * (std::abs(m) - 1);
  const double r = 1.0 / std::sqrt(2.0);
  e(p) = r;
  e(p + 1) = m > 0 ? cplx(0.0, -r) : cplx(0.0, r);
  return e;
}

EigenSplit boson_split(const ComplexifiedSpace& space) {
  const Index N = space.n();
  CMatrix plus(2 * N, N);
  for (Index k = 1; k <= N; ++k) {
    plus.col(k - 1) = boson_mode_vector(-static_cast<int>(k), N) / std::sqrt(static_cast<double>(k));
  }
  return EigenSplit::from_plus(space, plus);
}

cplx boson_omega_modes(const CVector& x, const CVector& y, Index N) {
  cplx s = 0.0;
  for (Index i = 0; i < 2 * N; ++i) {
    const int n = mode_of_index(i, N);
    s += static_cast<double>(n) * x(i) * y(index_of_mode(-n, N));
  }
  return -I * s;
}

CompositionMatrix composition_operator(const CircleDiffeo& phi, Index N, Index K, unsigned threads) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "cutoff N must be ≥ 1");
  phi.validate(K);
  const Index M = 2 * N;
  std::vector<double> theta(static_cast<std::size_t>(K)), ph(static_cast<std::size_t>(K));
  for (Index j = 0; j < K; ++j) {
    theta[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(K);
    ph[j] = phi(theta[j]);
  }
  // conj(e^{imθ_j}) table, rows = output modes.
  CMatrix em(M, K);
  for (Index i = 0; i < M; ++i) {
    const double m = mode_of_index(i, N);
    for (Index j = 0; j < K; ++j) em(i, j) = std::polar(1.0, -m * theta[j]);
  }
  CompositionMatrix out;
  out.c = CMatrix::Zero(M, M);
  out.aliasing_risk = K < 8 * N;
  auto column = [&](Index col) {
    const double n = mode_of_index(col, N);
    std::vector<cplx> v(static_cast<std::size_t>(K));
    for (Index j = 0; j < K; ++j) v[j] = std::polar(1.0, n * ph[j]);
    for (Index i = 0; i < M; ++i) {
      cplx s = 0.0;
      for (Index j = 0; j < K; ++j) s += v[j] * em(i, j);
      out.c(i, col) = s / static_cast<double>(K);
    }
  };
  unsigned t = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  t = static_cast<unsigned>(std::min<Index>(t, M));
  if (t <= 1) {
    for (Index col = 0; col < M; ++col) column(col);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < t; ++w) {
      pool.emplace_back([&, w] {
        for (Index col = w; col < M; col += t) column(col);
      });
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

CompositionBlocks composition_blocks(const CMatrix& c, Index N) {
  const Index M = 2 * N;
  if (c.rows() != M || c.cols() != M) throw Error(ErrorKind::DimensionMismatch, "composition matrix shape");
  // Slot order [f_{−1}..f_{−N} | f_1..f_N].
  std::vector<Index> order(static_cast<std::size_t>(M));
  RVector w(M);
  for (Index k = 1; k <= N; ++k) {
    order[k - 1] = index_of_mode(-static_cast<int>(k), N);
    order[N + k - 1] = index_of_mode(static_cast<int>(k), N);
  }
  for (Index s = 0; s < M; ++s) w(s) = std::sqrt(std::abs(static_cast<double>(mode_of_index(order[s], N))));
  CompositionBlocks out;
  out.u.resize(M, M);
  for (Index r = 0; r < M; ++r)
    for (Index s = 0; s < M; ++s) out.u(r, s) = w(r) * c(order[r], order[s]) / w(s);
  out.a = out.u.topLeftCorner(N, N);
  out.b = out.u.bottomLeftCorner(N, N);
  return out;
}

GrunskyResult grunsky(const CircleDiffeo& phi, Index N, Index K, unsigned threads,
                      const Tolerances& tol) {
  CompositionMatrix cm = composition_operator(phi, N, K, threads);
  CompositionBlocks blk = composition_blocks(cm.c, N);
  RVector s = singular_values(blk.a);
  const double smin = s(s.size() - 1);
  if (!(smin > 1e-8)) throw Error(ErrorKind::BlockSingular, describe("σ_min(a)", smin));
  const CMatrix z = blk.a.transpose().partialPivLu().solve(CMatrix(blk.b.transpose())).transpose();
  const CMatrix zs = 0.5 * (z + z.transpose());
  return GrunskyResult{z, max_abs(CMatrix(z - z.transpose())), smin, SiegelPoint::make(zs, tol),
                       cm.aliasing_risk};
}

CompatibleTriple fermion_triple(Index N) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "fermion model needs N ≥ 1");
  return standard_triple(N);
}

OrthogonalPolarization fermion_polarization(const ComplexifiedSpace& space) {
  const Index N = space.n();
  CMatrix f = CMatrix::Zero(2 * N, N);
  const double r = 1.0 / std::sqrt(2.0);
  for (Index n = 0; n < N; ++n) {
    f(2 * n, n) = r;
    f(2 * n + 1, n) = cplx(0.0, -r);
  }
  return OrthogonalPolarization::make(space, Frame::from_columns(f));
}

RMatrix plane_rotation(Index dim, Index i, Index j, double angle) {
  if (i < 0 || j < 0 || i >= dim || j >= dim || i == j) {
    throw Error(ErrorKind::InvalidArgument, "rotation plane out of range");
  }
  RMatrix r = RMatrix::Identity(dim, dim);
  const double c = std::cos(angle), s = std::sin(angle);
  r(i, i) = c;
  r(j, j) = c;
  r(i, j) = -s;
  r(j, i) = s;
  return r;
}

TorusPeriod torus_period(cplx tau, const Tolerances& tol) {
  if (!std::isfinite(tau.real()) || !std::isfinite(tau.imag()) || !(tau.imag() > 0.0)) {
    throw Error(ErrorKind::NotUpperHalf, describe("Im τ =", tau.imag()));
  }
  // Coefficients (dx, dy) of η₁, η₂ and β.
  const cplx eta1_x = 1.0, eta1_y = -tau.real() / tau.imag();
  const cplx eta2_x = 0.0, eta2_y = 1.0 / tau.imag();
  const cplx bx = eta1_x + tau * eta2_x;
  const cplx by = eta1_y + tau * eta2_y;
  const cplx a_period = bx;
  const cplx b_period = bx * tau.real() + by * tau.imag();
  // ∗(f dx + h dy) = −h dx + f dy.
  const double hodge = std::max(std::abs(-by + I * bx), std::abs(bx + I * by));
  CMatrix z(1, 1);
  z(0, 0) = b_period / a_period;
  return TorusPeriod{UpperHalfPoint::make(z, tol), a_period, b_period, hodge};
}

}  // namespace polargrass
