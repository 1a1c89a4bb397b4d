#include "polargrass/suite.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "polargrass/circle.hpp"
#include "polargrass/fock.hpp"
#include "polargrass/orthograss.hpp"
#include "polargrass/random.hpp"

namespace polargrass {

namespace {

// Pinned acceptance tolerances.
constexpr double kTripleTol = 1e-9;
constexpr double kBijectionTol = 1e-9;
constexpr double kSubspaceTol = 1e-8;
constexpr double kBlockTol = 1e-9;
constexpr double kGroupLawTol = 1e-8;
constexpr double kTransitivityTol = 1e-9;
constexpr double kCharacterTol = 1e-8;
constexpr double kZeroTol = 1e-10;
constexpr double kCocycleTol = 1e-7;
constexpr double kHolomorphyTol = 1e-6;
constexpr double kRatioLo = 0.15, kRatioHi = 0.35;
constexpr double kHolomorphyRatioStep = 1e-2;
constexpr double kOmegaTol = 1e-6;
constexpr double kMobiusTol = 1e-6;
constexpr double kSymmetryTol = 1e-6;
constexpr double kResolutionTol = 1e-5;
constexpr double kCoherenceTol = 1e-5;
constexpr double kCarTol = 1e-12;
constexpr double kChartMargin = 0.05;

struct ErrorTally {
  std::map<std::string, int> counts;
  int total = 0;
  void add(const Error& e) {
    ++counts[e.name()];
    ++total;
  }
  json to_json() const {
    json j = json::object();
    for (const auto& [k, v] : counts) j[k] = v;
    return j;
  }
};

BlockSymplectic random_block(Rng& rng, Index n, double lo, double hi) {
  const SiegelPoint z = SiegelPoint::make(random_symmetric_contraction(rng, n, lo, hi));
  return compose(sp_from_siegel_point(z), BlockSymplectic::make(random_unitary(rng, n), CMatrix::Zero(n, n)));
}

CriterionResult triple_equivalence(std::uint64_t seed) {
  Rng rng(seed);
  const Index dims[] = {1, 4, 16};
  double identities = 0.0, completion = 0.0;
  ErrorTally errors;
  for (int k = 0; k < 200; ++k) {
    const Index n = dims[k % 3];
    try {
      const CompatibleTriple t = pullback_triple(random_gl(rng, 2 * n), standard_triple(n));
      identities = std::max(identities, verify_triple(t.g(), t.J(), t.omega()).max());
      completion = std::max({completion, relative_residual(t.Omega(), complete_from_g_J(t.g(), t.J()).Omega()),
                             relative_residual(t.Jm(), complete_from_g_omega(t.g(), t.omega()).Jm()),
                             relative_residual(t.G(), complete_from_J_omega(t.J(), t.omega()).G())});
    } catch (const Error& e) {
      errors.add(e);
    }
  }
  CriterionResult r{1, "triple-equivalence", false, json::object()};
  r.metrics["trials"] = 200;
  r.metrics["identity_residual_max"] = identities;
  r.metrics["completion_residual_max"] = completion;
  r.metrics["errors"] = errors.to_json();
  r.pass = errors.total == 0 && identities <= kTripleTol && completion <= kTripleTol;
  return r;
}

CriterionResult counterexample_gate(std::uint64_t seed) {
  Rng rng(seed);
  int rejected = 0;
  double worst_eig = -INFINITY;
  ErrorTally other;
  for (int k = 0; k < 100; ++k) {
    const Index n = 1 + k % 4;
    const CompatibleTriple t = pullback_triple(random_gl(rng, 2 * n), standard_triple(n));
    const ComplexStructure minus = ComplexStructure::make(-t.Jm());
    worst_eig = std::max(worst_eig, j_omega_min_eigenvalue(minus, t.omega()));
    try {
      complete_from_J_omega(minus, t.omega());
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NotPositive) {
        ++rejected;
      } else {
        other.add(e);
      }
    }
  }
  CriterionResult r{2, "counterexample-gate", false, json::object()};
  r.metrics["trials"] = 100;
  r.metrics["not_positive"] = rejected;
  r.metrics["min_eigenvalue_max"] = worst_eig;
  r.metrics["other_errors"] = other.to_json();
  r.pass = rejected == 100;
  return r;
}

CriterionResult siegel_bijection(std::uint64_t seed) {
  Rng rng(seed);
  double bij = 0.0, angle = 0.0;
  ErrorTally errors;
  for (int k = 0; k < 100; ++k) {
    const Index n = 1 + k % 16;
    try {
      const CompatibleTriple t = pullback_triple(random_gl(rng, 2 * n, 0.5), standard_triple(n));
      const EigenSplit sp = eigensplit(complexify(t));
      const SiegelPoint z = SiegelPoint::make(random_symmetric_contraction(rng, n));
      bij = std::max(bij, relative_residual(z.Z(), graph_operator(graph_frame(z, sp), sp).Z()));
      const RMatrix u = random_block(rng, n, 0.1, 0.9).to_real(sp);
      const Frame w = Frame::from_columns(u.cast<cplx>() * sp.plus());
      angle = std::max(angle, principal_angle_distance(graph_frame(graph_operator(w, sp), sp), w));
    } catch (const Error& e) {
      errors.add(e);
    }
  }
  CriterionResult r{3, "siegel-bijection", false, json::object()};
  r.metrics["trials"] = 100;
  r.metrics["operator_roundtrip_max"] = bij;
  r.metrics["subspace_roundtrip_max"] = angle;
  r.metrics["errors"] = errors.to_json();
  r.pass = errors.total == 0 && bij <= kBijectionTol && angle <= kSubspaceTol;
  return r;
}

CriterionResult block_action(std::uint64_t seed) {
  Rng rng(seed);
  double blocks = 0.0, law = 0.0, trans = 0.0;
  ErrorTally errors;
  for (int k = 0; k < 100; ++k) {
    const Index n = 1 + k % 8;
    try {
      const BlockSymplectic u1 = random_block(rng, n, 0.1, 0.9);
      const BlockSymplectic u2 = random_block(rng, n, 0.1, 0.9);
      blocks = std::max({blocks, u1.identity_residual(), u1.pairing_residual()});
      const SiegelPoint z = SiegelPoint::make(random_symmetric_contraction(rng, n, 0.1, 0.9));
      law = std::max(law, relative_residual(mobius_act(compose(u2, u1), z).Z(), mobius_act(u2, mobius_act(u1, z)).Z()));
      const SiegelPoint zero = SiegelPoint::make(CMatrix::Zero(n, n));
      trans = std::max(trans, relative_residual(mobius_act(sp_from_siegel_point(z), zero).Z(), z.Z()));
    } catch (const Error& e) {
      errors.add(e);
    }
  }
  CriterionResult r{4, "block-identities-and-action", false, json::object()};
  r.metrics["trials"] = 100;
  r.metrics["block_identity_max"] = blocks;
  r.metrics["group_law_max"] = law;
  r.metrics["transitivity_max"] = trans;
  r.metrics["errors"] = errors.to_json();
  r.pass = errors.total == 0 && blocks <= kBlockTol && law <= kGroupLawTol && trans <= kTransitivityTol;
  return r;
}

CriterionResult restricted_characterization(std::uint64_t seed) {
  Rng rng(seed);
  double agreement = 0.0;
  int zero_consistent = 0, unitary = 0;
  ErrorTally errors;
  for (int k = 0; k < 50; ++k) {
    const Index n = 1 + k % 6;
    try {
      const bool flat = k >= 40;
      const BlockSymplectic b = flat ? BlockSymplectic::make(random_unitary(rng, n), CMatrix::Zero(n, n))
                                     : random_block(rng, n, 0.1, 0.9);
      unitary += flat;
      const RestrictedCharacter rc = restricted_character(b);
      const double scale = std::max(1.0, rc.hs_Jdef_closed);
      agreement = std::max({agreement, std::abs(rc.hs_Jdef - rc.hs_Jdef_closed) / scale, rc.closed_residual / scale});
      zero_consistent += (rc.hs_Jdef <= kZeroTol) == (rc.hs_b <= kZeroTol);
    } catch (const Error& e) {
      errors.add(e);
    }
  }
  CriterionResult r{5, "restricted-characterization", false, json::object()};
  r.metrics["trials"] = 50;
  r.metrics["unitary_trials"] = unitary;
  r.metrics["closed_form_max"] = agreement;
  r.metrics["zero_iff_b_zero"] = zero_consistent;
  r.metrics["errors"] = errors.to_json();
  r.pass = errors.total == 0 && agreement <= kCharacterTol && zero_consistent == 50;
  return r;
}

double den_sigma_min(const ChartIndex& s1, const ChartIndex& s2, const CMatrix& z) {
  const OrthoBlocks q = chart_change(s1, s2, z.rows());
  const RVector s = singular_values(CMatrix(q.a + q.b * z));
  return s(s.size() - 1);
}

// S toggled at two distinct random slots; stays in the component of S.
ChartIndex neighbour_chart(Rng& rng, const ChartIndex& s, Index n) {
  const int i = rng.integer(1, static_cast<int>(n));
  int j = rng.integer(1, static_cast<int>(n) - 1);
  if (j >= i) ++j;
  return s.toggled(i).toggled(j);
}

CriterionResult orthogonal_charts(std::uint64_t seed) {
  Rng rng(seed);
  int found = 0, within_n = 0, fredholm_equal = 0, descended = 0, cocycles = 0, holos = 0;
  Index max_steps = 0;
  double cocycle = 0.0, holo = 0.0, graph = 0.0;
  double ratio_lo = INFINITY, ratio_hi = -INFINITY;
  ErrorTally errors;
  for (int k = 0; k < 100; ++k) {
    const Index n = 1 + k % 16;
    try {
      const ComplexifiedSpace space = complexify(standard_triple(n));
      const EigenSplit sp = eigensplit(space);
      const RMatrix u = random_orthogonal(rng, 2 * n);
      const Frame w = Frame::from_columns(u.cast<cplx>() * sp.plus());
      const ChartResult c = find_chart(w, sp);
      ++found;
      within_n += c.steps() <= n;
      descended += c.steps() > 0;
      max_steps = std::max(max_steps, c.steps());
      graph = std::max(graph, principal_angle_distance(chart_graph_frame(c.S, c.Z.Z(), sp), w));
      const FredholmIndex fi = fredholm_index(w, sp);
      fredholm_equal += fi.dim_ker == fi.dim_coker;
      if (n < 2) continue;  // one mode: each component is a single point

      for (int attempt = 0; attempt < 20; ++attempt) {
        const ChartIndex s2 = neighbour_chart(rng, c.S, n), s3 = neighbour_chart(rng, c.S, n);
        if (den_sigma_min(c.S, s2, c.Z.Z()) < kChartMargin || den_sigma_min(c.S, s3, c.Z.Z()) < kChartMargin) continue;
        const OrthoGraphOperator z2 = transition(c.S, s2, c.Z);
        if (den_sigma_min(s2, s3, z2.Z()) < kChartMargin) continue;
        cocycle = std::max(cocycle, relative_residual(transition(s2, s3, z2).Z(), transition(c.S, s3, c.Z).Z()));
        ++cocycles;
        break;
      }

      // Holomorphy along a unit antisymmetric direction into the
      // best-conditioned neighbouring chart among a few candidates.
      ChartIndex best = c.S;
      double best_sigma = 0.0;
      for (int attempt = 0; attempt < 8; ++attempt) {
        const ChartIndex s2 = neighbour_chart(rng, c.S, n);
        const double sig = den_sigma_min(c.S, s2, c.Z.Z());
        if (sig > best_sigma) {
          best_sigma = sig;
          best = s2;
        }
      }
      if (best_sigma < kChartMargin) continue;
      const CMatrix dir = random_antisymmetric(rng, n, 1.0);
      holo = std::max(holo, holomorphy_check(c.S, best, c.Z, dir).residual());
      const double ratio = holomorphy_step_ratio(c.S, best, c.Z, dir, kHolomorphyRatioStep);
      ratio_lo = std::min(ratio_lo, ratio);
      ratio_hi = std::max(ratio_hi, ratio);
      ++holos;
    } catch (const Error& e) {
      errors.add(e);
    }
  }
  CriterionResult r{6, "orthogonal-charts", false, json::object()};
  r.metrics["trials"] = 100;
  r.metrics["found"] = found;
  r.metrics["steps_within_n"] = within_n;
  r.metrics["descents"] = descended;
  r.metrics["max_steps"] = max_steps;
  r.metrics["graph_distance_max"] = graph;
  r.metrics["fredholm_equal"] = fredholm_equal;
  r.metrics["cocycle_samples"] = cocycles;
  r.metrics["cocycle_max"] = cocycle;
  r.metrics["holomorphy_samples"] = holos;
  r.metrics["holomorphy_max"] = holo;
  r.metrics["step_ratio_min"] = holos ? ratio_lo : 0.0;
  r.metrics["step_ratio_max"] = holos ? ratio_hi : 0.0;
  r.metrics["errors"] = errors.to_json();
  r.pass = errors.total == 0 && found == 100 && within_n == 100 && fredholm_equal == 100 && graph <= kSubspaceTol &&
           cocycles >= 50 && cocycle <= kCocycleTol && holos >= 50 && holo <= kHolomorphyTol &&
           ratio_lo >= kRatioLo && ratio_hi <= kRatioHi;
  return r;
}

double omega_band_residual(const CMatrix& c, Index N, Index band) {
  double worst = 0.0;
  for (Index i = 0; i < 2 * N; ++i) {
    if (std::abs(mode_of_index(i, N)) > band) continue;
    for (Index j = 0; j < 2 * N; ++j) {
      if (std::abs(mode_of_index(j, N)) > band) continue;
      const CVector x = CVector::Unit(2 * N, i), y = CVector::Unit(2 * N, j);
      worst = std::max(worst, std::abs(boson_omega_modes(c * x, c * y, N) - boson_omega_modes(x, y, N)));
    }
  }
  return worst;
}

CriterionResult circle_model(std::uint64_t) {
  const Index N = 32, K = 512;
  CriterionResult r{7, "circle-model", false, json::object()};
  try {
    const std::vector<CircleDiffeo> specimens = {CircleDiffeo::fourier_flow({{1, 0.1}}),
                                                 CircleDiffeo::fourier_flow({{3, 0.05}}),
                                                 CircleDiffeo::fourier_flow({{1, 0.2}})};
    json omega = json::array();
    double omega_max = 0.0, symmetry = 0.0;
    for (const CircleDiffeo& phi : specimens) {
      const double res = omega_band_residual(composition_operator(phi, N, K).c, N, N / 2);
      omega.push_back(res);
      omega_max = std::max(omega_max, res);
      symmetry = std::max(symmetry, grunsky(phi, N, K).symmetry);
    }
    const GrunskyResult mob = grunsky(CircleDiffeo::mobius(cplx(0.3, 0.0)), N, K);
    const double mobius_norm = op_norm(mob.z_raw);
    symmetry = std::max(symmetry, mob.symmetry);

    const CircleDiffeo wave = CircleDiffeo::fourier_flow({{2, 0.3}});
    const GrunskyResult g32 = grunsky(wave, N, K);
    const GrunskyResult g64 = grunsky(wave, 2 * N, 2 * K);
    symmetry = std::max({symmetry, g32.symmetry, g64.symmetry});
    const double resolution = max_abs(CMatrix(g32.point.Z() - g64.point.Z().topLeftCorner(N, N)));

    const CircleDiffeo phi1 = CircleDiffeo::fourier_flow({{1, 0.2}});
    const CircleDiffeo phi2 = CircleDiffeo::fourier_flow({{2, 0.1}});
    const CompositionBlocks b1 = composition_blocks(composition_operator(phi1, N, K).c, N);
    const GrunskyResult g2 = grunsky(phi2, N, K);
    const GrunskyResult g12 = grunsky(CircleDiffeo::compose(phi2, phi1), N, K);
    const double coherence = max_abs(CMatrix(mobius_act_raw(b1.a, b1.b, g2.point.Z()) - g12.point.Z()));

    r.metrics["cutoff"] = N;
    r.metrics["quadrature"] = K;
    r.metrics["omega_residuals"] = omega;
    r.metrics["mobius_norm"] = mobius_norm;
    r.metrics["mobius_sigma_min_a"] = mob.sigma_min_a;
    r.metrics["symmetry_max"] = symmetry;
    r.metrics["two_resolution"] = resolution;
    r.metrics["coherence"] = coherence;
    r.pass = omega_max <= kOmegaTol && mobius_norm <= kMobiusTol && symmetry <= kSymmetryTol &&
             resolution <= kResolutionTol && coherence <= kCoherenceTol;
  } catch (const Error& e) {
    r.metrics["error"] = e.name();
    r.metrics["message"] = e.what();
  }
  return r;
}

CriterionResult fock_car(std::uint64_t) {
  CriterionResult r{8, "fock-car", false, json::object()};
  try {
    const ComplexifiedSpace s = complexify(fermion_triple(4));
    const FockRep rep = build_fock(s, fermion_polarization(s));
    const double car = car_exhaustive(rep);
    const double adj = adjoint_residual(rep);
    const Index rank = vacuum_cyclicity_rank(rep);
    const bool graded = grading_respected(rep);
    r.metrics["modes"] = 4;
    r.metrics["car_max"] = car;
    r.metrics["adjoint_max"] = adj;
    r.metrics["cyclic_rank"] = rank;
    r.metrics["graded"] = graded;
    r.pass = car <= kCarTol && adj <= kCarTol && rank == rep.dim() && graded;
  } catch (const Error& e) {
    r.metrics["error"] = e.name();
  }
  return r;
}

CriterionResult torus(std::uint64_t) {
  CriterionResult r{9, "torus-period", false, json::object()};
  json members = json::array();
  bool ok = true;
  for (cplx tau : {cplx(0.0, 1.0), cplx(0.5, 0.5), cplx(0.0, 2.0)}) {
    try {
      const TorusPeriod p = torus_period(tau);
      const bool member = halfspace_membership(p.Z.Z()).member;
      members.push_back(json{{"tau", complex_to_json(tau)}, {"Z", complex_to_json(p.Z.Z()(0, 0))},
                             {"hodge_residual", p.hodge_residual}, {"member", member}});
      ok = ok && member;
    } catch (const Error& e) {
      members.push_back(json{{"tau", complex_to_json(tau)}, {"error", e.name()}});
      ok = false;
    }
  }
  std::string rejected = "none";
  try {
    torus_period(cplx(0.5, -0.5));
  } catch (const Error& e) {
    rejected = e.name();
  }
  r.metrics["accepted"] = members;
  r.metrics["lower_half_rejection"] = rejected;
  r.pass = ok && rejected == "NotUpperHalf";
  return r;
}

std::uint64_t seed_from_config(const json& config, const RunOptions& opts) {
  if (opts.seed_given || !config.contains("seed")) return opts.seed;
  const json& s = config.at("seed");
  if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
    throw ParseError("report-suite: 'seed' must be a non-negative integer");
  }
  return s.get<std::uint64_t>();
}

}  // namespace

std::uint64_t criterion_seed(std::uint64_t seed, int id) {
  // splitmix64 step on seed ⊕ id.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(id + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
  const std::uint64_t s = criterion_seed(seed, id);
  switch (id) {
    case 1: return triple_equivalence(s);
    case 2: return counterexample_gate(s);
    case 3: return siegel_bijection(s);
    case 4: return block_action(s);
    case 5: return restricted_characterization(s);
    case 6: return orthogonal_charts(s);
    case 7: return circle_model(s);
    case 8: return fock_car(s);
    case 9: return torus(s);
    default: throw Error(ErrorKind::InvalidArgument, "criterion id must be 1..9");
  }
}

json report_suite(const json& config, const RunOptions& opts) {
  reject_unknown_keys(config, {"seed", "scenarios"}, "report-suite");
  const std::uint64_t seed = seed_from_config(config, opts);
  const json& list = require_field(config, "scenarios", "report-suite");
  if (!list.is_array()) throw ParseError("report-suite: 'scenarios' must be an array");

  // Validate every scenario before running any of them.
  for (const json& sc : list) {
    reject_unknown_keys(sc, {"name", "criterion", "verb", "input", "expect_error"}, "scenario");
    const json& name = require_field(sc, "name", "scenario");
    if (!name.is_string()) throw ParseError("scenario: 'name' must be a string");
    const bool crit = sc.contains("criterion"), verb = sc.contains("verb");
    if (crit == verb) throw ParseError("scenario '" + name.get<std::string>() + "': give exactly one of criterion, verb");
    if (crit) {
      const json& c = sc.at("criterion");
      if (!c.is_number_integer() || c.get<int>() < 1 || c.get<int>() > kCriterionCount) {
        throw ParseError("scenario: 'criterion' must be an integer in 1..9");
      }
      if (sc.contains("input") || sc.contains("expect_error")) {
        throw ParseError("scenario: criterion scenarios take no input or expect_error");
      }
    } else {
      if (!sc.at("verb").is_string() || !is_verb(sc.at("verb").get<std::string>()) ||
          sc.at("verb").get<std::string>() == "report-suite") {
        throw ParseError("scenario: unknown or nested verb");
      }
      if (sc.contains("expect_error") && !sc.at("expect_error").is_string()) {
        throw ParseError("scenario: 'expect_error' must be an error name");
      }
    }
  }

  json scenarios = json::array();
  int passed = 0;
  for (const json& sc : list) {
    json out;
    out["name"] = sc.at("name");
    bool ok = false;
    if (sc.contains("criterion")) {
      const int id = sc.at("criterion").get<int>();
      const CriterionResult cr = run_criterion(id, seed);
      out["criterion"] = id;
      out["check"] = cr.name;
      out["seed"] = criterion_seed(seed, id);
      out["metrics"] = cr.metrics;
      ok = cr.pass;
      out["outcome"] = ok ? "passed" : "failed";
    } else {
      const std::string verb = sc.at("verb").get<std::string>();
      RunOptions sub = opts;
      sub.seed = seed;
      const json rep = run_verb(verb, sc.contains("input") ? sc.at("input") : json::object(), sub);
      out["verb"] = verb;
      out["report"] = rep;
      if (sc.contains("expect_error")) {
        const std::string want = sc.at("expect_error").get<std::string>();
        out["expect_error"] = want;
        ok = rep.contains("error") && rep.at("error").at("name") == want;
        out["outcome"] = ok ? "failed-as-expected" : "failed";
      } else {
        ok = rep.at("pass").get<bool>();
        out["outcome"] = ok ? "passed" : "failed";
      }
    }
    out["pass"] = ok;
    passed += ok;
    scenarios.push_back(std::move(out));
  }

  json report;
  report["verb"] = "report-suite";
  report["options"] = opts.to_json();
  report["options"]["seed"] = seed;
  report["inputs"] = json{{"seed", seed}, {"scenario_count", list.size()}};
  report["outputs"] = json{{"scenarios", scenarios}};
  report["residuals"] = json{{"total", list.size()}, {"passed", passed},
                              {"failed", static_cast<int>(list.size()) - passed}};
  report["pass"] = passed == static_cast<int>(list.size());
  return report;
}

}  // namespace polargrass
