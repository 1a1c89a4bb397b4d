#include "polargrass/commands.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "polargrass/circle.hpp"
#include "polargrass/fock.hpp"
#include "polargrass/orthograss.hpp"
#include "polargrass/suite.hpp"

namespace polargrass {

namespace {

const cplx I(0.0, 1.0);

RMatrix real_matrix(const json& j, const char* where) {
  reject_unknown_keys(j, {"rows", "cols", "data", "kind", "ambient_dim"}, where);
  return real_matrix_from_json(j);
}

RMatrix form_matrix(const json& j, const char* kind, const char* where) {
  if (j.is_object() && j.contains("kind") && j.at("kind") != kind) {
    throw ParseError(std::string(where) + ": expected kind '" + kind + "'");
  }
  return real_matrix(j, where);
}

CMatrix complex_matrix(const json& j, const char* where) {
  reject_unknown_keys(j, {"rows", "cols", "data", "kind", "ambient_dim", "model"}, where);
  return matrix_from_json(j);
}

// A vector is either a column matrix or a plain array of entries.
CVector complex_vector(const json& j, const char* where) {
  if (j.is_array()) {
    CVector v(static_cast<Index>(j.size()));
    for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Index>(k)) = complex_from_json(j[k]);
    return v;
  }
  const CMatrix m = complex_matrix(j, where);
  if (m.cols() != 1) throw ParseError(std::string(where) + ": expected a column vector");
  return m.col(0);
}

Index positive_index(const json& j, const char* key, const char* where) {
  const json& v = require_field(j, key, where);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw ParseError(std::string(where) + ": '" + key + "' must be a positive integer");
  }
  return static_cast<Index>(v.get<long long>());
}

std::vector<int> slot_list(const json& j, const char* where) {
  if (!j.is_array()) throw ParseError(std::string(where) + ": chart index must be an array");
  std::vector<int> out;
  for (const json& e : j) {
    if (!e.is_number_integer()) throw ParseError(std::string(where) + ": chart slots must be integers");
    out.push_back(e.get<int>());
  }
  return out;
}

std::string string_field(const json& j, const char* key, const char* where) {
  const json& v = require_field(j, key, where);
  if (!v.is_string()) throw ParseError(std::string(where) + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

// {"standard": n} or {"g", "J", "omega"}.
CompatibleTriple triple_from(const json& j, const Tolerances& tol) {
  if (j.contains("standard")) {
    reject_unknown_keys(j, {"standard"}, "triple");
    return standard_triple(positive_index(j, "standard", "triple"));
  }
  reject_unknown_keys(j, {"g", "J", "omega"}, "triple");
  return CompatibleTriple::make(BilinearForm::symmetric(form_matrix(require_field(j, "g", "triple"), "symmetric", "g"), tol),
                                ComplexStructure::make(form_matrix(require_field(j, "J", "triple"), "complex_structure", "J"), tol),
                                BilinearForm::antisymmetric(form_matrix(require_field(j, "omega", "triple"), "antisymmetric", "omega"), tol),
                                tol);
}

// Verbs needing a triple take "triple" or a mode count "n" for the standard one.
CompatibleTriple space_triple(const json& in, const Tolerances& tol, const char* where) {
  if (in.contains("triple")) return triple_from(in.at("triple"), tol);
  return standard_triple(positive_index(in, "n", where));
}

json triple_to_json(const CompatibleTriple& t) {
  json g = matrix_to_json(t.G()), J = matrix_to_json(t.Jm()), w = matrix_to_json(t.Omega());
  g["kind"] = "symmetric";
  J["kind"] = "complex_structure";
  w["kind"] = "antisymmetric";
  return json{{"g", g}, {"J", J}, {"omega", w}};
}

json triple_residuals(const TripleReport& r) {
  return json{{"g_eq_omega_J", r.r_g}, {"omega_eq_Jt_g", r.r_omega}, {"J_eq_Ginv_omegat", r.r_J}};
}

struct Outcome {
  json outputs = json::object();
  json residuals = json::object();
  bool pass = true;
};

using Handler = std::function<Outcome(const json&, const RunOptions&)>;

Outcome triple_verify(const json& in, const RunOptions& o) {
  reject_unknown_keys(in, {"g", "J", "omega"}, "triple-verify");
  const BilinearForm g = BilinearForm::symmetric(form_matrix(require_field(in, "g", "triple-verify"), "symmetric", "g"), o.tol);
  const ComplexStructure J = ComplexStructure::make(form_matrix(require_field(in, "J", "triple-verify"), "complex_structure", "J"), o.tol);
  const BilinearForm w =
      BilinearForm::antisymmetric(form_matrix(require_field(in, "omega", "triple-verify"), "antisymmetric", "omega"), o.tol);
  const TripleReport r = verify_triple(g, J, w, o.tol);
  Outcome out;
  out.residuals = triple_residuals(r);
  out.residuals["g_min_eigenvalue"] = min_hermitian_eigenvalue(g.matrix().cast<cplx>());
  out.outputs["compatible"] = r.compatible;
  out.pass = r.compatible;
  return out;
}

Outcome triple_complete(const json& in, const RunOptions& o) {
  const std::string from = string_field(in, "from", "triple-complete");
  const auto sym = [&] { return BilinearForm::symmetric(form_matrix(require_field(in, "g", "triple-complete"), "symmetric", "g"), o.tol); };
  const auto cs = [&] { return ComplexStructure::make(form_matrix(require_field(in, "J", "triple-complete"), "complex_structure", "J"), o.tol); };
  const auto anti = [&] {
    return BilinearForm::antisymmetric(form_matrix(require_field(in, "omega", "triple-complete"), "antisymmetric", "omega"), o.tol);
  };
  CompatibleTriple t = standard_triple(1);
  if (from == "g_J") {
    reject_unknown_keys(in, {"from", "g", "J"}, "triple-complete");
    t = complete_from_g_J(sym(), cs(), o.tol);
  } else if (from == "g_omega") {
    reject_unknown_keys(in, {"from", "g", "omega"}, "triple-complete");
    t = complete_from_g_omega(sym(), anti(), o.tol);
  } else if (from == "J_omega") {
    reject_unknown_keys(in, {"from", "J", "omega"}, "triple-complete");
    t = complete_from_J_omega(cs(), anti(), o.tol);
  } else {
    throw ParseError("triple-complete: 'from' must be g_J, g_omega or J_omega");
  }
  Outcome out;
  out.outputs = triple_to_json(t);
  out.residuals = triple_residuals(verify_triple(t, o.tol));
  out.residuals["g_min_eigenvalue"] = min_hermitian_eigenvalue(t.G().cast<cplx>());
  return out;
}

Outcome polarize(const json& in, const RunOptions& o) {
  reject_unknown_keys(in, {"triple", "n", "flavor", "frame"}, "polarize");
  const ComplexifiedSpace space = complexify(space_triple(in, o.tol, "polarize"), o.tol);
  const std::string flavor = string_field(in, "flavor", "polarize");
  Outcome out;
  if (flavor == "eigensplit") {
    if (in.contains("frame")) throw ParseError("polarize: eigensplit takes no frame");
    const EigenSplit sp = eigensplit(space, o.tol);
    const CMatrix P = sp.plus();
    json f = matrix_to_json(P);
    f["ambient_dim"] = space.dim();
    out.outputs["plus"] = f;
    out.residuals["eigen"] = max_abs(CMatrix(space.J() * P - I * P));
    out.residuals["g_orthonormality"] =
        max_abs(CMatrix(sp.basis().adjoint() * space.g_sesq() * sp.basis() - CMatrix::Identity(space.dim(), space.dim())));
    out.residuals["lagrangian"] = max_abs(CMatrix(P.transpose() * space.omega_bilin() * P));
    return out;
  }
  const Frame w = Frame::from_columns(complex_matrix(require_field(in, "frame", "polarize"), "frame"));
  CompatibleTriple t = standard_triple(1);
  if (flavor == "orthogonal") {
    const OrthogonalPolarization pol = OrthogonalPolarization::make(space, w, o.tol);
    out.residuals["orthogonality"] = pol.orthogonality_residual();
    t = triple_from_orthogonal(space, pol, o.tol);
  } else if (flavor == "positive_symplectic") {
    const PositiveSymplecticPolarization pol = PositiveSymplecticPolarization::make(space, w, o.tol);
    out.residuals["isotropy"] = pol.isotropy_residual();
    out.residuals["positivity_min"] = pol.positivity_min();
    t = triple_from_positive_symplectic(space, w, o.tol);
  } else {
    throw ParseError("polarize: 'flavor' must be eigensplit, orthogonal or positive_symplectic");
  }
  out.outputs["triple"] = triple_to_json(t);
  const TripleReport r = verify_triple(t, o.tol);
  for (auto& [k, v] : triple_residuals(r).items()) out.residuals[k] = v;
  out.residuals["recovered_plus_distance"] =
      principal_angle_distance(eigensplit(complexify(t, o.tol), o.tol).plus_frame(), w);
  out.pass = r.compatible;
  return out;
}

Outcome siegel_member(const json& in, const RunOptions& o) {
  reject_unknown_keys(in, {"Z", "model"}, "siegel-member");
  const CMatrix z = complex_matrix(require_field(in, "Z", "siegel-member"), "Z");
  require_finite(z, "Z");
  const std::string model = in.contains("model") ? string_field(in, "model", "siegel-member") : "disk";
  Outcome out;
  out.outputs["model"] = model;
  if (model == "disk") {
    const SiegelMembership m = siegel_membership(z, o.tol);
    out.residuals["symmetry"] = m.symmetric;
    out.residuals["contraction_min"] = m.contraction_min;
    SiegelPoint::make(z, o.tol);  // names the violated condition
  } else if (model == "halfspace") {
    const HalfspaceMembership m = halfspace_membership(z, o.tol);
    out.residuals["symmetry"] = m.symmetric;
    out.residuals["imag_min"] = m.imag_min;
    UpperHalfPoint::make(z, o.tol);
  } else {
    throw ParseError("siegel-member: 'model' must be disk or halfspace");
  }
  out.outputs["member"] = true;
  return out;
}

Outcome siegel_act(const json& in, const RunOptions& o) {
  reject_unknown_keys(in, {"a", "b", "Z"}, "siegel-act");
  const BlockSymplectic b = BlockSymplectic::make(complex_matrix(require_field(in, "a", "siegel-act"), "a"),
                                                  complex_matrix(require_field(in, "b", "siegel-act"), "b"), o.tol);
  const SiegelPoint z = SiegelPoint::make(complex_matrix(require_field(in, "Z", "siegel-act"), "Z"), o.tol);
  const SiegelPoint r = mobius_act(b, z, o.tol);
  Outcome out;
  json zj = matrix_to_json(r.Z());
  zj["model"] = "disk";
  out.outputs["Z"] = zj;
  out.residuals["block_identity"] = b.identity_residual();
  out.residuals["block_pairing"] = b.pairing_residual();
  out.residuals["contraction_min"] = siegel_membership(r.Z(), o.tol).contraction_min;
  return out;
}

Outcome grunsky_verb(const json& in, const RunOptions& o) {
  reject_unknown_keys(in, {"diffeo"}, "grunsky");
  const CircleDiffeo phi = CircleDiffeo::from_json(require_field(in, "diffeo", "grunsky"));
  const Index N = o.cutoff, K = o.effective_quadrature();
  const GrunskyResult g = grunsky(phi, N, K, 1, o.tol);
  Outcome out;
  json zj = matrix_to_json(g.point.Z());
  zj["model"] = "disk";
  out.outputs["cutoff"] = N;
  out.outputs["quadrature"] = K;
  out.outputs["aliasing_risk"] = g.aliasing_risk;
  out.outputs["Z"] = zj;
  out.residuals["norm"] = op_norm(g.point.Z());
  out.residuals["symmetry"] = g.symmetry;
  out.residuals["sigma_min_a"] = g.sigma_min_a;
  out.residuals["contraction_min"] = siegel_membership(g.point.Z(), o.tol).contraction_min;
  return out;
}

Outcome chart_find(const json& in, const RunOptions& o) {
  reject_unknown_keys(in, {"triple", "n", "frame", "u"}, "chart-find");
  const ComplexifiedSpace space = complexify(space_triple(in, o.tol, "chart-find"), o.tol);
  const EigenSplit sp = eigensplit(space, o.tol);
  if (in.contains("frame") == in.contains("u")) throw ParseError("chart-find: give exactly one of frame, u");
  Frame w = sp.plus_frame();
  if (in.contains("u")) {
    const RMatrix u = real_matrix(in.at("u"), "u");
    if (u.rows() != space.dim() || u.cols() != space.dim()) {
      throw Error(ErrorKind::DimensionMismatch, "u does not match the space");
    }
    const GroupFlags f = group_membership(u, space.triple(), o.tol);
    if (!f.o) throw Error(ErrorKind::NotOrthogonal, "u is not g-orthogonal");
    w = Frame::from_columns(u.cast<cplx>() * sp.plus());
  } else {
    w = Frame::from_columns(complex_matrix(in.at("frame"), "frame"));
  }
  OrthogonalPolarization::make(space, w, o.tol);
  const ChartResult c = find_chart(w, sp, o.tol);
  const FredholmIndex fi = fredholm_index(w, sp);
  Outcome out;
  out.outputs["S"] = c.S.sorted();
  out.outputs["Z"] = matrix_to_json(c.Z.Z());
  out.outputs["kernel_dims"] = c.kernel_dims;
  out.outputs["steps"] = c.steps();
  out.outputs["dim_ker"] = fi.dim_ker;
  out.outputs["dim_coker"] = fi.dim_coker;
  out.residuals["antisymmetry"] = max_abs(CMatrix(c.Z.Z() + c.Z.Z().transpose()));
  out.residuals["graph_distance"] = principal_angle_distance(chart_graph_frame(c.S, c.Z.Z(), sp), w);
  out.pass = c.steps() <= space.n() && fi.dim_ker == fi.dim_coker;
  return out;
}

Outcome chart_transition(const json& in, const RunOptions& o) {
  reject_unknown_keys(in, {"n", "S1", "S2", "Z1", "direction"}, "chart-transition");
  const Index n = positive_index(in, "n", "chart-transition");
  const ChartIndex s1 = ChartIndex::make(slot_list(require_field(in, "S1", "chart-transition"), "S1"), n);
  const ChartIndex s2 = ChartIndex::make(slot_list(require_field(in, "S2", "chart-transition"), "S2"), n);
  const CMatrix z = complex_matrix(require_field(in, "Z1", "chart-transition"), "Z1");
  if (z.rows() != n || z.cols() != n) throw Error(ErrorKind::DimensionMismatch, "Z1 must be n×n");
  const OrthoGraphOperator z1 = OrthoGraphOperator::make(z, o.tol);
  const OrthoGraphOperator z2 = transition(s1, s2, z1, o.tol);
  Outcome out;
  out.outputs["Z2"] = matrix_to_json(z2.Z());
  out.residuals["antisymmetry"] = max_abs(CMatrix(z2.Z() + z2.Z().transpose()));
  if (in.contains("direction")) {
    const CMatrix w = complex_matrix(in.at("direction"), "direction");
    OrthoGraphOperator::make(w, o.tol);
    const HolomorphyReport h = holomorphy_check(s1, s2, z1, w, 1e-5, o.tol);
    out.residuals["holomorphy_fd"] = h.fd_error;
    out.residuals["holomorphy_cr"] = h.cr_error;
    out.pass = h.residual() <= o.tol.cr;
  }
  return out;
}

Outcome fock_car_verb(const json& in, const RunOptions& o) {
  reject_unknown_keys(in, {"n", "v", "w"}, "fock-car");
  const Index n = positive_index(in, "n", "fock-car");
  const ComplexifiedSpace s = complexify(fermion_triple(n), o.tol);
  const FockRep rep = build_fock(s, fermion_polarization(s));
  constexpr double kCar = 1e-12;
  Outcome out;
  out.residuals["car_exhaustive"] = car_exhaustive(rep);
  out.residuals["adjoint"] = adjoint_residual(rep);
  out.outputs["dim"] = rep.dim();
  out.outputs["cyclic_rank"] = vacuum_cyclicity_rank(rep);
  out.outputs["graded"] = grading_respected(rep);
  out.pass = out.residuals["car_exhaustive"].get<double>() <= kCar && out.residuals["adjoint"].get<double>() <= kCar &&
             out.outputs["cyclic_rank"].get<Index>() == rep.dim() && out.outputs["graded"].get<bool>();
  if (in.contains("v") != in.contains("w")) throw ParseError("fock-car: give both v and w or neither");
  if (in.contains("v")) {
    const CVector v = complex_vector(in.at("v"), "v"), w = complex_vector(in.at("w"), "w");
    const double r = car_check(rep, v, w);
    out.residuals["car_pair"] = r;
    out.pass = out.pass && r <= kCar * std::max(1.0, v.norm() * w.norm());
  }
  return out;
}

Outcome torus_verb(const json& in, const RunOptions& o) {
  reject_unknown_keys(in, {"tau"}, "torus-period");
  const TorusPeriod p = torus_period(complex_from_json(require_field(in, "tau", "torus-period")), o.tol);
  Outcome out;
  json zj = matrix_to_json(p.Z.Z());
  zj["model"] = "halfspace";
  out.outputs["Z"] = zj;
  out.outputs["a_period"] = complex_to_json(p.a_period);
  out.outputs["b_period"] = complex_to_json(p.b_period);
  out.residuals["hodge"] = p.hodge_residual;
  out.residuals["imag_min"] = halfspace_membership(p.Z.Z(), o.tol).imag_min;
  return out;
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"triple-verify", triple_verify},   {"triple-complete", triple_complete},
      {"polarize", polarize},             {"siegel-member", siegel_member},
      {"siegel-act", siegel_act},         {"grunsky", grunsky_verb},
      {"chart-find", chart_find},         {"chart-transition", chart_transition},
      {"fock-car", fock_car_verb},        {"torus-period", torus_verb},
  };
  return h;
}

bool is_slot_kind(const std::string& k) {
  return k == "symmetric" || k == "antisymmetric" || k == "complex_structure";
}

}  // namespace

json RunOptions::to_json() const {
  return json{{"tol_eq", tol.eq}, {"tol_spd", tol.spd}, {"tol_cr", tol.cr}, {"seed", seed},
              {"cutoff", cutoff}, {"quadrature", effective_quadrature()}};
}

const std::vector<std::string>& verb_names() {
  static const std::vector<std::string> v = {"triple-verify", "triple-complete", "polarize", "siegel-member",
                                             "siegel-act",    "grunsky",         "chart-find", "chart-transition",
                                             "fock-car",      "torus-period",    "report-suite"};
  return v;
}

bool is_verb(const std::string& verb) {
  const auto& v = verb_names();
  return std::find(v.begin(), v.end(), verb) != v.end();
}

json run_verb(const std::string& verb, const json& input, const RunOptions& opts) {
  if (!is_verb(verb)) throw ParseError("unknown verb '" + verb + "'");
  if (!input.is_object()) throw ParseError(verb + ": input must be a JSON object");
  opts.tol.validate();
  if (verb == "report-suite") return report_suite(input, opts);

  json report;
  report["verb"] = verb;
  report["options"] = opts.to_json();
  report["inputs"] = input;
  try {
    Outcome out = handlers().at(verb)(input, opts);
    report["outputs"] = std::move(out.outputs);
    report["residuals"] = std::move(out.residuals);
    report["pass"] = out.pass;
  } catch (const Error& e) {
    report["outputs"] = json::object();
    report["residuals"] = json::object();
    report["pass"] = false;
    report["error"] = json{{"name", e.name()}, {"message", e.what()}};
  }
  return report;
}

json merge_inputs(const std::vector<json>& docs) {
  json merged = json::object();
  const auto put = [&](const std::string& key, const json& value) {
    if (merged.contains(key)) throw ParseError("input key '" + key + "' given twice");
    merged[key] = value;
  };
  for (const json& d : docs) {
    if (!d.is_object()) throw ParseError("each input document must be a JSON object");
    if (d.contains("kind") && d.at("kind").is_string() && is_slot_kind(d.at("kind").get<std::string>()) &&
        d.contains("rows")) {
      const std::string k = d.at("kind").get<std::string>();
      put(k == "symmetric" ? "g" : k == "antisymmetric" ? "omega" : "J", d);
      continue;
    }
    for (auto it = d.begin(); it != d.end(); ++it) put(it.key(), it.value());
  }
  return merged;
}

}  // namespace polargrass
