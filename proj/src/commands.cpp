#include "opkit/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "opkit/semigroup.hpp"
#include "opkit/shimorin.hpp"

namespace opkit {

namespace {

using io::Json;

std::string num(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

Json head(const PowerSeries& f, std::size_t k) {
  Json arr = Json::array();
  for (std::size_t n = 0; n <= std::min(k, f.order()); ++n) {
    arr.push_back(io::to_json(f[n]));
  }
  return arr;
}

Json matrix_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(io::to_json(m(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix parse_generator(const Json& j) {
  if (j.is_object() && j.contains("kind")) {
    const StructuredOperator op = io::parse_operator(j);
    if (op.kind() != StructuredOperator::Kind::Dense) {
      throw Error(ErrorCode::InvalidArgument, "semigroup generator must be a dense matrix");
    }
    return op.matrix();
  }
  return io::parse_matrix(j);
}

bool class_value(const ClassificationReport& c, const std::string& name) {
  if (name == "bounded_below") return c.bounded_below;
  if (name == "concave") return c.concave;
  if (name == "two_contraction") return c.two_contraction;
  if (name == "two_isometry") return c.two_isometry;
  if (name == "pure") return c.pure;
  if (name == "wandering") return c.wandering;
  throw Error(ErrorCode::InvalidArgument, "unknown class '" + name + "'");
}

}  // namespace

Report run_classify(const ClassifyRequest& req, const ToleranceConfig& tol) {
  tol.validate();
  Report r("classify");
  r.record_input("operator", req.op.name, req.op.text);
  r.record_tolerances(tol);
  const StructuredOperator op = io::parse_operator(io::parse_text(req.op.text));
  const ClassificationReport c = classify_operator(op, tol);

  Json& res = r.results();
  res["ambient"] = op.ambient() ? Json(*op.ambient()) : Json(nullptr);
  res["bounded_below"] = c.bounded_below;
  res["bounded_below_margin"] = c.bounded_below_margin;
  res["concave"] = c.concave;
  res["max_defect"] = c.max_defect;
  res["two_contraction"] = c.two_contraction;
  res["min_defect"] = c.min_defect;
  res["two_isometry"] = c.two_isometry;
  res["defect_norm"] = c.defect_norm;
  res["pure"] = c.pure;
  res["pure_method"] = c.pure_method;
  res["wandering"] = c.wandering;
  res["wandering_method"] = c.wandering_method;
  res["spectral_radius"] = spectral_radius_estimate(op);

  for (const std::string& e : req.expect) {
    const bool negate = e.rfind("not_", 0) == 0;
    const std::string name = negate ? e.substr(4) : e;
    r.check_flag("expect." + e, class_value(c, name) != negate);
  }
  return r;
}

Report run_semigroup(const SemigroupRequest& req, const ToleranceConfig& tol) {
  tol.validate();
  Report r("semigroup");
  r.record_input("generator", req.generator.name, req.generator.text);
  r.record_tolerances(tol);
  const SemigroupSpec s{parse_generator(io::parse_text(req.generator.text)), req.generator.name};
  const double a_norm = s.generator.spectral_norm();
  Json& res = r.results();
  res["dimension"] = s.generator.dim();

  if (!req.times.empty()) {
    Json ev = Json::array();
    for (double t : req.times) {
      const ComplexMatrix tt = evolve(s, t);
      const ComplexMatrix half = evolve(s, 0.5 * t);
      Json e;
      e["t"] = t;
      e["norm"] = tt.spectral_norm();
      e["matrix"] = matrix_json(tt.eigen());
      ev.push_back(std::move(e));
      const double law = (half * half - tt).spectral_norm() / std::max(1.0, tt.spectral_norm());
      r.check("evolution.half_step_law@t=" + num(t), law, tol.residual_tol);
    }
    res["evolution"] = std::move(ev);
  }
  if (req.cogenerator) {
    const ComplexMatrix v = cogenerator(s, tol);
    res["cogenerator"] = matrix_json(v.eigen());
    const double rt = (inverse_cayley(v, tol) - s.generator).spectral_norm();
    r.check("cayley.round_trip", rt, tol.residual_tol * std::max(1.0, a_norm));
  }
  const bool growth = req.growth_bound || (req.times.empty() && !req.cogenerator &&
                                           !req.equivalence_suite);
  if (growth) {
    const GrowthBound g = growth_bound(s);
    res["growth_bound"]["omega"] = g.omega;
    res["growth_bound"]["method"] = g.method;
    for (double t : {0.5, 1.0, 2.0}) {
      r.check("growth_bound.consistency@t=" + num(t), growth_bound_consistency(s, g, t), 1e-8);
    }
  }
  if (req.equivalence_suite) {
    const EquivalenceGrid grid = EquivalenceGrid::standard();
    const EquivalenceReport e = concavity_equivalence_suite(s, req.samples, grid, tol);
    Json& j = res["equivalence"];
    j["every_member_concave"] = e.every_member_concave;
    j["member_margin"] = e.member_margin;
    j["norm_squared_concave"] = e.norm_squared_concave;
    j["second_difference_margin"] = e.second_difference_margin;
    j["generator_criterion"] = e.generator_criterion;
    j["generator_margin"] = e.generator_margin;
    j["cogenerator_exists"] = e.cogenerator_exists;
    j["cogenerator_concave"] = e.cogenerator_concave;
    j["cogenerator_margin"] = e.cogenerator_margin;
    j["agree"] = e.agree;
    j["grid"]["times"] = grid.times;
    j["grid"]["step"] = grid.step;
    j["grid"]["slack"] = grid.slack;
    j["samples"] = req.samples;
    r.check_flag("equivalence.agree", e.agree);
  }
  return r;
}

Report run_model(const ModelRequest& req, const ToleranceConfig& tol) {
  tol.validate();
  Report r("model");
  r.record_input("operator", req.op.name, req.op.text);
  if (req.coeffs) {
    r.record_input("vector", req.coeffs->name, req.coeffs->text);
  }
  r.record_tolerances(tol);
  r.provenance()["truncation_order"] = req.order;

  const StructuredOperator op = io::parse_operator(io::parse_text(req.op.text));
  const AnalyticModel m = build_model(op, tol);
  Json& res = r.results();
  res["defect_dim"] = m.defect_dim();
  res["radius"] = m.radius();
  res["l_norm"] = m.l_norm();
  res["dual_spectral_radius"] = m.dual_spectral_radius();
  Json basis = Json::array();
  for (const auto& e : m.defect_basis()) {
    basis.push_back(io::to_json(e));
  }
  res["defect_basis"] = std::move(basis);
  r.warn("evaluation disc radius is 1/||L|| = " + num(m.radius()) + "; r(T') = " +
         num(m.dual_spectral_radius()) + " is reported for comparison only");

  FiniteSupportVector x = FiniteSupportVector::basis(0, op.ambient());
  if (req.coeffs) {
    x = io::parse_vector(io::parse_text(req.coeffs->text), op.ambient());
    const ModelCoefficients c = coefficients(m, x, req.order);
    Json vals = Json::array();
    for (const CVector& v : c.coeffs) {
      Json comp = Json::array();
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        comp.push_back(io::to_json(v(i)));
      }
      vals.push_back(std::move(comp));
    }
    res["coefficients"]["order"] = c.order;
    res["coefficients"]["rho"] = c.rho;
    res["coefficients"]["tail_bound"] = c.tail_bound;
    res["coefficients"]["values"] = std::move(vals);
  } else if (req.verify_intertwine || req.verify_reproduce || req.verify_semigroup) {
    r.warn("no --coeffs vector given; verifications use x = e_0");
  }

  if (req.kernel) {
    const auto [lambda, z] = *req.kernel;
    const KernelValue k = kernel_eval(m, lambda, z, tol);
    const KernelValue kt = kernel_eval(m, z, lambda, tol);
    res["kernel"]["lambda"] = io::to_json(lambda);
    res["kernel"]["z"] = io::to_json(z);
    res["kernel"]["value"] = matrix_json(k.value);
    res["kernel"]["order"] = k.order;
    res["kernel"]["tail_bound"] = k.tail_bound;
    const double herm = (k.value - kt.value.adjoint()).cwiseAbs().maxCoeff();
    r.check("kernel.hermitian_symmetry", herm, k.tail_bound + kt.tail_bound + 1e-14);
  }
  if (req.verify_intertwine) {
    const IntertwiningReport it = verify_intertwining(m, x, req.order);
    res["intertwining"]["order"] = it.order;
    res["intertwining"]["max_residual"] = it.max_residual;
    r.check("intertwining", it.max_residual, 1e-12);
  }
  if (req.verify_reproduce) {
    const ReproducingReport rp =
        verify_reproducing(m, x, req.lambda, m.defect_basis().front(), tol);
    res["reproducing"]["lambda"] = io::to_json(req.lambda);
    res["reproducing"]["lhs"] = io::to_json(rp.lhs);
    res["reproducing"]["rhs"] = io::to_json(rp.rhs);
    res["reproducing"]["order"] = rp.order;
    res["reproducing"]["tail_bound"] = rp.tail_bound;
    r.check("reproducing", rp.residual, rp.tail_bound + tol.residual_tol);
  }
  if (req.verify_semigroup) {
    const SemigroupModelReport sg = verify_semigroup_model(m, req.t, x, req.order);
    res["semigroup_model"]["t"] = sg.t;
    res["semigroup_model"]["order"] = sg.order;
    r.check("semigroup_model.identity_at_zero", sg.identity_residual, 0.0);
    r.check("semigroup_model.generator", sg.generator_residual, 1e-6);
    r.check("semigroup_model.commutation", sg.commutation_residual, 1e-12);
    r.check("semigroup_model.law", sg.law_residual, 1e-10);
    r.warn("sign convention: " + sg.sign_convention);
  }
  return r;
}

Report run_hardy(const HardyRequest& req, const ToleranceConfig& tol) {
  tol.validate();
  Report r("hardy");
  r.record_tolerances(tol);
  r.provenance()["truncation_order"] = req.order;
  r.provenance()["dimension"] = req.n;
  Json& res = r.results();

  std::optional<PowerSeries> phi;
  std::optional<BlaschkeSpec> blaschke;
  if (req.blaschke) {
    blaschke = BlaschkeSpec{*req.blaschke, 1.0};
  } else if (req.symbol) {
    r.record_input("symbol", req.symbol->name, req.symbol->text);
    const Json j = io::parse_text(req.symbol->text);
    if (j.is_object() && j.contains("zeros")) {
      blaschke = io::parse_blaschke(j);
    } else {
      phi = io::parse_series(j);
    }
  }
  if (blaschke) {
    phi = blaschke_series(*blaschke, req.order);
    double worst = 0.0;
    for (int k = 0; k < 64; ++k) {
      const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / 64.0);
      worst = std::max(worst, std::abs(std::abs(blaschke_eval(*blaschke, z)) - 1.0));
    }
    res["symbol"]["degree"] = blaschke->degree();
    r.check("blaschke.boundary_modulus", worst, 1e-12);
  }
  if (phi) {
    res["symbol"]["order"] = phi->order();
    res["symbol"]["truncated"] = phi->truncated();
    res["symbol"]["head"] = head(*phi, 15);
  }
  const auto need_symbol = [&](const char* what) -> const PowerSeries& {
    if (!phi) {
      throw Error(ErrorCode::InvalidArgument,
                  std::string(what) + " needs --blaschke or --symbol-file");
    }
    return *phi;
  };

  std::optional<PowerSeries> phi_t;
  if (req.semigroup_t) {
    phi_t = inner_semigroup_symbol(need_symbol("--semigroup-t"), *req.semigroup_t, req.order);
    res["semigroup_symbol"]["t"] = *req.semigroup_t;
    res["semigroup_symbol"]["order"] = phi_t->order();
    res["semigroup_symbol"]["head"] = head(*phi_t, 15);
    r.warn("sign convention: symbol exp(t(phi+1)/(phi-1))");
  }
  if (req.inner_check) {
    const PowerSeries& f = phi_t ? *phi_t : need_symbol("--inner-check");
    const InnerCheckReport ic = inner_check(f, req.grid, tol);
    Json circles = Json::array();
    for (const auto& c : ic.circles) {
      Json e;
      e["radius"] = c.radius;
      e["max_modulus"] = c.max_modulus;
      e["mean_modulus"] = c.mean_modulus;
      e["tail_estimate"] = c.tail_estimate;
      circles.push_back(std::move(e));
    }
    res["inner_check"]["target"] = phi_t ? "semigroup_symbol" : "symbol";
    res["inner_check"]["grid"] = req.grid;
    res["inner_check"]["circles"] = std::move(circles);
    r.check("inner_check.bounded", std::max(0.0, ic.max_modulus - 1.0), tol.residual_tol);
    r.check_flag("inner_check.radial_means_increase", ic.means_increase);
    r.warn("inner_check is a necessary-condition sample, not a certificate of inner-ness");
  }
  if (req.model_space) {
    const PowerSeries& f = need_symbol("--model-space");
    const CMatrix k = model_space_basis(f, req.n, tol.rank_tol);
    res["model_space"]["dim"] = k.cols();
    res["model_space"]["basis"] = matrix_json(k.transpose());
    // Orthogonality to phi z^j, j <= n/2.
    const ComplexMatrix t = ToeplitzTrunc::analytic(f, req.n).matrix();
    const auto cols = static_cast<Eigen::Index>(req.n / 2 + 1);
    const double orth = k.cols() > 0 ? (k.adjoint() * t.eigen().leftCols(cols)).cwiseAbs().maxCoeff()
                                     : 0.0;
    r.check("model_space.orthogonal_to_phi_range", orth, tol.rank_tol);
    if (blaschke) {
      r.check_flag("model_space.dim_equals_degree",
                   static_cast<std::size_t>(k.cols()) == blaschke->degree());
    }
  }
  if (req.ladder) {
    const LadderReport l =
        verify_ladder_decomposition(need_symbol("--ladder"), *req.ladder, req.n, tol.rank_tol);
    Json& j = res["ladder"];
    j["levels"] = l.levels;
    j["model_dim"] = l.model_dim;
    j["total_rank"] = l.total_rank;
    j["expected_total"] = l.expected_total;
    j["off_block_max"] = l.off_block_max;
    j["diag_block_residual"] = l.diag_block_residual;
    r.check("ladder.off_blocks", l.off_block_max, tol.rank_tol);
    r.check("ladder.level_isometry", l.diag_block_residual, tol.rank_tol);
    r.check_flag("ladder.dimension_count", l.total_rank == l.expected_total);
  }
  if (req.caradus) {
    CaradusReport c;
    std::string target;
    if (phi) {
      const std::optional<std::size_t> mult =
          req.multiplicity ? req.multiplicity
                           : (blaschke ? std::optional<std::size_t>(blaschke->degree())
                                       : std::nullopt);
      c = caradus_certificate(ToeplitzTrunc::analytic(*phi, req.n).adjoint(), tol.rank_tol, mult);
      target = "coanalytic_toeplitz";
    } else if (req.multiplicity) {
      c = caradus_certificate(block_backward_shift(req.n, *req.multiplicity), tol.rank_tol,
                              req.multiplicity);
      target = "block_backward_shift";
    } else {
      throw Error(ErrorCode::InvalidArgument, "--caradus needs a symbol or --multiplicity");
    }
    Json& j = res["caradus"];
    j["target"] = target;
    j["n"] = c.n;
    j["rank"] = c.rank;
    j["ker_dim"] = c.ker_dim;
    j["raw_surjective"] = c.raw_surjective;
    j["upper_bandwidth"] = c.upper_bandwidth;
    j["lower_bandwidth"] = c.lower_bandwidth;
    j["interior_cokernel_dim"] = c.interior_cokernel_dim;
    j["interior_ker_dim"] = c.interior_ker_dim;
    j["surjective"] = c.surjective;
    j["kernel_truncation_artifact"] = c.kernel_truncation_artifact;
    j["surjectivity_truncation_artifact"] = c.surjectivity_truncation_artifact;
    j["multiplicity"] = c.multiplicity ? Json(*c.multiplicity) : Json(nullptr);
    r.check_flag("caradus.surjective", c.surjective);
    if (c.multiplicity) {
      r.check_flag("caradus.kernel_matches_multiplicity", c.kernel_matches_multiplicity);
    }
    r.warn(c.caveat);
  }
  if (req.differentiation_scan) {
    const std::vector<Complex> lambdas = {0.0, 0.5, -0.5, {0.0, 0.5}, 1.0, 2.0};
    const KernelScanReport k =
        differentiation_kernel_scan(std::min<std::size_t>(req.n, 24), lambdas, tol.rank_tol);
    Json dims = Json::array();
    for (std::size_t i = 0; i < k.lambdas.size(); ++i) {
      dims.push_back({{"lambda", io::to_json(k.lambdas[i])}, {"ker_dim", k.ker_dims[i]}});
    }
    res["differentiation_scan"]["points"] = std::move(dims);
    res["differentiation_scan"]["max_ker_dim"] = k.max_ker_dim;
    r.check_flag("differentiation_scan.ker_at_most_one", k.at_most_one);
    r.warn("differentiation scan is an illustration on a finite truncation");
  }
  if (req.composition_r) {
    const ComplexMatrix c = composition_operator_trunc(*req.composition_r, req.n);
    res["composition"]["r"] = *req.composition_r;
    res["composition"]["matrix"] = matrix_json(c.eigen());
    double col0 = std::abs(c(0, 0) - 1.0);
    for (std::size_t i = 1; i < c.dim(); ++i) {
      col0 = std::max(col0, std::abs(c(i, 0)));
    }
    r.check("composition.column0_is_e0", col0, 0.0);
  }
  return r;
}

}  // namespace opkit
