#include "opkit/acceptance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <sstream>

#include "acceptance_oracles.hpp"
#include "opkit/commands.hpp"
#include "opkit/hardy.hpp"
#include "opkit/semigroup.hpp"
#include "opkit/shimorin.hpp"

namespace opkit {

namespace {

using oracle::Rng;

struct Parts {
  std::vector<Check> list;

  // Tracks the worst residual of a named part.
  void add(const std::string& name, double residual, double tolerance) {
    for (auto& c : list) {
      if (c.name == name) {
        c.residual = std::max(c.residual, residual);
        c.passed = c.passed && std::isfinite(residual) && residual <= tolerance;
        return;
      }
    }
    list.push_back({name, std::isfinite(residual) && residual <= tolerance, residual, tolerance});
  }
  // Counts failures of a boolean part; residual = number of failures.
  void flag(const std::string& name, bool ok) { add(name, ok ? 0.0 : 1.0, 0.0); }
  void count(const std::string& name, bool ok) {
    for (auto& c : list) {
      if (c.name == name) {
        c.residual += ok ? 0.0 : 1.0;
        c.passed = c.residual == 0.0;
        return;
      }
    }
    list.push_back({name, ok, ok ? 0.0 : 1.0, 0.0});
  }
};

CriterionOutcome finish(int id, std::string title, Parts p, std::string note = {}) {
  CriterionOutcome c;
  c.id = id;
  c.title = std::move(title);
  c.parts = std::move(p.list);
  c.passed = !c.parts.empty() &&
             std::all_of(c.parts.begin(), c.parts.end(), [](const Check& k) { return k.passed; });
  c.note = std::move(note);
  return c;
}

// Criteria 2 and 10 share this ensemble.
std::vector<CMatrix> equivalence_ensemble(unsigned long long seed) {
  Rng rng(seed);
  std::vector<CMatrix> out;
  for (int i = 0; i < 100; ++i) {
    switch (i % 3) {
      case 0: out.push_back(oracle::skew_hermitian(6, rng)); break;
      case 1: out.push_back(oracle::shifted_negative_definite(6, rng)); break;
      default: out.push_back(oracle::gaussian(6, rng)); break;
    }
  }
  return out;
}

CriterionOutcome c1_cayley(unsigned long long seed) {
  Rng rng(seed);
  Parts p;
  for (int i = 0; i < 50; ++i) {
    const Eigen::Index n = 1 + i % 8;
    const SemigroupSpec s{ComplexMatrix(oracle::left_half_plane(n, rng)), "lhp"};
    const ComplexMatrix back = inverse_cayley(cogenerator(s));
    p.add("round_trip", (back - s.generator).spectral_norm(), 1e-9);
  }
  return finish(1, "Cayley round trip", std::move(p), "50 generators, n <= 8");
}

CriterionOutcome c2_equivalence(unsigned long long seed) {
  Parts p;
  ToleranceConfig tol;
  tol.psd_tol = 1e-10;
  const auto ens = equivalence_ensemble(seed);
  int concave = 0;
  int label_mismatch = 0;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    const SemigroupSpec s{ComplexMatrix(ens[i]), "ensemble"};
    const EquivalenceReport e =
        concavity_equivalence_suite(s, 16, EquivalenceGrid::standard(), tol, seed + i);
    p.count("four_way_agreement", e.agree);
    concave += e.generator_criterion ? 1 : 0;
    label_mismatch += (e.generator_criterion != (i % 3 == 0)) ? 1 : 0;
  }
  return finish(2, "concavity four-way agreement", std::move(p),
                "100 generators, " + std::to_string(concave) + " concave, " +
                    std::to_string(label_mismatch) + " off the construction label");
}

CriterionOutcome c3_projection() {
  Parts p;
  for (const auto& w : {WeightedShift::isometric(), WeightedShift::dirichlet()}) {
    const AnalyticModel m = build_model(StructuredOperator::shift(w));
    const ProjectionCheck c = check_defect_projection(m, 64);
    p.add("idempotent", c.idempotence, 1e-14);
    p.add("self_adjoint", c.self_adjointness, 1e-14);
    p.add("kills_range_T", c.annihilates_range, 1e-14);
    p.add("range_in_E", c.range_in_defect, 1e-14);
  }
  return finish(3, "defect projection P = I - TL", std::move(p), "isometric and Dirichlet shifts");
}

CriterionOutcome c4_intertwining(unsigned long long seed) {
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> supp(0, 150);
  Parts p;
  const std::vector<std::pair<WeightedShift, bool>> models = {{WeightedShift::isometric(), false},
                                                              {WeightedShift::dirichlet(), true}};
  for (const auto& [w, dirichlet] : models) {
    const AnalyticModel m = build_model(StructuredOperator::shift(w));
    for (int i = 0; i < 20; ++i) {
      const FiniteSupportVector x = oracle::random_vector(supp(rng), std::nullopt, rng);
      p.add("coefficient_shift", verify_intertwining(m, x, 200).max_residual, 1e-12);
      const ModelCoefficients c = coefficients(m, x, 200);
      double dev = 0.0;
      for (std::size_t n = 0; n <= 200; ++n) {
        const double beta = dirichlet ? oracle::dirichlet_beta(n) : 1.0;
        dev = std::max(dev, std::abs(c.coeffs[n](0) - x.get(n) / beta));
      }
      p.add("closed_form_coefficients", dev, 1e-12);
    }
  }
  return finish(4, "intertwining UT = SU", std::move(p), "20 vectors per model, N = 200");
}

CriterionOutcome c5_reproducing(unsigned long long seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> rad(0.0, 0.5);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * 3.141592653589793);
  std::uniform_int_distribution<std::size_t> supp(0, 30);
  Parts p;
  for (const auto& w : {WeightedShift::isometric(), WeightedShift::dirichlet()}) {
    const AnalyticModel m = build_model(StructuredOperator::shift(w));
    const FiniteSupportVector e0 = m.defect_basis().front();
    for (int i = 0; i < 10; ++i) {
      const FiniteSupportVector x = oracle::random_vector(supp(rng), std::nullopt, rng);
      const Complex lambda = std::polar(rad(rng), ph(rng));
      p.add("reproducing", verify_reproducing(m, x, lambda, e0).residual, 1e-8);
    }
    for (int k = 0; k < 10; ++k) {
      const Complex z = std::polar(0.09 * k, 0.7 * k);
      const KernelValue kv = kernel_eval(m, 0.0, z);
      const CMatrix id = CMatrix::Identity(kv.value.rows(), kv.value.cols());
      p.add("kernel_at_zero_is_identity", (kv.value - id).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
  return finish(5, "reproducing property", std::move(p), "|lambda| <= 0.5, both models");
}

CriterionOutcome c6_kernel_oracles() {
  Parts p;
  const AnalyticModel iso = build_model(StructuredOperator::shift(WeightedShift::isometric()));
  const AnalyticModel dir = build_model(StructuredOperator::shift(WeightedShift::dirichlet()));
  const double radii[5] = {0.0, 0.2, 0.4, 0.6, 0.7};
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      const Complex lambda = std::polar(radii[a], 0.9 * a + 0.3);
      const Complex z = std::polar(radii[b], -1.1 * b + 0.5);
      const Complex ki = kernel_eval(iso, lambda, z).value(0, 0);
      const Complex kd = kernel_eval(dir, lambda, z).value(0, 0);
      p.add("szego_brute_force", std::abs(ki - oracle::szego_series(lambda, z)), 1e-10);
      p.add("szego_closed_form", std::abs(ki - 1.0 / (1.0 - z * std::conj(lambda))), 1e-10);
      p.add("dirichlet_brute_force", std::abs(kd - oracle::dirichlet_series(lambda, z)), 1e-10);
      p.add("dirichlet_closed_form", std::abs(kd - oracle::dirichlet_closed(lambda, z)), 1e-10);
    }
  }
  return finish(6, "kernel oracles", std::move(p), "5 x 5 grid, |lambda|, |z| <= 0.7");
}

CriterionOutcome c7_multiplier() {
  Parts p;
  constexpr std::size_t deg = 128;
  const AnalyticModel dir = build_model(StructuredOperator::shift(WeightedShift::dirichlet()));
  const std::pair<double, double> pairs[] = {{0.5, 1.0}, {1.0, 1.0}, {0.25, 2.0}, {2.0, 0.5}};
  Rng rng(7);
  for (const auto& [t, s] : pairs) {
    const PowerSeries et = semigroup_multiplier(t, deg);
    const PowerSeries es = semigroup_multiplier(s, deg);
    const PowerSeries ets = semigroup_multiplier(t + s, deg);
    const PowerSeries prod = series_mul(et, es);
    double law = 0.0;
    for (std::size_t n = 0; n <= deg; ++n) {
      law = std::max(law, std::abs(prod[n] - ets[n]));
    }
    p.add("semigroup_law", law, 1e-10);
    p.add("constant_term", std::abs(et[0] - std::exp(-t)), 1e-12);

    const FiniteSupportVector x = oracle::random_vector(12, std::nullopt, rng);
    for (const auto& v : {FiniteSupportVector::basis(0, std::nullopt), x}) {
      const SemigroupModelReport r = verify_semigroup_model(dir, t, v, deg);
      p.add("finite_difference_generator", r.generator_residual, 1e-6);
      p.add("shift_commutation", r.commutation_residual, 1e-12);
    }

    const PowerSeries h = inner_semigroup_symbol(PowerSeries::monomial(1, deg), t, deg);
    const std::vector<double> lag = oracle::laguerre_multiplier(t, deg);
    double cross = 0.0;
    double lg = 0.0;
    for (std::size_t n = 0; n <= deg; ++n) {
      cross = std::max(cross, std::abs(h[n] - et[n]));
      lg = std::max(lg, std::abs(et[n] - lag[n]));
    }
    p.add("agrees_with_inner_symbol", cross, 1e-12);
    p.add("agrees_with_laguerre_oracle", lg, 1e-12);
  }
  return finish(7, "multiplier semigroup model", std::move(p), "degree 128");
}

CriterionOutcome c8_wold(unsigned long long seed) {
  Rng rng(seed);
  std::uniform_int_distribution<int> usize(0, 5);
  std::uniform_int_distribution<int> nsize(1, 5);
  Parts p;
  for (int i = 0; i < 20; ++i) {
    const Eigen::Index u = usize(rng);
    const Eigen::Index s = nsize(rng);
    const Eigen::Index n = u + s;
    CMatrix f = CMatrix::Zero(n, n);
    if (u > 0) {
      f.topLeftCorner(u, u) = oracle::unitary(u, rng);
    }
    f.bottomRightCorner(s, s) = oracle::nilpotent(s, rng);
    const CMatrix w = oracle::unitary(n, rng);
    const CMatrix v = w * f * w.adjoint();
    const WoldReport r =
        wold_decompose(StructuredOperator::dense(ComplexMatrix(v)), static_cast<std::size_t>(n) + 1);
    p.count("dim_H1_exact", r.dim_h1 == static_cast<std::size_t>(u));
    p.count("wandering_span_is_H2", r.wandering_ok);
    p.add("unitarity_on_H1", r.unitarity_residual, 1e-10);
  }
  for (int i = 0; i < 50; ++i) {
    const Eigen::Index n = 1 + i % 8;
    const RigidityReport r = finite_rigidity_check(ComplexMatrix(oracle::unitary(n, rng)));
    p.count("concave_and_invertible", r.concave && r.invertible);
    p.add("rigidity_unitarity", r.unitarity_residual, 1e-8);
  }
  return finish(8, "Wold decomposition and rigidity", std::move(p),
                "20 U + N blocks up to 10, 50 unitaries");
}

CriterionOutcome c9_ladder() {
  Parts p;
  constexpr double tol = 1e-10;
  struct Case {
    std::string name;
    PowerSeries phi;
    std::size_t degree;
  };
  const std::vector<Case> cases = {
      {"z", PowerSeries::monomial(1, 63), 1},
      {"B(0.5)", blaschke_series({{0.5}, 1.0}, 255), 1},
      {"B(0.3,-0.4)", blaschke_series({{0.3, -0.4}, 1.0}, 255), 2},
  };
  for (const auto& c : cases) {
    const LadderReport l = verify_ladder_decomposition(c.phi, 4, 64, tol);
    p.add("gram_off_blocks", l.off_block_max, tol);
    p.count("dimension_count", l.total_rank == l.expected_total);
    p.count("dim_K_equals_degree", l.model_dim == c.degree);
  }
  return finish(9, "ladder decomposition of H^2", std::move(p), "m = 4, n = 64");
}

CriterionOutcome c10_growth(unsigned long long seed) {
  Parts p;
  ToleranceConfig tol;
  tol.psd_tol = 1e-10;
  const auto ens = equivalence_ensemble(seed);
  int concave = 0;
  for (const auto& a : ens) {
    const SemigroupSpec s{ComplexMatrix(a), "ensemble"};
    const GrowthBound g = growth_bound(s);
    if (generator_concavity_criterion(s.generator, tol).holds) {
      ++concave;
      p.add("omega_nonpositive_when_concave", std::max(0.0, g.omega), 1e-10);
    }
    for (double t : {0.5, 1.0, 2.0}) {
      p.add("spectral_radius_consistency", growth_bound_consistency(s, g, t), 1e-8);
    }
  }
  return finish(10, "growth bound", std::move(p),
                std::to_string(concave) + " concave generators of 100");
}

CriterionOutcome c11_caradus() {
  Parts p;
  constexpr double tol = 1e-10;
  for (std::size_t d = 1; d <= 5; ++d) {
    const CaradusReport c = caradus_certificate(block_backward_shift(8 * d, d), tol, d);
    p.count("ker_dim_equals_multiplicity", c.ker_dim == d);
    p.count("block_backward_shift_surjective", c.surjective);
  }
  const CaradusReport f = caradus_certificate(forward_shift(16), tol);
  p.flag("forward_shift_not_surjective", !f.surjective);
  p.flag("forward_shift_kernel_flagged", f.kernel_truncation_artifact);
  return finish(11, "Caradus certificates", std::move(p), "d = 1..5, n = 8d");
}

CriterionOutcome c12_power_growth(unsigned long long seed) {
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> supp(0, 20);
  Parts p;
  const StructuredOperator dir = StructuredOperator::shift(WeightedShift::dirichlet());
  for (int i = 0; i < 10; ++i) {
    const FiniteSupportVector x = oracle::random_vector(supp(rng), std::nullopt, rng);
    const PowerGrowthResult r = concave_power_growth_check(dir, x, 50, 1e-10);
    p.add("dirichlet_excess", std::max(0.0, r.worst_excess), 1e-10);
  }
  for (int i = 0; i < 10; ++i) {
    const Eigen::Index n = 2 + i % 7;
    const StructuredOperator u = StructuredOperator::dense(ComplexMatrix(oracle::unitary(n, rng)));
    const FiniteSupportVector x =
        oracle::random_vector(static_cast<std::size_t>(n - 1), static_cast<std::size_t>(n), rng);
    const PowerGrowthResult r = concave_power_growth_check(u, x, 50, 1e-10);
    p.add("unitary_excess", std::max(0.0, r.worst_excess), 1e-10);
  }
  return finish(12, "concave power growth", std::move(p), "n <= 50");
}

std::string short_num(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 3);
  return std::string(buf, r.ptr);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::Parse, "cannot read " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<CriterionOutcome> run_acceptance(const AcceptanceOptions& opts) {
  const unsigned long long s = opts.seed;
  std::vector<std::function<CriterionOutcome()>> jobs = {
      [s] { return c1_cayley(s + 1); },
      [s] { return c2_equivalence(s + 2); },
      [] { return c3_projection(); },
      [s] { return c4_intertwining(s + 4); },
      [s] { return c5_reproducing(s + 5); },
      [] { return c6_kernel_oracles(); },
      [] { return c7_multiplier(); },
      [s] { return c8_wold(s + 8); },
      [] { return c9_ladder(); },
      [s] { return c10_growth(s + 2); },
      [] { return c11_caradus(); },
      [s] { return c12_power_growth(s + 12); },
  };
  // A criterion that throws fails with the error as its note.
  const auto guarded = [](int id, const std::function<CriterionOutcome()>& job) {
    try {
      return job();
    } catch (const std::exception& e) {
      CriterionOutcome c;
      c.id = id;
      c.title = "criterion " + std::to_string(id);
      c.note = std::string("error: ") + e.what();
      return c;
    }
  };
  std::vector<CriterionOutcome> out;
  if (opts.parallel) {
    std::vector<std::future<CriterionOutcome>> fs;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      fs.push_back(std::async(std::launch::async, guarded, static_cast<int>(i + 1), jobs[i]));
    }
    for (auto& f : fs) {
      out.push_back(f.get());
    }
  } else {
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      out.push_back(guarded(static_cast<int>(i + 1), jobs[i]));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const CriterionOutcome& a, const CriterionOutcome& b) { return a.id < b.id; });
  return out;
}

std::string summary_line(const CriterionOutcome& c) {
  std::string line = c.passed ? "PASS " : "FAIL ";
  line += (c.id < 10 ? " " : "") + std::to_string(c.id) + "  " + c.title;
  for (const auto& k : c.parts) {
    line += "  " + k.name + "=" + short_num(k.residual) + "/" + short_num(k.tolerance);
  }
  if (!c.note.empty()) {
    line += "  (" + c.note + ")";
  }
  return line;
}

Report run_verify_all(const ToleranceConfig& tol, const std::string& fixture_dir) {
  tol.validate();
  Report r("verify-all");
  r.record_tolerances(tol);

  io::Json crit = io::Json::array();
  for (const CriterionOutcome& c : run_acceptance()) {
    io::Json e;
    e["id"] = c.id;
    e["title"] = c.title;
    e["verdict"] = c.passed ? "PASS" : "FAIL";
    e["note"] = c.note;
    for (const auto& k : c.parts) {
      r.check("criterion" + std::to_string(c.id) + "." + k.name, k.residual, k.tolerance);
    }
    if (c.parts.empty()) {
      r.check_flag("criterion" + std::to_string(c.id), false);
    }
    crit.push_back(std::move(e));
  }
  r.results()["criteria"] = std::move(crit);

  const auto fixture = [&](const std::string& file) {
    const std::string path = fixture_dir + "/" + file;
    return NamedText{file, read_file(path)};
  };

  {
    const NamedText f = fixture("dirichlet.json");
    const Report c = run_classify({f, {"two_isometry", "bounded_below", "pure", "wandering"}}, tol);
    r.record_input("dirichlet", f.name, f.text);
    r.check_flag("fixture.dirichlet.classify", c.all_passed());
    const AnalyticModel m = build_model(io::parse_operator(io::parse_text(f.text)), tol);
    const Complex k = kernel_eval(m, 0.3, 0.5, tol).value(0, 0);
    r.check("fixture.dirichlet.kernel", std::abs(k - oracle::dirichlet_closed(0.3, 0.5)), 1e-10);
  }
  {
    const NamedText f = fixture("isometric.json");
    r.record_input("isometric", f.name, f.text);
    const AnalyticModel m = build_model(io::parse_operator(io::parse_text(f.text)), tol);
    const Complex k = kernel_eval(m, 0.5, 0.5, tol).value(0, 0);
    r.check("fixture.isometric.szego", std::abs(k - 4.0 / 3.0), 1e-12);
  }
  {
    const NamedText f = fixture("blaschke05.json");
    r.record_input("blaschke05", f.name, f.text);
    HardyRequest h;
    h.symbol = f;
    h.model_space = true;
    h.ladder = 4;
    h.caradus = true;
    h.order = 255;
    const Report c = run_hardy(h, tol);
    r.check_flag("fixture.blaschke05.hardy", c.all_passed());
  }
  {
    const NamedText f = fixture("jordan3.json");
    r.record_input("jordan3", f.name, f.text);
    const WoldReport w = wold_decompose(io::parse_operator(io::parse_text(f.text)), 4, tol);
    r.check_flag("fixture.jordan3.wold", w.dim_h1 == 0 && w.wandering_span_dim == 3);
  }
  {
    const NamedText f = fixture("skew4.json");
    r.record_input("skew4", f.name, f.text);
    SemigroupRequest s;
    s.generator = f;
    s.cogenerator = true;
    s.growth_bound = true;
    s.equivalence_suite = true;
    const Report c = run_semigroup(s, tol);
    r.check_flag("fixture.skew4.semigroup", c.all_passed());
  }
  return r;
}

}  // namespace opkit
