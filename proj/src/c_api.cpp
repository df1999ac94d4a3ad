#include "opkit/opkit.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "opkit/acceptance.hpp"
#include "opkit/commands.hpp"
#include "opkit/hardy.hpp"
#include "opkit/shimorin.hpp"

struct opk_operator {
  opkit::StructuredOperator op;
};

struct opk_model {
  opkit::AnalyticModel model;
};

struct opk_series {
  opkit::PowerSeries series;
};

namespace {

thread_local std::string g_last_error;

opk_status to_status(opkit::ErrorCode c) {
  // ErrorCode and opk_status list the same failures in the same order.
  return static_cast<opk_status>(static_cast<int>(c) + 1);
}

template <class F>
opk_status guard(F&& f) {
  try {
    g_last_error.clear();
    f();
    return OPK_OK;
  } catch (const opkit::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return OPK_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = std::string("internal: ") + e.what();
    return OPK_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) {
    throw opkit::Error(opkit::ErrorCode::InvalidArgument, std::string(what) + " is null");
  }
}

opkit::ToleranceConfig tolerance(const opk_tolerance* t) {
  opkit::ToleranceConfig c;
  if (t != nullptr) {
    c.rank_tol = t->rank_tol;
    c.psd_tol = t->psd_tol;
    c.residual_tol = t->residual_tol;
    c.tail_tol = t->tail_tol;
  }
  c.validate();
  return c;
}

opkit::NamedText named(const opk_input& in, const char* role) {
  require(in.text, role);
  return {in.name != nullptr ? in.name : "<memory>", in.text};
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) {
    throw std::bad_alloc();
  }
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const opkit::Report& r, char** json, int* passed) {
  require(json, "json");
  require(passed, "passed");
  *json = dup_string(opkit::io::dump(r.to_json()) + "\n");
  *passed = r.all_passed() ? 1 : 0;
}

}  // namespace

extern "C" {

const char* opk_last_error(void) { return g_last_error.c_str(); }

const char* opk_status_name(opk_status s) {
  if (s == OPK_OK) return "OK";
  if (s == OPK_ERR_INTERNAL) return "Internal";
  if (s > OPK_OK && s < OPK_ERR_INTERNAL) {
    return opkit::error_code_name(static_cast<opkit::ErrorCode>(static_cast<int>(s) - 1));
  }
  return "Unknown";
}

void opk_string_free(char* s) { std::free(s); }

opk_tolerance opk_default_tolerance(void) {
  const opkit::ToleranceConfig c;
  return {c.rank_tol, c.psd_tol, c.residual_tol, c.tail_tol};
}

opk_status opk_parse_complex(const char* text, double* re, double* im) {
  return guard([&] {
    require(text, "text");
    require(re, "re");
    require(im, "im");
    const auto c = opkit::io::parse_complex_literal(text);
    *re = c.real();
    *im = c.imag();
  });
}

opk_status opk_operator_parse(const char* json, opk_operator** out) {
  return guard([&] {
    require(json, "json");
    require(out, "out");
    *out = new opk_operator{opkit::io::parse_operator(opkit::io::parse_text(json))};
  });
}

void opk_operator_free(opk_operator* op) { delete op; }

opk_status opk_operator_ambient(const opk_operator* op, size_t* dim) {
  return guard([&] {
    require(op, "operator");
    require(dim, "dim");
    *dim = op->op.ambient().value_or(0);
  });
}

opk_status opk_classify(const opk_operator* op, const opk_tolerance* tol,
                        opk_classification* out) {
  return guard([&] {
    require(op, "operator");
    require(out, "out");
    const auto c = opkit::classify_operator(op->op, tolerance(tol));
    *out = {c.bounded_below, c.bounded_below_margin, c.concave,  c.max_defect, c.two_contraction,
            c.min_defect,    c.two_isometry,         c.defect_norm, c.pure,   c.wandering};
  });
}

opk_status opk_model_build(const opk_operator* op, const opk_tolerance* tol, opk_model** out) {
  return guard([&] {
    require(op, "operator");
    require(out, "out");
    *out = new opk_model{opkit::build_model(op->op, tolerance(tol))};
  });
}

void opk_model_free(opk_model* m) { delete m; }

opk_status opk_model_info(const opk_model* m, size_t* defect_dim, double* radius) {
  return guard([&] {
    require(m, "model");
    if (defect_dim != nullptr) *defect_dim = m->model.defect_dim();
    if (radius != nullptr) *radius = m->model.radius();
  });
}

opk_status opk_model_kernel(const opk_model* m, double lambda_re, double lambda_im, double z_re,
                            double z_im, const opk_tolerance* tol, double* out, size_t cap,
                            size_t* dim) {
  return guard([&] {
    require(m, "model");
    require(dim, "dim");
    const auto k = opkit::kernel_eval(m->model, {lambda_re, lambda_im}, {z_re, z_im}, tolerance(tol));
    const auto d = static_cast<size_t>(k.value.rows());
    *dim = d;
    if (d * d > cap) {
      throw opkit::Error(opkit::ErrorCode::InvalidArgument, "output buffer too small");
    }
    require(out, "out");
    for (size_t i = 0; i < d; ++i) {
      for (size_t j = 0; j < d; ++j) {
        const auto v = k.value(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        out[2 * (i * d + j)] = v.real();
        out[2 * (i * d + j) + 1] = v.imag();
      }
    }
  });
}

opk_status opk_series_multiplier(double t, size_t order, opk_series** out) {
  return guard([&] {
    require(out, "out");
    *out = new opk_series{opkit::semigroup_multiplier(t, order)};
  });
}

opk_status opk_series_blaschke(const double* zeros_re_im, size_t count, size_t order,
                               opk_series** out) {
  return guard([&] {
    require(out, "out");
    if (count > 0) {
      require(zeros_re_im, "zeros");
    }
    opkit::BlaschkeSpec b;
    for (size_t i = 0; i < count; ++i) {
      b.zeros.emplace_back(zeros_re_im[2 * i], zeros_re_im[2 * i + 1]);
    }
    *out = new opk_series{opkit::blaschke_series(b, order)};
  });
}

opk_status opk_series_inner_symbol(const opk_series* phi, double t, size_t order,
                                   opk_series** out) {
  return guard([&] {
    require(phi, "phi");
    require(out, "out");
    *out = new opk_series{opkit::inner_semigroup_symbol(phi->series, t, order)};
  });
}

void opk_series_free(opk_series* s) { delete s; }

opk_status opk_series_order(const opk_series* s, size_t* order) {
  return guard([&] {
    require(s, "series");
    require(order, "order");
    *order = s->series.order();
  });
}

opk_status opk_series_coeff(const opk_series* s, size_t k, double* re, double* im) {
  return guard([&] {
    require(s, "series");
    require(re, "re");
    require(im, "im");
    const auto c = s->series[k];
    *re = c.real();
    *im = c.imag();
  });
}

opk_status opk_report_classify(const opk_classify_request* req, const opk_tolerance* tol,
                               char** json, int* passed) {
  return guard([&] {
    require(req, "request");
    opkit::ClassifyRequest r{named(req->op, "operator"), {}};
    for (size_t i = 0; i < req->expect_count; ++i) {
      require(req->expect[i], "expect entry");
      r.expect.emplace_back(req->expect[i]);
    }
    emit(opkit::run_classify(r, tolerance(tol)), json, passed);
  });
}

opk_status opk_report_semigroup(const opk_semigroup_request* req, const opk_tolerance* tol,
                                char** json, int* passed) {
  return guard([&] {
    require(req, "request");
    opkit::SemigroupRequest r;
    r.generator = named(req->generator, "generator");
    if (req->time_count > 0) {
      require(req->times, "times");
      r.times.assign(req->times, req->times + req->time_count);
    }
    r.cogenerator = req->cogenerator != 0;
    r.growth_bound = req->growth_bound != 0;
    r.equivalence_suite = req->equivalence_suite != 0;
    if (req->samples > 0) {
      r.samples = req->samples;
    }
    emit(opkit::run_semigroup(r, tolerance(tol)), json, passed);
  });
}

opk_status opk_report_model(const opk_model_request* req, const opk_tolerance* tol, char** json,
                            int* passed) {
  return guard([&] {
    require(req, "request");
    opkit::ModelRequest r;
    r.op = named(req->op, "operator");
    if (req->coeffs.text != nullptr) {
      r.coeffs = named(req->coeffs, "coeffs");
    }
    if (req->has_kernel) {
      r.kernel = std::make_pair(opkit::Complex(req->kernel[0], req->kernel[1]),
                                opkit::Complex(req->kernel[2], req->kernel[3]));
    }
    r.verify_intertwine = (req->verify & OPK_VERIFY_INTERTWINE) != 0;
    r.verify_reproduce = (req->verify & OPK_VERIFY_REPRODUCE) != 0;
    r.verify_semigroup = (req->verify & OPK_VERIFY_SEMIGROUP) != 0;
    r.order = req->order;
    r.lambda = {req->lambda[0], req->lambda[1]};
    r.t = req->t;
    emit(opkit::run_model(r, tolerance(tol)), json, passed);
  });
}

opk_status opk_report_hardy(const opk_hardy_request* req, const opk_tolerance* tol, char** json,
                            int* passed) {
  return guard([&] {
    require(req, "request");
    opkit::HardyRequest r;
    if (req->blaschke_re_im != nullptr) {
      std::vector<opkit::Complex> z;
      for (size_t i = 0; i < req->blaschke_count; ++i) {
        z.emplace_back(req->blaschke_re_im[2 * i], req->blaschke_re_im[2 * i + 1]);
      }
      r.blaschke = std::move(z);
    }
    if (req->symbol.text != nullptr) {
      r.symbol = named(req->symbol, "symbol");
    }
    if (req->has_semigroup_t) r.semigroup_t = req->semigroup_t;
    r.model_space = req->model_space != 0;
    if (req->has_ladder) r.ladder = req->ladder;
    r.caradus = req->caradus != 0;
    if (req->multiplicity > 0) r.multiplicity = req->multiplicity;
    r.n = req->n;
    r.order = req->order;
    r.inner_check = req->inner_check != 0;
    r.grid = req->grid;
    r.differentiation_scan = req->differentiation_scan != 0;
    if (req->has_composition) r.composition_r = req->composition_r;
    emit(opkit::run_hardy(r, tolerance(tol)), json, passed);
  });
}

opk_status opk_verify_all(const opk_tolerance* tol, const char* fixture_dir, char** json,
                          int* passed) {
  return guard([&] {
    const std::string dir = fixture_dir != nullptr ? fixture_dir : OPKIT_FIXTURE_DIR;
    emit(opkit::run_verify_all(tolerance(tol), dir), json, passed);
  });
}

opk_status opk_acceptance_summary(char** text, int* passed) {
  return guard([&] {
    require(text, "text");
    require(passed, "passed");
    std::string out;
    bool all = true;
    for (const auto& c : opkit::run_acceptance()) {
      out += opkit::summary_line(c) + "\n";
      all = all && c.passed;
    }
    *text = dup_string(out);
    *passed = all ? 1 : 0;
  });
}

}  // extern "C"
