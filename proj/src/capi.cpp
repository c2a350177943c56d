#include "mpinv/mpinv.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "mpinv/harness.hpp"
#include "mpinv/isometry.hpp"
#include "mpinv/json_io.hpp"
#include "mpinv/mp_hermitian.hpp"
#include "mpinv/pinv.hpp"
#include "mpinv/reverse_order.hpp"
#include "mpinv/svd.hpp"

struct mpinv_matrix {
  mpinv::Matrix value;
};

namespace {

thread_local std::string g_last_error;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

mpinv_status to_status(mpinv::ErrorCode code) {
  using mpinv::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return MPINV_ERR_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch: return MPINV_ERR_DIMENSION;
    case ErrorCode::NonFinite: return MPINV_ERR_NON_FINITE;
    case ErrorCode::NoConvergence: return MPINV_ERR_NO_CONVERGENCE;
    case ErrorCode::Precondition: return MPINV_ERR_PRECONDITION;
    case ErrorCode::Parse: return MPINV_ERR_PARSE;
  }
  return MPINV_ERR_INTERNAL;
}

template <typename F>
mpinv_status guard(F&& f) {
  g_last_error.clear();
  try {
    f();
    return MPINV_OK;
  } catch (const mpinv::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const IoError& e) {
    g_last_error = e.what();
    return MPINV_ERR_IO;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MPINV_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MPINV_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) {
    throw mpinv::Error(mpinv::ErrorCode::InvalidArgument, std::string(what) + " is null");
  }
}

const mpinv::Matrix& deref(const mpinv_matrix* m, const char* what) {
  require(m, what);
  return m->value;
}

mpinv::Tolerance tolerance(const mpinv_tolerance* tol) {
  mpinv::Tolerance t;
  if (tol != nullptr) {
    t.rank_tol_factor = tol->rank_tol_factor;
    t.eq_tol = tol->eq_tol;
  }
  t.validate();
  return t;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

mpinv_matrix* wrap(mpinv::Matrix m) { return new mpinv_matrix{std::move(m)}; }

}  // namespace

extern "C" {

mpinv_tolerance mpinv_default_tolerance(void) {
  const mpinv::Tolerance t;
  return {t.rank_tol_factor, t.eq_tol};
}

const char* mpinv_last_error(void) { return g_last_error.c_str(); }

const char* mpinv_status_name(mpinv_status status) {
  switch (status) {
    case MPINV_OK: return "ok";
    case MPINV_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MPINV_ERR_DIMENSION: return "dimension mismatch";
    case MPINV_ERR_NON_FINITE: return "non-finite value";
    case MPINV_ERR_NO_CONVERGENCE: return "no convergence";
    case MPINV_ERR_PRECONDITION: return "precondition violated";
    case MPINV_ERR_PARSE: return "parse error";
    case MPINV_ERR_IO: return "i/o error";
    case MPINV_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void mpinv_string_free(char* s) { std::free(s); }

mpinv_status mpinv_matrix_create(size_t rows, size_t cols, const double* interleaved,
                                 mpinv_matrix** out) {
  return guard([&] {
    require(out, "out");
    *out = nullptr;
    if (rows == 0 || cols == 0) {
      throw mpinv::Error(mpinv::ErrorCode::InvalidArgument, "matrix dimensions must be positive");
    }
    std::vector<mpinv::Complex> data(rows * cols);
    if (interleaved != nullptr) {
      for (size_t k = 0; k < data.size(); ++k) data[k] = {interleaved[2 * k], interleaved[2 * k + 1]};
    }
    *out = wrap(mpinv::Matrix(rows, cols, std::move(data)));
  });
}

void mpinv_matrix_destroy(mpinv_matrix* m) { delete m; }

size_t mpinv_matrix_rows(const mpinv_matrix* m) { return m ? m->value.rows() : 0; }
size_t mpinv_matrix_cols(const mpinv_matrix* m) { return m ? m->value.cols() : 0; }

mpinv_status mpinv_matrix_copy_data(const mpinv_matrix* m, double* out, size_t capacity) {
  return guard([&] {
    const auto& v = deref(m, "matrix");
    require(out, "out");
    if (capacity < 2 * v.data().size()) {
      throw mpinv::Error(mpinv::ErrorCode::InvalidArgument, "output buffer too small");
    }
    for (size_t k = 0; k < v.data().size(); ++k) {
      out[2 * k] = v.data()[k].real();
      out[2 * k + 1] = v.data()[k].imag();
    }
  });
}

mpinv_status mpinv_matrix_from_json(const char* text, mpinv_matrix** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = wrap(mpinv::parse_matrix(text));
  });
}

mpinv_status mpinv_matrix_to_json(const mpinv_matrix* m, char** out) {
  return guard([&] {
    require(out, "out");
    *out = copy_string(mpinv::dump(mpinv::to_json(deref(m, "matrix"))));
  });
}

mpinv_status mpinv_matrix_read_file(const char* path, mpinv_matrix** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    std::ifstream in(path);
    if (!in) throw IoError(std::string("cannot open ") + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    *out = wrap(mpinv::parse_matrix(ss.str()));
  });
}

mpinv_status mpinv_matrix_write_file(const mpinv_matrix* m, const char* path) {
  return guard([&] {
    require(path, "path");
    const auto& v = deref(m, "matrix");
    std::ofstream os(path);
    if (!os) throw IoError(std::string("cannot write ") + path);
    os << mpinv::dump(mpinv::to_json(v)) << '\n';
    if (!os) throw IoError(std::string("write failed for ") + path);
  });
}

mpinv_status mpinv_pinv(const mpinv_matrix* a, const mpinv_tolerance* tol, mpinv_matrix** out,
                        size_t* rank, double* relative_residuals) {
  return guard([&] {
    require(out, "out");
    auto r = mpinv::pinv(deref(a, "a"), tolerance(tol));
    if (rank) *rank = r.rank;
    if (relative_residuals) {
      for (size_t k = 0; k < 4; ++k) relative_residuals[k] = r.residuals.relative[k];
    }
    *out = wrap(std::move(r.pinv));
  });
}

mpinv_status mpinv_pinv_report_json(const mpinv_matrix* a, const mpinv_tolerance* tol,
                                    char** out) {
  return guard([&] {
    require(out, "out");
    *out = copy_string(mpinv::dump(mpinv::to_json(mpinv::pinv(deref(a, "a"), tolerance(tol)))));
  });
}

mpinv_status mpinv_penrose_residuals(const mpinv_matrix* a, const mpinv_matrix* x,
                                     double* relative_residuals) {
  return guard([&] {
    require(relative_residuals, "relative_residuals");
    const auto r = mpinv::penrose_residuals(deref(a, "a"), deref(x, "x"));
    for (size_t k = 0; k < 4; ++k) relative_residuals[k] = r.relative[k];
  });
}

mpinv_status mpinv_formulation_holds(const mpinv_matrix* a, const mpinv_matrix* x,
                                     const char* formulation, const mpinv_tolerance* tol,
                                     int* holds) {
  return guard([&] {
    require(formulation, "formulation");
    require(holds, "holds");
    *holds = mpinv::formulation_holds(deref(a, "a"), deref(x, "x"),
                                      mpinv::formulation_from_string(formulation), tolerance(tol))
                 ? 1
                 : 0;
  });
}

mpinv_status mpinv_evaluate_condition(const mpinv_matrix* a, const mpinv_matrix* b,
                                      const char* condition, const mpinv_tolerance* tol,
                                      int* holds, double* residual) {
  return guard([&] {
    require(condition, "condition");
    const auto c = mpinv::condition_from_string(condition);
    const auto r = mpinv::evaluate_condition(deref(a, "a"), deref(b, "b"), c, tolerance(tol));
    if (holds) *holds = r.holds ? 1 : 0;
    if (residual) *residual = r.residual;
  });
}

mpinv_status mpinv_rol_report_json(const mpinv_matrix* a, const mpinv_matrix* b,
                                   const mpinv_tolerance* tol, char** out) {
  return guard([&] {
    require(out, "out");
    const auto report = mpinv::full_report(deref(a, "a"), deref(b, "b"), tolerance(tol));
    *out = copy_string(mpinv::dump(mpinv::to_json(report)));
  });
}

mpinv_status mpinv_is_mp_hermitian(const mpinv_matrix* a, const mpinv_tolerance* tol,
                                   int* holds) {
  return guard([&] {
    require(holds, "holds");
    *holds = mpinv::is_mp_hermitian(deref(a, "a"), tolerance(tol)) ? 1 : 0;
  });
}

mpinv_status mpinv_is_partial_isometry(const mpinv_matrix* a, const mpinv_tolerance* tol,
                                       int* holds) {
  return guard([&] {
    require(holds, "holds");
    *holds = mpinv::is_partial_isometry(deref(a, "a"), tolerance(tol)) ? 1 : 0;
  });
}

mpinv_status mpinv_classify_json(const mpinv_matrix* a, const mpinv_tolerance* tol, char** out) {
  return guard([&] {
    require(out, "out");
    const auto& m = deref(a, "a");
    const auto t = tolerance(tol);
    mpinv::Json j = mpinv::to_json(mpinv::classify(m, t));
    if (m.is_square()) {
      j["theorem51"] = mpinv::to_json(mpinv::theorem51_check(m, t));
      j["theorem54"] = mpinv::to_json(mpinv::theorem54_check(m, t));
    } else {
      j["theorem51"] = nullptr;
      j["theorem54"] = nullptr;
    }
    *out = copy_string(mpinv::dump(j));
  });
}

mpinv_status mpinv_decompose_json(const mpinv_matrix* a, const mpinv_tolerance* tol, char** out) {
  return guard([&] {
    require(out, "out");
    const auto d = mpinv::theorem52_decompose(deref(a, "a"), tolerance(tol));
    *out = copy_string(mpinv::dump(mpinv::to_json(d)));
  });
}

mpinv_status mpinv_conorm(const mpinv_matrix* a, const mpinv_tolerance* tol, double* conorm,
                          double* op_norm, double* pinv_norm) {
  return guard([&] {
    const auto& m = deref(a, "a");
    const auto t = tolerance(tol);
    const double c = mpinv::conorm(m, t);
    if (conorm) *conorm = c;
    if (op_norm) *op_norm = mpinv::operator_norm(m);
    if (pinv_norm) *pinv_norm = mpinv::operator_norm(mpinv::dagger(m, t));
  });
}

mpinv_gen_params mpinv_default_gen_params(void) {
  mpinv_gen_params p{};
  p.sv_low = 1.0;
  p.sv_high = 1.0;
  p.max_condition = 0.0;
  return p;
}

mpinv_status mpinv_generate(mpinv_gen_kind kind, const mpinv_gen_params* params,
                            mpinv_matrix** out) {
  return guard([&] {
    require(params, "params");
    require(out, "out");
    const auto& p = *params;
    mpinv::Matrix m;
    switch (kind) {
      case MPINV_GEN_REGULAR:
        m = mpinv::generate_regular(p.rows, p.cols, p.rank, p.sv_low, p.sv_high, p.seed);
        break;
      case MPINV_GEN_MP_HERMITIAN: {
        mpinv::MphGeneratorOptions opts;
        if (p.max_condition > 0.0) opts.max_condition = p.max_condition;
        if (p.has_positive) opts.positive = p.positive;
        m = mpinv::generate_mp_hermitian(p.rows, p.rank, p.seed, opts);
        break;
      }
      case MPINV_GEN_PARTIAL_ISOMETRY:
        m = mpinv::generate_special(mpinv::SpecialKind::PartialIsometry, p.rows,
                                    {p.rank, 0, 0, {}}, p.seed);
        break;
      case MPINV_GEN_HERMITIAN_PARTIAL_ISOMETRY:
        m = mpinv::generate_special(mpinv::SpecialKind::HermitianPartialIsometry, p.rows,
                                    {0, p.positive, p.negative, {}}, p.seed);
        break;
      case MPINV_GEN_PRESCRIBED_SINGULAR_VALUES: {
        if (p.singular_value_count > 0) require(p.singular_values, "singular_values");
        std::vector<double> sv(p.singular_values, p.singular_values + p.singular_value_count);
        m = mpinv::generate_special(mpinv::SpecialKind::PrescribedSingularValues, p.rows,
                                    {0, 0, 0, std::move(sv)}, p.seed);
        break;
      }
      default:
        throw mpinv::Error(mpinv::ErrorCode::InvalidArgument, "unknown generator kind");
    }
    *out = wrap(std::move(m));
  });
}

mpinv_fuzz_config mpinv_default_fuzz_config(void) {
  const mpinv::FuzzConfig c;
  mpinv_fuzz_config out{};
  out.suite = "all";
  out.trials = c.trials;
  out.max_dim = c.max_dim;
  out.seed = c.seed;
  out.tolerance = mpinv_default_tolerance();
  out.record_verdicts = 0;
  out.threads = 0;
  return out;
}

mpinv_status mpinv_fuzz_json(const mpinv_fuzz_config* config, char** out, size_t* failures) {
  return guard([&] {
    require(config, "config");
    require(config->suite, "config->suite");
    require(out, "out");
    mpinv::FuzzConfig c;
    c.suite = mpinv::fuzz_suite_from_string(config->suite);
    c.trials = config->trials;
    c.max_dim = config->max_dim;
    c.seed = config->seed;
    c.tolerance = tolerance(&config->tolerance);
    c.record_verdicts = config->record_verdicts != 0;
    c.threads = config->threads;
    const auto report = mpinv::fuzz(c);
    if (failures) *failures = report.failures.size();
    *out = copy_string(mpinv::dump(mpinv::to_json(report)));
  });
}

}  // extern "C"
