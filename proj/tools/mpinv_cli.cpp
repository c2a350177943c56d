// Command-line front end over the mpinv C API.
//
// Exit codes: 0 success, 1 I/O / parse / precondition error, 2 fuzz
// campaign found violations.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "mpinv/mpinv.h"

namespace {

using Json = nlohmann::ordered_json;

struct Failure {
  std::string message;
};

struct MatrixDeleter {
  void operator()(mpinv_matrix* m) const { mpinv_matrix_destroy(m); }
};
using MatrixPtr = std::unique_ptr<mpinv_matrix, MatrixDeleter>;

struct StringDeleter {
  void operator()(char* s) const { mpinv_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

void check(mpinv_status s, const std::string& context) {
  if (s != MPINV_OK) {
    throw Failure{context + ": " + mpinv_status_name(s) + ": " + mpinv_last_error()};
  }
}

MatrixPtr read_matrix(const std::string& path) {
  mpinv_matrix* m = nullptr;
  check(mpinv_matrix_read_file(path.c_str(), &m), path);
  return MatrixPtr(m);
}

void print(CString s) { std::cout << s.get() << '\n'; }

struct TolOptions {
  double eq_tol = mpinv_default_tolerance().eq_tol;
  double rank_tol = mpinv_default_tolerance().rank_tol_factor;

  void attach(CLI::App* cmd) {
    cmd->add_option("--tol", eq_tol, "Relative equality tolerance")->capture_default_str();
    cmd->add_option("--rank-tol", rank_tol, "Rank threshold factor")->capture_default_str();
  }
  mpinv_tolerance get() const { return {rank_tol, eq_tol}; }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moore-Penrose inverse toolkit"};
  app.require_subcommand(1);

  std::string in_path, out_path, a_path, b_path;
  TolOptions tol;

  auto* pinv_cmd = app.add_subcommand("pinv", "Moore-Penrose inverse with Penrose residuals");
  pinv_cmd->add_option("--in", in_path, "Input matrix JSON")->required();
  pinv_cmd->add_option("--out", out_path, "Write the inverse to this file");
  tol.attach(pinv_cmd);

  auto* rol_cmd = app.add_subcommand("rol", "Reverse-order-law condition report for (a, b)");
  rol_cmd->add_option("--a", a_path, "Left factor JSON")->required();
  rol_cmd->add_option("--b", b_path, "Right factor JSON")->required();
  tol.attach(rol_cmd);

  auto* classify_cmd = app.add_subcommand("classify", "Classify a matrix");
  classify_cmd->add_option("--in", in_path, "Input matrix JSON")->required();
  tol.attach(classify_cmd);

  auto* decompose_cmd =
      app.add_subcommand("decompose", "Null/range decomposition of an MP-hermitian matrix");
  decompose_cmd->add_option("--in", in_path, "Input matrix JSON")->required();
  tol.attach(decompose_cmd);

  auto* conorm_cmd = app.add_subcommand("conorm", "Conorm, norm and pseudoinverse norm");
  conorm_cmd->add_option("--in", in_path, "Input matrix JSON")->required();
  tol.attach(conorm_cmd);

  mpinv_fuzz_config fuzz_cfg = mpinv_default_fuzz_config();
  std::string suite = "all";
  bool record = false;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Randomized verification campaign");
  fuzz_cmd->add_option("--suite", suite, "penrose|formulations|rol|mph|isometry|all")
      ->check(CLI::IsMember({"penrose", "formulations", "rol", "mph", "isometry", "all"}));
  fuzz_cmd->add_option("--trials", fuzz_cfg.trials, "Trials per suite")->capture_default_str();
  fuzz_cmd->add_option("--max-dim", fuzz_cfg.max_dim, "Largest dimension")->capture_default_str();
  fuzz_cmd->add_option("--seed", fuzz_cfg.seed, "Campaign seed")->capture_default_str();
  fuzz_cmd->add_option("--threads", fuzz_cfg.threads, "Worker threads (0 = all cores)");
  fuzz_cmd->add_flag("--record-verdicts", record, "Include per-trial verdicts");
  tol.attach(fuzz_cmd);

  mpinv_gen_params gen = mpinv_default_gen_params();
  std::string kind;
  std::vector<double> sigma;
  std::size_t n = 0;
  bool has_positive = false;
  auto* gen_cmd = app.add_subcommand("gen", "Write a seeded fixture matrix");
  gen_cmd->add_option("--kind", kind)
      ->required()
      ->check(CLI::IsMember({"regular", "mp-hermitian", "partial-isometry",
                             "hermitian-partial-isometry", "prescribed-sv"}));
  gen_cmd->add_option("--seed", gen.seed)->required();
  gen_cmd->add_option("--rows", gen.rows, "Rows (regular)");
  gen_cmd->add_option("--cols", gen.cols, "Columns (regular)");
  gen_cmd->add_option("--n", n, "Dimension of square fixtures");
  gen_cmd->add_option("--rank", gen.rank);
  gen_cmd->add_option("--sv-low", gen.sv_low)->capture_default_str();
  gen_cmd->add_option("--sv-high", gen.sv_high)->capture_default_str();
  auto* pos_opt = gen_cmd->add_option("--positive", gen.positive, "+1 count");
  gen_cmd->add_option("--negative", gen.negative, "-1 count");
  gen_cmd->add_option("--max-condition", gen.max_condition);
  gen_cmd->add_option("--sigma", sigma, "Singular values")->delimiter(',');
  gen_cmd->add_option("--out", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    const mpinv_tolerance t = tol.get();
    if (*pinv_cmd) {
      auto a = read_matrix(in_path);
      char* report = nullptr;
      check(mpinv_pinv_report_json(a.get(), &t, &report), "pinv");
      CString owned(report);
      if (!out_path.empty()) {
        mpinv_matrix* x = nullptr;
        check(mpinv_pinv(a.get(), &t, &x, nullptr, nullptr), "pinv");
        MatrixPtr xp(x);
        check(mpinv_matrix_write_file(xp.get(), out_path.c_str()), out_path);
      }
      print(std::move(owned));
    } else if (*rol_cmd) {
      auto a = read_matrix(a_path);
      auto b = read_matrix(b_path);
      char* report = nullptr;
      check(mpinv_rol_report_json(a.get(), b.get(), &t, &report), "rol");
      print(CString(report));
    } else if (*classify_cmd) {
      auto a = read_matrix(in_path);
      char* report = nullptr;
      check(mpinv_classify_json(a.get(), &t, &report), "classify");
      print(CString(report));
    } else if (*decompose_cmd) {
      auto a = read_matrix(in_path);
      char* report = nullptr;
      check(mpinv_decompose_json(a.get(), &t, &report), "decompose");
      print(CString(report));
    } else if (*conorm_cmd) {
      auto a = read_matrix(in_path);
      double c = 0, norm = 0, pnorm = 0;
      check(mpinv_conorm(a.get(), &t, &c, &norm, &pnorm), "conorm");
      std::cout << Json{{"conorm", c}, {"op_norm", norm}, {"pinv_norm", pnorm}}.dump(2) << '\n';
    } else if (*fuzz_cmd) {
      fuzz_cfg.suite = suite.c_str();
      fuzz_cfg.tolerance = t;
      fuzz_cfg.record_verdicts = record ? 1 : 0;
      char* report = nullptr;
      std::size_t failures = 0;
      check(mpinv_fuzz_json(&fuzz_cfg, &report, &failures), "fuzz");
      print(CString(report));
      if (failures > 0) {
        std::cerr << "fuzz: " << failures << " violation(s) found\n";
        return 2;
      }
    } else if (*gen_cmd) {
      mpinv_gen_kind k = MPINV_GEN_REGULAR;
      if (kind == "regular") {
        k = MPINV_GEN_REGULAR;
      } else {
        if (n == 0) throw Failure{"gen: --n is required for kind " + kind};
        gen.rows = n;
        if (kind == "mp-hermitian") {
          k = MPINV_GEN_MP_HERMITIAN;
          has_positive = pos_opt->count() > 0;
          gen.has_positive = has_positive ? 1 : 0;
        } else if (kind == "partial-isometry") {
          k = MPINV_GEN_PARTIAL_ISOMETRY;
        } else if (kind == "hermitian-partial-isometry") {
          k = MPINV_GEN_HERMITIAN_PARTIAL_ISOMETRY;
        } else {
          k = MPINV_GEN_PRESCRIBED_SINGULAR_VALUES;
          gen.singular_values = sigma.data();
          gen.singular_value_count = sigma.size();
        }
      }
      mpinv_matrix* m = nullptr;
      check(mpinv_generate(k, &gen, &m), "gen");
      MatrixPtr mp(m);
      if (out_path.empty()) {
        char* text = nullptr;
        check(mpinv_matrix_to_json(mp.get(), &text), "gen");
        print(CString(text));
      } else {
        check(mpinv_matrix_write_file(mp.get(), out_path.c_str()), out_path);
      }
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return 1;
  }
  return 0;
}
