// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.
//   acceptance [--seed K] [--trials N] [--update-golden]

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "mpinv/harness.hpp"
#include "mpinv/isometry.hpp"
#include "mpinv/json_io.hpp"
#include "mpinv/mp_hermitian.hpp"
#include "mpinv/pinv.hpp"
#include "mpinv/random.hpp"
#include "mpinv/reverse_order.hpp"

namespace fs = std::filesystem;
using namespace mpinv;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("FAILED: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::size_t stat(const FuzzReport& r, const std::string& key) {
  const auto it = r.stats.find(key);
  return it == r.stats.end() ? 0 : it->second;
}

std::size_t exceptions(const FuzzReport& r) {
  std::size_t n = 0;
  for (const auto& f : r.failures) n += f.condition_pair.rfind("exception:", 0) == 0;
  return n;
}

// Failures are printed with what is needed to replay them.
void list_failures(Outcome& o, const FuzzReport& r, std::size_t limit = 10) {
  for (std::size_t i = 0; i < r.failures.size() && i < limit; ++i) {
    const FuzzFailure& f = r.failures[i];
    std::ostringstream s;
    s << "replay suite=" << to_string(f.suite) << " seed=" << f.seed
      << " trial=" << f.trial_index << ": " << f.condition_pair;
    o.note(s.str());
  }
}

FuzzReport campaign(FuzzSuite suite, std::size_t trials, std::size_t max_dim, std::uint64_t seed) {
  FuzzConfig c;
  c.suite = suite;
  c.trials = trials;
  c.max_dim = max_dim;
  c.seed = seed;
  return fuzz(c);
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

Outcome penrose(std::size_t trials, std::uint64_t seed) {
  Outcome o;
  const FuzzReport r = campaign(FuzzSuite::Penrose, trials, 32, seed);
  o.require(r.failures.empty(), std::to_string(r.failures.size()) + " violations");
  o.require(r.elapsed <= 60.0, "runtime " + fmt(r.elapsed) + " s exceeds 60 s");
  o.note(std::to_string(r.trials_run) + " matrices, dims <= 32, " + fmt(r.elapsed) + " s");
  list_failures(o, r);
  return o;
}

Outcome formulations(std::size_t trials, std::uint64_t seed) {
  Outcome o;
  const FuzzReport r = campaign(FuzzSuite::Formulations, trials, 16, seed);
  o.require(exceptions(r) == 0, std::to_string(exceptions(r)) + " exceptions");
  o.require(r.failures.empty(), std::to_string(r.failures.size()) + " wrong verdicts");
  o.note(std::to_string(r.trials_run) + " pairs, twelve formulations on exact and perturbed x");
  list_failures(o, r);
  return o;
}

Outcome rol_equivalence(const FuzzReport& r) {
  Outcome o;
  std::size_t disagreements = 0, other = 0;
  for (const auto& f : r.failures) {
    (f.condition_pair.rfind("MBEKHTA_GI vs", 0) == 0 ? other : disagreements)++;
  }
  o.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
  for (const char* fam : {"random", "forced_unitary", "forced_pinv", "diagonal", "fixture_failing"}) {
    o.require(stat(r, std::string("rol.family.") + fam) > 0, std::string("no ") + fam + " pairs");
  }
  o.require(stat(r, "rol.rol_holds") > 0 && stat(r, "rol.rol_fails") > 0,
            "corpus lacks one of the verdicts");
  o.note(std::to_string(r.trials_run) + " pairs, dims <= 12: ROL held " +
         std::to_string(stat(r, "rol.rol_holds")) + ", failed " +
         std::to_string(stat(r, "rol.rol_fails")));
  o.note("T31_II true with R35_COMM false: " + std::to_string(stat(r, "rol.t31_ii_without_r35_comm")));
  list_failures(o, r);
  return o;
}

Outcome mbekhta(const FuzzReport& r) {
  Outcome o;
  std::size_t bad = 0;
  for (const auto& f : r.failures) bad += f.condition_pair.rfind("MBEKHTA_GI vs", 0) == 0;
  o.require(bad == 0, std::to_string(bad) + " inconsistent Mbekhta verdicts");
  const std::size_t witnesses = stat(r, "rol.mbekhta_gi_without_rol");
  o.require(witnesses >= 1, "no witness with MBEKHTA_GI true and ROL_DIRECT false");
  o.note(std::to_string(witnesses) + " witnesses with MBEKHTA_GI true and ROL_DIRECT false");
  return o;
}

Outcome mp_hermitian(std::size_t trials, std::uint64_t seed) {
  Outcome o;
  const FuzzReport r = campaign(FuzzSuite::Mph, trials, 16, seed);
  o.require(r.failures.empty(), std::to_string(r.failures.size()) + " violations in the corpus");
  list_failures(o, r);

  // Dedicated fixture sweep: every (n, rank) with n <= 16, topped up to 200.
  const Tolerance t;
  std::size_t fixtures = 0, bad = 0;
  Rng rng(seed);
  auto check = [&](std::size_t n, std::size_t k) {
    ++fixtures;
    const Matrix a = generate_mp_hermitian(n, k, rng.engine()());
    bool ok = is_mp_hermitian(a, t) && algebraic_mph_check(a, t) &&
              is_mp_hermitian(a.adjoint(), t) && annihilator_spectrum_check(a, t) &&
              pinv(a, t).rank == k;
    for (const auto& v : theorem51_check(a, t).verdicts) ok = ok && v.holds;
    Matrix power = a;
    for (int e = 2; e <= 5; ++e) {
      const Matrix power_dag = pinv_of_product(power, a, t).pinv;
      power = power * a;
      ok = ok && relative_diff(power_dag, power) <= t.eq_tol;
    }
    const MphDecomposition d = theorem52_decompose(a, t);
    ok = ok && d.reconstruction_residual <= 1e-9 && d.orthogonality_residual <= 1e-9 &&
         d.involution_residual <= 1e-9;
    bad += !ok;
  };
  try {
    for (std::size_t n = 1; n <= 16; ++n) {
      for (std::size_t k = 0; k <= n; ++k) check(n, k);
    }
    while (fixtures < 200) {
      const std::size_t n = rng.uniform_index(1, 16);
      check(n, rng.uniform_index(0, n));
    }
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  o.require(bad == 0, std::to_string(bad) + " generated fixtures failed");
  o.note(std::to_string(r.trials_run) + " square matrices (" +
         std::to_string(stat(r, "mph.family.generated")) + " generated MPH) plus " +
         std::to_string(fixtures) + " fixtures covering every rank for n <= 16");
  return o;
}

Outcome isometry(std::size_t trials, std::uint64_t seed) {
  Outcome o;
  const FuzzReport r = campaign(FuzzSuite::Isometry, trials, 16, seed);
  o.require(r.failures.empty(), std::to_string(r.failures.size()) + " violations");
  for (const char* fam : {"hermitian_partial_isometry", "non_normal_mph", "partial_isometry"}) {
    o.require(stat(r, std::string("isometry.family.") + fam) > 0, std::string("no ") + fam);
  }
  o.note(std::to_string(r.trials_run) + " matrices including all three fixture families");
  list_failures(o, r);
  return o;
}

// ---- fixture regression --------------------------------------------------

const Matrix kA = Matrix::diagonal({1.0, 0.0});
const Matrix kHoldingB{{0.0, 1.0}, {0.0, 0.0}};
const Matrix kFailingB{{1.0, 0.0}, {1.0, 0.0}};
const Matrix kInvolution{{1.0, 1.0}, {0.0, -1.0}};

Json library_golden(const std::string& name) {
  if (name == "rol_holding") return to_json(full_report(kA, kHoldingB));
  if (name == "rol_failing") return to_json(full_report(kA, kFailingB));
  if (name == "classify_involution") {
    Json j = to_json(classify(kInvolution));
    j["theorem51"] = to_json(theorem51_check(kInvolution));
    j["theorem54"] = to_json(theorem54_check(kInvolution));
    return j;
  }
  if (name == "conorm_fixtures") {
    Json j;
    j["diag_3_2_0"] = conorm(Matrix::diagonal({3.0, 2.0, 0.0}));
    j["sign_diagonal"] = conorm(Matrix::diagonal({1.0, -1.0, 0.0}));
    j["shift"] = conorm(Matrix{{0.0, 1.0}, {0.0, 0.0}});
    j["involution"] = conorm(kInvolution);
    j["prescribed_5_3_half"] = conorm(
        generate_special(SpecialKind::PrescribedSingularValues, 5, {0, 0, 0, {5.0, 3.0, 0.5}}, 0));
    return j;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown golden " + name);
}

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(MPINV_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// Structural skeleton: key names and value kinds, recursively.
Json schema(const Json& j) {
  if (j.is_object()) {
    Json s = Json::object();
    for (const auto& [k, v] : j.items()) s[k] = schema(v);
    return s;
  }
  if (j.is_array()) {
    Json s = Json::array();
    if (!j.empty()) s.push_back(schema(j.front()));
    return s;
  }
  if (j.is_number()) return "number";
  if (j.is_boolean()) return "boolean";
  if (j.is_null()) return "null";
  return "string";
}

struct CliCase {
  std::string name;
  std::string args;
  int exit_code;
};

std::vector<CliCase> cli_cases(const fs::path& dir) {
  auto write = [&](const std::string& file, const Matrix& m) {
    std::ofstream(dir / file) << dump(to_json(m));
    return (dir / file).string();
  };
  const std::string d2 = write("diag2.json", Matrix::diagonal({2.0, 0.0}));
  const std::string a = write("a.json", kA);
  const std::string fb = write("failing_b.json", kFailingB);
  const std::string s3 = write("sign3.json", Matrix::diagonal({1.0, -1.0, 0.0}));
  return {
      {"cli_pinv", "pinv --in " + d2, 0},
      {"cli_rol", "rol --a " + a + " --b " + fb, 0},
      {"cli_classify", "classify --in " + s3, 0},
      {"cli_decompose", "decompose --in " + s3, 0},
      {"cli_conorm", "conorm --in " + d2, 0},
      {"cli_gen", "gen --kind mp-hermitian --n 3 --rank 2 --seed 5", 0},
      {"cli_fuzz", "fuzz --suite rol --trials 20 --max-dim 4 --seed 1 --threads 1", 0},
  };
}

Outcome fixtures(const fs::path& golden_dir, bool update) {
  Outcome o;
  auto compare = [&](const std::string& file, const std::string& actual) {
    const fs::path p = golden_dir / file;
    if (update) {
      std::ofstream(p) << actual << "\n";
      o.note("wrote " + file);
      return;
    }
    std::ifstream in(p);
    if (!in) {
      o.require(false, "missing golden " + file);
      return;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    o.require(ss.str() == actual + "\n", file + " differs from golden");
  };

  for (const char* name : {"rol_holding", "rol_failing", "classify_involution", "conorm_fixtures"}) {
    compare(std::string(name) + ".json", dump(library_golden(name)));
  }

  const fs::path tmp = fs::temp_directory_path() / ("mpinv_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(tmp);
  for (const CliCase& c : cli_cases(tmp)) {
    const CliRun r = run_cli(c.args);
    o.require(r.code == c.exit_code, c.name + " exit code " + std::to_string(r.code));
    Json parsed;
    try {
      parsed = Json::parse(r.out);
    } catch (const std::exception&) {
      o.require(false, c.name + " did not print JSON");
      continue;
    }
    compare(c.name + ".schema.json", dump(schema(parsed)));
  }
  // Documented error paths.
  o.require(run_cli("decompose --in " + (tmp / "diag2.json").string()).code == 1,
            "decompose on a non-MPH matrix must exit 1");
  o.require(run_cli("pinv --in " + (tmp / "missing.json").string()).code == 1,
            "missing input must exit 1");
  o.require(run_cli("fuzz --suite all --trials 0").code == 1, "zero trials must exit 1");
  o.require(run_cli("fuzz --suite penrose --trials 50 --max-dim 6 --seed 8 --rank-tol 1e-12").code == 2,
            "planted violations must exit 2");
  fs::remove_all(tmp);
  o.note("4 library goldens, 7 CLI schemas, 4 exit-code paths");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::uint64_t seed = 20261018;
  std::size_t trials = 10000;
  bool update = false;
  std::string golden_dir = MPINV_GOLDEN_DIR;
  app.add_option("--seed", seed)->capture_default_str();
  app.add_option("--trials", trials)->capture_default_str();
  app.add_option("--golden-dir", golden_dir)->capture_default_str();
  app.add_flag("--update-golden", update);
  CLI11_PARSE(app, argc, argv);

  bool all = true;
  auto report = [&](int id, const std::string& title, const std::function<Outcome()>& fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << "\n";
    for (const auto& n : o.notes) std::cout << "    " << n << "\n";
    std::cout.flush();
  };

  report(1, "Penrose equations", [&] { return penrose(trials, seed); });
  report(2, "formulation equivalence", [&] { return formulations(trials, seed); });
  const FuzzReport rol = campaign(FuzzSuite::Rol, trials, 12, seed);
  report(3, "reverse order law equivalence", [&] { return rol_equivalence(rol); });
  report(4, "Mbekhta criterion consistency", [&] { return mbekhta(rol); });
  report(5, "MP-hermitian suite", [&] { return mp_hermitian(trials, seed); });
  report(6, "isometry suite", [&] { return isometry(trials, seed); });
  report(7, "fixture regression", [&] { return fixtures(golden_dir, update); });
  return all ? 0 : 1;
}
