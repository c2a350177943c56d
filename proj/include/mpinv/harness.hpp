#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mpinv/matrix.hpp"

namespace mpinv {

/// U Sigma V^* (m x n) with `rank` singular values uniform in [sv_low, sv_high]
/// and seeded Haar unitaries.  Deterministic per arguments.
Matrix generate_regular(std::size_t m, std::size_t n, std::size_t rank, double sv_low,
                        double sv_high, std::uint64_t seed);

enum class RolPairMode { ForcedUnitary, ForcedPinv, Random };

std::string_view to_string(RolPairMode mode);
RolPairMode rol_pair_mode_from_string(std::string_view name);

/// (a, b) with ab defined and n the shared inner dimension.
///   ForcedUnitary  a unitary n x n, b random regular       (ROL holds)
///   ForcedPinv     a random regular, b = a^+               (ROL holds)
///   Random         independent draws, random shapes/ranks
std::pair<Matrix, Matrix> generate_rol_pair(std::size_t n, RolPairMode mode, std::uint64_t seed);

enum class FuzzSuite { Penrose, Formulations, Rol, Mph, Isometry, All };

std::string_view to_string(FuzzSuite suite);
FuzzSuite fuzz_suite_from_string(std::string_view name);

struct FuzzConfig {
  FuzzSuite suite = FuzzSuite::All;
  std::size_t trials = 100;
  std::size_t max_dim = 8;
  std::uint64_t seed = 0;
  Tolerance tolerance;
  /// Keep every trial's verdict map in the report, not just failures.
  bool record_verdicts = false;
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  unsigned threads = 0;

  /// Throws Error{InvalidArgument} unless trials >= 1 and 1 <= max_dim <= 64.
  void validate() const;
};

/// One violated property, with everything needed to replay it.
struct FuzzFailure {
  FuzzSuite suite = FuzzSuite::Penrose;
  std::uint64_t seed = 0;
  std::size_t trial_index = 0;
  std::string condition_pair;
  std::map<std::string, double> residuals;
  std::vector<std::pair<std::string, Matrix>> matrices;
};

struct TrialRecord {
  FuzzSuite suite = FuzzSuite::Penrose;
  std::size_t trial_index = 0;
  std::string family;
  std::map<std::string, bool> verdicts;
};

/// Result of a single trial; `stats` holds named counters that the campaign
/// sums (e.g. how often the reverse order law held).
struct TrialOutcome {
  std::vector<FuzzFailure> failures;
  TrialRecord record;
  std::map<std::string, std::size_t> stats;
  std::map<std::string, double> residuals;
};

/// Runs trial `index` of `suite` in isolation.  Depends only on the
/// arguments, so any failure can be replayed from its (seed, trial_index).
TrialOutcome run_trial(FuzzSuite suite, std::uint64_t seed, std::size_t index,
                       std::size_t max_dim, const Tolerance& t);

struct FuzzReport {
  FuzzSuite suite = FuzzSuite::All;
  std::size_t trials_run = 0;
  std::vector<FuzzFailure> failures;  // ordered by (suite, trial_index)
  double elapsed = 0.0;               // seconds
  std::map<std::string, std::size_t> stats;
  std::vector<TrialRecord> trials;    // only with record_verdicts
};

FuzzReport fuzz(const FuzzConfig& config);

}  // namespace mpinv
