#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mpinv/condition_report.hpp"
#include "mpinv/matrix.hpp"

namespace mpinv {

struct ClassificationReport {
  bool regular = true;  // every finite matrix has a Moore-Penrose inverse
  bool hermitian = false;
  bool normal = false;
  bool partial_isometry = false;
  bool mp_hermitian = false;
  double op_norm = 0.0;
  double pinv_norm = 0.0;
  std::optional<double> conorm;  // absent for the zero matrix
  std::size_t rank = 0;
};

/// Smallest singular value above the rank threshold, i.e. 1 / ||a^+||.
/// Throws Error{Precondition} for the zero matrix.
double conorm(const Matrix& a, const Tolerance& t = {});

/// a^+ = a^*.  The zero matrix counts as a partial isometry.
bool is_partial_isometry(const Matrix& a, const Tolerance& t = {});

/// m is a hermitian idempotent (m^* = m and m^2 = m) to tolerance.
bool is_hermitian_idempotent(const Matrix& m, const Tolerance& t = {});

/// ||a a^* - a^* a||_F / ||a||_F^2 (zero for the zero matrix).
double normality_residual(const Matrix& a);

/// ||a - a^*|| / max(1, ||a||_F).
double hermitian_residual(const Matrix& a);

/// "LHS" (partial isometry), "RHS" (c(a) = ||a|| = 1) and "CONSISTENT"
/// (LHS == RHS).  Throws Error{Precondition} for the zero matrix.
ConditionReport prop53_check(const Matrix& a, const Tolerance& t = {});

/// "LHS" (normal and MP-hermitian), "RHS" (hermitian partial isometry) and
/// "CONSISTENT".
ConditionReport theorem54_check(const Matrix& a, const Tolerance& t = {});

ClassificationReport classify(const Matrix& a, const Tolerance& t = {});

enum class SpecialKind { PartialIsometry, HermitianPartialIsometry, PrescribedSingularValues };

struct SpecialParams {
  std::size_t rank = 0;                  // PartialIsometry
  std::size_t positive = 0;              // HermitianPartialIsometry: +1 count
  std::size_t negative = 0;              // HermitianPartialIsometry: -1 count
  std::vector<double> singular_values;   // PrescribedSingularValues, length <= n
};

/// Square n x n fixtures, deterministic per (kind, n, params, seed):
///   PartialIsometry           U_r V_r^*
///   HermitianPartialIsometry  Q diag(+1.., -1.., 0..) Q^*
///   PrescribedSingularValues  U diag(sigma, 0..) V^*
Matrix generate_special(SpecialKind kind, std::size_t n, const SpecialParams& params,
                        std::uint64_t seed);

}  // namespace mpinv
