#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "mpinv/condition_report.hpp"
#include "mpinv/matrix.hpp"

namespace mpinv {

/// n x k matrix with orthonormal columns.
struct SubspaceBasis {
  Matrix columns;
  std::size_t dim() const { return columns.cols(); }
};

/// C^n = H1 (+) H2 with a|H1 = 0 and a(H2) contained in H2.  `t2` is the
/// restriction of a to H2 written in the h2 basis.
struct MphDecomposition {
  SubspaceBasis h1;  // null space
  SubspaceBasis h2;  // range
  Matrix t2;
  double orthogonality_residual = 0.0;  // ||h1^* h2||_F
  double involution_residual = 0.0;     // ||t2^2 - I||_F
  double reconstruction_residual = 0.0; // ||h2 t2 h2^* - a|| relative
};

/// a^+ = a, decided with approx_eq.
bool is_mp_hermitian(const Matrix& a, const Tolerance& t = {});

/// a = a^3 and (a^2)^* = a^2.
bool algebraic_mph_check(const Matrix& a, const Tolerance& t = {});

/// ||a^3 - a|| within tolerance.  x^3 - x annihilating a confines the
/// spectrum of a to {-1, 0, 1}.
bool annihilator_spectrum_check(const Matrix& a, const Tolerance& t = {});

/// Column-space realization of the left-multiplication characterization:
///   COL_EQ          col(a) = col(a^*)
///   NULL_EQ         null(a) = null(a^*)
///   DIRECT_SUM      C^n = col(a) (+) null(a)
///   SQUARES_IDENTITY  a^2 B = B and (a^*)^2 B = B, B a basis of col(a)
/// The conjunction of the four is equivalent to is_mp_hermitian.
ConditionReport theorem51_check(const Matrix& a, const Tolerance& t = {});

/// Throws Error{Precondition} (message carries ||a^+ - a||) unless a is
/// Moore-Penrose hermitian.
MphDecomposition theorem52_decompose(const Matrix& a, const Tolerance& t = {});

struct MphGeneratorOptions {
  /// Condition-number cap of the similarity S in T2 = S D S^{-1}.
  double max_condition = 10.0;
  /// Number of +1 entries in D; default picks at random, keeping at least
  /// one of each sign when rank >= 2.
  std::optional<std::size_t> positive = std::nullopt;
};

/// Q (T2 (+) 0) Q^* with Q a seeded unitary.  Deterministic per arguments.
Matrix generate_mp_hermitian(std::size_t n, std::size_t rank, std::uint64_t seed,
                             const MphGeneratorOptions& opts = {});

}  // namespace mpinv
