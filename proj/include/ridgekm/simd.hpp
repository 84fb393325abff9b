#pragma once

// Data-parallel inner loops used by the solvers. Each kernel has a scalar
// reference implementation and, where the target supports it, a vectorized
// variant. The variant is picked once at startup from CPUID (x86) or the
// build target (aarch64); RIDGEKM_SIMD=scalar in the environment forces the
// reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace ridgekm::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

/// Instruction set currently used by the dispatched kernels.
Isa active_isa();

/// Best instruction set this binary can run on this machine.
Isa best_available_isa();

/// Overrides dispatch; falls back to Scalar when `isa` is not available.
/// Returns the instruction set actually selected.
Isa select_isa(Isa isa);

/// sum_i a[i] * b[i]
double dot(std::span<const double> a, std::span<const double> b);

/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

/// y = A x for row-major A (rows x cols).
void gemv(std::span<const double> a, std::size_t rows, std::size_t cols,
          std::span<const double> x, std::span<double> y);

/// Per-ISA entry points, exposed for equivalence testing.
namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
}  // namespace scalar

namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
}  // namespace avx2

namespace neon {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
}  // namespace neon

}  // namespace ridgekm::simd
