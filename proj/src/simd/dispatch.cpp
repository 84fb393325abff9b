#include <atomic>
#include <cstdlib>
#include <cstring>

#include "ridgekm/error.hpp"
#include "ridgekm/simd.hpp"

namespace ridgekm::simd {

namespace {

struct KernelTable {
  Isa isa;
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*gemv)(const double*, std::size_t, std::size_t, const double*, double*);
};

constexpr KernelTable kScalar{Isa::Scalar, scalar::dot, scalar::axpy, scalar::gemv};
#if defined(RIDGEKM_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::Avx2, avx2::dot, avx2::axpy, avx2::gemv};
#endif
#if defined(RIDGEKM_HAVE_NEON)
constexpr KernelTable kNeon{Isa::Neon, neon::dot, neon::axpy, neon::gemv};
#endif

const KernelTable* table_for(Isa isa) {
  switch (isa) {
#if defined(RIDGEKM_HAVE_AVX2)
    case Isa::Avx2:
      if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &kAvx2;
      break;
#endif
#if defined(RIDGEKM_HAVE_NEON)
    case Isa::Neon:
      return &kNeon;
#endif
    default:
      break;
  }
  return &kScalar;
}

const KernelTable* initial_table() {
  const char* env = std::getenv("RIDGEKM_SIMD");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return &kScalar;
  return table_for(best_available_isa());
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

void check_same_size(std::size_t a, std::size_t b, const char* op) {
  if (a != b) throw InputError(std::string(op) + ": length mismatch");
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
    case Isa::Scalar:
      break;
  }
  return "scalar";
}

Isa best_available_isa() {
#if defined(RIDGEKM_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::Avx2;
#endif
#if defined(RIDGEKM_HAVE_NEON)
  return Isa::Neon;
#endif
  return Isa::Scalar;
}

Isa active_isa() { return current().load(std::memory_order_relaxed)->isa; }

Isa select_isa(Isa isa) {
  const KernelTable* t = table_for(isa);
  current().store(t, std::memory_order_relaxed);
  return t->isa;
}

double dot(std::span<const double> a, std::span<const double> b) {
  check_same_size(a.size(), b.size(), "dot");
  return current().load(std::memory_order_relaxed)->dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  check_same_size(x.size(), y.size(), "axpy");
  current().load(std::memory_order_relaxed)->axpy(alpha, x.data(), y.data(), x.size());
}

void gemv(std::span<const double> a, std::size_t rows, std::size_t cols,
          std::span<const double> x, std::span<double> y) {
  check_same_size(a.size(), rows * cols, "gemv");
  check_same_size(x.size(), cols, "gemv");
  check_same_size(y.size(), rows, "gemv");
  current().load(std::memory_order_relaxed)->gemv(a.data(), rows, cols, x.data(), y.data());
}

}  // namespace ridgekm::simd
