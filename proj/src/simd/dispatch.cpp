#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "prioq/simd/kernels.hpp"

namespace prioq::simd {
namespace {

bool cpu_has_avx2() {
#if defined(PRIOQ_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const detail::KernelTable& table_for(Isa isa) {
#if defined(PRIOQ_HAVE_AVX2)
  if (isa == Isa::avx2) return detail::avx2_kernels();
#endif
  (void)isa;
  return detail::scalar_kernels();
}

Isa initial_isa() {
  if (const char* env = std::getenv("PRIOQ_ISA")) {
    const std::string want(env);
    if (want == "scalar") return Isa::scalar;
    if (want == "avx2" && isa_available(Isa::avx2)) return Isa::avx2;
  }
  return detected_isa();
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

const detail::KernelTable& kernels() { return table_for(active().load()); }

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  if (isa == Isa::scalar) return true;
  static const bool avx2 = cpu_has_avx2();
  return avx2;
}

Isa detected_isa() {
  return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

Isa active_isa() { return active().load(); }

void set_isa(Isa isa) {
  if (!isa_available(isa))
    throw std::invalid_argument("kernel variant not available: " +
                                std::string(isa_name(isa)));
  active().store(isa);
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  return kernels().dot(a.data(), b.data(), a.size());
}

double dot3(std::span<const double> a, std::span<const double> b,
            std::span<const double> c) {
  if (a.size() != b.size() || a.size() != c.size())
    throw std::invalid_argument("dot3: size mismatch");
  return kernels().dot3(a.data(), b.data(), c.data(), a.size());
}

double weighted_abs_sum(std::span<const double> w, std::span<const double> x) {
  if (w.size() != x.size())
    throw std::invalid_argument("weighted_abs_sum: size mismatch");
  return kernels().weighted_abs_sum(w.data(), x.data(), w.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("axpy: size mismatch");
  kernels().axpy(alpha, x.data(), y.data(), x.size());
}

void matvec(std::span<const double> m, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y) {
  if (m.size() != rows * cols || x.size() != cols || y.size() != rows)
    throw std::invalid_argument("matvec: size mismatch");
  const auto& k = kernels();
  for (std::size_t i = 0; i < rows; ++i)
    y[i] = k.dot(m.data() + i * cols, x.data(), cols);
}

}  // namespace prioq::simd
