#pragma once
// Data-parallel reductions used by the quadrature and operator code.
//
// Every kernel has a scalar reference implementation and, on x86-64 builds,
// an AVX2/FMA variant. The variant is picked once at first use from CPUID
// and can be overridden with set_isa() or the PRIOQ_ISA environment
// variable ("scalar" or "avx2"). Within one variant the summation order is
// fixed, so results are reproducible run to run; across variants they agree
// to rounding (see tests/test_kernels.cpp).

#include <cstddef>
#include <span>
#include <string_view>

namespace prioq::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

// Best variant supported by both this build and the running CPU.
Isa detected_isa();
bool isa_available(Isa isa);

Isa active_isa();
// Throws std::invalid_argument if `isa` is not available.
void set_isa(Isa isa);

// sum_i a[i] * b[i]
double dot(std::span<const double> a, std::span<const double> b);
// sum_i a[i] * b[i] * c[i]
double dot3(std::span<const double> a, std::span<const double> b,
            std::span<const double> c);
// sum_i w[i] * |x[i]|
double weighted_abs_sum(std::span<const double> w, std::span<const double> x);
// y[i] += alpha * x[i]
void axpy(double alpha, std::span<const double> x, std::span<double> y);

// y = M x for a row-major rows x cols matrix. Each row is an independent
// dot(), so the result does not depend on how rows are partitioned.
void matvec(std::span<const double> m, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y);

namespace detail {

struct KernelTable {
  double (*dot)(const double*, const double*, std::size_t);
  double (*dot3)(const double*, const double*, const double*, std::size_t);
  double (*weighted_abs_sum)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
};

const KernelTable& scalar_kernels();
#if defined(PRIOQ_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

}  // namespace detail
}  // namespace prioq::simd
