#pragma once

// Variant entry points. Pointer/length signatures keep the AVX2 translation
// unit free of template instantiations that could leak into scalar code.

#include <cstddef>
#include <cstdint>

namespace citemetrics::kernels {

namespace scalar {
void add_into(double* acc, const double* x, std::size_t n);
void divide(const double* num, const double* den, double* out, std::size_t n);
void scale_ratio(const double* x, double mul, double div, double* out, std::size_t n);
void prefix_sum(const double* x, double* out, std::size_t n);
double sum(const double* x, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);
std::int64_t sum_i64(const std::int64_t* x, std::size_t n);
}  // namespace scalar

#if defined(CITEMETRICS_HAVE_AVX2)
namespace avx2 {
void add_into(double* acc, const double* x, std::size_t n);
void divide(const double* num, const double* den, double* out, std::size_t n);
void scale_ratio(const double* x, double mul, double div, double* out, std::size_t n);
double sum(const double* x, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);
std::int64_t sum_i64(const std::int64_t* x, std::size_t n);
}  // namespace avx2
#endif

}  // namespace citemetrics::kernels
