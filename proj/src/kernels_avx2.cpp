#include "kernels_impl.hpp"

#include <immintrin.h>

namespace citemetrics::kernels::avx2 {

void add_into(double* acc, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(acc + i);
        _mm256_storeu_pd(acc + i, _mm256_add_pd(a, _mm256_loadu_pd(x + i)));
    }
    for (; i < n; ++i) acc[i] += x[i];
}

void divide(const double* num, const double* den, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_div_pd(_mm256_loadu_pd(num + i), _mm256_loadu_pd(den + i)));
    }
    for (; i < n; ++i) out[i] = num[i] / den[i];
}

void scale_ratio(const double* x, double mul, double div, double* out, std::size_t n) {
    const __m256d vmul = _mm256_set1_pd(mul);
    const __m256d vdiv = _mm256_set1_pd(div);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(x + i), vmul);
        _mm256_storeu_pd(out + i, _mm256_div_pd(prod, vdiv));
    }
    for (; i < n; ++i) out[i] = (x[i] * mul) / div;
}

double sum(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    alignas(32) double p[4];
    _mm256_store_pd(p, acc);
    double total = (p[0] + p[1]) + (p[2] + p[3]);
    for (; i < n; ++i) total += x[i];
    return total;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d best = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        best = _mm256_max_pd(best, _mm256_andnot_pd(sign, d));
    }
    alignas(32) double p[4];
    _mm256_store_pd(p, best);
    double result = p[0];
    for (int k = 1; k < 4; ++k) result = p[k] > result ? p[k] : result;
    for (; i < n; ++i) {
        double d = a[i] - b[i];
        d = d < 0 ? -d : d;
        if (d > result) result = d;
    }
    return result;
}

std::int64_t sum_i64(const std::int64_t* x, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_add_epi64(acc, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i)));
    }
    alignas(32) std::int64_t p[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(p), acc);
    std::int64_t total = p[0] + p[1] + p[2] + p[3];
    for (; i < n; ++i) total += x[i];
    return total;
}

}  // namespace citemetrics::kernels::avx2
