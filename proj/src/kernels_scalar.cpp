#include "kernels_impl.hpp"

#include <cmath>

namespace citemetrics::kernels::scalar {

void add_into(double* acc, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += x[i];
}

void divide(const double* num, const double* den, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = num[i] / den[i];
}

void scale_ratio(const double* x, double mul, double div, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = (x[i] * mul) / div;
}

void prefix_sum(const double* x, double* out, std::size_t n) {
    double running = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        running += x[i];
        out[i] = running;
    }
}

// Four strided lanes, then (p0 + p1) + (p2 + p3), then the tail. The AVX2
// variant accumulates in exactly this order.
double sum(const double* x, std::size_t n) {
    double p[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        p[0] += x[i];
        p[1] += x[i + 1];
        p[2] += x[i + 2];
        p[3] += x[i + 3];
    }
    double total = (p[0] + p[1]) + (p[2] + p[3]);
    for (; i < n; ++i) total += x[i];
    return total;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::fabs(a[i] - b[i]);
        if (d > best) best = d;
    }
    return best;
}

std::int64_t sum_i64(const std::int64_t* x, std::size_t n) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += x[i];
    return total;
}

}  // namespace citemetrics::kernels::scalar
