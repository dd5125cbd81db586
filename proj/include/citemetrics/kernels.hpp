#pragma once

// Arithmetic kernels behind the curve and ledger pipelines.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant picked at runtime. Results are bit-identical across variants:
// element-wise kernels perform the same IEEE operation per lane, and the
// reductions use one fixed association order (four strided partial sums
// combined as (p0 + p1) + (p2 + p3), then the tail added left to right),
// which the scalar path reproduces exactly.
//
// Set CITEMETRICS_KERNELS=scalar in the environment to force the reference
// path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace citemetrics::kernels {

struct KernelSet {
    std::string_view name;

    // acc[i] += x[i]
    void (*add_into)(double* acc, const double* x, std::size_t n);
    // out[i] = num[i] / den[i]
    void (*divide)(const double* num, const double* den, double* out, std::size_t n);
    // out[i] = (x[i] * mul) / div
    void (*scale_ratio)(const double* x, double mul, double div, double* out, std::size_t n);
    // out[i] = x[0] + ... + x[i], accumulated left to right
    void (*prefix_sum)(const double* x, double* out, std::size_t n);
    double (*sum)(const double* x, std::size_t n);
    double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
    std::int64_t (*sum_i64)(const std::int64_t* x, std::size_t n);
};

const KernelSet& scalar_kernels();

// nullptr when the build or the CPU lacks AVX2.
const KernelSet* avx2_kernels();

// Every variant usable on this machine, scalar first.
std::vector<const KernelSet*> available_kernels();

// Variant selected for this process (best available unless overridden).
const KernelSet& active_kernels();

// Convenience wrappers over the active set.
void add_into(std::span<double> acc, std::span<const double> x);
void divide(std::span<const double> num, std::span<const double> den, std::span<double> out);
void scale_ratio(std::span<const double> x, double mul, double div, std::span<double> out);
void prefix_sum(std::span<const double> x, std::span<double> out);
double sum(std::span<const double> x);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
std::int64_t sum_i64(std::span<const std::int64_t> x);

}  // namespace citemetrics::kernels
