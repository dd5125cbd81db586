#include "citemetrics/kernels.hpp"

#include <cassert>
#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"

namespace citemetrics::kernels {

namespace {

constexpr KernelSet kScalar{
    "scalar",
    &scalar::add_into,
    &scalar::divide,
    &scalar::scale_ratio,
    &scalar::prefix_sum,
    &scalar::sum,
    &scalar::max_abs_diff,
    &scalar::sum_i64,
};

#if defined(CITEMETRICS_HAVE_AVX2)
// prefix_sum has a loop-carried dependency and its left-to-right order is
// part of the contract, so both variants share the scalar loop.
constexpr KernelSet kAvx2{
    "avx2",
    &avx2::add_into,
    &avx2::divide,
    &avx2::scale_ratio,
    &scalar::prefix_sum,
    &avx2::sum,
    &avx2::max_abs_diff,
    &avx2::sum_i64,
};

bool cpu_has_avx2() {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
}
#endif

const KernelSet& select_kernels() {
    const char* forced = std::getenv("CITEMETRICS_KERNELS");
    if (forced != nullptr && std::string(forced) == "scalar") return kScalar;
    if (const KernelSet* fast = avx2_kernels()) return *fast;
    return kScalar;
}

}  // namespace

const KernelSet& scalar_kernels() { return kScalar; }

const KernelSet* avx2_kernels() {
#if defined(CITEMETRICS_HAVE_AVX2)
    static const bool supported = cpu_has_avx2();
    return supported ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

std::vector<const KernelSet*> available_kernels() {
    std::vector<const KernelSet*> out{&kScalar};
    if (const KernelSet* fast = avx2_kernels()) out.push_back(fast);
    return out;
}

const KernelSet& active_kernels() {
    static const KernelSet& chosen = select_kernels();
    return chosen;
}

void add_into(std::span<double> acc, std::span<const double> x) {
    assert(acc.size() == x.size());
    active_kernels().add_into(acc.data(), x.data(), x.size());
}

void divide(std::span<const double> num, std::span<const double> den, std::span<double> out) {
    assert(num.size() == den.size() && num.size() == out.size());
    active_kernels().divide(num.data(), den.data(), out.data(), out.size());
}

void scale_ratio(std::span<const double> x, double mul, double div, std::span<double> out) {
    assert(x.size() == out.size());
    active_kernels().scale_ratio(x.data(), mul, div, out.data(), out.size());
}

void prefix_sum(std::span<const double> x, std::span<double> out) {
    assert(x.size() == out.size());
    active_kernels().prefix_sum(x.data(), out.data(), out.size());
}

double sum(std::span<const double> x) { return active_kernels().sum(x.data(), x.size()); }

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    return active_kernels().max_abs_diff(a.data(), b.data(), a.size());
}

std::int64_t sum_i64(std::span<const std::int64_t> x) {
    return active_kernels().sum_i64(x.data(), x.size());
}

}  // namespace citemetrics::kernels
