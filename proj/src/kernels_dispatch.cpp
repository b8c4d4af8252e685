#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "ctxbench/kernels.hpp"

namespace ctxbench::kernels {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

namespace {

Isa pick_default() {
    if (const char* env = std::getenv("CTXBENCH_ISA")) {
        if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
        if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return Isa::avx2;
        return Isa::scalar;
    }
    return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{pick_default()};
    return isa;
}

}  // namespace

const KernelTable& active() {
#if defined(__x86_64__) || defined(_M_X64)
    return current().load(std::memory_order_relaxed) == Isa::avx2 ? avx2_kernels
                                                                  : scalar_kernels;
#else
    return scalar_kernels;
#endif
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
    if (isa == Isa::avx2 && !cpu_has_avx2())
        throw std::runtime_error("AVX2 not available on this CPU");
    current().store(isa, std::memory_order_relaxed);
}

}  // namespace ctxbench::kernels
