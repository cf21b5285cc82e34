#include "factorlab/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>

#include "tables.hpp"

namespace factorlab::kernels {

namespace {

bool cpu_has_avx2() {
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

bool cpu_has_neon() {
#if defined(__aarch64__)
    return true;
#else
    return false;
#endif
}

struct State {
    Backend backend;
    const KernelTable* table;
};

State detect() {
    if (const char* env = std::getenv("FACTORLAB_SIMD")) {
        const std::string v(env);
        if (v == "scalar") return {Backend::scalar, &scalar_table()};
        if (v == "avx2" && cpu_has_avx2()) return {Backend::avx2, avx2_table()};
        if (v == "neon" && cpu_has_neon()) return {Backend::neon, neon_table()};
        // unknown or unsupported value: fall through to auto-detection
    }
    if (cpu_has_avx2()) return {Backend::avx2, avx2_table()};
    if (cpu_has_neon()) return {Backend::neon, neon_table()};
    return {Backend::scalar, &scalar_table()};
}

State& state() {
    static State s = detect();
    return s;
}

}  // namespace

Backend active_backend() { return state().backend; }

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "unknown";
}

bool backend_supported(Backend b) {
    switch (b) {
        case Backend::scalar: return true;
        case Backend::avx2: return cpu_has_avx2() && avx2_table() != nullptr;
        case Backend::neon: return cpu_has_neon() && neon_table() != nullptr;
    }
    return false;
}

void set_backend(Backend b) {
    if (!backend_supported(b)) {
        throw std::runtime_error("kernel backend not supported on this CPU: " +
                                 backend_name(b));
    }
    const KernelTable* t = nullptr;
    switch (b) {
        case Backend::scalar: t = &scalar_table(); break;
        case Backend::avx2: t = avx2_table(); break;
        case Backend::neon: t = neon_table(); break;
    }
    state() = {b, t};
}

namespace detail {
const KernelTable& active_table() { return *state().table; }
}  // namespace detail

}  // namespace factorlab::kernels
