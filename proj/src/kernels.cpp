#include "sdmax/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

namespace sdmax::kernels {

// Defined in kernels_avx2.cpp; null when that TU was compiled without AVX2.
const Backend* avx2_compiled_backend();

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Backend* lookup(const std::string& name) {
    if (name == "scalar") return &scalar_backend();
    if (name == "avx2") return avx2_backend();
    return nullptr;
}

const Backend* pick_default() {
    if (const char* env = std::getenv("SDMAX_KERNELS")) {
        if (const Backend* b = lookup(env)) return b;
    }
    if (const Backend* b = avx2_backend()) return b;
    return &scalar_backend();
}

const Backend*& current() {
    static const Backend* b = pick_default();
    return b;
}

}  // namespace

const Backend* avx2_backend() {
    static const Backend* b = cpu_has_avx2() ? avx2_compiled_backend() : nullptr;
    return b;
}

const Backend& active() { return *current(); }

void force_backend(const std::string& name) {
    const Backend* b = lookup(name);
    if (!b) throw std::invalid_argument("force_backend: backend '" + name +
                                        "' is unknown or unavailable on this host");
    current() = b;
}

void reset_backend() { current() = pick_default(); }

}  // namespace sdmax::kernels
