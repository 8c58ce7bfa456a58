#pragma once

#include <complex>
#include <cstddef>
#include <string>

// Flat array kernels behind the spectral code paths: complex phase rotation,
// conjugated dot products (KG inner products), weighted power sums, density
// reductions. A scalar reference implementation always exists; an AVX2+FMA
// variant is compiled in its own translation unit (with -mavx2 -mfma) and
// selected at runtime when the CPU supports it. Every backend must produce
// results equal to the scalar one up to reassociation-level roundoff; the
// equivalence test suite runs all kernels on all compiled backends.

namespace sdmax::kernels {

using cplx = std::complex<double>;

struct Backend {
    const char* name;

    // out[i] = a[i] * b[i]. Aliasing out == a or out == b is allowed.
    void (*cmul)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
    // y[i] += alpha * x[i]
    void (*caxpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
    // out[i] = |a[i]|^2
    void (*abs2)(const cplx* a, double* out, std::size_t n);
    // sum_i |a[i]|^2
    double (*sum_abs2)(const cplx* a, std::size_t n);
    // sum_i w[i] * |a[i]|^2
    double (*sum_weighted_abs2)(const double* w, const cplx* a, std::size_t n);
    // sum_i conj(a[i]) * b[i]
    cplx (*cdotc)(const cplx* a, const cplx* b, std::size_t n);
    // mass = sum_i rho[i]; moment = sum_i i * rho[i] (index-weighted)
    void (*indexed_sums)(const double* rho, std::size_t n, double* mass, double* moment);
    // max_i |Im a[i]|, 0 for n == 0
    double (*max_abs_imag)(const cplx* a, std::size_t n);
};

const Backend& scalar_backend();
// nullptr when not compiled in or the CPU lacks AVX2/FMA.
const Backend* avx2_backend();

/// The backend all library code dispatches through. Defaults to the best
/// available; honours SDMAX_KERNELS=scalar|avx2 in the environment at first
/// use (unknown or unavailable values fall back to the default, they do not
/// throw — the env var is a diagnostic override, not configuration).
const Backend& active();

/// Force a backend by name ("scalar", "avx2") for tests. Throws
/// std::invalid_argument if the name is unknown or unavailable on this host.
void force_backend(const std::string& name);
/// Undo force_backend / env override and return to automatic selection.
void reset_backend();

}  // namespace sdmax::kernels
