// Reference kernels. Deliberately plain loops: this translation unit is built
// without arch-specific flags and is the semantic definition the SIMD
// backends are tested against.

#include <cmath>

#include "sdmax/kernels.hpp"

namespace sdmax::kernels {
namespace {

void s_cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void s_caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void s_abs2(const cplx* a, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
}

double s_sum_abs2(const cplx* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    return acc;
}

double s_sum_weighted_abs2(const double* w, const cplx* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += w[i] * (a[i].real() * a[i].real() + a[i].imag() * a[i].imag());
    return acc;
}

cplx s_cdotc(const cplx* a, const cplx* b, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

void s_indexed_sums(const double* rho, std::size_t n, double* mass, double* moment) {
    double m = 0.0, q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        m += rho[i];
        q += static_cast<double>(i) * rho[i];
    }
    *mass = m;
    *moment = q;
}

double s_max_abs_imag(const cplx* a, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i].imag()));
    return m;
}

const Backend kScalar = {
    .name = "scalar",
    .cmul = s_cmul,
    .caxpy = s_caxpy,
    .abs2 = s_abs2,
    .sum_abs2 = s_sum_abs2,
    .sum_weighted_abs2 = s_sum_weighted_abs2,
    .cdotc = s_cdotc,
    .indexed_sums = s_indexed_sums,
    .max_abs_imag = s_max_abs_imag,
};

}  // namespace

const Backend& scalar_backend() { return kScalar; }

}  // namespace sdmax::kernels
