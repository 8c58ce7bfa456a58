// AVX2+FMA kernels. This translation unit is the only one compiled with
// -mavx2 -mfma; nothing here may be called unless the dispatcher has checked
// cpu support. Complex layout is the std::complex<double> guarantee:
// interleaved (re, im), so one __m256d holds two complex numbers
// [re0 im0 re1 im1].
//
// Complex product recipe per register pair a, b:
//   t0 = movedup(b)      = [br0 br0 br1 br1]
//   t1 = permute(b,0xF)  = [bi0 bi0 bi1 bi1]
//   as = permute(a,0x5)  = [ai0 ar0 ai1 ar1]
//   fmaddsub(a, t0, as*t1) -> [ar*br - ai*bi, ai*br + ar*bi]  (even sub, odd add)
// Conjugated product (conj(a)*b) swaps the roles:
//   fmsubadd(t0a, b, t1a*bs) -> [ar*br + ai*bi, ar*bi - ai*br] (even add, odd sub)

#ifdef SDMAX_HAVE_AVX2_TU

#include <immintrin.h>

#include <cmath>

#include "sdmax/kernels.hpp"

namespace sdmax::kernels {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

void v_cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    double* po = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        __m256d t0 = _mm256_movedup_pd(vb);
        __m256d t1 = _mm256_permute_pd(vb, 0xF);
        __m256d as = _mm256_permute_pd(va, 0x5);
        _mm256_storeu_pd(po + 2 * i, _mm256_fmaddsub_pd(va, t0, _mm256_mul_pd(as, t1)));
    }
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void v_caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const double* px = reinterpret_cast<const double*>(x);
    double* py = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(px + 2 * i);
        __m256d vy = _mm256_loadu_pd(py + 2 * i);
        __m256d xs = _mm256_permute_pd(vx, 0x5);
        __m256d prod = _mm256_fmaddsub_pd(vx, ar, _mm256_mul_pd(xs, ai));
        _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(vy, prod));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void v_abs2(const cplx* a, double* out, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d sq = _mm256_mul_pd(va, va);
        __m256d h = _mm256_hadd_pd(sq, sq);  // [s0 s0 s1 s1]
        out[i] = _mm_cvtsd_f64(_mm256_castpd256_pd128(h));
        out[i + 1] = _mm_cvtsd_f64(_mm256_extractf128_pd(h, 1));
    }
    for (; i < n; ++i) out[i] = a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
}

double v_sum_abs2(const cplx* a, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        acc = _mm256_fmadd_pd(va, va, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    return s;
}

double v_sum_weighted_abs2(const double* w, const cplx* a, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m128d wv = _mm_loadu_pd(w + i);  // [w0 w1]
        __m256d wd = _mm256_permute4x64_pd(_mm256_castpd128_pd256(wv), 0x50);  // [w0 w0 w1 w1]
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        acc = _mm256_fmadd_pd(_mm256_mul_pd(va, va), wd, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i)
        s += w[i] * (a[i].real() * a[i].real() + a[i].imag() * a[i].imag());
    return s;
}

cplx v_cdotc(const cplx* a, const cplx* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    __m256d acc = _mm256_setzero_pd();  // interleaved [re im re im] accumulator
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        __m256d t0 = _mm256_movedup_pd(va);
        __m256d t1 = _mm256_permute_pd(va, 0xF);
        __m256d bs = _mm256_permute_pd(vb, 0x5);
        acc = _mm256_add_pd(acc, _mm256_fmsubadd_pd(t0, vb, _mm256_mul_pd(t1, bs)));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double re = lanes[0] + lanes[2];
    double im = lanes[1] + lanes[3];
    for (; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

void v_indexed_sums(const double* rho, std::size_t n, double* mass, double* moment) {
    __m256d accm = _mm256_setzero_pd();
    __m256d accq = _mm256_setzero_pd();
    __m256d idx = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
    const __m256d four = _mm256_set1_pd(4.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d r = _mm256_loadu_pd(rho + i);
        accm = _mm256_add_pd(accm, r);
        accq = _mm256_fmadd_pd(idx, r, accq);
        idx = _mm256_add_pd(idx, four);
    }
    double m = hsum(accm), q = hsum(accq);
    for (; i < n; ++i) {
        m += rho[i];
        q += static_cast<double>(i) * rho[i];
    }
    *mass = m;
    *moment = q;
}

double v_max_abs_imag(const cplx* a, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const __m256d signmask = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        acc = _mm256_max_pd(acc, _mm256_andnot_pd(signmask, va));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double m = std::max(lanes[1], lanes[3]);  // odd lanes carry the imag parts
    for (; i < n; ++i) m = std::max(m, std::abs(a[i].imag()));
    return m;
}

const Backend kAvx2 = {
    .name = "avx2",
    .cmul = v_cmul,
    .caxpy = v_caxpy,
    .abs2 = v_abs2,
    .sum_abs2 = v_sum_abs2,
    .sum_weighted_abs2 = v_sum_weighted_abs2,
    .cdotc = v_cdotc,
    .indexed_sums = v_indexed_sums,
    .max_abs_imag = v_max_abs_imag,
};

}  // namespace

const Backend* avx2_compiled_backend() { return &kAvx2; }

}  // namespace sdmax::kernels

#else

namespace sdmax::kernels {
struct Backend;
const Backend* avx2_compiled_backend() { return nullptr; }
}  // namespace sdmax::kernels

#endif  // SDMAX_HAVE_AVX2_TU
