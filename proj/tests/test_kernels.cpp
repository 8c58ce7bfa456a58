#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "sdmax/kernels.hpp"

using sdmax::kernels::Backend;
using cplx = std::complex<double>;

namespace {

std::vector<cplx> random_complex(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<cplx> v(n);
    for (auto& z : v) z = cplx(u(rng), u(rng));
    return v;
}

std::vector<double> random_real(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

// Lengths chosen to hit the vector body, the scalar tail, and both at once.
const std::size_t kLengths[] = {0, 1, 2, 3, 5, 8, 17, 64, 257, 1024};

void check_backend_against_reference(const Backend& be) {
    for (const std::size_t n : kLengths) {
        const auto a = random_complex(n, 1000 + n);
        const auto b = random_complex(n, 2000 + n);
        const auto w = random_real(n, 3000 + n);

        // cmul, elementwise: tolerances allow FMA contraction differences.
        std::vector<cplx> out(n), ref(n);
        be.cmul(a.data(), b.data(), out.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            ref[i] = a[i] * b[i];
            CHECK(std::abs(out[i] - ref[i]) <= 1e-14 * (1.0 + std::abs(ref[i])));
        }

        // cmul with out aliasing a
        std::vector<cplx> alias = a;
        be.cmul(alias.data(), b.data(), alias.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(alias[i] - ref[i]) <= 1e-14 * (1.0 + std::abs(ref[i])));

        // caxpy
        const cplx alpha(0.3, -1.7);
        std::vector<cplx> y = b, yref = b;
        be.caxpy(alpha, a.data(), y.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            yref[i] += alpha * a[i];
            CHECK(std::abs(y[i] - yref[i]) <= 1e-14 * (1.0 + std::abs(yref[i])));
        }

        // abs2
        std::vector<double> d(n), dref(n);
        be.abs2(a.data(), d.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            dref[i] = std::norm(a[i]);
            CHECK(d[i] == doctest::Approx(dref[i]).epsilon(1e-14));
        }

        // reductions: compare against plain sequential sums; vector backends
        // reassociate, so leave relative headroom.
        double s_ref = 0.0, sw_ref = 0.0, mass_ref = 0.0, mom_ref = 0.0,
               mai_ref = 0.0;
        cplx dot_ref(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            s_ref += std::norm(a[i]);
            sw_ref += w[i] * std::norm(a[i]);
            dot_ref += std::conj(a[i]) * b[i];
            mass_ref += dref[i];
            mom_ref += static_cast<double>(i) * dref[i];
            mai_ref = std::max(mai_ref, std::abs(a[i].imag()));
        }
        CHECK(be.sum_abs2(a.data(), n) == doctest::Approx(s_ref).epsilon(1e-12));
        CHECK(be.sum_weighted_abs2(w.data(), a.data(), n) ==
              doctest::Approx(sw_ref).epsilon(1e-12));
        const cplx dot = be.cdotc(a.data(), b.data(), n);
        CHECK(std::abs(dot - dot_ref) <= 1e-12 * (1.0 + std::abs(dot_ref)));

        double mass = -1.0, mom = -1.0;
        be.indexed_sums(dref.data(), n, &mass, &mom);
        CHECK(mass == doctest::Approx(mass_ref).epsilon(1e-12));
        if (n > 1) CHECK(mom == doctest::Approx(mom_ref).epsilon(1e-12));
        CHECK(be.max_abs_imag(a.data(), n) == mai_ref);
    }
}

}  // namespace

TEST_CASE("scalar backend matches direct formulas") {
    check_backend_against_reference(sdmax::kernels::scalar_backend());
}

TEST_CASE("avx2 backend matches the scalar reference") {
    const Backend* avx = sdmax::kernels::avx2_backend();
    if (avx == nullptr) {
        MESSAGE("AVX2 backend unavailable on this host; skipping equivalence");
        return;
    }
    CHECK(std::string(avx->name) == "avx2");
    check_backend_against_reference(*avx);

    // Direct scalar-vs-avx2 comparison on one large odd-length buffer.
    const std::size_t n = 1237;
    const auto a = random_complex(n, 77);
    const auto b = random_complex(n, 99);
    const Backend& sc = sdmax::kernels::scalar_backend();
    const cplx d1 = sc.cdotc(a.data(), b.data(), n);
    const cplx d2 = avx->cdotc(a.data(), b.data(), n);
    CHECK(std::abs(d1 - d2) <= 1e-12 * (1.0 + std::abs(d1)));
    CHECK(sc.sum_abs2(a.data(), n) ==
          doctest::Approx(avx->sum_abs2(a.data(), n)).epsilon(1e-13));
}

TEST_CASE("backend selection") {
    const Backend& def = sdmax::kernels::active();
    CHECK(def.name != nullptr);

    sdmax::kernels::force_backend("scalar");
    CHECK(std::string(sdmax::kernels::active().name) == "scalar");

    if (sdmax::kernels::avx2_backend() != nullptr) {
        sdmax::kernels::force_backend("avx2");
        CHECK(std::string(sdmax::kernels::active().name) == "avx2");
    } else {
        CHECK_THROWS_AS(sdmax::kernels::force_backend("avx2"), std::invalid_argument);
    }

    CHECK_THROWS_AS(sdmax::kernels::force_backend("bogus"), std::invalid_argument);
    sdmax::kernels::reset_backend();
    CHECK(std::string(sdmax::kernels::active().name) == std::string(def.name));
}

TEST_CASE("empty inputs are safe") {
    const Backend& be = sdmax::kernels::active();
    CHECK(be.sum_abs2(nullptr, 0) == 0.0);
    CHECK(be.cdotc(nullptr, nullptr, 0) == cplx(0.0, 0.0));
    CHECK(be.max_abs_imag(nullptr, 0) == 0.0);
    double mass = 9.0, mom = 9.0;
    be.indexed_sums(nullptr, 0, &mass, &mom);
    CHECK(mass == 0.0);
    CHECK(mom == 0.0);
}
