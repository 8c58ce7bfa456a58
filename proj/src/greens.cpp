#include "sdmax/greens.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "sdmax/dispersion.hpp"

namespace sdmax {

using std::numbers::pi;
using cd = std::complex<double>;

void RadialQuadratureSpec::validate() const {
    if (!(regularization_epsilon > 0.0))
        throw std::invalid_argument("RadialQuadratureSpec: epsilon must be > 0");
    if (extrapolation_levels < 2 || extrapolation_levels > 24)
        throw std::invalid_argument("RadialQuadratureSpec: extrapolation levels out of range");
    const double eps_finest =
        regularization_epsilon / static_cast<double>(1u << (extrapolation_levels - 1));
    if (!(r_max * eps_finest >= 20.0 - 1e-9))
        throw std::invalid_argument(
            "RadialQuadratureSpec: r_max too short, damped tail not suppressed "
            "(need r_max * eps_finest >= 20)");
    if (min_panels < 1) throw std::invalid_argument("RadialQuadratureSpec: min_panels >= 1");
}

RadialQuadratureSpec default_radial_quadrature(double k, const PhysicalParams& params) {
    const DispersionValue w = omega(k, params);
    const double k0 = params.cutoff_wavenumber();
    // Pole gap of the damped integrand; below the cutoff the integral is
    // absolutely convergent and only the scale matters.
    const double gap = w.is_propagating ? k - w.omega.real() / params.c() : k0;
    RadialQuadratureSpec spec;
    spec.regularization_epsilon = 0.5 * gap;
    spec.extrapolation_levels = 6;
    spec.r_max = 20.0 / (spec.regularization_epsilon /
                         static_cast<double>(1u << (spec.extrapolation_levels - 1)));
    spec.min_panels = 16;
    spec.validate();
    return spec;
}

double greens_kernel_weight(double separation, const PhysicalParams& params) {
    if (!(separation > 0.0))
        throw std::invalid_argument("greens_kernel_weight: coincident points rejected");
    return 1.0 / (4.0 * pi * params.c() * params.c() * separation);
}

double retarded_time(double t, double separation, const PhysicalParams& params) {
    if (!(separation > 0.0))
        throw std::invalid_argument("retarded_time: coincident points rejected");
    return t - separation / params.c();
}

namespace {

// 8-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlNode[8] = {
    -0.96028985649753623, -0.79666647741362674, -0.52553240991632899, -0.18343464249564980,
    0.18343464249564980,  0.52553240991632899,  0.79666647741362674,  0.96028985649753623,
};
constexpr double kGlWeight[8] = {
    0.10122853629037626, 0.22238103445337447, 0.31370664587788729, 0.36268378337836198,
    0.36268378337836198, 0.31370664587788729, 0.22238103445337447, 0.10122853629037626,
};

// Int_0^{r_max} f(r) e^{-eps r} dr by composite Gauss-Legendre with panels
// short enough for the fastest phase in f.
template <typename F>
cd damped_radial_integral(F&& f, double eps, double r_max, double fastest_phase,
                          int min_panels) {
    const double panel_len_target = pi / std::max(fastest_phase, 1e-300);
    const int panels = std::max(min_panels,
                                static_cast<int>(std::ceil(r_max / panel_len_target)));
    const double h = r_max / panels;
    cd acc{0.0, 0.0};
    for (int p = 0; p < panels; ++p) {
        const double a = p * h;
        cd panel{0.0, 0.0};
        for (int q = 0; q < 8; ++q) {
            const double r = a + 0.5 * h * (1.0 + kGlNode[q]);
            panel += kGlWeight[q] * f(r) * std::exp(-eps * r);
        }
        acc += 0.5 * h * panel;
    }
    return acc;
}

// Neville tableau in eps -> 0; returns the extrapolated value and the size of
// the final correction relative to it.
template <typename Evaluate>
RadialIntegralResult extrapolate_ladder(Evaluate&& evaluate, const RadialQuadratureSpec& spec,
                                        const char* what) {
    spec.validate();
    const int levels = spec.extrapolation_levels;
    std::vector<double> eps(levels);
    std::vector<cd> damped(levels);
    for (int j = 0; j < levels; ++j) {
        eps[j] = spec.regularization_epsilon / static_cast<double>(1u << j);
        damped[j] = evaluate(eps[j]);
    }

    // tab[i] holds the current tableau column; classic Neville update in eps.
    // After the last column, tab[0] extrapolates through all levels and
    // `previous` through all but the last — their gap is the settle check.
    std::vector<cd> tab = damped;
    cd previous = tab[0];
    for (int col = 1; col < levels; ++col) {
        previous = tab[0];
        for (int i = 0; i + col < levels; ++i) {
            const double x0 = eps[i];
            const double x1 = eps[i + col];
            tab[i] = (tab[i + 1] * x0 - tab[i] * x1) / (x0 - x1);
        }
    }
    const cd value = tab[0];
    const double scale = std::max(std::abs(value), 1e-300);
    const double stability = std::abs(value - previous) / scale;
    if (!(stability < 1e-4)) {
        std::ostringstream msg;
        msg << what << ": eps extrapolation failed to settle (relative step " << stability
            << " at eps0 = " << spec.regularization_epsilon << ", levels = " << levels << ")";
        throw std::runtime_error(msg.str());
    }
    return RadialIntegralResult{value, stability, std::move(eps), std::move(damped)};
}

}  // namespace

std::complex<double> radial_kernel_integral_closed(double k, const PhysicalParams& params) {
    if (!(k > 0.0)) throw std::invalid_argument("radial_kernel_integral_closed: k must be > 0");
    const cd w = omega(k, params).omega / params.c();
    return (2.0 * pi / k) * (1.0 / (w + k) + 1.0 / (w - k));
}

RadialIntegralResult radial_kernel_integral(double k, const PhysicalParams& params,
                                            const RadialQuadratureSpec& spec) {
    if (!(k > 0.0)) throw std::invalid_argument("radial_kernel_integral: k must be > 0");
    const cd w = omega(k, params).omega / params.c();
    const double fastest = std::abs(w.real()) + k;
    auto evaluate = [&](double eps) {
        auto f = [&](double r) {
            const cd ph = cd{0.0, 1.0} * (w * r);
            // e^{i(w+k)r} + e^{i(w-k)r} = 2 e^{iwr} cos(kr)
            return cd{0.0, -2.0 * pi / k} * 2.0 * std::exp(ph) * std::cos(k * r);
        };
        return damped_radial_integral(f, eps, spec.r_max, fastest, spec.min_panels);
    };
    return extrapolate_ladder(evaluate, spec, "radial_kernel_integral");
}

RadialIntegralResult retarded_transfer(double k, const PhysicalParams& params,
                                       const RadialQuadratureSpec& spec) {
    if (!(k > 0.0)) throw std::invalid_argument("retarded_transfer: k must be > 0");
    const cd w = omega(k, params).omega / params.c();
    const double fastest = std::abs(w.real()) + k;
    auto evaluate = [&](double eps) {
        auto f = [&](double r) {
            const cd ph = cd{0.0, 1.0} * (w * r);
            return (-1.0 / k) * std::sin(k * r) * std::exp(ph);
        };
        return damped_radial_integral(f, eps, spec.r_max, fastest, spec.min_panels);
    };
    return extrapolate_ladder(evaluate, spec, "retarded_transfer");
}

FieldConfiguration solve_potential(const FieldConfiguration& xi) {
    if (xi.kind() != FieldKind::Auxiliary)
        throw std::invalid_argument(
            "solve_potential: source must be an Auxiliary configuration");
    const double k0 = xi.modes().params().cutoff_wavenumber();
    FieldConfiguration a(xi.modes_ptr(), xi.time(), FieldKind::Potential);
    for (std::size_t i = 0; i < xi.modes().size(); ++i)
        a.set_coefficient(i, -xi.coefficient(i) / (k0 * k0));
    return a;
}

GridField apply_wave_operator(const FieldConfiguration& config) {
    const ModeSet& set = config.modes();
    const PhysicalParams& p = set.params();
    FieldConfiguration scaled(config.modes_ptr(), config.time(), config.kind());
    for (std::size_t i = 0; i < set.size(); ++i) {
        const double k = set.mode(i).k.norm();
        const double w = set.omega(i) / p.c();
        scaled.set_coefficient(i, config.coefficient(i) * ((k - w) * (k + w)));
    }
    return synthesize_field(scaled);
}

}  // namespace sdmax
