#include "sdmax/field.hpp"

#include <cmath>
#include <stdexcept>

#include "sdmax/fft.hpp"
#include "sdmax/kernels.hpp"

namespace sdmax {
namespace {

template <typename WeightFn>
std::array<std::vector<cplx>, 3> synthesize_components(const ModeSet& set, bool add_conjugate,
                                                       WeightFn&& weight_fn) {
    std::vector<CVec3> weights(set.size());
    for (std::size_t m = 0; m < set.size(); ++m) weights[m] = weight_fn(m);
    return synthesize_from_weights(set, weights, add_conjugate);
}

CVec3 scaled_epsilon(const ModeIndex& mode, cplx w) {
    return {w * mode.epsilon.x, w * mode.epsilon.y, w * mode.epsilon.z};
}

}  // namespace

std::array<std::vector<cplx>, 3> synthesize_from_weights(const ModeSet& set,
                                                         std::span<const CVec3> weights,
                                                         bool add_conjugate) {
    if (weights.size() != set.size())
        throw std::invalid_argument("synthesize_from_weights: one weight per mode required");
    const GridSpec& grid = set.grid();
    const std::size_t npts = grid.num_points();
    std::array<std::vector<cplx>, 3> spectra;
    for (auto& s : spectra) s.assign(npts, cplx{0.0, 0.0});

    for (std::size_t m = 0; m < set.size(); ++m) {
        const ModeIndex& mode = set.mode(m);
        const CVec3& w = weights[m];
        std::size_t slot, cslot;
        if (grid.dimensions == 1) {
            slot = static_cast<std::size_t>(grid.wrap(mode.n[0]));
            cslot = static_cast<std::size_t>(grid.wrap(-mode.n[0]));
        } else {
            slot = grid.flatten(grid.wrap(mode.n[0]), grid.wrap(mode.n[1]), grid.wrap(mode.n[2]));
            cslot = grid.flatten(grid.wrap(-mode.n[0]), grid.wrap(-mode.n[1]),
                                 grid.wrap(-mode.n[2]));
        }
        spectra[0][slot] += w.x;
        spectra[1][slot] += w.y;
        spectra[2][slot] += w.z;
        if (add_conjugate) {
            spectra[0][cslot] += std::conj(w.x);
            spectra[1][cslot] += std::conj(w.y);
            spectra[2][cslot] += std::conj(w.z);
        }
    }

    std::array<std::vector<cplx>, 3> out;
    for (int c = 0; c < 3; ++c) {
        out[c].resize(npts);
        spectrum_to_grid(grid, spectra[c], out[c]);
    }
    return out;
}

FieldConfiguration::FieldConfiguration(std::shared_ptr<const ModeSet> modes, double time,
                                       FieldKind kind)
    : modes_(std::move(modes)), time_(time), kind_(kind) {
    if (!modes_) throw std::invalid_argument("FieldConfiguration: null mode set");
    coeffs_.assign(modes_->size(), cplx{0.0, 0.0});
}

void FieldConfiguration::set_coefficient(const ModeIndex& mode, cplx b) {
    const auto pos = modes_->find(mode);
    if (!pos)
        throw std::invalid_argument(
            "FieldConfiguration: coefficient assigned to a mode outside the set");
    coeffs_[*pos] = b;
}

void FieldConfiguration::scale(cplx s) {
    for (auto& c : coeffs_) c *= s;
}

void FieldConfiguration::accumulate(cplx s, const FieldConfiguration& other) {
    if (other.modes_ != modes_)
        throw std::invalid_argument("FieldConfiguration: accumulate requires the same mode set");
    kernels::active().caxpy(s, other.coeffs_.data(), coeffs_.data(), coeffs_.size());
}

GridField synthesize_field(const FieldConfiguration& config) {
    const ModeSet& set = config.modes();
    const double t = config.time();
    GridField out{set.grid(), t, {}, {}};
    out.value = synthesize_components(set, false, [&](std::size_t m) {
        const cplx w = set.amplitude(m) * config.coefficient(m) *
                       std::polar(1.0, -set.omega(m) * t);
        return scaled_epsilon(set.mode(m), w);
    });
    out.dt = synthesize_components(set, false, [&](std::size_t m) {
        const cplx w = cplx{0.0, -set.omega(m)} * set.amplitude(m) * config.coefficient(m) *
                       std::polar(1.0, -set.omega(m) * t);
        return scaled_epsilon(set.mode(m), w);
    });
    return out;
}

RealGridField synthesize_real_field(const FieldConfiguration& config) {
    const ModeSet& set = config.modes();
    const double t = config.time();
    const auto values = synthesize_components(set, true, [&](std::size_t m) {
        const cplx w = set.amplitude(m) * config.coefficient(m) *
                       std::polar(1.0, -set.omega(m) * t);
        return scaled_epsilon(set.mode(m), w);
    });

    RealGridField out{set.grid(), t, {}, 0.0};
    for (int c = 0; c < 3; ++c) {
        const double residue =
            kernels::active().max_abs_imag(values[c].data(), values[c].size());
        out.max_imag_residue = std::max(out.max_imag_residue, residue);
        out.component[c].resize(values[c].size());
        for (std::size_t i = 0; i < values[c].size(); ++i)
            out.component[c][i] = values[c][i].real();
    }
    return out;
}

std::pair<RealGridField, RealGridField> electric_magnetic(const FieldConfiguration& config) {
    const ModeSet& set = config.modes();
    const double t = config.time();

    auto realize = [&](auto&& weight_fn) {
        const auto values = synthesize_components(set, true, weight_fn);
        RealGridField f{set.grid(), t, {}, 0.0};
        for (int c = 0; c < 3; ++c) {
            f.max_imag_residue = std::max(
                f.max_imag_residue,
                kernels::active().max_abs_imag(values[c].data(), values[c].size()));
            f.component[c].resize(values[c].size());
            for (std::size_t i = 0; i < values[c].size(); ++i)
                f.component[c][i] = values[c][i].real();
        }
        return f;
    };

    // E = -dA/dt: positive-frequency weight +i omega * (N b eps e^{-i omega t}).
    RealGridField e_field = realize([&](std::size_t m) {
        const cplx w = cplx{0.0, set.omega(m)} * set.amplitude(m) * config.coefficient(m) *
                       std::polar(1.0, -set.omega(m) * t);
        return scaled_epsilon(set.mode(m), w);
    });
    // B = curl A: weight i k x eps * (N b e^{-i omega t}).
    RealGridField b_field = realize([&](std::size_t m) {
        const ModeIndex& mode = set.mode(m);
        const Vec3 kxe = cross(mode.k, mode.epsilon);
        const cplx w = cplx{0.0, 1.0} * set.amplitude(m) * config.coefficient(m) *
                       std::polar(1.0, -set.omega(m) * t);
        return CVec3{w * kxe.x, w * kxe.y, w * kxe.z};
    });
    return {std::move(e_field), std::move(b_field)};
}

cplx kg_inner_product(const GridField& f, const GridField& g) {
    if (!(f.grid == g.grid))
        throw std::invalid_argument("kg_inner_product: fields live on different grids");
    if (f.time != g.time)
        throw std::invalid_argument("kg_inner_product: fields sampled at different times");
    const auto& k = kernels::active();
    cplx acc{0.0, 0.0};
    for (int c = 0; c < 3; ++c) {
        acc += k.cdotc(f.value[c].data(), g.dt[c].data(), f.value[c].size());
        acc -= k.cdotc(f.dt[c].data(), g.value[c].data(), f.dt[c].size());
    }
    return cplx{0.0, 1.0} * f.grid.cell_volume() * acc;
}

GridField mode_grid_field(const ModeSet& set, std::size_t i, double t) {
    const GridSpec& grid = set.grid();
    const ModeIndex& mode = set.mode(i);
    const double w = set.omega(i);
    const double scale = 1.0 / std::sqrt(set.amplitude(i));
    const std::size_t npts = grid.num_points();

    GridField out{grid, t, {}, {}};
    for (int c = 0; c < 3; ++c) {
        out.value[c].resize(npts);
        out.dt[c].resize(npts);
    }
    const double dx = grid.dx();
    const cplx eps[3] = {mode.epsilon.x, mode.epsilon.y, mode.epsilon.z};
    auto fill = [&](std::size_t idx, const Vec3& x) {
        const double phase = dot(mode.k, x) - w * t;
        const cplx u = scale * cplx{std::cos(phase), std::sin(phase)};
        const cplx du = cplx{0.0, -w} * u;
        for (int c = 0; c < 3; ++c) {
            out.value[c][idx] = eps[c] * u;
            out.dt[c][idx] = eps[c] * du;
        }
    };
    if (grid.dimensions == 1) {
        for (int j = 0; j < grid.points_per_axis; ++j) fill(j, Vec3{j * dx, 0.0, 0.0});
    } else {
        for (int jx = 0; jx < grid.points_per_axis; ++jx)
            for (int jy = 0; jy < grid.points_per_axis; ++jy)
                for (int jz = 0; jz < grid.points_per_axis; ++jz)
                    fill(grid.flatten(jx, jy, jz), Vec3{jx * dx, jy * dx, jz * dx});
    }
    return out;
}

cplx project_coefficient(const GridField& field, const ModeSet& set, std::size_t i) {
    if (!(field.grid == set.grid()))
        throw std::invalid_argument("project_coefficient: field grid does not match the set");
    // Expansion function E_m = N eps u differs from the normalized mode by
    // N^{3/2}; reuse the normalized grid field and rescale.
    GridField mode = mode_grid_field(set, i, field.time);
    const cplx overlap = kg_inner_product(mode, field);
    // b = (E_m, F) / (2 omega N^2 V) = (g_m, F) / (C N^{3/2}) with C = 2 omega V / N.
    const double amp = set.amplitude(i);
    return overlap / (set.norm_constant(i) * amp * std::sqrt(amp));
}

cplx project_coefficient(const GridField& field, const ModeSet& set, const ModeIndex& mode) {
    const auto pos = set.find(mode);
    if (!pos) throw std::invalid_argument("project_coefficient: mode is not in the set");
    return project_coefficient(field, set, *pos);
}

double grid_l2_norm(const GridField& field) {
    const auto& k = kernels::active();
    double acc = 0.0;
    for (int c = 0; c < 3; ++c) acc += k.sum_abs2(field.value[c].data(), field.value[c].size());
    return acc * field.grid.cell_volume();
}

}  // namespace sdmax
