#include "sdmax/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <stdexcept>

namespace sdmax {
namespace {

void run_c2c(const GridSpec& grid, std::span<const std::complex<double>> in,
             std::span<std::complex<double>> out, int sign) {
    const std::size_t n = grid.num_points();
    if (in.size() != n || out.size() != n)
        throw std::invalid_argument("fft: buffer size does not match grid");
    std::copy(in.begin(), in.end(), out.begin());
    fftw_complex* buf = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan =
        grid.dimensions == 1
            ? fftw_plan_dft_1d(grid.points_per_axis, buf, buf, sign, FFTW_ESTIMATE)
            : fftw_plan_dft_3d(grid.points_per_axis, grid.points_per_axis, grid.points_per_axis,
                               buf, buf, sign, FFTW_ESTIMATE);
    if (!plan) throw std::runtime_error("fft: FFTW plan creation failed");
    fftw_execute(plan);
    fftw_destroy_plan(plan);
}

}  // namespace

void spectrum_to_grid(const GridSpec& grid, std::span<const std::complex<double>> spectrum,
                      std::span<std::complex<double>> out) {
    run_c2c(grid, spectrum, out, FFTW_BACKWARD);
}

void grid_to_spectrum(const GridSpec& grid, std::span<const std::complex<double>> values,
                      std::span<std::complex<double>> out) {
    run_c2c(grid, values, out, FFTW_FORWARD);
    const double scale = 1.0 / static_cast<double>(grid.num_points());
    for (auto& c : out) c *= scale;
}

}  // namespace sdmax
