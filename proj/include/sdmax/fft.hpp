#pragma once

#include <complex>
#include <span>

#include "sdmax/grid.hpp"

// Thin FFTW wrapper fixing the transform convention used everywhere here:
//   grid value   u_j = sum_m c_m exp(+i k_m . x_j)        (spectrum_to_grid)
//   coefficient  c_m = (1/Npts) sum_j u_j exp(-i k_m . x_j)  (grid_to_spectrum)
// Arrays are indexed by wrapped lattice slots (GridSpec::wrap), C order for
// 3D. Plans use FFTW_ESTIMATE only, so planning is deterministic. Not
// thread-safe (FFTW planning); all callers are single-threaded driver code.

namespace sdmax {

void spectrum_to_grid(const GridSpec& grid, std::span<const std::complex<double>> spectrum,
                      std::span<std::complex<double>> out);

void grid_to_spectrum(const GridSpec& grid, std::span<const std::complex<double>> values,
                      std::span<std::complex<double>> out);

}  // namespace sdmax
