#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "sdmax/units.hpp"

namespace sdmax {

/// Everything a run needs, file-configurable. Lengths, times and wavenumbers
/// are expressed in cutoff units (k0 = 1) so the same config is meaningful
/// under both unit systems; the CLI converts once params are built.
struct RunConfig {
    // [run]
    UnitSystem units = UnitSystem::Natural;
    double alpha = kFineStructure;
    std::uint64_t seed = 12345;
    std::string output_dir = "out";
    std::string format = "csv";  // csv | json
    double tolerance_scale = 1.0;

    // [grid]
    int grid_points = 2048;
    double box_length_cutoffs = 256.0;  // L * k0

    // [modes]
    double band_cutoffs = 2.0;  // k_max / k0

    // [packet]
    double packet_center_cutoffs = 2.0;     // k_c / k0
    double packet_width_cutoffs = 8.0;      // sigma_x * k0
    double packet_position_fraction = 0.25;
    double packet_amplitude = 1.0;
    std::string evolution_model = "corrected";  // corrected | maxwell
    int snapshots = 9;
    double duration_cutoffs = 80.0;  // total time * c * k0

    // [fock]
    int fock_dimension = 64;
    double coherent_re = 2.0;
    double coherent_im = 0.0;
    double squeeze_r = 0.5;
    double squeeze_phi = 0.0;

    void validate() const;  // throws std::invalid_argument
    PhysicalParams make_params() const;
};

RunConfig default_config();

/// `[section]` + `key = value` + `#` comments. Unknown sections or keys are
/// errors (typo protection), as are duplicate keys. Values are parsed whole:
/// trailing junk after a number is an error.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical serialization; parse(to_text(c)) reproduces c exactly, and
/// to_text(parse(t)) is byte-stable (doubles printed with 17 significant
/// digits).
std::string to_text(const RunConfig& config);

bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace sdmax
