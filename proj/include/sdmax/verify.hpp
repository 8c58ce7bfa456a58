#pragma once

#include <string>
#include <vector>

#include "sdmax/config.hpp"
#include "sdmax/report.hpp"

namespace sdmax {

/// Suite names accepted by run_verification, in execution order.
const std::vector<std::string>& verification_suites();

/// Runs one named suite ("dispersion", "modes", "greens", "fock", "evolve")
/// or "all". Tolerances are pinned in code and multiplied by
/// config.tolerance_scale (1 for real runs; the scale exists so a test can
/// prove the failure path works). Throws std::invalid_argument for unknown
/// suite names.
VerificationReport run_verification(const RunConfig& config, const std::string& suite);

}  // namespace sdmax
