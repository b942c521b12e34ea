#pragma once

#include <string>

namespace heis {

// Frozen calibration record (config/extremal.json).  The Bernstein slope
// C_fit was measured once as the max of ratio/mu over the acceptance grid and
// is pinned here so acceptance runs are reproducible; re-deriving it is a
// deliberate, versioned act.
struct Calibration {
    double bernstein_c_fit = 0.0;
    double laguerre_rigorous_c = 2.0;
    double window_envelope_safety = 2.0;
    int grid_lambda_min = 4;
    int grid_lambda_max = 8;
    int grid_ell_max = 1;
};

// Loads from `path`, or from HEIS_CONFIG_DIR/extremal.json when empty.
Calibration load_calibration(const std::string& path = "");

}  // namespace heis
