#include "heis/calibration.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace heis {

Calibration load_calibration(const std::string& path) {
    std::string file = path;
    if (file.empty()) file = std::string(HEIS_CONFIG_DIR) + "/extremal.json";
    std::ifstream in(file);
    if (!in) throw std::runtime_error("load_calibration: cannot open " + file);
    nlohmann::json j;
    in >> j;
    Calibration cal;
    cal.bernstein_c_fit = j.at("bernstein").at("c_fit").get<double>();
    cal.laguerre_rigorous_c = j.at("laguerre_tail").at("rigorous_c").get<double>();
    cal.window_envelope_safety = j.at("window_weight").at("safety").get<double>();
    const auto& grid = j.at("bernstein").at("grid");
    cal.grid_lambda_min = grid.at("lambda_min").get<int>();
    cal.grid_lambda_max = grid.at("lambda_max").get<int>();
    cal.grid_ell_max = grid.at("ell_max").get<int>();
    return cal;
}

}  // namespace heis
