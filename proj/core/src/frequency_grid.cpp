#include "robsyn/frequency_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace robsyn {

FrequencyGrid::FrequencyGrid(std::vector<double> pts) : points(std::move(pts)) {
    if (points.empty()) {
        throw std::invalid_argument("FrequencyGrid: empty grid");
    }
    double prev = 0.0;
    for (double w : points) {
        if (!(w > prev)) {
            throw std::invalid_argument("FrequencyGrid: points must be positive and strictly increasing");
        }
        prev = w;
    }
}

FrequencyGrid FrequencyGrid::logspace(double omega_lo, double omega_hi, int n) {
    if (n < 2 || omega_lo <= 0.0 || omega_hi <= omega_lo) {
        throw std::invalid_argument("FrequencyGrid::logspace: need omega_hi > omega_lo > 0 and n >= 2");
    }
    std::vector<double> pts(static_cast<std::size_t>(n));
    const double l0 = std::log10(omega_lo);
    const double l1 = std::log10(omega_hi);
    for (int i = 0; i < n; ++i) {
        pts[static_cast<std::size_t>(i)] = std::pow(10.0, l0 + (l1 - l0) * i / (n - 1));
    }
    return FrequencyGrid(std::move(pts));
}

FrequencyGrid FrequencyGrid::default_grid() {
    return logspace(1e-3, 1e4, 200);
}

}  // namespace robsyn
