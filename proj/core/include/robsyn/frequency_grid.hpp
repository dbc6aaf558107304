#pragma once

#include <vector>

namespace robsyn {

/// Strictly increasing list of angular frequencies in rad/s, all positive.
struct FrequencyGrid {
    std::vector<double> points;

    FrequencyGrid() = default;
    explicit FrequencyGrid(std::vector<double> pts);

    std::size_t size() const { return points.size(); }
    double operator[](std::size_t i) const { return points[i]; }

    static FrequencyGrid logspace(double omega_lo, double omega_hi, int n);

    /// 200 logarithmically spaced points in [1e-3, 1e4] rad/s.
    static FrequencyGrid default_grid();
};

}  // namespace robsyn
