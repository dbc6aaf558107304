#pragma once

#include <utility>

#include "robsyn/state_space.hpp"
#include "robsyn/types.hpp"

namespace robsyn {

struct HinfNormResult {
    double value;
    double peak_omega;
    int iterations;
};

/// H-infinity norm of a stable system via imaginary-axis eigenvalues of the
/// gamma-Hamiltonian (Bruinsma-Steinbuch bisection-free refinement).
/// Throws std::invalid_argument on unstable input or tol outside (0, 0.1].
HinfNormResult hinf_norm(const StateSpace& sys, double tol = 1e-3);

struct HinfResult {
    StateSpace controller;
    double gamma = 0.0;
    int iterations = 0;
};

struct HinfOptions {
    double gamma_lo = 1e-4;
    double gamma_hi = 1e4;
    double tol = 1e-3;           // relative gamma gap at termination
    double reg_epsilon = 1e-6;   // feedthrough regularization scale
    int max_bisection = 60;
};

/// Full-order output-feedback H-infinity synthesis (two-Riccati central
/// controller) on a generalized plant whose last n_meas outputs and last
/// n_ctrl inputs are the controller channels.  Bisects gamma over
/// [gamma_lo, gamma_hi]; throws InfeasibleError when no gamma in the range
/// admits a solution.
HinfResult synthesize_hinf(const StateSpace& p, int n_meas, int n_ctrl,
                           const HinfOptions& opts = {});

}  // namespace robsyn
