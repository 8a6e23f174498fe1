#pragma once

#include "mvlab/errors.hpp"

namespace mvlab {

// Equally spaced trading grid over the planning horizon [0, T], plus
// `burn_in_steps` points of history strictly before time 0. Grid indices are
// signed: k = -burn_in_steps .. steps, with t_k = k * dt.
struct TimeGrid {
    double horizon_years = 1.0;
    int steps = 252;
    int burn_in_steps = 0;

    double dt() const { return horizon_years / steps; }
    double time_at(int k) const { return k * dt(); }

    int first_index() const { return -burn_in_steps; }
    int last_index() const { return steps; }

    // Number of grid points, burn-in included.
    int total_points() const { return burn_in_steps + steps + 1; }

    void validate() const {
        if (steps < 1)
            throw invalid_spec_error("TimeGrid: steps must be >= 1");
        if (!(horizon_years > 0.0))
            throw invalid_spec_error("TimeGrid: horizon must be positive");
        if (burn_in_steps < 0)
            throw invalid_spec_error("TimeGrid: burn-in must be >= 0");
    }
};

}  // namespace mvlab
