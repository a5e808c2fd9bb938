#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "resgap/bound.hpp"

namespace resgap {

// Search space over (ell, c1..c_degree); c0 is pinned to 1 by the scale
// invariance of g_value.
struct SearchSpec {
    int degree = 1;
    std::array<double, 2> ell_range{1.0, 2.0};
    std::array<double, 2> coeff_range{-2.0, 2.0};
    double phi_lo = 0.45;
    double phi_hi = 0.55;
    double phi_step = 0.01;
    double tol_phi = 1e-6;
    double quad_tol = 1e-7;
    std::int64_t budget = 200;
    std::uint64_t seed = 1;
    int multi_starts = 2;  // additional seeded starts beyond the fixed lattice
};

struct TraceEntry {
    std::int64_t iteration = 0;
    std::vector<double> candidate;  // (ell, c1..c_d)
    bool success = false;
    double phi_star = 0.0;  // penalty value phi_hi when not successful
};

struct SearchReport {
    bool any_success = false;
    double best_phi_star = 0.0;
    BoundParams best_params;
    std::vector<TraceEntry> trace;
};

// Nelder-Mead (reflection 1, expansion 2, contraction 0.5, shrink 0.5) on the
// certified crossing phi*; deterministic for a fixed spec (including seed).
SearchReport optimize_weights(const SearchSpec& spec);

}  // namespace resgap
