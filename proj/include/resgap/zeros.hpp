#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace resgap {

// Ascending ordinates of zeta zeros parsed from a plain-text table
// (one decimal per line, '#' comments ignored).
struct ZeroTable {
    std::vector<double> ordinates;
    std::string source;

    static ZeroTable parse_file(const std::string& path,
                                std::optional<std::size_t> limit = {});
};

// N_h(t): ordinates strictly inside [t-h/2, t+h/2] plus 1/2 per ordinate
// exactly on an endpoint.  The covered range is [0, last ordinate].
double count_N_h(const ZeroTable& zt, double t, double h);

struct GapStats {
    double t_lo = 0.0;
    double t_hi = 0.0;
    double phi = 0.0;
    std::size_t gap_count = 0;
    double min_normalized_gap = 0.0;
    std::size_t argmin_index = 0;  // gap between ordinates[i] and [i+1]
    double mean_normalized_gap = 0.0;
    double bin_width = 0.05;
    std::vector<std::size_t> histogram;  // normalized-gap bins from 0
    double sup_nh2_minus_nh = 0.0;
};

// Normalized gaps (gamma_{n+1}-gamma_n) log(gamma_n)/(2pi) over the window,
// plus sup(N_h^2 - N_h) scanned over midpoints of close pairs with the local
// h = 2 pi phi / log t.
GapStats gap_stats(const ZeroTable& zt, double t_lo, double t_hi, double phi,
                   double bin_width = 0.05);

}  // namespace resgap
