#include "resgap/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>

#include "resgap/errors.hpp"

namespace resgap {

ZeroTable ZeroTable::parse_file(const std::string& path,
                                std::optional<std::size_t> limit) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'", 0);
    ZeroTable zt;
    zt.source = path;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        char* end = nullptr;
        const double v = std::strtod(line.c_str() + start, &end);
        if (end == line.c_str() + start) {
            throw ParseError("unparseable ordinate '" + line + "'", line_no);
        }
        while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
        if (*end != '\0') {
            throw ParseError("trailing garbage after ordinate", line_no);
        }
        if (!zt.ordinates.empty() && v < zt.ordinates.back()) {
            throw ParseError("ordinates not ascending", line_no);
        }
        zt.ordinates.push_back(v);
        if (limit && zt.ordinates.size() >= *limit) break;
    }
    if (zt.ordinates.empty()) throw ParseError("no ordinates", line_no);
    if (!(zt.ordinates.front() > 14.0)) {
        throw ParseError("first ordinate below the first zeta zero", 1);
    }
    return zt;
}

double count_N_h(const ZeroTable& zt, double t, double h) {
    if (!(h > 0.0)) throw PreconditionError("count_N_h: h > 0 required");
    const double lo = t - 0.5 * h;
    const double hi = t + 0.5 * h;
    if (lo < 0.0 || hi > zt.ordinates.back()) {
        throw RangeError("count_N_h: interval outside covered range");
    }
    const auto& z = zt.ordinates;
    const auto first = std::upper_bound(z.begin(), z.end(), lo);
    const auto last = std::lower_bound(z.begin(), z.end(), hi);
    double count = static_cast<double>(last - first);
    // endpoints carry half weight; interior count above excludes both
    count += 0.5 * static_cast<double>(
                       std::count(std::lower_bound(z.begin(), z.end(), lo),
                                  first, lo));
    count += 0.5 * static_cast<double>(
                       std::count(last, std::upper_bound(z.begin(), z.end(), hi),
                                  hi));
    return count;
}

GapStats gap_stats(const ZeroTable& zt, double t_lo, double t_hi, double phi,
                   double bin_width) {
    if (!(phi > 0.0)) throw PreconditionError("gap_stats: phi > 0 required");
    if (!(t_lo < t_hi)) throw PreconditionError("gap_stats: t_lo < t_hi");
    const auto& z = zt.ordinates;
    const auto begin = std::lower_bound(z.begin(), z.end(), t_lo);
    const auto end = std::upper_bound(z.begin(), z.end(), t_hi);
    const std::size_t n = static_cast<std::size_t>(end - begin);
    if (n < 2) throw RangeError("gap_stats: fewer than 2 zeros in window");
    const std::size_t offset = static_cast<std::size_t>(begin - z.begin());

    GapStats st;
    st.t_lo = t_lo;
    st.t_hi = t_hi;
    st.phi = phi;
    st.bin_width = bin_width;
    st.gap_count = n - 1;
    st.min_normalized_gap = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double a = begin[i], b = begin[i + 1];
        const double norm = (b - a) * std::log(a) / (2.0 * M_PI);
        sum += norm;
        if (norm < st.min_normalized_gap) {
            st.min_normalized_gap = norm;
            st.argmin_index = offset + i;
        }
        const auto bin = static_cast<std::size_t>(norm / bin_width);
        if (bin >= st.histogram.size()) st.histogram.resize(bin + 1, 0);
        ++st.histogram[bin];
    }
    st.mean_normalized_gap = sum / static_cast<double>(n - 1);

    // sup(N_h^2 - N_h): N_h is piecewise constant in t, so the supremum over
    // the window is attained at midpoints of pairs lying within one local h
    double sup = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double mid = 0.5 * (begin[i] + begin[j]);
            const double h = 2.0 * M_PI * phi / std::log(mid);
            if (begin[j] - begin[i] > h) break;
            if (mid - 0.5 * h < 0.0 || mid + 0.5 * h > z.back()) continue;
            const double nh = count_N_h(zt, mid, h);
            sup = std::max(sup, nh * nh - nh);
        }
    }
    st.sup_nh2_minus_nh = sup;
    return st;
}

}  // namespace resgap
