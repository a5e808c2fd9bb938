#include "resgap/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "resgap/errors.hpp"

namespace resgap {

namespace {

// x = (ell, c1..cd); weight = (1, c1..cd)
WeightPolynomial make_weight(const std::vector<double>& x) {
    std::vector<double> c(x.size());
    c[0] = 1.0;
    std::copy(x.begin() + 1, x.end(), c.begin() + 1);
    return WeightPolynomial(std::move(c));
}

struct Objective {
    const SearchSpec& spec;
    SearchReport& report;
    std::int64_t spent = 0;

    double operator()(const std::vector<double>& x) {
        TraceEntry entry;
        entry.iteration = spent;
        entry.candidate = x;
        entry.phi_star = spec.phi_hi;  // penalty
        ++spent;

        const double ell = x[0];
        const bool in_range =
            ell >= spec.ell_range[0] && ell <= spec.ell_range[1] &&
            std::all_of(x.begin() + 1, x.end(), [&](double c) {
                return c >= spec.coeff_range[0] && c <= spec.coeff_range[1];
            });
        if (in_range) {
            WeightPolynomial f = make_weight(x);
            try {
                PhiSearchResult res =
                    minimize_phi(ell, f, spec.phi_lo, spec.phi_hi,
                                 spec.phi_step, spec.tol_phi, spec.quad_tol);
                if (res.found) {
                    entry.success = true;
                    entry.phi_star = res.phi_star;
                }
            } catch (const DegenerateWeightError&) {
                // penalized
            }
        }
        report.trace.push_back(entry);
        if (entry.success &&
            (!report.any_success || entry.phi_star < report.best_phi_star)) {
            report.any_success = true;
            report.best_phi_star = entry.phi_star;
            report.best_params = {entry.phi_star, ell, make_weight(x)};
        }
        return entry.phi_star;
    }
};

// one Nelder-Mead run; stops when the simplex collapses or the budget is gone
void nelder_mead(Objective& obj, std::vector<std::vector<double>> simplex,
                 std::int64_t budget) {
    const std::size_t n = simplex[0].size();
    std::vector<double> fv(simplex.size());
    for (std::size_t i = 0; i < simplex.size(); ++i) {
        if (obj.spent >= budget) return;
        fv[i] = obj(simplex[i]);
    }
    while (obj.spent < budget) {
        // order
        std::vector<std::size_t> idx(simplex.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> s2;
        std::vector<double> f2;
        for (auto i : idx) {
            s2.push_back(simplex[i]);
            f2.push_back(fv[i]);
        }
        simplex = s2;
        fv = f2;

        double spread = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double lo = simplex[0][j], hi = simplex[0][j];
            for (const auto& v : simplex) {
                lo = std::min(lo, v[j]);
                hi = std::max(hi, v[j]);
            }
            spread = std::max(spread, hi - lo);
        }
        if (spread < 1e-7) return;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i + 1 < simplex.size(); ++i) {
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(simplex.size() - 1);

        auto combine = [&](double coef) {
            std::vector<double> y(n);
            for (std::size_t j = 0; j < n; ++j) {
                y[j] = centroid[j] + coef * (simplex.back()[j] - centroid[j]);
            }
            return y;
        };

        auto reflect = combine(-1.0);
        const double fr = obj(reflect);
        if (fr < fv[0]) {
            if (obj.spent >= budget) return;
            auto expand = combine(-2.0);
            const double fe = obj(expand);
            if (fe < fr) {
                simplex.back() = expand;
                fv.back() = fe;
            } else {
                simplex.back() = reflect;
                fv.back() = fr;
            }
        } else if (fr < fv[fv.size() - 2]) {
            simplex.back() = reflect;
            fv.back() = fr;
        } else {
            if (obj.spent >= budget) return;
            auto contract = combine(fr < fv.back() ? -0.5 : 0.5);
            const double fc = obj(contract);
            if (fc < std::min(fr, fv.back())) {
                simplex.back() = contract;
                fv.back() = fc;
            } else {
                // shrink toward the best vertex
                for (std::size_t i = 1; i < simplex.size(); ++i) {
                    for (std::size_t j = 0; j < n; ++j) {
                        simplex[i][j] =
                            simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
                    }
                    if (obj.spent >= budget) return;
                    fv[i] = obj(simplex[i]);
                }
            }
        }
    }
}

std::vector<std::vector<double>> initial_simplex(const std::vector<double>& x0,
                                                 double ell_step,
                                                 double coeff_step) {
    std::vector<std::vector<double>> simplex{x0};
    for (std::size_t j = 0; j < x0.size(); ++j) {
        auto v = x0;
        v[j] += j == 0 ? ell_step : coeff_step;
        simplex.push_back(v);
    }
    return simplex;
}

}  // namespace

SearchReport optimize_weights(const SearchSpec& spec) {
    if (spec.degree < 1) throw PreconditionError("optimize_weights: degree >= 1");
    if (spec.budget < 1) throw PreconditionError("optimize_weights: budget >= 1");
    if (!(spec.ell_range[0] <= spec.ell_range[1]) ||
        !(spec.coeff_range[0] <= spec.coeff_range[1])) {
        throw PreconditionError("optimize_weights: empty range");
    }

    SearchReport report;
    report.best_phi_star = spec.phi_hi;
    Objective obj{spec, report};

    const std::size_t dim = 1 + static_cast<std::size_t>(spec.degree);
    auto clamp = [](double v, double lo, double hi) {
        return std::min(hi, std::max(lo, v));
    };

    // fixed lattice of starts: the linear-weight reference point, then the
    // box center
    std::vector<std::vector<double>> starts;
    {
        std::vector<double> x(dim, 0.0);
        x[0] = clamp(1.15, spec.ell_range[0], spec.ell_range[1]);
        x[1] = clamp(-0.7, spec.coeff_range[0], spec.coeff_range[1]);
        starts.push_back(x);
    }
    {
        std::vector<double> x(dim, 0.0);
        x[0] = 0.5 * (spec.ell_range[0] + spec.ell_range[1]);
        for (std::size_t j = 1; j < dim; ++j) {
            x[j] = 0.5 * (spec.coeff_range[0] + spec.coeff_range[1]);
        }
        starts.push_back(x);
    }
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int s = 0; s < spec.multi_starts; ++s) {
        std::vector<double> x(dim);
        x[0] = spec.ell_range[0] +
               u01(rng) * (spec.ell_range[1] - spec.ell_range[0]);
        for (std::size_t j = 1; j < dim; ++j) {
            x[j] = spec.coeff_range[0] +
                   u01(rng) * (spec.coeff_range[1] - spec.coeff_range[0]);
        }
        starts.push_back(x);
    }

    const std::int64_t per_start =
        std::max<std::int64_t>(1, spec.budget / static_cast<std::int64_t>(starts.size()));
    for (std::size_t s = 0; s < starts.size(); ++s) {
        const std::int64_t budget_here =
            s + 1 == starts.size() ? spec.budget : std::min<std::int64_t>(
                                                       spec.budget,
                                                       obj.spent + per_start);
        if (obj.spent >= spec.budget) break;
        nelder_mead(obj, initial_simplex(starts[s], 0.05, 0.1), budget_here);
    }
    if (!report.any_success) report.best_phi_star = spec.phi_hi;
    return report;
}

}  // namespace resgap
