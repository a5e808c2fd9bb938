#include "resgap/bound.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "resgap/errors.hpp"
#include "resgap/quadrature.hpp"

namespace resgap {

double eval_I_f(const WeightPolynomial& f, double ell) {
    if (!(ell >= 1.0)) throw PreconditionError("eval_I_f: requires ell >= 1");
    if (f.coeffs.empty()) throw DegenerateWeightError("eval_I_f: empty weight");
    // square the polynomial, then integrate monomials against u^{ell^2-1}
    const auto& c = f.coeffs;
    const double a = ell * ell;
    double value = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = 0; j < c.size(); ++j) {
            value += c[i] * c[j] / (a + static_cast<double>(i + j));
        }
    }
    if (std::abs(value) < 1e-12) {
        throw DegenerateWeightError("eval_I_f: I_f(ell) vanishes");
    }
    return value;
}

GapBoundResult eval_functional_terms(double kernel_c, double prefactor,
                                     double ell, const WeightPolynomial& f,
                                     double tol) {
    if (!(tol > 0.0)) throw PreconditionError("eval_functional_terms: tol > 0");
    if (!(ell >= 1.0)) throw PreconditionError("eval_functional_terms: ell >= 1");
    GapBoundResult r;
    const double c = kernel_c;
    const double term_tol = tol / 3.0;

    auto j1 = nested_integral_2d([c](double u) { return sinc_kernel(u, c); },
                                 [&f](double u, double v) {
                                     return f(v) * f(u + v);
                                 },
                                 ell, term_tol);
    auto j2 = nested_integral_3d([c](double u) { return sinc_kernel(u, c); },
                                 [&f](double u1, double u2, double v) {
                                     return f(v) * f(u1 + u2 + v) +
                                            f(u1 + v) * f(u2 + v);
                                 },
                                 ell, term_tol);
    auto j3 = nested_integral_2d([c](double u) { return sinc_sq_kernel(u, c); },
                                 [&f](double, double v) {
                                     const double y = f(v);
                                     return y * y;
                                 },
                                 ell, term_tol);

    const double pi = M_PI;
    r.term1 = prefactor * (2.0 / pi) * ell * j1.value;
    r.term2 = (2.0 / (pi * pi)) * ell * ell * j2.value;
    r.term3 = (2.0 / (pi * pi)) * j3.value;
    r.m_total = r.term1 + r.term2 + r.term3;
    r.quad_error = prefactor * (2.0 / pi) * ell * j1.abs_error_estimate +
                   (2.0 / (pi * pi)) * ell * ell * j2.abs_error_estimate +
                   (2.0 / (pi * pi)) * j3.abs_error_estimate;
    r.evaluations = j1.evaluations + j2.evaluations + j3.evaluations;
    return r;
}

GapBoundResult eval_M(const BoundParams& params, double tol) {
    if (!(params.phi >= 0.0)) throw PreconditionError("eval_M: requires phi >= 0");
    GapBoundResult r = eval_functional_terms(
        M_PI * params.phi, std::abs(1.0 - 2.0 * params.phi), params.ell,
        params.f, tol);
    r.i_f = eval_I_f(params.f, params.ell);
    return r;
}

GapBoundResult gap_lower_bound(const BoundParams& params, double tol) {
    GapBoundResult r = eval_M(params, tol);
    r.g_value = r.m_total / r.i_f - params.phi * (1.0 - params.phi);
    return r;
}

PhiSearchResult minimize_phi(double ell, const WeightPolynomial& f, double lo,
                             double hi, double step, double tol_phi,
                             double quad_tol, int threads) {
    if (!(lo < hi)) throw PreconditionError("minimize_phi: requires lo < hi");
    if (!(step > 0.0)) throw PreconditionError("minimize_phi: requires step > 0");
    if (!(tol_phi > 0.0)) throw PreconditionError("minimize_phi: requires tol_phi > 0");
    eval_I_f(f, ell);  // reject degenerate weights up front

    PhiSearchResult out;
    auto g_at = [&](double phi) {
        BoundParams p{phi, ell, f};
        ++out.g_evaluations;
        return gap_lower_bound(p, quad_tol).g_value;
    };

    std::vector<double> grid;
    for (double phi = lo; phi <= hi + 0.5 * step; phi += step) {
        grid.push_back(std::min(phi, hi));
    }
    std::vector<double> gv(grid.size());
    const int nthreads =
        std::max(1, std::min<int>(threads, static_cast<int>(grid.size())));
    if (nthreads == 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) gv[i] = g_at(grid[i]);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        std::atomic<std::int64_t> evals{0};
        for (int w = 0; w < nthreads; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < grid.size();
                     i = next.fetch_add(1)) {
                    BoundParams p{grid[i], ell, f};
                    gv[i] = gap_lower_bound(p, quad_tol).g_value;
                    ++evals;
                }
            });
        }
        for (auto& th : pool) th.join();
        out.g_evaluations += evals.load();
    }

    std::size_t k = grid.size();
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (gv[i] < 0.0 && gv[i + 1] > 0.0) {
            k = i;
            break;
        }
    }
    if (k == grid.size()) return out;  // no certificate in range

    double a = grid[k], b = grid[k + 1];
    double ga = gv[k];
    while (b - a > tol_phi) {
        const double mid = 0.5 * (a + b);
        const double gm = g_at(mid);
        if (gm < 0.0) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
    (void)ga;
    out.found = true;
    out.bracket_lo = a;
    out.bracket_hi = b;
    out.phi_star = 0.5 * (a + b);
    return out;
}

}  // namespace resgap
