#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "resgap/errors.hpp"

namespace resgap {

struct QuadResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::int64_t evaluations = 0;
};

// sin(c*u)/u extended continuously by its limit c at u = 0.
inline double sinc_kernel(double u, double c) {
    if (u == 0.0) return c;
    return std::sin(c * u) / u;
}

// sin(c*u)^2/u, limit 0 at u = 0.
inline double sinc_sq_kernel(double u, double c) {
    if (u == 0.0) return 0.0;
    const double s = std::sin(c * u);
    return s * s / u;
}

namespace detail {

// Nodes and weights of the 15-point Gauss-Legendre rule on [-1, 1],
// computed once by Newton iteration on P_15.
struct Gauss15 {
    std::array<double, 15> x{};
    std::array<double, 15> w{};
    Gauss15() {
        constexpr int n = 15;
        for (int i = 0; i < n; ++i) {
            double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = t;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (t * p1 - p0) / (t * t - 1.0);
                const double dt = p1 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-16) break;
            }
            x[i] = t;
            w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
    }
};

inline const Gauss15& gauss15() {
    static const Gauss15 g;
    return g;
}

template <class F>
double panel(F&& f, double a, double b, std::int64_t& evals) {
    const auto& g = gauss15();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < 15; ++i) {
        sum += g.w[i] * f(mid + half * g.x[i]);
    }
    evals += 15;
    return sum * half;
}

}  // namespace detail

// Adaptive bisection with fixed 15-point Gauss-Legendre panels and two-level
// (parent vs children) error control.  The tolerance is absolute.
template <class F>
QuadResult integrate_1d(F&& f, double a, double b, double tol,
                        std::int64_t max_panels = 2'000'000) {
    if (!(a <= b)) throw PreconditionError("integrate_1d: requires a <= b");
    if (!(tol > 0.0)) throw PreconditionError("integrate_1d: requires tol > 0");
    if (a == b) return {0.0, 0.0, 0};

    struct Seg {
        double a, b, coarse, tol;
    };
    QuadResult out;
    std::vector<Seg> stack;
    stack.push_back({a, b, detail::panel(f, a, b, out.evaluations), tol});
    while (!stack.empty()) {
        const Seg s = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (s.a + s.b);
        const double left = detail::panel(f, s.a, mid, out.evaluations);
        const double right = detail::panel(f, mid, s.b, out.evaluations);
        const double fine = left + right;
        const double err = std::abs(fine - s.coarse);
        const double width = s.b - s.a;
        if (err <= s.tol || width <= 1e-14 * (b - a)) {
            out.value += fine;
            out.abs_error_estimate += err;
        } else {
            if (out.evaluations / 45 > max_panels) {
                throw QuadratureError("integrate_1d: panel budget exhausted",
                                      out.value + fine, out.abs_error_estimate + err);
            }
            stack.push_back({mid, s.b, right, 0.5 * s.tol});
            stack.push_back({s.a, mid, left, 0.5 * s.tol});
        }
    }
    return out;
}

// int_0^upper g(v) v^{ell^2-1} dv.  For ell^2 < 2 the endpoint weight is
// flattened by v = w^{1/ell^2}, which turns the weighted measure into dw/ell^2;
// for larger ell the direct integrand is already C^1 at 0.
template <class G>
QuadResult inner_weighted_integral(G&& g, double upper, double ell, double tol) {
    if (!(upper >= 0.0 && upper <= 1.0)) {
        throw PreconditionError("inner_weighted_integral: upper outside [0, 1]");
    }
    if (!(ell >= 1.0)) {
        throw PreconditionError("inner_weighted_integral: requires ell >= 1");
    }
    if (upper == 0.0) return {0.0, 0.0, 0};
    const double a = ell * ell;
    if (a < 2.0) {
        const double inv_a = 1.0 / a;
        const double w_upper = std::pow(upper, a);
        return integrate_1d(
            [&](double w) { return g(std::pow(w, inv_a)) * inv_a; }, 0.0,
            w_upper, tol);
    }
    return integrate_1d(
        [&](double v) { return g(v) * std::pow(v, a - 1.0); }, 0.0, upper, tol);
}

// int_0^1 k(u) [ int_0^{1-u} g(u, v) v^{ell^2-1} dv ] du
template <class K, class G>
QuadResult nested_integral_2d(K&& kern, G&& g, double ell, double tol) {
    if (!(tol > 0.0)) throw PreconditionError("nested_integral_2d: tol > 0");
    const double tol_inner = tol * 1e-2;
    double inner_err = 0.0;
    double kern_max = 0.0;
    std::int64_t inner_evals = 0;
    auto outer = integrate_1d(
        [&](double u) {
            const double k = kern(u);
            kern_max = std::max(kern_max, std::abs(k));
            auto in = inner_weighted_integral(
                [&](double v) { return g(u, v); }, 1.0 - u, ell, tol_inner);
            inner_err = std::max(inner_err, in.abs_error_estimate);
            inner_evals += in.evaluations;
            return k * in.value;
        },
        0.0, 1.0, tol);
    outer.abs_error_estimate += kern_max * inner_err;
    outer.evaluations += inner_evals;
    return outer;
}

// int_0^1 k(u1) int_0^{1-u1} k(u2) [ int_0^{1-u1-u2} g(u1,u2,v) v^{ell^2-1} dv ] du2 du1
template <class K, class G>
QuadResult nested_integral_3d(K&& kern, G&& g, double ell, double tol) {
    if (!(tol > 0.0)) throw PreconditionError("nested_integral_3d: tol > 0");
    const double tol_mid = tol * 0.1;
    const double tol_inner = tol * 1e-3;
    double mid_err = 0.0;
    double kern_max = 0.0;
    std::int64_t sub_evals = 0;
    auto outer = integrate_1d(
        [&](double u1) {
            const double k1 = kern(u1);
            kern_max = std::max(kern_max, std::abs(k1));
            double inner_err = 0.0;
            auto mid = integrate_1d(
                [&](double u2) {
                    const double k2 = kern(u2);
                    auto in = inner_weighted_integral(
                        [&](double v) { return g(u1, u2, v); },
                        std::max(0.0, 1.0 - u1 - u2), ell, tol_inner);
                    inner_err = std::max(inner_err, in.abs_error_estimate);
                    sub_evals += in.evaluations;
                    return k2 * in.value;
                },
                0.0, 1.0 - u1, tol_mid);
            mid_err = std::max(mid_err,
                               mid.abs_error_estimate + kern_max * inner_err);
            sub_evals += mid.evaluations;
            return k1 * mid.value;
        },
        0.0, 1.0, tol);
    outer.abs_error_estimate += kern_max * mid_err;
    outer.evaluations += sub_evals;
    return outer;
}

}  // namespace resgap
