#pragma once

#include <cstdint>
#include <vector>

namespace resgap {

// Weight f(x) = c0 + c1 x + ... + cd x^d on [0, 1].
struct WeightPolynomial {
    std::vector<double> coeffs;

    WeightPolynomial() = default;
    explicit WeightPolynomial(std::vector<double> c) : coeffs(std::move(c)) {}

    double operator()(double x) const {
        double y = 0.0;
        for (std::size_t j = coeffs.size(); j-- > 0;) y = y * x + coeffs[j];
        return y;
    }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

struct BoundParams {
    double phi;
    double ell;
    WeightPolynomial f;
};

struct GapBoundResult {
    double i_f = 0.0;
    double term1 = 0.0;
    double term2 = 0.0;
    double term3 = 0.0;
    double m_total = 0.0;
    double g_value = 0.0;
    double quad_error = 0.0;
    std::int64_t evaluations = 0;
};

// I_f(ell) = int_0^1 f(u)^2 u^{ell^2-1} du, exact for polynomial f.
// Throws DegenerateWeightError when |I_f| < 1e-12.
double eval_I_f(const WeightPolynomial& f, double ell);

// Shared three-term functional with kernel sin(c*u)/u (and sin^2 for the
// third term) and the given prefactor on the first term:
//   pref * (2/pi) ell * J1 + (2/pi^2) ell^2 * J2 + (2/pi^2) * J3.
// eval_M uses c = pi*phi, pref = |1-2phi|; the oracle's finite-L prediction
// uses c = h log L / 2, pref = |1 - (h/pi) log T|.
GapBoundResult eval_functional_terms(double kernel_c, double prefactor,
                                     double ell, const WeightPolynomial& f,
                                     double tol);

GapBoundResult eval_M(const BoundParams& params, double tol);

// g_value = I_f(ell)^{-1} (term1+term2+term3) - phi (1-phi), the limit form
// of the gap bound (finite-T error terms are not modeled).
GapBoundResult gap_lower_bound(const BoundParams& params, double tol);

struct PhiSearchResult {
    bool found = false;
    double phi_star = 0.0;
    // bracket endpoints after bisection (found case only)
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    std::int64_t g_evaluations = 0;
};

// Coarse scan of g_value over [lo, lo+step, ...] followed by bisection on the
// first sign change from negative to positive.  Not finding a change is a
// result, not an error.
PhiSearchResult minimize_phi(double ell, const WeightPolynomial& f, double lo,
                             double hi, double step, double tol_phi,
                             double quad_tol, int threads = 1);

// Margin policy: positivity is certified only with this cushion above the
// propagated quadrature error.
inline bool certified_positive(const GapBoundResult& r) {
    return r.g_value > 10.0 * (r.quad_error + 1e-12);
}

}  // namespace resgap
