#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "resgap/arith.hpp"
#include "resgap/bound.hpp"

namespace resgap {

enum class ResonatorMode { liouville, plain };

// Finite Dirichlet-sum instance on the asymptotic ray L = T/(log T)^2 with
// h = 2 pi phi / log T.
struct OracleInstance {
    std::uint32_t L = 0;
    double T = 0.0;
    double h = 0.0;
    double phi = 0.0;
    double ell = 1.0;
    WeightPolynomial f;
    ResonatorMode mode = ResonatorMode::plain;

    // Solves L = T/(log T)^2 by fixed point and derives h and the mode
    // (liouville iff (h/pi) log T >= 1, i.e. 2 phi >= 1).
    static OracleInstance from_phi(std::uint32_t L, double phi, double ell,
                                   WeightPolynomial f);
};

struct OracleResult {
    double sum1 = 0.0;
    double sum2 = 0.0;
    double sum3 = 0.0;
    double normalizer = 0.0;
    double ratio = 0.0;
    double afh_prediction = 0.0;
    double discrepancy = 0.0;
    // ratio recomputed with the first-sum prefactor perturbed by +-h (C=1),
    // the sensitivity band for the dropped O(h) factor term
    double ratio_band_lo = 0.0;
    double ratio_band_hi = 0.0;
};

// r(n) = d_ell(n) [lambda(n)] f(log n / log L), index 0 unused.
std::vector<double> resonator_coeffs(const OracleInstance& inst,
                                     const ArithTables& tables);

// a(k) = g_h(k), stored as the imaginary parts (the real part is 0).
std::vector<double> approximator_coeffs(const OracleInstance& inst,
                                        const ArithTables& tables);

// The three sums of the finite bound, the normalizer sum |r(n)|^2/n, and the
// ratio; divisor-convolution form, compensated accumulation.
OracleResult eval_N(const OracleInstance& inst, const ArithTables& tables);

// Main term of the asymptotic integral formula at finite L: kernel argument
// (u/2) h log L and prefactor |1 - (h/pi) log T|, divided by I_f(ell).
double afh_prediction(const OracleInstance& inst, double tol = 1e-9);

struct ConvergenceRow {
    std::uint32_t L = 0;
    double h = 0.0;
    double ratio = 0.0;
    double prediction = 0.0;
    double discrepancy = 0.0;
    double rel_discrepancy = 0.0;
    double band_lo = 0.0;
    double band_hi = 0.0;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    bool non_increasing = false;      // of |ratio - prediction|
    bool rel_non_increasing = false;  // of |ratio - prediction| / |prediction|
    double fit_a = 0.0;               // discrepancy ~ fit_a / log L + fit_b * h
    double fit_b = 0.0;
    double fit_rel_residual = 0.0;
    bool fit_ok = false;              // residual < 30% (needs >= 2 rows)
};

// Instances must share (phi, ell, f, mode) and come in increasing L.
ConvergenceReport convergence_study(std::span<const OracleInstance> instances,
                                    const ArithTables& tables,
                                    double tol = 1e-9);

// max over samples of |R_L(1/2 + it)|^2 / (L * sum |r(n)|^2 / n); always <= 1.
double resonator_sup_check(const OracleInstance& inst,
                           const ArithTables& tables,
                           std::span<const double> t_samples);

}  // namespace resgap
