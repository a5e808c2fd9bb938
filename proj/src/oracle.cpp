#include "resgap/oracle.hpp"

#include <cmath>
#include <complex>

#include "resgap/errors.hpp"
#include "resgap/kahan.hpp"
#include "resgap/quadrature.hpp"

namespace resgap {

namespace {

double solve_scale(std::uint32_t L) {
    // L = T / (log T)^2; the iteration T <- L (log T)^2 contracts
    double t = L * std::pow(std::log(static_cast<double>(L) + 2.0), 2.0);
    for (int i = 0; i < 50; ++i) {
        const double next = L * std::pow(std::log(t), 2.0);
        if (std::abs(next - t) <= 1e-12 * t) {
            t = next;
            break;
        }
        t = next;
    }
    return t;
}

}  // namespace

OracleInstance OracleInstance::from_phi(std::uint32_t L, double phi, double ell,
                                        WeightPolynomial f) {
    if (L < 1) throw PreconditionError("OracleInstance: L >= 1 required");
    if (!(phi > 0.0)) throw PreconditionError("OracleInstance: phi > 0 required");
    OracleInstance inst;
    inst.L = L;
    inst.phi = phi;
    inst.ell = ell;
    inst.f = std::move(f);
    inst.T = solve_scale(L);
    inst.h = 2.0 * M_PI * phi / std::log(inst.T);
    if (!(inst.h > 0.0 && inst.h <= 1.0)) {
        throw PreconditionError("OracleInstance: h outside (0, 1]");
    }
    // (h/pi) log T = 2 phi by construction; decide on phi to keep the
    // boundary case exact
    inst.mode = 2.0 * phi >= 1.0 ? ResonatorMode::liouville
                                 : ResonatorMode::plain;
    return inst;
}

std::vector<double> resonator_coeffs(const OracleInstance& inst,
                                     const ArithTables& tables) {
    if (tables.limit() < inst.L) {
        throw PreconditionError("resonator_coeffs: tables cover less than L");
    }
    const std::uint32_t L = inst.L;
    const double log_l = L > 1 ? std::log(static_cast<double>(L)) : 1.0;
    std::vector<double> r(std::size_t{L} + 1, 0.0);
    r[1] = inst.f(0.0);
    for (std::uint32_t n = 2; n <= L; ++n) {
        double v = d_ell(n, inst.ell, tables) *
                   inst.f(std::log(static_cast<double>(n)) / log_l);
        if (inst.mode == ResonatorMode::liouville) v *= tables.liouville(n);
        r[n] = v;
    }
    return r;
}

std::vector<double> approximator_coeffs(const OracleInstance& inst,
                                        const ArithTables& tables) {
    if (tables.limit() < inst.L) {
        throw PreconditionError("approximator_coeffs: tables cover less than L");
    }
    std::vector<double> a(std::size_t{inst.L} + 1, 0.0);
    for (std::uint32_t k = 2; k <= inst.L; ++k) {
        a[k] = g_h_imag(k, inst.h, tables);
    }
    return a;
}

OracleResult eval_N(const OracleInstance& inst, const ArithTables& tables) {
    const std::uint32_t L = inst.L;
    if (tables.limit() < L) {
        throw PreconditionError("eval_N: tables cover less than L");
    }
    const std::vector<double> r = resonator_coeffs(inst, tables);
    const std::vector<double> gh = approximator_coeffs(inst, tables);

    std::vector<std::uint32_t> prime_powers;
    for (std::uint32_t k = 2; k <= L; ++k) {
        if (gh[k] != 0.0) prime_powers.push_back(k);
    }

    const double pi = M_PI;
    OracleResult out;

    // first sum: -(1 - 2 phi) (1/pi) Im sum_{km<=L} g_h(k)/k r(m) r(km)/m,
    // g_h purely imaginary so the Im reduces to the stored real array
    KahanSum s1;
    for (std::uint32_t k : prime_powers) {
        KahanSum inner;
        for (std::uint32_t m = 1; m <= L / k; ++m) {
            inner.add(r[m] * r[std::size_t{k} * m] / m);
        }
        s1.add(gh[k] / k * inner.value());
    }
    const double prefactor = 1.0 - 2.0 * inst.phi;
    out.sum1 = -prefactor * s1.value() / pi;

    // middle sum over the diagonal km = ln = N: with a = g_h the combination
    // (2g_h - a) conj(a) collapses to |.|^2 of the divisor convolution
    // beta(N) = sum_{k|N} Im g_h(k) r(N/k)
    std::vector<double> beta(std::size_t{L} + 1, 0.0);
    for (std::uint32_t k : prime_powers) {
        const double gk = gh[k];
        for (std::uint64_t n = k; n <= L; n += k) {
            beta[n] += gk * r[n / k];
        }
    }
    KahanSum s2;
    for (std::uint32_t n = 1; n <= L; ++n) {
        s2.add(beta[n] * beta[n] / n);
    }
    out.sum2 = s2.value() / (2.0 * pi * pi);

    // third sum: -(1/2pi^2) Re sum_{klm<=L} g_h(k) g_h(l)/(kl) r(m) r(klm)/m;
    // Re(g_h(k) g_h(l)) = -Im g_h(k) Im g_h(l) flips the sign
    KahanSum s3;
    for (std::uint32_t k : prime_powers) {
        for (std::uint32_t l : prime_powers) {
            const std::uint64_t kl = std::uint64_t{k} * l;
            if (kl > L) break;
            KahanSum inner;
            for (std::uint32_t m = 1; m <= L / kl; ++m) {
                inner.add(r[m] * r[kl * m] / m);
            }
            s3.add(gh[k] * gh[l] / static_cast<double>(kl) * inner.value());
        }
    }
    out.sum3 = s3.value() / (2.0 * pi * pi);

    KahanSum norm;
    for (std::uint32_t n = 1; n <= L; ++n) {
        norm.add(r[n] * r[n] / n);
    }
    out.normalizer = norm.value();

    const double total = out.sum1 + out.sum2 + out.sum3;
    out.ratio = total / out.normalizer;
    // sensitivity band for the dropped O(h) in the first-sum prefactor (C=1)
    const double swing = inst.h * std::abs(s1.value() / pi) / out.normalizer;
    out.ratio_band_lo = out.ratio - swing;
    out.ratio_band_hi = out.ratio + swing;
    return out;
}

double afh_prediction(const OracleInstance& inst, double tol) {
    const double log_l = std::log(static_cast<double>(inst.L));
    const double kernel_c = 0.5 * inst.h * log_l;
    const double pref = std::abs(1.0 - (inst.h / M_PI) * std::log(inst.T));
    GapBoundResult terms =
        eval_functional_terms(kernel_c, pref, inst.ell, inst.f, tol);
    return terms.m_total / eval_I_f(inst.f, inst.ell);
}

ConvergenceReport convergence_study(std::span<const OracleInstance> instances,
                                    const ArithTables& tables, double tol) {
    ConvergenceReport rep;
    for (const auto& inst : instances) {
        OracleResult res = eval_N(inst, tables);
        const double pred = afh_prediction(inst, tol);
        ConvergenceRow row;
        row.L = inst.L;
        row.h = inst.h;
        row.ratio = res.ratio;
        row.prediction = pred;
        row.discrepancy = std::abs(res.ratio - pred);
        row.rel_discrepancy =
            pred != 0.0 ? row.discrepancy / std::abs(pred) : row.discrepancy;
        row.band_lo = res.ratio_band_lo;
        row.band_hi = res.ratio_band_hi;
        rep.rows.push_back(row);
    }
    if (rep.rows.empty()) return rep;

    rep.non_increasing = true;
    rep.rel_non_increasing = true;
    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
        if (rep.rows[i].discrepancy > rep.rows[i - 1].discrepancy) {
            rep.non_increasing = false;
        }
        if (rep.rows[i].rel_discrepancy > rep.rows[i - 1].rel_discrepancy) {
            rep.rel_non_increasing = false;
        }
    }
    if (rep.rows.size() < 2) return rep;

    // least squares for discrepancy ~ A / log L + B h  (2x2 normal equations)
    double s11 = 0, s12 = 0, s22 = 0, b1 = 0, b2 = 0;
    for (const auto& row : rep.rows) {
        const double x1 = 1.0 / std::log(static_cast<double>(row.L));
        const double x2 = row.h;
        s11 += x1 * x1;
        s12 += x1 * x2;
        s22 += x2 * x2;
        b1 += x1 * row.discrepancy;
        b2 += x2 * row.discrepancy;
    }
    const double det = s11 * s22 - s12 * s12;
    if (det != 0.0) {
        rep.fit_a = (b1 * s22 - b2 * s12) / det;
        rep.fit_b = (s11 * b2 - s12 * b1) / det;
        double res2 = 0.0, obs2 = 0.0;
        for (const auto& row : rep.rows) {
            const double fit = rep.fit_a / std::log(static_cast<double>(row.L)) +
                               rep.fit_b * row.h;
            res2 += (fit - row.discrepancy) * (fit - row.discrepancy);
            obs2 += row.discrepancy * row.discrepancy;
        }
        rep.fit_rel_residual = obs2 > 0.0 ? std::sqrt(res2 / obs2) : 0.0;
        rep.fit_ok = rep.fit_rel_residual < 0.30;
    }
    return rep;
}

double resonator_sup_check(const OracleInstance& inst,
                           const ArithTables& tables,
                           std::span<const double> t_samples) {
    if (inst.L < 3) throw PreconditionError("resonator_sup_check: L >= 3");
    const std::vector<double> r = resonator_coeffs(inst, tables);
    KahanSum norm;
    std::vector<double> inv_sqrt(r.size(), 0.0);
    std::vector<double> log_n(r.size(), 0.0);
    for (std::uint32_t n = 1; n <= inst.L; ++n) {
        norm.add(r[n] * r[n] / n);
        inv_sqrt[n] = 1.0 / std::sqrt(static_cast<double>(n));
        log_n[n] = std::log(static_cast<double>(n));
    }
    const double denom = inst.L * norm.value();
    double worst = 0.0;
    for (double t : t_samples) {
        KahanSum re, im;
        for (std::uint32_t n = 1; n <= inst.L; ++n) {
            const double phase = t * log_n[n];
            re.add(r[n] * inv_sqrt[n] * std::cos(phase));
            im.add(-r[n] * inv_sqrt[n] * std::sin(phase));
        }
        const double mag2 = re.value() * re.value() + im.value() * im.value();
        worst = std::max(worst, mag2 / denom);
    }
    return worst;
}

}  // namespace resgap
