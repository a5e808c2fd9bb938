#include "resgap/arith.hpp"

#include <cmath>
#include <string>

#include "resgap/errors.hpp"

namespace resgap {

ArithTables ArithTables::build(std::uint32_t limit, std::uint64_t memory_cap) {
    if (limit < 2) {
        throw PreconditionError("ArithTables::build: limit must be >= 2");
    }
    // spf (4 bytes) + Lambda (8 bytes) + liouville (1 byte) per entry
    const std::uint64_t bytes = (std::uint64_t{limit} + 1) * 13u;
    if (bytes > memory_cap) {
        throw ResourceError("ArithTables::build: limit " + std::to_string(limit) +
                            " needs " + std::to_string(bytes) +
                            " bytes, exceeding the cap of " +
                            std::to_string(memory_cap));
    }

    ArithTables t;
    t.limit_ = limit;
    t.spf_.assign(std::size_t{limit} + 1, 0);
    t.lambda_vm_.assign(std::size_t{limit} + 1, 0.0);
    t.liouville_.assign(std::size_t{limit} + 1, 1);

    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (t.spf_[i] != 0) continue;
        for (std::uint64_t j = i; j <= limit; j += i) {
            if (t.spf_[j] == 0) t.spf_[j] = i;
        }
    }
    for (std::uint32_t n = 2; n <= limit; ++n) {
        const std::uint32_t p = t.spf_[n];
        const std::uint32_t m = n / p;
        t.liouville_[n] = static_cast<std::int8_t>(-t.liouville_[m]);
        // n is a prime power iff n/p is 1 or a power of the same prime
        if (m == 1 || (t.spf_[m] == p && t.lambda_vm_[m] != 0.0)) {
            t.lambda_vm_[n] = std::log(static_cast<double>(p));
        }
    }
    return t;
}

double d_ell(std::uint32_t n, double ell, const ArithTables& tables) {
    if (n == 0 || n > tables.limit()) {
        throw PreconditionError("d_ell: n outside table limit");
    }
    double result = 1.0;
    std::uint32_t m = n;
    while (m > 1) {
        const std::uint32_t p = tables.spf(m);
        double factor = 1.0;
        int a = 0;
        while (m % p == 0) {
            m /= p;
            ++a;
            factor *= (a - 1 + ell) / a;
        }
        result *= factor;
    }
    return result;
}

double g_h_imag(std::uint32_t k, double h, const ArithTables& tables) {
    if (k == 0 || k > tables.limit()) {
        throw PreconditionError("g_h: k outside table limit");
    }
    if (k == 1) return 0.0;
    const double lam = tables.von_mangoldt(k);
    if (lam == 0.0) return 0.0;
    const double logk = std::log(static_cast<double>(k));
    return -2.0 * lam * std::sin(0.5 * h * logk) / logk;
}

std::complex<double> g_h(std::uint32_t k, double h, const ArithTables& tables) {
    return {0.0, g_h_imag(k, h, tables)};
}

}  // namespace resgap
