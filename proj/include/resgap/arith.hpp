#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace resgap {

// Sieved arithmetic tables up to a fixed limit, shared read-only.
// spf[n] is the least prime factor of n (0 for n < 2), lambda_vm[n] the
// von Mangoldt function as a double, liouville[n] in {-1,+1}.
class ArithTables {
  public:
    static ArithTables build(std::uint32_t limit,
                             std::uint64_t memory_cap = 100'000'000);

    std::uint32_t limit() const { return limit_; }
    std::uint32_t spf(std::uint32_t n) const { return spf_[n]; }
    double von_mangoldt(std::uint32_t n) const { return lambda_vm_[n]; }
    int liouville(std::uint32_t n) const { return liouville_[n]; }

    // Lambda(n) != 0, i.e. n = p^a with a >= 1.
    bool is_prime_power(std::uint32_t n) const {
        return n >= 2 && lambda_vm_[n] != 0.0;
    }

  private:
    std::uint32_t limit_ = 0;
    std::vector<std::uint32_t> spf_;
    std::vector<double> lambda_vm_;
    std::vector<std::int8_t> liouville_;
};

// Generalized divisor function for real ell >= 1, multiplicative with
// d_ell(p^a) = Gamma(a+ell) / (Gamma(ell) Gamma(a+1)), computed per prime
// power through the ratio recurrence d_ell(p^a) = d_ell(p^{a-1})(a-1+ell)/a.
double d_ell(std::uint32_t n, double ell, const ArithTables& tables);

// Imaginary part of g_h(k) = -2i Lambda(k) sin((h/2) log k) / log k; the
// real part is identically zero, so the value is stored as a real.
double g_h_imag(std::uint32_t k, double h, const ArithTables& tables);

std::complex<double> g_h(std::uint32_t k, double h, const ArithTables& tables);

}  // namespace resgap
