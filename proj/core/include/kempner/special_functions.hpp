#ifndef KEMPNER_SPECIAL_FUNCTIONS_HPP
#define KEMPNER_SPECIAL_FUNCTIONS_HPP

#include "kempner/complex.hpp"
#include "kempner/real.hpp"

#include <vector>

namespace kempner {

// Exact Bernoulli numbers B_0 .. B_{2 k_max} (B_1 = -1/2 convention) via the
// convolution recurrence  B_n = -(1/(n+1)) sum_{j<n} C(n+1,j) B_j.
std::vector<mpq_class> bernoulli_numbers(long k_max);

// Streaming exact binomial row C(m, 0), C(m, 1), ..., C(m, m).
class BinomialRow {
public:
    explicit BinomialRow(long m);
    const mpz_class& value() const { return c_; }
    long index() const { return j_; }
    // Move to C(m, j+1); false once the row is exhausted.
    bool advance();

private:
    mpz_class c_;
    long m_;
    long j_ = 0;
};

std::vector<mpz_class> binomial_row(long m);

// Gamma(z) for Re z > 0, |Im z| <= 200, by upward argument shift and the
// Stirling series; shift count and series order derive from the requested
// precision.  Result rounded to P.
Complex gamma_complex(const Complex& z, Precision p = {});

// Riemann zeta for real s > 1 via Euler-Maclaurin (direct power sum once the
// terms alone reach the target).  Result rounded to P.
Real zeta_real(const Real& s, Precision p = {});

namespace detail {

// Tangent numbers T_1..T_n (exact, Seidel triangle).
std::vector<mpz_class> tangent_numbers(long n);

// B_{2k}/(2k)! for k = 1..k_max at working precision, from the tangent
// numbers:  B_{2k} = (-1)^{k-1} * 2k * T_k / (2^{2k}(2^{2k}-1)).
// Used where exact-rational convolution to large index is too slow.
std::vector<Real> bernoulli_even_scaled(long k_max);

} // namespace detail

} // namespace kempner

#endif
