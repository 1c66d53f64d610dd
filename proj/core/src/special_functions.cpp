#include "kempner/special_functions.hpp"

#include "kempner/errors.hpp"

#include <map>
#include <mutex>

namespace kempner {

std::vector<mpq_class> bernoulli_numbers(long k_max) {
    if (k_max < 0)
        throw validation_error("k_max must be >= 0");
    const long n_max = 2 * k_max;
    std::vector<mpq_class> b(static_cast<std::size_t>(n_max) + 1);
    b[0] = 1;
    mpz_class binom;
    for (long n = 1; n <= n_max; ++n) {
        mpq_class acc = 0;
        for (long j = 0; j < n; ++j) {
            if (j > 1 && (j & 1))
                continue;  // odd-index Bernoulli numbers beyond B_1 vanish
            mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n + 1),
                         static_cast<unsigned long>(j));
            acc += binom * b[static_cast<std::size_t>(j)];
        }
        acc /= -(n + 1);
        acc.canonicalize();
        b[static_cast<std::size_t>(n)] = acc;
    }
    return b;
}

BinomialRow::BinomialRow(long m) : c_(1), m_(m) {
    if (m < 0)
        throw validation_error("m must be >= 0");
}

bool BinomialRow::advance() {
    if (j_ >= m_)
        return false;
    c_ *= m_ - j_;
    ++j_;
    mpz_divexact_ui(c_.get_mpz_t(), c_.get_mpz_t(), static_cast<unsigned long>(j_));
    return true;
}

std::vector<mpz_class> binomial_row(long m) {
    BinomialRow row(m);
    std::vector<mpz_class> out;
    out.reserve(static_cast<std::size_t>(m) + 1);
    out.push_back(row.value());
    while (row.advance())
        out.push_back(row.value());
    return out;
}

namespace detail {

std::vector<mpz_class> tangent_numbers(long n) {
    std::vector<mpz_class> t(static_cast<std::size_t>(n) + 1);
    if (n >= 1)
        t[1] = 1;
    for (long k = 2; k <= n; ++k)
        t[static_cast<std::size_t>(k)] = t[static_cast<std::size_t>(k - 1)] * (k - 1);
    for (long k = 2; k <= n; ++k)
        for (long j = k; j <= n; ++j)
            t[static_cast<std::size_t>(j)] =
                t[static_cast<std::size_t>(j - 1)] * (j - k) +
                t[static_cast<std::size_t>(j)] * (j - k + 2);
    return t;
}

std::vector<Real> bernoulli_even_scaled(long k_max) {
    auto t = tangent_numbers(k_max);
    std::vector<Real> out(static_cast<std::size_t>(k_max) + 1);
    out[0] = Real(1);  // B_0/0!
    mpz_class pow4 = 1, fact = 1;  // 4^k and (2k-1)!
    for (long k = 1; k <= k_max; ++k) {
        pow4 *= 4;
        fact *= (2 * k - 1);
        if (k > 1)
            fact *= (2 * k - 2);
        mpz_class den = pow4 * (pow4 - 1) * fact;
        Real v = Real(t[static_cast<std::size_t>(k)]) / Real(den);
        out[static_cast<std::size_t>(k)] = (k % 2 == 0) ? -v : v;
    }
    return out;
}

namespace {

// Stirling coefficients B_{2k}/(2k(2k-1)) as exact rationals, grown on
// demand and shared; converted to Real at each call's working precision.
const mpq_class& stirling_coefficient(long k) {
    static std::vector<mpq_class> coeffs;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (static_cast<long>(coeffs.size()) <= k) {
        long k_max = std::max<long>(2 * k, 64);
        auto bern = bernoulli_numbers(k_max);
        coeffs.resize(static_cast<std::size_t>(k_max) + 1);
        for (long i = 1; i <= k_max; ++i) {
            coeffs[static_cast<std::size_t>(i)] =
                bern[static_cast<std::size_t>(2 * i)] / mpq_class(2 * i * (2 * i - 1));
            coeffs[static_cast<std::size_t>(i)].canonicalize();
        }
    }
    return coeffs[static_cast<std::size_t>(k)];
}

// log Gamma(z) for Re z >= shift threshold; plain Stirling series.
// Returns false if the asymptotic series failed to reach eps (terms started
// growing first); caller then shifts further.
bool log_gamma_stirling(const Complex& z, const Real& eps, Complex& out) {
    Real half("0.5");
    Complex lz = log(z);
    Complex acc = (z - Complex(half)) * lz - z;
    Real tau = const_pi() * 2;
    acc.re += half * log(tau);
    // sum_k B_2k / (2k(2k-1) z^(2k-1))
    Complex zinv = Complex(1L) / z;
    Complex zinv2 = zinv * zinv;
    Complex zp = zinv;
    Real prev_mag(0);
    for (long k = 1; k < 400; ++k) {
        Complex term = zp * Real(stirling_coefficient(k));
        Real mag = abs(term);
        acc += term;
        if (mag < eps) {
            out = acc;
            return true;
        }
        if (k > 1 && mag > prev_mag)
            return false;  // divergence onset before target accuracy
        prev_mag = mag;
        zp *= zinv2;
    }
    return false;
}

} // namespace
} // namespace detail

Complex gamma_complex(const Complex& z, Precision p) {
    const long target = p.significand_bits;
    PrecisionGuard guard(target + 48);
    if (!(z.re > Real(0)))
        throw validation_error("gamma_complex requires Re z > 0");

    // Shift z upward until Stirling converges: |z+n| of the order of the
    // requested bit count makes the optimal remainder ~ e^{-2 pi |z|}
    // comfortably below target.
    Real eps = pow_si(Real(2), -(target + 40));
    long shift = 0;
    {
        double re = z.re.to_double();
        double im = z.im.to_double();
        double r = 0.14 * static_cast<double>(target + 48) + 8.0;
        if (re < r && std::abs(im) < r)
            shift = static_cast<long>(r - re) + 1;
    }
    Complex lg;
    for (;;) {
        Complex zs{z.re + Real(shift), z.im};
        if (detail::log_gamma_stirling(zs, eps * Real("0.01"), lg))
            break;
        shift += std::max<long>(8, target / 16);
        if (shift > 64 * (target + 64))
            throw validation_error("gamma_complex: Stirling shift runaway");
    }
    // Gamma(z) = exp(logGamma(z+shift)) / prod_{i=0}^{shift-1} (z+i)
    Complex g = exp(lg);
    if (shift > 0) {
        Complex prod{z.re, z.im};
        for (long i = 1; i < shift; ++i)
            prod *= Complex{z.re + Real(i), z.im};
        g = g / prod;
    }
    PrecisionGuard round(target);
    return {Real(0) + g.re, Real(0) + g.im};
}

Real zeta_real(const Real& s, Precision p) {
    const long target = p.significand_bits;
    PrecisionGuard guard(target + 32);
    if (!(s > Real(1)))
        throw validation_error("zeta_real requires s > 1");

    const double sd = s.to_double();
    Real result;
    if (sd > 40.0) {
        // Direct Dirichlet sum: n^{-s} alone reaches the target quickly.
        long n_lim = 2;
        Real bound = pow(Real(n_lim), Real(1) - s) / (s - Real(1));
        Real eps = pow_si(Real(2), -(target + 8));
        while (bound > eps && n_lim < (1 << 20)) {
            n_lim *= 2;
            bound = pow(Real(n_lim), Real(1) - s) / (s - Real(1));
        }
        Real acc(1);
        for (long n = 2; n <= n_lim; ++n)
            acc += pow(Real(n), -s);
        result = acc;
    } else {
        // Euler-Maclaurin with n0 cutoff terms and 2k-th derivative
        // corrections; remainder is below the first omitted term for s > 1.
        const long n0 = std::max<long>(12, static_cast<long>(0.14 * (target + 32)) + 4);
        Real acc(0);
        for (long n = 1; n < n0; ++n)
            acc += pow(Real(n), -s);
        Real rn0 = Real(n0);
        Real n0_ms = pow(rn0, -s);
        acc += rn0 * n0_ms / (s - Real(1));  // n0^{1-s}/(s-1)
        acc += n0_ms / 2;
        auto bern = bernoulli_numbers(200);
        Real poch = s;                       // (s)(s+1)...(s+2k-2)
        Real npow = n0_ms / rn0;             // n0^{-s-2k+1}
        Real eps = abs(acc) * pow_si(Real(2), -(target + 16));
        bool reached = false;
        for (long k = 1; k <= 200; ++k) {
            Real term = Real(bern[static_cast<std::size_t>(2 * k)]) * poch * npow;
            mpz_class f = mpz_class(2 * k) * mpz_class(2 * k - 1);
            for (long i = 2 * k - 2; i >= 2; --i)
                f *= i;
            term /= Real(f);
            acc += term;
            if (abs(term) < eps) {
                reached = true;
                break;
            }
            poch *= (s + Real(2 * k - 1)) * (s + Real(2 * k));
            npow /= rn0 * rn0;
        }
        if (!reached)
            throw validation_error("zeta_real: Euler-Maclaurin failed to converge");
        result = acc;
    }
    PrecisionGuard round(target);
    return Real(0) + result;
}

} // namespace kempner
