#include "kempner/asymptotics.hpp"

#include "kempner/errors.hpp"
#include "kempner/special_functions.hpp"

#include <cmath>

namespace kempner {

namespace {

// alpha_B(-t) = sum_{d in B} e^{-d t} for t > 0; 1 <= alpha <= N.
Real alpha_at(const std::vector<int>& B, const Real& t) {
    Real e1 = exp(-t);
    Real acc(0);
    for (int d : B)
        acc += d == 0 ? Real(1) : pow_ui(e1, static_cast<unsigned long>(d));
    return acc;
}

// gamma_B(-t) = sum_{n admissible} e^{-nt} = prod_{i>=0} alpha_B(-b^i t),
// truncated once the remaining factors are within eps of 1.  The truncated
// product is a lower bound; factors beyond i satisfy
//   log prod <= sum N e^{-D b^i t} <= 2 N e^{-D b^I t}  (once decaying).
Real gamma_product(const DigitSet& d, const Real& t, const Real& eps) {
    const auto& B = d.mirrored();
    if (B.size() == 1)
        return Real(1);  // B = {0}
    int dmin = 0;
    for (int dig : B)
        if (dig > 0) {
            dmin = dig;
            break;
        }
    Real prod(1);
    Real ti = t;
    const long b = d.base();
    for (long i = 0; i < 100000; ++i) {
        // remaining-factor bound: exp(2 N e^{-dmin ti}) - 1 ~ 2 N e^{-dmin ti}
        Real rem = Real(2 * d.cardinality()) * exp(-(Real(dmin) * ti));
        if (i > 0 && rem < eps)
            break;
        prod *= alpha_at(B, ti);
        ti *= static_cast<unsigned long>(b);
    }
    return prod;
}

// Computable bound for gamma_B(-t), valid for all t > 0:
//   gamma_B(-t) <= sum_{l <= l*} N^l + sum_{l > l*} N^l e^{-b^{l-1} t}
// with l* = max(0, ceil(log_b(1/t))); the second part is closed by ratio
// N e^{-(b-1) b^{l-1} t} <= N e^{-(b-1)} < 1 once b^{l-1} t >= 1.
Real gamma_bound(const DigitSet& d, const Real& t) {
    const long n = d.cardinality();
    if (n == 1)
        return Real(1);
    const long b = d.base();
    double lt = -log_base(t, b).to_double();
    long lstar = lt > 0 ? static_cast<long>(lt) + 1 : 0;
    // sum_{l<=l*} N^l <= N^{l*+1}/(N-1)
    Real head = pow_ui(Real(n), static_cast<unsigned long>(lstar + 1)) / Real(n - 1);
    // first decaying block: l = l*+1, smallest member b^{l*};  b^{l*} t >= 1
    Real r = Real(n) * exp(-(pow_ui(Real(b), static_cast<unsigned long>(lstar)) * t));
    Real tail(0);
    if (r < Real(1)) {
        Real first = pow_ui(Real(n), static_cast<unsigned long>(lstar + 1)) *
                     exp(-(pow_ui(Real(b), static_cast<unsigned long>(lstar)) * t));
        tail = first / (Real(1) - r);
    } else {
        // t extremely small never reaches here: b^{l*} t >= 1 by choice of l*
        tail = head;
    }
    return head + tail;
}

} // namespace

Real profile_value(const ProfileEvaluator& ev, const Real& m, int widen_j) {
    const DigitSet& d = ev.digit_set;
    d.require_convergent(ev.s);
    if (!(m > Real(0)))
        throw validation_error("profile requires m > 0");
    if (!(ev.tol > Real(0)))
        throw validation_error("tol must be positive");

    const long b = d.base();
    const auto& B = d.mirrored();
    Real kappa = d.kappa_real();
    Real quarter_tol = ev.tol / 4;
    Real ms = pow(m, ev.s);
    Real bs = pow(Real(b), ev.s);
    Real rho = Real(d.cardinality()) / bs;  // = b^{-(s-s0)}

    // term(j) = m^s b^{js} e^{-X_j} gamma_B(-kappa X_j), X_j = b^j m.  The
    // product gamma_B(-t) = prod_{i>=0} alpha_B(-b^i t) shares factors
    // between consecutive j, so walking j downward needs one new alpha per
    // step: gamma_j = alpha(kappa X_j) * gamma_{j+1}.  Factors with
    // kappa X >= t_cut are within eps of 1 and are dropped; the dropped
    // multiplier is below exp(2N e^{-D t_cut}).
    int dmin = 0;
    for (int dig : B)
        if (dig > 0) {
            dmin = dig;
            break;
        }
    double t_cut = 1e308;  // B = {0}: gamma is identically 1
    if (dmin > 0) {
        double eps_prod = ev.tol.to_double() * 9.5e-7 / (4 * d.cardinality());
        t_cut = -std::log(eps_prod > 0 ? eps_prod : 1e-300) / dmin + 4.0;
    }

    auto alpha_factor = [&](const Real& t) {  // alpha_B(-t), t > 0
        Real e1 = exp(-t);
        Real acc(0);
        for (int dig : B)
            acc += dig == 0 ? Real(1) : pow_ui(e1, static_cast<unsigned long>(dig));
        return acc;
    };

    // find the upper cut first (gamma = 1 there up to eps once kappa X is
    // past t_cut; below it the running product picks the factors up)
    Real total(0);
    Real gamma_run(1);
    long j_hi = 1;
    {
        Real prev(-1);
        Real bjs = bs;      // b^{js}
        Real x = m * Real(b);  // b^j m
        for (long j = 1;; ++j) {
            Real g = Real(1);
            if ((kappa * x).to_double() < t_cut)
                g = gamma_product(d, kappa * x, quarter_tol * Real(1e-6));
            Real t = ms * bjs * exp(-x) * g;
            total += t;
            if (x > Real(1) && t < quarter_tol && (prev < Real(0) || t < prev / 2)) {
                j_hi = j;
                break;
            }
            prev = t;
            bjs *= bs;
            x *= static_cast<unsigned long>(b);
            if (j > 100000)
                throw validation_error("profile upper cut not reached");
        }
        for (long jj = j_hi + 1; jj <= j_hi + widen_j; ++jj)
            total += ms * pow(bs, Real(jj)) * exp(-(pow_si(Real(b), jj) * m)) *
                     gamma_product(d, kappa * pow_si(Real(b), jj) * m,
                                   quarter_tol * Real(1e-6));
    }
    // descend: gamma_run accumulates the alpha factors from j_hi downward;
    // the tail below j is bounded through gamma_bound, each step down
    // multiplying it by at most N b^{-s} = rho < 1.
    {
        Real binv = Real(1) / Real(b);
        Real bsp(1);  // b^{js}
        Real x = m;   // b^j m
        // collect every factor below t_cut; the +64 margin covers cases
        // where the term cut fired before kappa b^{j_hi} m passed t_cut
        // (b^64 >= 2^64 dwarfs any t_cut once X > 1)
        for (long q = j_hi + 64; q >= 1; --q) {
            Real tq = kappa * pow_si(Real(b), q) * m;
            if (tq.to_double() < t_cut)
                gamma_run *= alpha_factor(tq);
        }
        long j = 0;
        for (;;) {
            Real tq = kappa * x;
            if (tq.to_double() < t_cut)
                gamma_run *= alpha_factor(tq);
            total += ms * bsp * exp(-x) * gamma_run;
            Real bound = ms * bsp * gamma_bound(d, tq);
            if (bound * rho / (Real(1) - rho) < quarter_tol)
                break;
            --j;
            bsp /= bs;
            x *= binv;
            if (j < -1000000)
                throw validation_error("profile lower cut not reached");
        }
        for (int w = 1; w <= widen_j; ++w) {
            --j;
            bsp /= bs;
            x *= binv;
            Real tq = kappa * x;
            if (tq.to_double() < t_cut)
                gamma_run *= alpha_factor(tq);
            total += ms * bsp * exp(-x) * gamma_run;
        }
    }
    return total;
}

Complex fourier_coefficient(const DigitSet& d, const Real& s, long k, const Real& tol,
                            const KempnerConstantsStore* store) {
    d.require_convergent(s);
    Real logb = log(Real(d.base()));
    Real tau = (const_pi() * 2) / logb;
    Complex w{s, -(tau * Real(k))};
    Complex z;
    if (k == 0 && s == Real(1) && store && store->contains(d.base(), d.mirrored())) {
        z = zsum_telescope(d, *store, tol).value;
    } else {
        DirichletRequest req{d, w, tol, ZsumMethod::enumerate, 10'000'000};
        z = zsum_enumerate(req).value;
    }
    return gamma_complex(w, Precision{working_precision()}) * z / logb;
}

FourierSpectrum build_spectrum(const DigitSet& d, const Real& s, long k_max,
                               const Real& tol, const KempnerConstantsStore* store) {
    FourierSpectrum spec{d, s, k_max, {}};
    Real logb = log(Real(d.base()));
    Real tau = (const_pi() * 2) / logb;
    auto line = zsum_vertical_line(d, s, k_max, tol);
    if (k_max >= 0 && s == Real(1) && store && store->contains(d.base(), d.mirrored()))
        line[0] = zsum_telescope(d, *store, tol);
    spec.coefficients.reserve(line.size());
    for (long k = 0; k <= k_max; ++k) {
        Complex w{s, -(tau * Real(k))};
        spec.coefficients.push_back(
            gamma_complex(w, Precision{working_precision()}) *
            line[static_cast<std::size_t>(k)].value / logb);
    }
    return spec;
}

Real profile_from_fourier(const FourierSpectrum& spec, const Real& m) {
    if (!(m > Real(0)))
        throw validation_error("profile requires m > 0");
    Real theta = (const_pi() * 2) * log_base(m, spec.digit_set.base());
    Real acc = spec.coefficients[0].re;
    Real sn, cs;
    sin_cos(sn, cs, theta);
    Real rr = cs, ri = sn, tr, ti;
    for (long k = 1; k <= spec.k_max; ++k) {
        const Complex& c = spec.coefficients[static_cast<std::size_t>(k)];
        // c_k e^{ik theta} + conj: 2(Re c_k cos - Im c_k sin)
        acc += (c.re * rr - c.im * ri) * 2;
        if (k < spec.k_max) {
            tr = rr * cs - ri * sn;
            ti = rr * sn + ri * cs;
            rr = tr;
            ri = ti;
        }
    }
    return acc;
}

namespace {

std::uint64_t upow(long b, long e) {
    std::uint64_t r = 1;
    for (long i = 0; i < e; ++i)
        r *= static_cast<std::uint64_t>(b);
    return r;
}

} // namespace

AverageEstimate average_window(const MomentSequence& seq, std::uint64_t m_lo,
                               std::uint64_t m_hi, Weighting w) {
    if (m_lo < 1 || m_hi <= m_lo)
        throw validation_error("window must satisfy 1 <= lo < hi");
    // left: m in (lo, hi]; right: m in [lo, hi)
    std::uint64_t first = w == Weighting::left ? m_lo + 1 : m_lo;
    std::uint64_t last = w == Weighting::left ? m_hi : m_hi - 1;
    if (static_cast<long>(last) > seq.max_m())
        throw validation_error("period not fully covered by computed sequence");
    PrecisionGuard guard(seq.precision);
    Real logb = log(Real(seq.digit_set.base()));
    Real acc(0), wsum(0), wt, r;
    for (std::uint64_t m = first; m <= last; ++m) {
        if (w == Weighting::left) {
            // log_b(m/(m-1))
            mpfr_set_ui(r.raw(), static_cast<unsigned long>(m), MPFR_RNDN);
            r /= static_cast<unsigned long>(m - 1);
        } else {
            mpfr_set_ui(r.raw(), static_cast<unsigned long>(m + 1), MPFR_RNDN);
            r /= static_cast<unsigned long>(m);
        }
        wt = log(r) / logb;
        wsum += wt;
        acc += wt * seq.values[static_cast<std::size_t>(m)];
    }
    AverageEstimate est;
    est.m_first = first;
    est.m_last = last;
    est.weighting = w;
    est.value = acc / wsum;
    return est;
}

AverageEstimate average_estimate(const MomentSequence& seq, long p, Weighting w) {
    if (p < 0)
        throw validation_error("period index must be >= 0");
    std::uint64_t lo = upow(seq.digit_set.base(), p);
    std::uint64_t hi = lo * static_cast<std::uint64_t>(seq.digit_set.base());
    auto est = average_window(seq, lo, hi, w);
    est.period_index = p;
    return est;
}

Real extrapolate(const Real& a_prev, const Real& a_last, long base) {
    if (base < 2)
        throw validation_error("base must be >= 2");
    return a_last + (a_last - a_prev) / (base - 1);
}

Real profile_scale_correction(const DigitSet& d, const Real& s, Scaling scaling, long m) {
    if (m < 1)
        throw validation_error("m must be >= 1");
    Real ms = pow(Real(m), s);
    switch (scaling) {
        case Scaling::kappa_power:
            return Real(1);
        case Scaling::kappa_linear:
            return Real(m + 1) / ms;
        case Scaling::kappa_pochhammer: {
            Real poch(1);
            for (long i = 1; i <= m; ++i)
                poch *= (s + Real(i)) / Real(i);
            return poch / ms;
        }
        case Scaling::kappa_only:
            return Real(1) / ms;
        case Scaling::none:
            return pow(Real(1) / d.kappa_real(), Real(m)) / ms;
    }
    return Real(1);
}

} // namespace kempner
