#include "kempner/moments.hpp"

#include "kempner/errors.hpp"
#include "kempner/special_functions.hpp"

#include <cmath>

namespace kempner {

const char* scaling_name(Scaling s) {
    switch (s) {
        case Scaling::none: return "none";
        case Scaling::kappa_only: return "kappa";
        case Scaling::kappa_linear: return "linear";
        case Scaling::kappa_pochhammer: return "pochhammer";
        case Scaling::kappa_power: return "power";
    }
    return "?";
}

MomentSequence moments_recurrence(const DigitSet& d, const Real& s, long m_max,
                                  Precision p, Scaling scaling) {
    if (m_max < 0)
        throw validation_error("m_max must be >= 0");
    PrecisionGuard guard(p);
    d.require_convergent(s);

    const long n = d.cardinality();
    const long b = d.base();
    const Real scale = scaling == Scaling::none ? Real(1) : d.kappa_real();

    // Scaled digit power sums divided by j!:  qhat[j] = (sum_a (c a)^j)/j!.
    std::vector<Real> qhat(static_cast<std::size_t>(m_max) + 1, Real(0));
    qhat[0] = Real(n);
    {
        std::vector<Real> ca, cp;
        for (int a : d.allowed())
            if (a != 0) {
                ca.push_back(scale * Real(static_cast<long>(a)));
                cp.push_back(Real(1));
            }
        for (long j = 1; j <= m_max; ++j) {
            Real acc(0);
            for (std::size_t i = 0; i < ca.size(); ++i) {
                cp[i] *= ca[i];
                cp[i] /= static_cast<unsigned long>(j);
                acc += cp[i];
            }
            qhat[static_cast<std::size_t>(j)] = acc;
        }
    }

    Real bs = pow(Real(b), s);
    MomentSequence seq{d, s, scaling, {}, p};
    seq.values.reserve(static_cast<std::size_t>(m_max) + 1);

    Real u0 = bs / (bs - Real(n));
    seq.values.push_back(scaling == Scaling::kappa_power ? Real(0) : u0);

    // what[m] = kappa^m u_m / m!; the convolution kernel qhat is fixed, so
    // the inner loop is one mul-add per (m, j).
    std::vector<Real> what(static_cast<std::size_t>(m_max) + 1);
    what[0] = u0;
    Real bpow = bs;       // b^{m+s}
    Real fact(1);         // m!
    Real poch(1);         // (s+1)_m / m!
    Real t, acc;
    for (long m = 1; m <= m_max; ++m) {
        bpow *= static_cast<unsigned long>(b);
        Real denom = bpow - Real(n);
        mpfr_set_zero(acc.raw(), 1);
        const std::size_t mu = static_cast<std::size_t>(m);
        for (std::size_t j = 1; j <= mu; ++j) {
            mpfr_mul(t.raw(), qhat[j].raw(), what[mu - j].raw(), MPFR_RNDN);
            mpfr_add(acc.raw(), acc.raw(), t.raw(), MPFR_RNDN);
        }
        what[mu] = acc / denom;
        fact *= static_cast<unsigned long>(m);
        Real v = what[mu] * fact;
        switch (scaling) {
            case Scaling::none:
            case Scaling::kappa_only:
                break;
            case Scaling::kappa_linear:
                v *= static_cast<unsigned long>(m + 1);
                break;
            case Scaling::kappa_pochhammer:
                poch *= (s + Real(m)) / Real(m);
                v *= poch;
                break;
            case Scaling::kappa_power:
                v *= pow(Real(m), s);
                break;
        }
        seq.values.push_back(v);
    }
    return seq;
}

namespace {

// Geometric level-tail bound for the defining series truncated after depth
// L: sum_{l>L} N^l b^{-ls} (with x^m <= 1) = rho^{L+1}/(1-rho).
Real crude_tail(const Real& rho, long level) {
    return pow_ui(rho, static_cast<unsigned long>(level + 1)) / (Real(1) - rho);
}

struct Enumeration {
    std::vector<Real> partial;  // sum over levels 1..L of x^i b^{-ls}
    std::vector<Real> layer_l;  // level-L slice alone
    long depth = 0;
};

// Walk all digit words of length <= depth, accumulating power sums per
// level; Horner running value, powers updated incrementally per word.
Enumeration enumerate_words(const DigitSet& d, const Real& s, long m_max, long depth) {
    const std::size_t cols = static_cast<std::size_t>(m_max) + 1;
    std::vector<std::vector<Real>> layers(static_cast<std::size_t>(depth) + 1,
                                          std::vector<Real>(cols, Real(0)));
    Real binv = Real(1) / Real(d.base());
    std::vector<Real> digit(d.allowed().size());
    for (std::size_t i = 0; i < digit.size(); ++i)
        digit[i] = Real(static_cast<long>(d.allowed()[i]));

    Real xp, t;
    // Explicit stack of x values along the current word.
    std::vector<Real> xs(static_cast<std::size_t>(depth) + 1, Real(0));
    std::vector<std::size_t> ai(static_cast<std::size_t>(depth) + 1, 0);
    long l = 0;
    const std::size_t na = digit.size();
    for (;;) {
        if (l == depth || ai[static_cast<std::size_t>(l)] >= na) {
            if (l == 0)
                break;
            --l;
            continue;
        }
        std::size_t i = ai[static_cast<std::size_t>(l)]++;
        // x at level l+1 is (x_l + digit)/b
        mpfr_add(t.raw(), xs[static_cast<std::size_t>(l)].raw(), digit[i].raw(), MPFR_RNDN);
        mpfr_mul(xs[static_cast<std::size_t>(l + 1)].raw(), t.raw(), binv.raw(), MPFR_RNDN);
        auto& row = layers[static_cast<std::size_t>(l + 1)];
        const Real& x = xs[static_cast<std::size_t>(l + 1)];
        mpfr_set_ui(xp.raw(), 1, MPFR_RNDN);
        mpfr_add_ui(row[0].raw(), row[0].raw(), 1, MPFR_RNDN);
        for (std::size_t k = 1; k < cols; ++k) {
            mpfr_mul(xp.raw(), xp.raw(), x.raw(), MPFR_RNDN);
            mpfr_add(row[k].raw(), row[k].raw(), xp.raw(), MPFR_RNDN);
        }
        ++l;
        ai[static_cast<std::size_t>(l)] = 0;
    }

    Enumeration e;
    e.depth = depth;
    e.partial.assign(cols, Real(0));
    Real bs_pow(1);
    Real bs = pow(Real(d.base()), -s);
    for (long lev = 1; lev <= depth; ++lev) {
        bs_pow *= bs;
        for (std::size_t k = 0; k < cols; ++k) {
            mpfr_mul(layers[static_cast<std::size_t>(lev)][k].raw(),
                     layers[static_cast<std::size_t>(lev)][k].raw(), bs_pow.raw(), MPFR_RNDN);
            e.partial[k] += layers[static_cast<std::size_t>(lev)][k];
        }
    }
    e.layer_l = std::move(layers[static_cast<std::size_t>(depth)]);
    return e;
}

} // namespace

std::vector<Real> moments_direct_upto(const DigitSet& d, const Real& s, long m_max,
                                      const Real& tol, Precision p, DirectOptions opts) {
    if (m_max < 0)
        throw validation_error("m_max must be >= 0");
    if (m_max > 2000)
        throw validation_error("direct evaluation capped at m_max = 2000");
    if (!(tol > Real(0)))
        throw validation_error("tol must be positive");
    PrecisionGuard guard(p);
    d.require_convergent(s);

    const long n = d.cardinality();
    Real rho = Real(n) * pow(Real(d.base()), -s);

    // Words of length <= L cost sum_{l<=L} N^l.
    long crude_depth = -1;
    double words = 0;
    double level_words = 1;
    for (long l = 1; l <= 256; ++l) {
        level_words *= static_cast<double>(n);
        words += level_words;
        if (words > static_cast<double>(opts.word_budget))
            break;
        if (crude_tail(rho, l) < tol) {
            crude_depth = l;
            break;
        }
    }

    const bool want_crude = opts.mode == DirectOptions::Mode::crude ||
                            (opts.mode == DirectOptions::Mode::automatic && crude_depth > 0);
    if (want_crude) {
        if (crude_depth < 0) {
            long lmax = 0;
            double w = 0, lw = 1;
            while (lmax < 256) {
                lw *= static_cast<double>(n);
                if (w + lw > static_cast<double>(opts.word_budget))
                    break;
                w += lw;
                ++lmax;
            }
            double best = lmax > 0 ? crude_tail(rho, lmax).to_double() : 1.0;
            throw budget_exceeded(
                "direct series: no depth reaches tol within the word budget", best);
        }
        auto e = enumerate_words(d, s, m_max, crude_depth);
        std::vector<Real> u = std::move(e.partial);
        u[0] += Real(1);  // the 0^0 leading term
        return u;
    }

    // Closure mode: pick the deepest affordable L, but the identity is
    // exact at any depth, so cap where the tail factor is already small.
    long depth = 0;
    {
        double w = 0, lw = 1;
        while (depth < 64) {
            lw *= static_cast<double>(n);
            if (w + lw > static_cast<double>(opts.word_budget))
                break;
            w += lw;
            ++depth;
            if (crude_tail(rho, depth) < Real(1e-3))
                break;
        }
        if (depth < 1)
            throw budget_exceeded("direct series: budget below one level", 1.0);
    }
    auto e = enumerate_words(d, s, m_max, depth);
    const std::size_t cols = static_cast<std::size_t>(m_max) + 1;
    std::vector<Real> u(cols);
    Real bl = pow_ui(Real(1) / Real(d.base()), static_cast<unsigned long>(depth));
    // u_0 = 1 + partial(0) + P(0) (u_0 - 1)
    u[0] = (Real(1) + e.partial[0] - e.layer_l[0]) / (Real(1) - e.layer_l[0]);
    std::vector<Real> blp(cols);  // b^{-Lj}
    blp[0] = Real(1);
    for (std::size_t j = 1; j < cols; ++j)
        blp[j] = blp[j - 1] * bl;
    for (std::size_t i = 1; i < cols; ++i) {
        Real rhs = e.partial[i];
        Real binom(1);  // C(i, j) built incrementally
        for (std::size_t j = 0; j < i; ++j) {
            if (j > 0) {
                binom *= static_cast<unsigned long>(i - j + 1);
                binom /= static_cast<unsigned long>(j);
            }
            Real contrib = binom * blp[j] * e.layer_l[i - j];
            rhs += contrib * (j == 0 ? u[0] - Real(1) : u[j]);
        }
        Real diag = blp[i] * e.layer_l[0];  // coefficient of u_i itself
        u[i] = rhs / (Real(1) - diag);
    }
    return u;
}

Real moments_direct(const DigitSet& d, const Real& s, long m, const Real& tol,
                    Precision p, DirectOptions opts) {
    if (m < 0)
        throw validation_error("m must be >= 0");
    PrecisionGuard guard(p);
    d.require_convergent(s);
    const long n = d.cardinality();

    // Single-m crude path (cheap x^m per word); used whenever feasible so
    // large m with small N costs only ~log_b(m) + log_b(1/tol) words.
    Real rho = Real(n) * pow(Real(d.base()), -s);
    long depth = -1;
    double words = 0, lw = 1;
    for (long l = 1; l <= 4096; ++l) {
        lw *= static_cast<double>(n);
        words += lw;
        if (words > static_cast<double>(opts.word_budget))
            break;
        if (crude_tail(rho, l) < tol) {
            depth = l;
            break;
        }
    }
    if (depth > 0 && opts.mode != DirectOptions::Mode::closure) {
        Real acc = m == 0 ? Real(1) : Real(0);
        Real binv = Real(1) / Real(d.base());
        Real bs = pow(Real(d.base()), -s);
        std::vector<Real> xs(static_cast<std::size_t>(depth) + 1, Real(0));
        std::vector<std::size_t> ai(static_cast<std::size_t>(depth) + 1, 0);
        std::vector<Real> wpow(static_cast<std::size_t>(depth) + 1, Real(1));
        for (long l = 1; l <= depth; ++l)
            wpow[static_cast<std::size_t>(l)] = wpow[static_cast<std::size_t>(l - 1)] * bs;
        long l = 0;
        Real t, xp;
        const auto& A = d.allowed();
        while (true) {
            if (l == depth || ai[static_cast<std::size_t>(l)] >= A.size()) {
                if (l == 0)
                    break;
                --l;
                continue;
            }
            std::size_t i = ai[static_cast<std::size_t>(l)]++;
            mpfr_add_si(t.raw(), xs[static_cast<std::size_t>(l)].raw(),
                        static_cast<long>(A[i]), MPFR_RNDN);
            mpfr_mul(xs[static_cast<std::size_t>(l + 1)].raw(), t.raw(), binv.raw(), MPFR_RNDN);
            ++l;
            ai[static_cast<std::size_t>(l)] = 0;
            mpfr_pow_ui(xp.raw(), xs[static_cast<std::size_t>(l)].raw(),
                        static_cast<unsigned long>(m), MPFR_RNDN);
            mpfr_mul(xp.raw(), xp.raw(), wpow[static_cast<std::size_t>(l)].raw(), MPFR_RNDN);
            mpfr_add(acc.raw(), acc.raw(), xp.raw(), MPFR_RNDN);
        }
        return acc;
    }
    if (opts.mode == DirectOptions::Mode::crude) {
        double best = crude_tail(rho, 40).to_double();
        throw budget_exceeded("direct series: tolerance infeasible at this budget", best);
    }
    auto u = moments_direct_upto(d, s, m, tol, p, opts);
    return u[static_cast<std::size_t>(m)];
}

Real egf_scaled(const DigitSet& d, const Real& s, const Real& m, const Real& tol) {
    if (m < Real(0))
        throw validation_error("m must be >= 0");
    if (!(tol > Real(0)))
        throw validation_error("tol must be positive");
    d.require_convergent(s);

    const long n = d.cardinality();
    Real kappa = d.kappa_real();
    Real bs = pow(Real(d.base()), -s);
    Real rho = Real(n) * bs;
    Real binv = Real(1) / Real(d.base());
    const auto& B = d.mirrored();

    Real total(0), prod(1), rho_pow(1);
    Real bs_pow(1);       // b^{-ls}
    Real bl(1);           // b^{-l}
    for (long l = 0;; ++l) {
        if (l > 0) {
            bl *= binv;
            bs_pow *= bs;
            rho_pow *= rho;
            // alpha_B(-kappa m b^{-l}) = sum_d e^{-d kappa m b^{-l}}
            Real e1 = exp(-(kappa * m * bl));
            Real alpha(0);
            for (int dig : B)
                alpha += dig == 0 ? Real(1) : pow_ui(e1, static_cast<unsigned long>(dig));
            prod *= alpha;
        }
        total += prod * exp(-(m * bl)) * bs_pow;
        if (l > 0 && rho_pow * rho / (Real(1) - rho) < tol)
            break;
        if (l > 100000)
            throw validation_error("egf_scaled failed to converge");
    }
    return total;
}

Real prop1_residual(const MomentSequence& seq, long m) {
    if (seq.scaling != Scaling::kappa_only)
        throw validation_error("prop1_residual expects kappa_only scaling");
    if (m < 1 || m > seq.max_m())
        throw validation_error("m outside computed sequence");
    PrecisionGuard guard(seq.precision);
    const Real& v = seq.values[static_cast<std::size_t>(m)];
    Real tol = abs(v) * Real(1e-30);
    Real e = egf_scaled(seq.digit_set, seq.s, Real(m), tol);
    return pow(Real(m), Real(1) + seq.s) * abs(v - e);
}

Real prop1_residual(const DigitSet& d, const Real& s, long m, Precision p) {
    if (m < 1)
        throw validation_error("m must be >= 1");
    auto seq = moments_recurrence(d, s, m, p, Scaling::kappa_only);
    return prop1_residual(seq, m);
}

BernoulliClosedForm bernoulli_moments(long base, const Real& s, long m_max, Precision p) {
    if (base < 2)
        throw validation_error("base must be >= 2");
    if (m_max < 0 || m_max > 2000)
        throw validation_error("m_max must be in [0, 2000]");
    if (!(s > Real(1)))
        throw validation_error("closed form requires s > 1");

    // Intrinsic cancellation estimate: the largest term is near
    // m!/(2 pi)^m while the value itself is of order m^{-s}; raise the
    // internal precision to absorb the difference.
    double lost_bits_est = 0;
    for (long k = 1; k <= m_max / 2; ++k) {
        double t = std::lgamma(static_cast<double>(m_max) + 1) -
                   std::lgamma(static_cast<double>(m_max - 2 * k + 2)) -
                   2.0 * k * std::log(2 * M_PI) + std::log(2.0);
        lost_bits_est = std::max(lost_bits_est, t / std::log(2.0));
    }
    lost_bits_est += (s.to_double() + 2) * std::log2(static_cast<double>(m_max) + 2) + 16;
    const long p_int = p.significand_bits + static_cast<long>(lost_bits_est) + 64;

    BernoulliClosedForm out;
    std::vector<CancellationDiagnostics> diags;
    std::vector<Real> values;
    {
        PrecisionGuard guard(p_int);
        auto beta = detail::bernoulli_even_scaled(m_max / 2);  // B_{2k}/(2k)!
        Real b_(base);
        Real bs = pow(b_, s);
        Real lead = bs / (bs - b_);
        Real sub = pow(b_, s + Real(1)) / ((pow(b_, s + Real(1)) - b_) * 2);
        // b^{s+2k}/(b^{s+2k} - b) per k
        std::vector<Real> bfac(beta.size());
        Real bp = bs;
        for (std::size_t k = 1; k < beta.size(); ++k) {
            bp *= b_ * b_;
            bfac[k] = bp / (bp - b_);
        }

        values.push_back(lead);  // full digit set: u_0 = b^s/(b^s - b)
        diags.push_back({Real(1), Real(1), 0.0, false});

        const double digits_at_p = static_cast<double>(p.significand_bits - 40) * 0.30103;
        for (long m = 1; m <= m_max; ++m) {
            Real acc = lead / static_cast<unsigned long>(m + 1) - sub;
            Real mx = abs(acc);
            Real ff(1);
            for (long k = 1; k <= m / 2; ++k) {
                if (k == 1)
                    ff *= static_cast<unsigned long>(m);
                else
                    ff *= static_cast<unsigned long>((m - 2 * k + 2) * (m - 2 * k + 3));
                Real term = ff * beta[static_cast<std::size_t>(k)] * bfac[static_cast<std::size_t>(k)];
                if (mpfr_cmpabs(term.raw(), mx.raw()) > 0)
                    mx = abs(term);
                acc += term;
                if (mpfr_cmpabs(acc.raw(), mx.raw()) > 0)
                    mx = abs(acc);
            }
            CancellationDiagnostics cd;
            cd.max_term_magnitude = mx;
            cd.result_magnitude = abs(acc);
            cd.lost_digits = cd.result_magnitude.is_zero()
                                 ? 0.0
                                 : (log10_r(mx) - log10_r(cd.result_magnitude)).to_double();
            if (cd.lost_digits < 0)
                cd.lost_digits = 0;
            cd.precision_exhausted = cd.lost_digits > digits_at_p;
            diags.push_back(cd);
            values.push_back(acc);
        }
    }
    PrecisionGuard round(p);
    std::vector<int> all;
    for (long a = 0; a < base; ++a)
        all.push_back(static_cast<int>(a));
    out.seq.digit_set = DigitSet::make(base, all);
    out.seq.s = Real(0) + s;
    out.seq.scaling = Scaling::none;
    out.seq.precision = p;
    out.seq.values.reserve(values.size());
    for (auto& v : values)
        out.seq.values.push_back(Real(0) + v);
    out.diagnostics = std::move(diags);
    return out;
}

} // namespace kempner
