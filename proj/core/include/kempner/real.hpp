#ifndef KEMPNER_REAL_HPP
#define KEMPNER_REAL_HPP

#include <mpfr.h>
#include <gmpxx.h>

#include <string>
#include <utility>

namespace kempner {

// Working precision and exponent-range contract for every computation in
// this library.  MPFR's default exponent range (|exp| up to ~2^62) already
// admits magnitudes far beyond b^{1e5}, so only the significand width is
// configurable.
struct Precision {
    long significand_bits = 192;

    static Precision bits(long n) { return Precision{n}; }
};

long working_precision();
void set_working_precision(long bits);

// Scoped working-precision override.  Every Real constructed and every
// arithmetic result produced while the guard is alive uses this precision.
class PrecisionGuard {
public:
    explicit PrecisionGuard(long bits) : saved_(working_precision()) {
        set_working_precision(bits);
    }
    explicit PrecisionGuard(Precision p) : PrecisionGuard(p.significand_bits) {}
    ~PrecisionGuard() { set_working_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    long saved_;
};

// Value-semantics wrapper around mpfr_t.  Results of arithmetic are rounded
// to the thread's working precision at the time of the operation; copies
// preserve the source's precision exactly.  Hot loops may use raw() to call
// mpfr_* directly on preallocated values.
class Real {
public:
    Real() { mpfr_init2(v_, working_precision()); mpfr_set_zero(v_, 1); }
    explicit Real(long prec_bits, bool /*tag*/) { mpfr_init2(v_, prec_bits); mpfr_set_zero(v_, 1); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, 2); mpfr_swap(v_, o.v_); }
    Real(long n) { mpfr_init2(v_, working_precision()); mpfr_set_si(v_, n, MPFR_RNDN); }
    Real(int n) : Real(static_cast<long>(n)) {}
    Real(unsigned long n) { mpfr_init2(v_, working_precision()); mpfr_set_ui(v_, n, MPFR_RNDN); }
    Real(double d) { mpfr_init2(v_, working_precision()); mpfr_set_d(v_, d, MPFR_RNDN); }
    explicit Real(const mpq_class& q) {
        mpfr_init2(v_, working_precision());
        mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
    }
    explicit Real(const mpz_class& z) {
        mpfr_init2(v_, working_precision());
        mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
    }
    explicit Real(const std::string& decimal) {
        mpfr_init2(v_, working_precision());
        mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN);
    }
    ~Real() { mpfr_clear(v_); }

    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    long precision() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    bool is_nan() const { return mpfr_nan_p(v_); }
    bool is_finite() const { return mpfr_number_p(v_); }
    int sign() const { return mpfr_sgn(v_); }
    // Exponent e with |x| in [2^(e-1), 2^e); only valid for nonzero finite x.
    long exponent() const { return static_cast<long>(mpfr_get_exp(v_)); }

    // Decimal with the given number of significant digits, scientific form.
    std::string str(int significant_digits = 17) const;

    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(unsigned long n) { mpfr_mul_ui(v_, v_, n, MPFR_RNDN); return *this; }
    Real& operator/=(unsigned long n) { mpfr_div_ui(v_, v_, n, MPFR_RNDN); return *this; }

    friend Real operator-(const Real& a) {
        Real r;
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

#define KEMPNER_REAL_BINOP(op, fn)                                     \
    friend Real operator op(const Real& a, const Real& b) {           \
        Real r;                                                        \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                               \
        return r;                                                      \
    }
    KEMPNER_REAL_BINOP(+, mpfr_add)
    KEMPNER_REAL_BINOP(-, mpfr_sub)
    KEMPNER_REAL_BINOP(*, mpfr_mul)
    KEMPNER_REAL_BINOP(/, mpfr_div)
#undef KEMPNER_REAL_BINOP

    friend Real operator*(const Real& a, long n) {
        Real r;
        mpfr_mul_si(r.v_, a.v_, n, MPFR_RNDN);
        return r;
    }
    friend Real operator*(long n, const Real& a) { return a * n; }
    friend Real operator/(const Real& a, long n) {
        Real r;
        mpfr_div_si(r.v_, a.v_, n, MPFR_RNDN);
        return r;
    }
    friend Real operator/(long n, const Real& a) {
        Real r;
        mpfr_si_div(r.v_, n, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator+(const Real& a, long n) {
        Real r;
        mpfr_add_si(r.v_, a.v_, n, MPFR_RNDN);
        return r;
    }
    friend Real operator+(long n, const Real& a) { return a + n; }
    friend Real operator-(const Real& a, long n) {
        Real r;
        mpfr_sub_si(r.v_, a.v_, n, MPFR_RNDN);
        return r;
    }
    friend Real operator-(long n, const Real& a) {
        Real r;
        mpfr_si_sub(r.v_, n, a.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_); }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_); }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_); }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_); }
    friend bool operator!=(const Real& a, const Real& b) { return !mpfr_equal_p(a.v_, b.v_); }
    friend bool operator<(const Real& a, long n) { return mpfr_cmp_si(a.v_, n) < 0; }
    friend bool operator>(const Real& a, long n) { return mpfr_cmp_si(a.v_, n) > 0; }
    friend bool operator<=(const Real& a, long n) { return mpfr_cmp_si(a.v_, n) <= 0; }
    friend bool operator>=(const Real& a, long n) { return mpfr_cmp_si(a.v_, n) >= 0; }
    friend bool operator==(const Real& a, long n) { return mpfr_cmp_si(a.v_, n) == 0; }

private:
    mpfr_t v_;
};

#define KEMPNER_REAL_FN1(name, fn)        \
    inline Real name(const Real& a) {     \
        Real r;                           \
        fn(r.raw(), a.raw(), MPFR_RNDN);  \
        return r;                         \
    }
KEMPNER_REAL_FN1(exp, mpfr_exp)
KEMPNER_REAL_FN1(log, mpfr_log)
KEMPNER_REAL_FN1(log2_r, mpfr_log2)
KEMPNER_REAL_FN1(log10_r, mpfr_log10)
KEMPNER_REAL_FN1(sqrt, mpfr_sqrt)
KEMPNER_REAL_FN1(abs, mpfr_abs)
KEMPNER_REAL_FN1(cos, mpfr_cos)
KEMPNER_REAL_FN1(sin, mpfr_sin)
#undef KEMPNER_REAL_FN1

inline Real floor(const Real& a) {
    Real r;
    mpfr_floor(r.raw(), a.raw());
    return r;
}

inline Real pow(const Real& a, const Real& b) {
    Real r;
    mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}
inline Real pow_ui(const Real& a, unsigned long n) {
    Real r;
    mpfr_pow_ui(r.raw(), a.raw(), n, MPFR_RNDN);
    return r;
}
inline Real pow_si(const Real& a, long n) {
    Real r;
    mpfr_pow_si(r.raw(), a.raw(), n, MPFR_RNDN);
    return r;
}
inline Real ui_pow(unsigned long b, const Real& e) {
    Real r;
    mpfr_ui_pow(r.raw(), b, e.raw(), MPFR_RNDN);
    return r;
}
inline Real atan2(const Real& y, const Real& x) {
    Real r;
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real hypot(const Real& x, const Real& y) {
    Real r;
    mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}
inline void sin_cos(Real& s, Real& c, const Real& a) {
    mpfr_sin_cos(s.raw(), c.raw(), a.raw(), MPFR_RNDN);
}
inline Real const_pi() {
    Real r;
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}
inline Real min(const Real& a, const Real& b) { return a < b ? a : b; }
inline Real max(const Real& a, const Real& b) { return a > b ? a : b; }

// log(x) in radix b; b >= 2.
inline Real log_base(const Real& x, long b) {
    Real lb(b);
    return log(x) / log(lb);
}

} // namespace kempner

#endif
