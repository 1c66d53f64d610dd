#ifndef KEMPNER_COMPLEX_HPP
#define KEMPNER_COMPLEX_HPP

#include "kempner/real.hpp"

namespace kempner {

// Rectangular complex value at working precision.  Only the operations the
// vertical-line Gamma/Dirichlet evaluations need; principal branches
// throughout (all logs taken at arguments with positive real part).
struct Complex {
    Real re;
    Real im;

    Complex() = default;
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(long r) : re(r), im(0L) {}
    explicit Complex(const Real& r) : re(r), im(0L) {}

    bool is_real() const { return im.is_zero(); }

    friend Complex operator+(const Complex& a, const Complex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend Complex operator-(const Complex& a, const Complex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Complex& a, const Real& s) {
        return {a.re * s, a.im * s};
    }
    friend Complex operator*(const Real& s, const Complex& a) { return a * s; }
    friend Complex operator/(const Complex& a, const Real& s) {
        return {a.re / s, a.im / s};
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o) { return *this = *this * o; }
};

inline Complex conj(const Complex& z) { return {z.re, -z.im}; }

inline Real abs(const Complex& z) { return hypot(z.re, z.im); }

inline Complex exp(const Complex& z) {
    Real m = exp(z.re), s, c;
    sin_cos(s, c, z.im);
    return {m * c, m * s};
}

// Principal log; caller guarantees z != 0.
inline Complex log(const Complex& z) {
    return {log(abs(z)), atan2(z.im, z.re)};
}

// x^w = exp(w log x) for real x > 0; no branch ambiguity.
inline Complex pow(const Real& x, const Complex& w) {
    Real lx = log(x);
    return exp(Complex{w.re * lx, w.im * lx});
}

} // namespace kempner

#endif
