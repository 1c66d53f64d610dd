#ifndef KEMPNER_MOMENTS_HPP
#define KEMPNER_MOMENTS_HPP

#include "kempner/digit_set.hpp"
#include "kempner/real.hpp"

#include <vector>

namespace kempner {

// How the stored sequence values relate to the raw moments u_m(s):
//   none              u_m
//   kappa_only        kappa^m u_m
//   kappa_linear      kappa^m (m+1) u_m
//   kappa_pochhammer  kappa^m ((s+1)_m / m!) u_m
//   kappa_power       kappa^m m^s u_m
enum class Scaling { none, kappa_only, kappa_linear, kappa_pochhammer, kappa_power };

const char* scaling_name(Scaling s);

struct MomentSequence {
    DigitSet digit_set;
    Real s;
    Scaling scaling = Scaling::none;
    std::vector<Real> values;  // index m = 0..M
    Precision precision;

    long max_m() const { return static_cast<long>(values.size()) - 1; }
};

// Scaled moments v_0..v_M by the binomial recurrence, evaluated in
// factorial-scaled form so every stored intermediate stays well inside the
// wide exponent range.  Requires s > log_b(N).
MomentSequence moments_recurrence(const DigitSet& d, const Real& s, long m_max,
                                  Precision p, Scaling scaling);

struct DirectOptions {
    long word_budget = 10'000'000;
    enum class Mode { automatic, crude, closure } mode = Mode::automatic;
};

// Raw moments u_0..u_{m_max} straight from the defining series: enumerate
// the digit words of A^l, l <= L, with a Horner running value.
//
// Crude mode returns the partial sum; feasible only when the geometric
// level tail (N b^{-s})^{L+1}/(1 - N b^{-s}) drops below tol within the
// word budget, else budget_exceeded.
//
// Closure mode augments the depth-L partial sum with the exact
// self-similarity identity for the dropped tail.  Splitting each deeper
// word w = u.v at depth L gives, with P_L(i) = sum_{u in A^L} x(u)^i b^{-Ls}
// and binomial expansion of (x(u) + b^{-L} x(v))^m,
//
//   u_m = 0^m + partial_L(m)
//         + sum_{j=0..m} C(m,j) b^{-Lj} P_L(m-j) (u_j - [j=0]),
//
// a triangular system solved upward in m (the u_m coefficient on the right
// is b^{-Lm} P_L(0), far below 1).  The identity is exact, so the result
// carries enumeration data plus rounding only; tolerances far beyond any
// reachable crude depth become available.  Automatic mode tries crude
// first.
std::vector<Real> moments_direct_upto(const DigitSet& d, const Real& s, long m_max,
                                      const Real& tol, Precision p,
                                      DirectOptions opts = {});

Real moments_direct(const DigitSet& d, const Real& s, long m, const Real& tol,
                    Precision p, DirectOptions opts = {});

// e^{-m} E(kappa m): the exponentially rescaled moment generating function
// in product form,
//   sum_{l>=0} (prod_{1<=k<=l} alpha_B(-kappa m b^{-k})) e^{-m b^{-l}} b^{-ls},
// alpha_B(t) = sum_{d in B} e^{dt}, truncated once the geometric level
// bound certifies error < tol.  m real >= 0.
Real egf_scaled(const DigitSet& d, const Real& s, const Real& m, const Real& tol);

// m^{1+s} |kappa^m u_m - e^{-m} E(kappa m)|, the scaled difference between
// the exact moment and its exponential-kernel approximation; bounded in m.
// The overload taking a sequence expects kappa_only scaling.
Real prop1_residual(const MomentSequence& kappa_scaled_seq, long m);
Real prop1_residual(const DigitSet& d, const Real& s, long m, Precision p);

struct CancellationDiagnostics {
    Real max_term_magnitude;   // largest |term| or |running sum| seen
    Real result_magnitude;
    double lost_digits = 0;    // log10(max / |result|), >= 0
    bool precision_exhausted = false;  // requested P alone could not deliver
};

struct BernoulliClosedForm {
    MomentSequence seq;                          // scaling = none
    std::vector<CancellationDiagnostics> diagnostics;  // per m
};

// Closed form of u_m(s) for the full digit set A = {0..b-1} in terms of
// Bernoulli numbers.  The alternating terms grow near m!/(2 pi)^m, so the
// evaluation raises its internal precision to absorb the cancellation and
// reports per-m diagnostics; precision_exhausted marks indices where the
// requested precision alone would have produced noise.  s > 1; m_max
// capped at 2000.
BernoulliClosedForm bernoulli_moments(long base, const Real& s, long m_max, Precision p);

} // namespace kempner

#endif
