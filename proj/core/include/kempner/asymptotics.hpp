#ifndef KEMPNER_ASYMPTOTICS_HPP
#define KEMPNER_ASYMPTOTICS_HPP

#include "kempner/dirichlet.hpp"
#include "kempner/moments.hpp"

#include <optional>

namespace kempner {

// Evaluator of the limiting profile
//   F_s(m) = m^s sum_{j in Z} b^{js} sum_{n B-admissible} e^{-(kappa n+1) b^j m},
// a smooth 1-periodic function of log_b(m).  Truncations in j and in n are
// certified against tol; widen_j extends the j-window past the certified
// cut (used to test truncation stability).
struct ProfileEvaluator {
    DigitSet digit_set;
    Real s;
    Real tol;
};

Real profile_value(const ProfileEvaluator& ev, const Real& m, int widen_j = 0);

// Fourier side: F_s(m) = sum_k c_k e^{2 pi i k log_b(m)} with
//   c_k = Gamma(s - 2 pi i k / log b) Z(s - 2 pi i k / log b) / log b.
struct FourierSpectrum {
    DigitSet digit_set;
    Real s;
    long k_max = 0;
    std::vector<Complex> coefficients;  // index k = 0..k_max; c_{-k} = conj(c_k)
};

// One coefficient; k = 0 at s = 1 may be telescoped through the constants
// store, everything else enumerates Z on the vertical line.
Complex fourier_coefficient(const DigitSet& d, const Real& s, long k, const Real& tol,
                            const KempnerConstantsStore* store = nullptr);

FourierSpectrum build_spectrum(const DigitSet& d, const Real& s, long k_max,
                               const Real& tol,
                               const KempnerConstantsStore* store = nullptr);

// Truncated Fourier synthesis at m; real by conjugate pairing.
Real profile_from_fourier(const FourierSpectrum& spec, const Real& m);

enum class Weighting { left, right };

// Log-weighted average of the stored sequence over one multiplicative
// period: left uses weights log_b(m/(m-1)) on (lo, b lo], right uses
// log_b(1+1/m) on [lo, b lo).  Weights are normalized by their exact sum,
// so windows not aligned to powers of b stay barycentric.
struct AverageEstimate {
    long period_index = -1;  // p when aligned to (b^p, b^{p+1}], else -1
    std::uint64_t m_first = 0, m_last = 0;
    Weighting weighting = Weighting::left;
    Real value;
    std::optional<Real> extrapolated;
};

AverageEstimate average_estimate(const MomentSequence& seq, long p, Weighting w);
AverageEstimate average_window(const MomentSequence& seq, std::uint64_t m_lo,
                               std::uint64_t m_hi, Weighting w);

// Limit estimate under the error-shrinks-by-1/b-per-period model.
Real extrapolate(const Real& a_prev, const Real& a_last, long base);

// Multiplier turning F_s(m) into the quantity the given scaling stores:
// power -> 1, linear -> (m+1)/m^s, pochhammer -> ((s+1)_m/m!)/m^s (exact
// per m), kappa_only -> 1/m^s, none -> kappa^{-m}/m^s.
Real profile_scale_correction(const DigitSet& d, const Real& s, Scaling scaling, long m);

} // namespace kempner

#endif
