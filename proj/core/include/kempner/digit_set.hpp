#ifndef KEMPNER_DIGIT_SET_HPP
#define KEMPNER_DIGIT_SET_HPP

#include "kempner/real.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace kempner {

// A radix b >= 2 together with a nonempty allowed digit set A, max A > 0.
// Carries the derived combinatorial data used everywhere else: cardinality
// N, top digit f, mirrored set B = f - A (always contains 0, sorted), the
// exact rescaling ratio kappa = (b-1)/f, and the abscissa s0 = log_b(N).
class DigitSet {
public:
    DigitSet() = default;  // empty; usable only after assignment from make()
    static DigitSet make(long base, std::vector<int> allowed);

    long base() const { return base_; }
    const std::vector<int>& allowed() const { return allowed_; }
    long cardinality() const { return static_cast<long>(allowed_.size()); }
    int top() const { return top_; }
    const std::vector<int>& mirrored() const { return mirrored_; }
    const mpq_class& kappa() const { return kappa_; }
    bool kappa_is_one() const { return top_ == base_ - 1; }

    Real s0() const;          // log_b(N) at working precision
    Real kappa_real() const { return Real(kappa_); }

    // Digit set (base, B); valid only when max B > 0, i.e. N >= 2.
    DigitSet mirrored_set() const;

    // Throws validation_error unless b^s > N (series converge iff s > s0).
    void require_convergent(const Real& s) const;

private:
    long base_ = 0;
    std::vector<int> allowed_;
    int top_ = 0;
    std::vector<int> mirrored_;
    mpq_class kappa_;
};

// Single-consumer generator of the B-admissible integers in increasing
// order: 0 first (empty word), then every n whose radix-b digits all lie in
// B, without leading zeros.  Returns nullopt when the set is exhausted
// (B = {0} only); throws validation_error once values would pass 2^62 (an
// enumeration budget is always reached long before that in practice).
class AdmissibleStream {
public:
    AdmissibleStream(std::vector<int> digits_b, long base);

    std::optional<std::uint64_t> next();
    // Digit length of the value most recently returned (0 for the value 0).
    int current_length() const { return static_cast<int>(idx_.size()); }

private:
    std::vector<int> digits_;  // sorted, digits_[0] == 0 when present
    long base_ = 0;
    bool started_ = false;
    std::vector<int> idx_;     // positions into digits_, least significant first
    std::vector<std::uint64_t> pow_;
    std::uint64_t value_ = 0;
};

// [sum_{a in A} a^j] for j = 0..j_max, exact, with the 0^0 = 1 convention
// (entry 0 equals N).
std::vector<mpz_class> power_sums(const DigitSet& d, long j_max);

// Ascending list of B-admissible integers < limit.
std::vector<std::uint64_t> enumerate_admissible(const std::vector<int>& digits_b,
                                                long base, std::uint64_t limit);

// N^l, an upper bound for the number of B-admissible integers of digit
// length exactly l (crude: ignores the no-leading-zero restriction).
mpz_class tail_count_bound(const DigitSet& d, long l);

// mu_sigma([1 - b^-k, 1)) = b^{-k sigma} * b^sigma / (b^sigma - N).
// Requires f = b-1 (the self-similar tail identity needs the top digit) and
// sigma > s0.
Real tail_mass(const DigitSet& d, const Real& sigma, long k);

} // namespace kempner

#endif
