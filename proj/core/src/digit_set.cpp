#include "kempner/digit_set.hpp"

#include "kempner/errors.hpp"

#include <algorithm>
#include <set>

namespace kempner {

DigitSet DigitSet::make(long base, std::vector<int> allowed) {
    if (base < 2)
        throw validation_error("base must be >= 2");
    if (allowed.empty())
        throw validation_error("digit set must be nonempty");
    std::sort(allowed.begin(), allowed.end());
    for (int a : allowed)
        if (a < 0 || a >= base)
            throw validation_error("digit " + std::to_string(a) +
                                   " out of range for base " + std::to_string(base));
    if (std::adjacent_find(allowed.begin(), allowed.end()) != allowed.end())
        throw validation_error("digit set has repeated digits");
    int f = allowed.back();
    if (f == 0)
        throw validation_error("max digit must be positive");

    DigitSet d;
    d.base_ = base;
    d.allowed_ = std::move(allowed);
    d.top_ = f;
    d.mirrored_.reserve(d.allowed_.size());
    for (auto it = d.allowed_.rbegin(); it != d.allowed_.rend(); ++it)
        d.mirrored_.push_back(f - *it);
    d.kappa_ = mpq_class(base - 1, f);
    d.kappa_.canonicalize();
    return d;
}

Real DigitSet::s0() const {
    return log_base(Real(cardinality()), base_);
}

DigitSet DigitSet::mirrored_set() const {
    return make(base_, mirrored_);
}

void DigitSet::require_convergent(const Real& s) const {
    Real bs = pow(Real(base_), s);
    if (!(bs > Real(cardinality())))
        throw validation_error("s <= log_b(N): series diverge for this digit set");
}

AdmissibleStream::AdmissibleStream(std::vector<int> digits_b, long base)
    : digits_(std::move(digits_b)), base_(base) {
    if (base_ < 2)
        throw validation_error("base must be >= 2");
    if (digits_.empty())
        throw validation_error("digit set must be nonempty");
    std::sort(digits_.begin(), digits_.end());
    for (int d : digits_)
        if (d < 0 || d >= base_)
            throw validation_error("digit out of range");
    pow_.push_back(1);
}

std::optional<std::uint64_t> AdmissibleStream::next() {
    if (!started_) {
        started_ = true;
        return 0;  // empty word
    }
    const int n = static_cast<int>(digits_.size());
    // Leading position must hold a nonzero digit; digits_ is sorted.
    const int lead_min = digits_[0] == 0 ? 1 : 0;
    if (lead_min >= n)
        return std::nullopt;  // B = {0}: the set is just {0}

    std::size_t i = 0;
    while (i < idx_.size()) {
        const bool leading = (i + 1 == idx_.size());
        const int lo = (leading ? lead_min : 0);
        if (idx_[i] + 1 < n) {
            value_ += static_cast<std::uint64_t>(digits_[idx_[i] + 1] - digits_[idx_[i]]) * pow_[i];
            idx_[i]++;
            return value_;
        }
        value_ -= static_cast<std::uint64_t>(digits_[idx_[i]] - digits_[lo]) * pow_[i];
        idx_[i] = lo;
        ++i;
    }
    // All words of the current length exhausted; extend by one digit.
    idx_.assign(idx_.size() + 1, 0);
    idx_.back() = lead_min;
    const std::uint64_t ub = base_ > 1 ? (UINT64_C(1) << 62) / static_cast<std::uint64_t>(base_)
                                         / static_cast<std::uint64_t>(base_)
                                       : 0;
    while (pow_.size() < idx_.size()) {
        if (pow_.back() > ub)
            throw validation_error("admissible enumeration exceeds 2^62");
        pow_.push_back(pow_.back() * static_cast<std::uint64_t>(base_));
    }
    value_ = 0;
    for (std::size_t k = 0; k < idx_.size(); ++k)
        value_ += static_cast<std::uint64_t>(digits_[idx_[k]]) * pow_[k];
    return value_;
}

std::vector<mpz_class> power_sums(const DigitSet& d, long j_max) {
    if (j_max < 0)
        throw validation_error("j_max must be >= 0");
    std::vector<mpz_class> out(static_cast<std::size_t>(j_max) + 1);
    out[0] = d.cardinality();  // 0^0 = 1
    std::vector<mpz_class> pw(d.allowed().size(), 1);
    for (long j = 1; j <= j_max; ++j) {
        mpz_class acc = 0;
        for (std::size_t i = 0; i < pw.size(); ++i) {
            pw[i] *= d.allowed()[i];
            acc += pw[i];
        }
        out[static_cast<std::size_t>(j)] = acc;
    }
    return out;
}

std::vector<std::uint64_t> enumerate_admissible(const std::vector<int>& digits_b,
                                                long base, std::uint64_t limit) {
    if (limit < 1)
        throw validation_error("limit must be >= 1");
    std::vector<std::uint64_t> out;
    AdmissibleStream st(digits_b, base);
    for (;;) {
        auto v = st.next();
        if (!v || *v >= limit)
            break;
        out.push_back(*v);
    }
    return out;
}

mpz_class tail_count_bound(const DigitSet& d, long l) {
    if (l < 0)
        throw validation_error("length must be >= 0");
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(d.cardinality()),
                  static_cast<unsigned long>(l));
    return r;
}

Real tail_mass(const DigitSet& d, const Real& sigma, long k) {
    if (k < 0)
        throw validation_error("k must be >= 0");
    // k = 0 is the plain total mass, valid for any digit set; the
    // self-similar tail identity itself needs the top digit present.
    if (k > 0 && !d.kappa_is_one())
        throw validation_error("tail mass identity requires max digit = base-1");
    d.require_convergent(sigma);
    Real bs = pow(Real(d.base()), sigma);
    Real total = bs / (bs - Real(d.cardinality()));
    return pow(Real(d.base()), -(sigma * Real(k))) * total;
}

} // namespace kempner
