#ifndef KEMPNER_DIRICHLET_HPP
#define KEMPNER_DIRICHLET_HPP

#include "kempner/complex.hpp"
#include "kempner/digit_set.hpp"

#include <map>
#include <string>
#include <vector>

namespace kempner {

// Result of a certified evaluation: value plus a rigorous bound on the
// truncated tail (stated-precision error of ingested constants included).
struct CertifiedValue {
    Complex value;
    Real tail_bound;
    long terms_used = 0;
};

// High-precision decimal strings for S_0 = sum_{n>0, n B-admissible} 1/n,
// keyed by (base, digit set).  Values come from an external computation;
// the stated error of an entry is half a unit in its last printed digit.
class KempnerConstantsStore {
public:
    void insert(long base, std::vector<int> digits, const std::string& decimal);
    bool contains(long base, const std::vector<int>& digits) const;
    // Parsed at working precision; throws missing_constant if absent.
    Real value(long base, const std::vector<int>& digits) const;
    Real stated_error(long base, const std::vector<int>& digits) const;
    std::size_t size() const { return entries_.size(); }

private:
    std::map<std::pair<long, std::vector<int>>, std::string> entries_;
};

// Parse a constants file: UTF-8 lines, '#' comments,
//   base=<int> digits=<comma list> value=<decimal string>
// Digits refer to the B-set of the harmonic sum.  Malformed or out-of-range
// lines raise parse_error with the 1-based line number.
KempnerConstantsStore load_constants(const std::string& path);

enum class ZsumMethod { enumerate, telescope, automatic };

struct DirichletRequest {
    DigitSet digit_set;          // supplies B, kappa, b
    Complex w;                   // Re w > s0
    Real tol;
    ZsumMethod method = ZsumMethod::automatic;
    long word_budget = 10'000'000;
};

// Z(w) = sum_{n B-admissible} (kappa n + 1)^{-w} by level-ordered
// enumeration with the per-digit-length tail bound
//   sum_{l>L} N^l (kappa b^{l-1})^{-Re w}.
// Throws infeasible_tolerance (with the best achievable bound) when no
// depth within budget certifies tol.
CertifiedValue zsum_enumerate(const DirichletRequest& req);

// Z at several points w_k = sigma - 2 pi i k / log b, k = 0..k_max, from a
// single enumeration pass (one log per term, rotated incrementally).
std::vector<CertifiedValue> zsum_vertical_line(const DigitSet& d, const Real& sigma,
                                               long k_max, const Real& tol,
                                               long word_budget = 10'000'000);

// w = 1 only:  Z(1) = 1 + S_0/kappa - sum_{n>0} 1/(kappa n (kappa n + 1)),
// with S_0 ingested from the store and the subtracted series enumerated
// under its quadratically-decaying tail bound (always feasible).
CertifiedValue zsum_telescope(const DigitSet& d, const KempnerConstantsStore& store,
                              const Real& tol);

// Dispatch on req.method; automatic picks the telescope exactly when w = 1
// and the store holds a constant for (b, B), otherwise enumerates (never a
// silent mix of the two routes).
CertifiedValue zsum(const DirichletRequest& req,
                    const KempnerConstantsStore* store = nullptr);

// Best certified tail bound achievable for Re w = sigma within the budget;
// used to pick a method before committing to a long enumeration.
double zsum_best_tail(const DigitSet& d, const Real& sigma, long word_budget);

} // namespace kempner

#endif
