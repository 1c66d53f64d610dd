#include "kempner/dirichlet.hpp"

#include "kempner/errors.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace kempner {

namespace {

std::pair<long, std::vector<int>> store_key(long base, std::vector<int> digits) {
    std::sort(digits.begin(), digits.end());
    return {base, std::move(digits)};
}

int count_significant_digits(const std::string& decimal) {
    int sig = 0;
    bool seen_nonzero = false;
    for (char c : decimal) {
        if (c == 'e' || c == 'E')
            break;
        if (!std::isdigit(static_cast<unsigned char>(c)))
            continue;
        if (c != '0')
            seen_nonzero = true;
        if (seen_nonzero)
            ++sig;
    }
    return sig > 0 ? sig : 1;
}

} // namespace

void KempnerConstantsStore::insert(long base, std::vector<int> digits,
                                   const std::string& decimal) {
    if (base < 2)
        throw validation_error("constants store: base must be >= 2");
    if (digits.empty())
        throw validation_error("constants store: empty digit list");
    for (int d : digits)
        if (d < 0 || d >= base)
            throw validation_error("constants store: digit out of range for base");
    entries_[store_key(base, std::move(digits))] = decimal;
}

bool KempnerConstantsStore::contains(long base, const std::vector<int>& digits) const {
    return entries_.count(store_key(base, digits)) != 0;
}

Real KempnerConstantsStore::value(long base, const std::vector<int>& digits) const {
    auto it = entries_.find(store_key(base, digits));
    if (it == entries_.end())
        throw missing_constant("no S_0 constant for this (base, digit set)");
    return Real(it->second);
}

Real KempnerConstantsStore::stated_error(long base, const std::vector<int>& digits) const {
    auto it = entries_.find(store_key(base, digits));
    if (it == entries_.end())
        throw missing_constant("no S_0 constant for this (base, digit set)");
    Real v(it->second);
    int sig = count_significant_digits(it->second);
    // half an ulp of the last printed significant digit
    long mag = v.is_zero() ? 0 : static_cast<long>((log10_r(abs(v))).to_double() + 1000.0) - 1000;
    return Real("0.5") * pow_si(Real(10), mag - sig + 1);
}

KempnerConstantsStore load_constants(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw validation_error("cannot open constants file: " + path);
    KempnerConstantsStore store;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ss(line);
        std::string tok;
        long base = -1;
        std::vector<int> digits;
        std::string value;
        bool any = false;
        while (ss >> tok) {
            any = true;
            auto eq = tok.find('=');
            if (eq == std::string::npos)
                throw parse_error("expected key=value, got '" + tok + "'", lineno);
            std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            try {
                if (key == "base") {
                    base = std::stol(val);
                } else if (key == "digits") {
                    std::istringstream ds(val);
                    std::string piece;
                    while (std::getline(ds, piece, ','))
                        digits.push_back(std::stoi(piece));
                } else if (key == "value") {
                    value = val;
                } else {
                    throw parse_error("unknown key '" + key + "'", lineno);
                }
            } catch (const std::invalid_argument&) {
                throw parse_error("malformed number in '" + tok + "'", lineno);
            } catch (const std::out_of_range&) {
                throw parse_error("number out of range in '" + tok + "'", lineno);
            }
        }
        if (!any)
            continue;
        if (base < 2)
            throw parse_error("missing or bad base", lineno);
        if (digits.empty())
            throw parse_error("missing digits", lineno);
        for (int d : digits)
            if (d < 0 || d >= base)
                throw parse_error("digit " + std::to_string(d) + " out of range for base " +
                                      std::to_string(base),
                                  lineno);
        if (value.empty())
            throw parse_error("missing value", lineno);
        {
            Real probe(value);
            if (!probe.is_finite())
                throw parse_error("value does not parse as a decimal", lineno);
        }
        store.insert(base, std::move(digits), value);
    }
    return store;
}

namespace {

// Tail of sum_{n in levels > L} (kappa n + 1)^{-sigma}: count <= N^l per
// level, smallest member >= b^{l-1}, so
//   sum_{l>L} N^l (kappa b^{l-1})^{-sigma}
//     = kappa^{-sigma} b^sigma rho^{L+1} / (1 - rho),  rho = N b^{-sigma}.
Real level_tail(const DigitSet& d, const Real& sigma, long level) {
    Real rho = Real(d.cardinality()) * pow(Real(d.base()), -sigma);
    Real kinv = pow(Real(1) / d.kappa_real(), sigma);
    return kinv * pow(Real(d.base()), sigma) *
           pow_ui(rho, static_cast<unsigned long>(level + 1)) / (Real(1) - rho);
}

// Depth needed for the tail to drop below tol, or -1 if the word budget is
// exhausted first; words counts positive admissible integers per level.
long pick_depth(const DigitSet& d, const Real& sigma, const Real& tol, long budget,
                double* best_out) {
    const double n = static_cast<double>(d.cardinality());
    double words = 0, level_words = 1;  // (N-1) N^{l-1} positive values at level l
    double best = 1e308;
    for (long l = 1; l <= 400; ++l) {
        level_words = (l == 1) ? (n - 1) : level_words * n;
        words += level_words;
        if (words > static_cast<double>(budget)) {
            if (best_out)
                *best_out = best;
            return -1;
        }
        Real t = level_tail(d, sigma, l);
        best = std::min(best, t.to_double());
        if (t < tol)
            return l;
    }
    if (best_out)
        *best_out = best;
    return -1;
}

} // namespace

double zsum_best_tail(const DigitSet& d, const Real& sigma, long word_budget) {
    if (d.cardinality() == 1)
        return 0.0;  // Z is exactly 1
    double best = 1e308;
    pick_depth(d, sigma, Real(0), word_budget, &best);
    return best;
}

CertifiedValue zsum_enumerate(const DirichletRequest& req) {
    const DigitSet& d = req.digit_set;
    d.require_convergent(req.w.re);
    if (!(req.tol > Real(0)))
        throw validation_error("tol must be positive");

    if (d.cardinality() == 1)
        return {Complex(1L), Real(0), 1};  // admissible set is {0}

    double best = 1e308;
    long depth = pick_depth(d, req.w.re, req.tol, req.word_budget, &best);
    if (depth < 0)
        throw infeasible_tolerance(
            "zsum_enumerate: tolerance unreachable within word budget; best tail " +
                std::to_string(best),
            best);

    const bool complex_w = !req.w.im.is_zero();
    Real kappa = d.kappa_real();
    Complex acc(1L);  // n = 0 term
    Complex block{Real(0), Real(0)};
    long terms = 1;
    AdmissibleStream st(d.mirrored(), d.base());
    st.next();  // consume 0
    int cur_len = 1;
    Real v, lv, mag, sn, cs;
    for (;;) {
        auto nv = st.next();
        if (!nv)
            break;
        if (st.current_length() != cur_len) {
            acc += block;  // close the digit-length block (deterministic order)
            block = Complex{Real(0), Real(0)};
            cur_len = st.current_length();
            if (cur_len > depth)
                break;
        }
        mpfr_set_ui(v.raw(), static_cast<unsigned long>(*nv), MPFR_RNDN);
        v *= kappa;
        v += Real(1);
        if (complex_w) {
            lv = log(v);
            mag = exp(-(req.w.re * lv));
            sin_cos(sn, cs, req.w.im * lv);
            // (kappa n + 1)^{-w} = mag * (cos(Im w * L) - i sin(Im w * L))
            block.re += mag * cs;
            block.im += mag * (-sn);
        } else {
            block.re += pow(v, -req.w.re);
        }
        ++terms;
    }
    if (cur_len <= depth)
        acc += block;  // stream exhausted inside budget (finite set)
    return {acc, level_tail(d, req.w.re, depth), terms};
}

std::vector<CertifiedValue> zsum_vertical_line(const DigitSet& d, const Real& sigma,
                                               long k_max, const Real& tol,
                                               long word_budget) {
    if (k_max < 0)
        throw validation_error("k_max must be >= 0");
    d.require_convergent(sigma);
    std::vector<CertifiedValue> out(static_cast<std::size_t>(k_max) + 1);
    if (d.cardinality() == 1) {
        for (auto& cv : out)
            cv = {Complex(1L), Real(0), 1};
        return out;
    }
    double best = 1e308;
    long depth = pick_depth(d, sigma, tol, word_budget, &best);
    if (depth < 0)
        throw infeasible_tolerance("zsum_vertical_line: tolerance unreachable", best);

    Real tau = (const_pi() * 2) / log(Real(d.base()));  // 2 pi / log b
    Real kappa = d.kappa_real();
    std::vector<Complex> acc(out.size(), Complex(0L)), block(out.size(), Complex(0L));
    acc[0] = Complex(1L);
    for (std::size_t k = 1; k < out.size(); ++k)
        acc[k] = Complex(1L);  // n = 0 contributes 1 at every k
    long terms = 1;
    AdmissibleStream st(d.mirrored(), d.base());
    st.next();
    int cur_len = 1;
    Real v, lv, mag, sn, cs, tr, ti;
    for (;;) {
        auto nv = st.next();
        if (!nv)
            break;
        if (st.current_length() != cur_len) {
            for (std::size_t k = 0; k < out.size(); ++k) {
                acc[k] += block[k];
                block[k] = Complex(0L);
            }
            cur_len = st.current_length();
            if (cur_len > depth)
                break;
        }
        mpfr_set_ui(v.raw(), static_cast<unsigned long>(*nv), MPFR_RNDN);
        v *= kappa;
        v += Real(1);
        lv = log(v);
        mag = exp(-(sigma * lv));
        block[0].re += mag;
        if (k_max > 0) {
            sin_cos(sn, cs, tau * lv);
            // rotate incrementally: e^{i k tau L} from e^{i (k-1) tau L}
            Real rr = cs, ri = sn;
            for (long k = 1; k <= k_max; ++k) {
                // Z(sigma - i tau k) accumulates mag * e^{+i k tau L}
                block[static_cast<std::size_t>(k)].re += mag * rr;
                block[static_cast<std::size_t>(k)].im += mag * ri;
                if (k < k_max) {
                    mpfr_mul(tr.raw(), rr.raw(), cs.raw(), MPFR_RNDN);
                    mpfr_mul(ti.raw(), ri.raw(), sn.raw(), MPFR_RNDN);
                    mpfr_sub(tr.raw(), tr.raw(), ti.raw(), MPFR_RNDN);
                    mpfr_mul(ti.raw(), rr.raw(), sn.raw(), MPFR_RNDN);
                    mpfr_fma(ti.raw(), ri.raw(), cs.raw(), ti.raw(), MPFR_RNDN);
                    rr = tr;
                    ri = ti;
                }
            }
        }
        ++terms;
    }
    if (cur_len <= depth)
        for (std::size_t k = 0; k < out.size(); ++k)
            acc[k] += block[k];
    Real tail = level_tail(d, sigma, depth);
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = {acc[k], tail, terms};
    return out;
}

CertifiedValue zsum_telescope(const DigitSet& d, const KempnerConstantsStore& store,
                              const Real& tol) {
    d.require_convergent(Real(1));
    if (!(tol > Real(0)))
        throw validation_error("tol must be positive");
    if (d.cardinality() == 1)
        return {Complex(1L), Real(0), 1};

    Real kappa = d.kappa_real();
    Real s0_val = store.value(d.base(), d.mirrored());
    Real s0_err = store.stated_error(d.base(), d.mirrored());

    // Remainder sum_{n>0} 1/(kappa n (kappa n + 1)); per-level tail
    //   sum_{l>L} N^l (kappa b^{l-1})^{-2}  (quadratic decay, always summable).
    const long b = d.base();
    const long n_count = d.cardinality();
    Real rho2 = Real(n_count) / (Real(b) * Real(b));
    Real pref = pow(Real(b) / kappa, Real(2));
    auto tail2 = [&](long level) {
        return pref * pow_ui(rho2, static_cast<unsigned long>(level + 1)) / (Real(1) - rho2);
    };
    Real half_tol = tol / 2;
    long depth = 1;
    {
        double words = static_cast<double>(n_count - 1), level_words = words;
        while (depth < 400 && !(tail2(depth) < half_tol)) {
            ++depth;
            level_words *= static_cast<double>(n_count);
            words += level_words;
            if (words > 1e7)
                throw infeasible_tolerance(
                    "zsum_telescope: remainder series needs too many words at this tolerance",
                    tail2(depth).to_double());
        }
    }

    Real acc(0), block(0);
    long terms = 0;
    AdmissibleStream st(d.mirrored(), b);
    st.next();
    int cur_len = 1;
    Real v, t;
    for (;;) {
        auto nv = st.next();
        if (!nv)
            break;
        if (st.current_length() != cur_len) {
            acc += block;
            mpfr_set_zero(block.raw(), 1);
            cur_len = st.current_length();
            if (cur_len > depth)
                break;
        }
        mpfr_set_ui(v.raw(), static_cast<unsigned long>(*nv), MPFR_RNDN);
        v *= kappa;                       // kappa n
        t = v * (v + Real(1));
        mpfr_ui_div(t.raw(), 1, t.raw(), MPFR_RNDN);
        block += t;
        ++terms;
    }
    if (cur_len <= depth)
        acc += block;

    Complex z(Real(1) + s0_val / kappa - acc);
    return {z, tail2(depth) + s0_err / kappa, terms};
}

CertifiedValue zsum(const DirichletRequest& req, const KempnerConstantsStore* store) {
    const bool at_one = req.w.im.is_zero() && req.w.re == Real(1);
    switch (req.method) {
        case ZsumMethod::enumerate:
            return zsum_enumerate(req);
        case ZsumMethod::telescope:
            if (!at_one)
                throw validation_error("telescope method applies to w = 1 only");
            if (!store)
                throw missing_constant("telescope method needs a constants store");
            return zsum_telescope(req.digit_set, *store, req.tol);
        case ZsumMethod::automatic:
            if (at_one && store &&
                store->contains(req.digit_set.base(), req.digit_set.mirrored()))
                return zsum_telescope(req.digit_set, *store, req.tol);
            return zsum_enumerate(req);
    }
    throw validation_error("unknown zsum method");
}

} // namespace kempner
