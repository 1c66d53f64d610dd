#include "doctest.h"
#include "kempner/digit_set.hpp"
#include "kempner/errors.hpp"

#include <random>

using namespace kempner;

namespace {

// Test oracle: keep an integer iff every radix-b digit lies in B.
bool digits_ok(std::uint64_t n, long b, const std::vector<int>& B) {
    if (n == 0)
        return true;
    while (n) {
        int d = static_cast<int>(n % static_cast<std::uint64_t>(b));
        if (std::find(B.begin(), B.end(), d) == B.end())
            return false;
        n /= static_cast<std::uint64_t>(b);
    }
    return true;
}

} // namespace

TEST_CASE("make_digit_set derives complement, kappa, cardinality") {
    auto d1 = DigitSet::make(3, {0, 2});
    CHECK(d1.mirrored() == std::vector<int>{0, 2});
    CHECK(d1.kappa() == 1);
    CHECK(d1.cardinality() == 2);

    auto d2 = DigitSet::make(3, {1, 2});
    CHECK(d2.mirrored() == std::vector<int>{0, 1});
    CHECK(d2.kappa() == 1);

    auto d3 = DigitSet::make(8, {0, 1, 3, 5});
    CHECK(d3.mirrored() == std::vector<int>{0, 2, 4, 5});
    CHECK(d3.kappa() == mpq_class(7, 5));

    CHECK(DigitSet::make(10, {0, 1, 2, 3, 4, 5, 6, 7, 8}).top() == 8);
}

TEST_CASE("make_digit_set validation") {
    CHECK_THROWS_AS(DigitSet::make(3, {}), validation_error);
    CHECK_THROWS_AS(DigitSet::make(3, {0}), validation_error);   // max digit 0
    CHECK_THROWS_AS(DigitSet::make(3, {0, 3}), validation_error);
    CHECK_THROWS_AS(DigitSet::make(3, {-1, 2}), validation_error);
    CHECK_THROWS_AS(DigitSet::make(1, {0}), validation_error);
    CHECK_THROWS_AS(DigitSet::make(3, {2, 2}), validation_error);
}

TEST_CASE("mirroring is an involution when 0 is allowed") {
    // B = (max A) - A determines max B = max A only when min A = 0; without
    // the digit 0 the double mirror is A shifted down by min A, not A
    // (e.g. {1,2} -> {0,1} -> {0,1}), so the involution needs 0 in A.
    std::mt19937 rng(7);
    int tested = 0;
    for (int iter = 0; iter < 400; ++iter) {
        long b = 2 + static_cast<long>(rng() % 11);
        std::vector<int> a{0};
        for (int d = 1; d < b; ++d)
            if (rng() % 2)
                a.push_back(d);
        if (a.size() < 2)
            continue;
        auto d = DigitSet::make(b, a);
        auto dd = d.mirrored_set();
        CHECK(dd.mirrored() == d.allowed());
        ++tested;
    }
    CHECK(tested > 100);
    // shifted double mirror without 0
    auto d12 = DigitSet::make(3, {1, 2});
    CHECK(d12.mirrored_set().mirrored() == std::vector<int>{0, 1});
}

TEST_CASE("power_sums exact values and conventions") {
    auto d = DigitSet::make(10, {0, 1, 2, 3, 4, 5, 6, 7, 8});
    auto p = power_sums(d, 2);
    CHECK(p[0] == 9);   // 0^0 = 1 convention: entry 0 is N
    CHECK(p[1] == 36);
    auto d2 = DigitSet::make(8, {0, 1, 3, 5});
    auto p2 = power_sums(d2, 2);
    CHECK(p2[0] == 4);
    CHECK(p2[2] == 35);  // 0 + 1 + 9 + 25
}

TEST_CASE("enumerate_admissible matches the per-integer digit filter") {
    struct Case {
        long b;
        std::vector<int> B;
    };
    for (const auto& c : {Case{3, {0, 2}}, Case{3, {0, 1}}, Case{2, {0, 1}},
                          Case{8, {0, 2, 4, 5}}, Case{10, {0, 7}}}) {
        auto got = enumerate_admissible(c.B, c.b, 100000);
        std::vector<std::uint64_t> want;
        for (std::uint64_t n = 0; n < 100000; ++n)
            if (digits_ok(n, c.b, c.B))
                want.push_back(n);
        CHECK(got == want);
    }
}

TEST_CASE("enumerate_admissible spot values") {
    CHECK(enumerate_admissible({0}, 7, 1000) == std::vector<std::uint64_t>{0});
    CHECK(enumerate_admissible({0, 2}, 3, 9) == std::vector<std::uint64_t>{0, 2, 6, 8});
    CHECK(enumerate_admissible({0, 1}, 3, 13) ==
          std::vector<std::uint64_t>{0, 1, 3, 4, 9, 10, 12});
}

TEST_CASE("admissible stream is increasing from 0 and single-consumer exhausts {0}") {
    AdmissibleStream st({0}, 5);
    CHECK(st.next() == 0u);
    CHECK(!st.next().has_value());

    AdmissibleStream st2({0, 2, 4, 5}, 8);
    std::uint64_t prev = 0;
    CHECK(st2.next() == 0u);
    for (int i = 0; i < 5000; ++i) {
        auto v = st2.next();
        REQUIRE(v.has_value());
        CHECK(*v > prev);
        CHECK(digits_ok(*v, 8, {0, 2, 4, 5}));
        prev = *v;
    }
}

TEST_CASE("tail_count_bound") {
    CHECK(tail_count_bound(DigitSet::make(4, {3}), 9) == 1);
    CHECK(tail_count_bound(DigitSet::make(3, {0, 2}), 3) == 8);
    CHECK(tail_count_bound(DigitSet::make(8, {0, 1, 3, 5}), 2) == 16);
}

TEST_CASE("tail_mass closed form") {
    PrecisionGuard g(192);
    auto d = DigitSet::make(10, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    // full digit set: total mass b^s/(b^s - b)
    CHECK(abs(tail_mass(d, Real(2), 0) - Real(100) / Real(90)) < Real(1e-50));

    auto no9 = DigitSet::make(10, {0, 1, 2, 3, 4, 5, 6, 7, 8});
    CHECK(abs(tail_mass(no9, Real(1), 0) - Real(10)) < Real(1e-50));

    auto d2 = DigitSet::make(2, {0, 1});
    // k=1, sigma=2: (1/4) * 4/(4-2) = 1/2
    CHECK(abs(tail_mass(d2, Real(2), 1) - Real(1) / Real(2)) < Real(1e-50));

    // k = 0 is the plain mass and never needs f = b-1; k >= 1 does
    CHECK(tail_mass(DigitSet::make(3, {0, 1}), Real(1), 0) > Real(0));
    CHECK_THROWS_AS(tail_mass(DigitSet::make(3, {0, 1}), Real(1), 1), validation_error);
    CHECK_THROWS_AS(tail_mass(d2, Real(0.5), 0), validation_error);  // s <= s0
}

TEST_CASE("tail_mass agrees with brute-force atom weights") {
    PrecisionGuard g(192);
    // Atoms of depth l carry weight b^{-l sigma}; sum those whose value
    // lies in [1 - b^-k, 1).  Subtrees whose best completion x + b^{-l}
    // stays below the cut are pruned, and sigma is taken large enough that
    // depth k+14 leaves a relative remainder below 1e-15.
    for (auto& [b, digs, sig] : std::vector<std::tuple<long, std::vector<int>, const char*>>{
             {2, {0, 1}, "6"}, {3, {0, 2}, "3.5"}, {3, {1, 2}, "3.5"}}) {
        auto d = DigitSet::make(b, digs);
        Real sigma{std::string(sig)};
        for (long k = 0; k <= 6; ++k) {
            Real want = tail_mass(d, sigma, k);
            Real got(0);
            Real cut = Real(1) - pow_si(Real(b), -k);
            const int depth = static_cast<int>(k) + 14;
            std::vector<std::size_t> ai(depth + 1, 0);
            std::vector<Real> xs(depth + 1, Real(0));
            std::vector<Real> place(depth + 1, Real(1));  // b^{-l}
            Real binv = Real(1) / Real(b);
            Real wl = pow(Real(b), -sigma);
            std::vector<Real> wpow(depth + 1, Real(1));
            for (int l = 1; l <= depth; ++l) {
                wpow[l] = wpow[l - 1] * wl;
                place[l] = place[l - 1] * binv;
            }
            int l = 0;
            while (true) {
                if (l == depth || ai[l] >= digs.size()) {
                    if (l == 0)
                        break;
                    --l;
                    continue;
                }
                std::size_t i = ai[l]++;
                // append the digit: descendants of x stay in [x, x + b^{-l})
                Real x = xs[l] + Real(digs[i]) * place[l + 1];
                if (x + place[l + 1] <= cut)
                    continue;  // nothing below this prefix reaches the cut
                xs[l + 1] = x;
                ++l;
                ai[l] = 0;
                if (xs[l] >= cut)
                    got += wpow[l];
            }
            if (k == 0)
                got += Real(1);  // the unit mass at zero (empty word)
            CHECK(abs(got - want) / want < Real(1e-12));
        }
    }
}
