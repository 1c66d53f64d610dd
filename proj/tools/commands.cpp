#include "commands.hpp"

#include "figure_presets.hpp"
#include "kempner/asymptotics.hpp"
#include "kempner/errors.hpp"
#include "kempner/special_functions.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace kempner::cli {

Scaling parse_scaling(const std::string& name) {
    if (name == "none") return Scaling::none;
    if (name == "kappa") return Scaling::kappa_only;
    if (name == "linear") return Scaling::kappa_linear;
    if (name == "pochhammer") return Scaling::kappa_pochhammer;
    if (name == "power") return Scaling::kappa_power;
    throw validation_error("unknown scale '" + name +
                           "' (expected none|kappa|linear|pochhammer|power)");
}

namespace {

constexpr const char* kCsvHeader = "m,logb_m,scaled_moment,profile,fourier_profile,residual";

// Sequence values for any digit set: binomial recurrence in general, the
// per-m defining series when N = 1 (feasible at any m, and the recurrence's
// quadratic cost is pointless for a single word per level).
MomentSequence compute_sequence(const DigitSet& d, const Real& s, long m_max,
                                Precision p, Scaling scaling) {
    if (d.cardinality() > 1 || m_max <= 4096)
        return moments_recurrence(d, s, m_max, p, scaling);
    PrecisionGuard guard(p);
    MomentSequence seq{d, s, scaling, {}, p};
    seq.values.reserve(static_cast<std::size_t>(m_max) + 1);
    Real kappa = d.kappa_real();
    Real bs = pow(Real(d.base()), s);
    Real u0 = bs / (bs - Real(1));
    seq.values.push_back(scaling == Scaling::kappa_power ? Real(0) : u0);
    Real tol = pow_si(Real(2), -(p.significand_bits / 2));
    Real kpow(1), poch(1);
    for (long m = 1; m <= m_max; ++m) {
        Real u = moments_direct(d, s, m, tol * pow(Real(m), -s), p);
        kpow *= kappa;
        Real v = kpow * u;
        switch (scaling) {
            case Scaling::none: v = u; break;
            case Scaling::kappa_only: break;
            case Scaling::kappa_linear: v *= static_cast<unsigned long>(m + 1); break;
            case Scaling::kappa_pochhammer:
                poch *= (s + Real(m)) / Real(m);
                v *= poch;
                break;
            case Scaling::kappa_power: v *= pow(Real(m), s); break;
        }
        seq.values.push_back(v);
    }
    return seq;
}

void write_csv(std::ostream& out, const MomentSequence& seq, long m_min, long stride,
               bool with_profile, const KempnerConstantsStore* store) {
    const DigitSet& d = seq.digit_set;
    out << kCsvHeader << "\n";
    ProfileEvaluator ev{d, seq.s, Real(1e-12)};
    FourierSpectrum spec;
    if (with_profile) {
        Real ztol(1e-10);
        double best = zsum_best_tail(d, seq.s, 10'000'000);
        if (best > 1e-10)
            ztol = Real(best * 4);  // relaxed tolerance: best the budget allows
        spec = build_spectrum(d, seq.s, 12, ztol, store);
    }
    Real poch(1);  // (s+1)_m / m!, advanced incrementally across rows
    long poch_m = 0;
    for (long m = m_min; m <= seq.max_m(); m += stride) {
        const Real& v = seq.values[static_cast<std::size_t>(m)];
        out << m << ',';
        if (m == 0)
            out << "-inf";
        else
            out << log_base(Real(m), d.base()).str();
        out << ',' << v.str();
        if (with_profile && m >= 1) {
            Real corr;
            switch (seq.scaling) {
                case Scaling::kappa_pochhammer:
                    while (poch_m < m) {
                        ++poch_m;
                        poch *= (seq.s + Real(poch_m)) / Real(poch_m);
                    }
                    corr = poch / pow(Real(m), seq.s);
                    break;
                default:
                    corr = profile_scale_correction(d, seq.s, seq.scaling, m);
            }
            Real prof = profile_value(ev, Real(m)) * corr;
            Real four = profile_from_fourier(spec, Real(m)) * corr;
            out << ',' << prof.str() << ',' << four.str() << ',' << (v - prof).str();
        } else {
            out << ",,,";
        }
        out << "\n";
    }
}

void write_plot_script(const std::string& path, const std::string& csv_name,
                       const FigurePreset& p) {
    std::ofstream out(path);
    out << "# " << p.title << "\n"
        << "set datafile separator ','\n"
        << "set key off\n"
        << "set xlabel 'log_" << p.base << "(m)'\n"
        << "set ylabel '" << p.title << "'\n"
        << "plot '" << csv_name << "' every ::1 using 2:3 with dots lc rgb 'navy'\n"
        << "pause -1 'press enter to close'\n";
}

} // namespace

int cmd_moments(const MomentsArgs& args) {
    if (args.m_max < 0)
        throw validation_error("--m-max must be >= 0");
    if (args.stride < 1)
        throw validation_error("--stride must be >= 1");
    DigitSet d = DigitSet::make(args.base, args.digits);
    Precision p{args.precision_bits};
    PrecisionGuard guard(p);
    Real s(args.s);
    auto seq = compute_sequence(d, s, args.m_max, p, parse_scaling(args.scale));
    if (args.csv_path.empty() || args.csv_path == "-") {
        write_csv(std::cout, seq, 0, args.stride, args.with_profile, nullptr);
    } else {
        std::ofstream out(args.csv_path);
        if (!out)
            throw validation_error("cannot open output file: " + args.csv_path);
        write_csv(out, seq, 0, args.stride, args.with_profile, nullptr);
    }
    return 0;
}

int cmd_figure(const FigureArgs& args) {
    const FigurePreset& p = figure_preset(args.id);
    if (args.stride < 1)
        throw validation_error("--stride must be >= 1");
    DigitSet d = DigitSet::make(p.base, p.digits);
    Precision prec{p.precision_bits};
    PrecisionGuard guard(prec);
    auto seq = compute_sequence(d, Real(p.s), p.m_max, prec, p.scaling);

    std::string csv_name = "fig" + std::to_string(p.id) + ".csv";
    std::string csv_path = args.out_dir + "/" + csv_name;
    std::ofstream out(csv_path);
    if (!out)
        throw validation_error("cannot open output file: " + csv_path);
    write_csv(out, seq, p.m_min, args.stride, false, nullptr);
    write_plot_script(args.out_dir + "/fig" + std::to_string(p.id) + ".gnuplot",
                      csv_name, p);
    std::cerr << "wrote " << csv_path << "\n";
    return 0;
}

int cmd_average(const AverageArgs& args) {
    DigitSet d = DigitSet::make(args.base, args.digits);
    Precision p{args.precision_bits};
    PrecisionGuard guard(p);
    Real s(args.s);
    Scaling scaling = parse_scaling(args.scale);
    Weighting w;
    if (args.weighting == "left")
        w = Weighting::left;
    else if (args.weighting == "right")
        w = Weighting::right;
    else
        throw validation_error("--weighting must be left or right");

    std::uint64_t lo, hi;
    if (args.period >= 0 && args.window_lo > 0)
        throw validation_error("--period and --window are mutually exclusive");
    if (args.period >= 0) {
        lo = 1;
        for (long i = 0; i < args.period; ++i)
            lo *= static_cast<std::uint64_t>(args.base);
        hi = lo * static_cast<std::uint64_t>(args.base);
    } else if (args.window_lo > 0) {
        lo = static_cast<std::uint64_t>(args.window_lo);
        hi = lo * static_cast<std::uint64_t>(args.base);
    } else {
        throw validation_error("need --period or --window");
    }
    if (args.extrapolate && lo % static_cast<std::uint64_t>(args.base) != 0)
        throw validation_error("--extrapolate needs the previous period: "
                               "window start must be divisible by the base");

    auto seq = compute_sequence(d, s, static_cast<long>(hi), p, scaling);
    auto est = average_window(seq, lo, hi, w);
    std::cout << "average over m in "
              << (w == Weighting::left ? "(" : "[") << lo << ", " << hi
              << (w == Weighting::left ? "]" : ")") << " (" << args.weighting
              << " weights, scale " << args.scale << "): " << est.value.str(12) << "\n";

    if (args.extrapolate) {
        auto prev = average_window(seq, lo / static_cast<std::uint64_t>(args.base), lo, w);
        Real ex = extrapolate(prev.value, est.value, args.base);
        std::cout << "previous period average: " << prev.value.str(12) << "\n";
        std::cout << "extrapolated: " << ex.str(12) << "\n";
    }

    // Asymptotic target when the zeroth Fourier coefficient is reachable.
    try {
        KempnerConstantsStore store;
        const KempnerConstantsStore* sp = nullptr;
        if (!args.constants_path.empty()) {
            store = load_constants(args.constants_path);
            sp = &store;
        }
        Complex c0 = fourier_coefficient(d, s, 0, Real(1e-11), sp);
        Real target = c0.re;
        bool have = true;
        switch (scaling) {
            case Scaling::kappa_power:
                break;
            case Scaling::kappa_linear:
                have = args.s == 1.0;  // (m+1)/m^s -> 1 only at s = 1
                break;
            case Scaling::kappa_pochhammer:
                target = target / gamma_complex(Complex{s + Real(1), Real(0)},
                                                Precision{args.precision_bits})
                                      .re;
                break;
            default:
                have = false;
        }
        if (have)
            std::cout << "asymptotic average target: " << target.str(12) << "\n";
    } catch (const infeasible_tolerance&) {
        std::cout << "asymptotic average target: not computable at this budget\n";
    } catch (const missing_constant&) {
        std::cout << "asymptotic average target: needs a constants file entry\n";
    }
    return 0;
}

namespace {

bool check_oracle() {
    bool ok = true;
    for (long b : {2L, 3L}) {
        std::vector<std::vector<int>> sets;
        for (int mask = 1; mask < (1 << b); ++mask) {
            std::vector<int> a;
            for (int d = 0; d < b; ++d)
                if (mask & (1 << d))
                    a.push_back(d);
            if (a.back() == 0 || a.size() > 3)
                continue;
            sets.push_back(a);
        }
        for (const auto& a : sets)
            for (double sv : {1.0, 2.0, 2.5}) {
                DigitSet d = DigitSet::make(b, a);
                Real s(sv);
                Real bs = pow(Real(b), s);
                if (!(bs > Real(d.cardinality())))
                    continue;  // s <= s0
                auto seq = moments_recurrence(d, s, 12, Precision{192}, Scaling::none);
                auto u = moments_direct_upto(d, s, 12, Real(1e-25), Precision{192},
                                             {1'000'000, DirectOptions::Mode::automatic});
                for (long m = 0; m <= 12; ++m) {
                    Real rel = abs(seq.values[m] - u[m]) / u[m];
                    if (!(rel < Real(1e-12))) {
                        std::cout << "  FAIL b=" << b << " s=" << sv << " m=" << m
                                  << " rel=" << rel.str(3) << "\n";
                        ok = false;
                    }
                }
            }
    }
    std::cout << "oracle: recurrence vs defining series"
              << (ok ? " ... pass" : " ... FAIL") << "\n";
    return ok;
}

bool check_periodicity() {
    bool ok = true;
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(10.0, 10000.0);
    for (auto& [b, digs, sv] :
         std::vector<std::tuple<long, std::vector<int>, double>>{
             {3, {0, 2}, 1.0}, {8, {0, 1, 3, 5}, 1.0}}) {
        DigitSet d = DigitSet::make(b, digs);
        Real tol(1e-12);
        ProfileEvaluator ev{d, Real(sv), tol};
        for (int i = 0; i < 5; ++i) {
            Real m(dist(rng));
            Real f1 = profile_value(ev, m);
            Real f2 = profile_value(ev, m * Real(b));
            if (!(abs(f2 - f1) <= Real(4) * tol * abs(f1))) {
                ok = false;
                std::cout << "  FAIL b=" << b << " m=" << m.str(6) << "\n";
            }
        }
    }
    std::cout << "periodicity: F_s(bm) = F_s(m)" << (ok ? " ... pass" : " ... FAIL") << "\n";
    return ok;
}

bool check_prop1() {
    DigitSet d = DigitSet::make(3, {0, 2});
    auto seq = moments_recurrence(d, Real(1), 1000, Precision{192}, Scaling::kappa_only);
    std::vector<double> res;
    for (long m = 100; m <= 1000; m += 100)
        res.push_back(prop1_residual(seq, m).to_double());
    std::vector<double> sorted = res;
    std::sort(sorted.begin(), sorted.end());
    double median = sorted[sorted.size() / 2];
    double mx = sorted.back();
    bool ok = mx <= 10 * median && mx < 100;
    std::cout << "prop1: scaled residual bounded (max " << mx << ")"
              << (ok ? " ... pass" : " ... FAIL") << "\n";
    return ok;
}

bool check_fourier() {
    DigitSet d = DigitSet::make(3, {0, 2});
    Real s(2);
    auto spec = build_spectrum(d, s, 8, Real(1e-10));
    ProfileEvaluator ev{d, s, Real(1e-12)};
    bool ok = true;
    for (int i = 0; i < 20; ++i) {
        Real m = Real(50) * pow(Real(3), Real(i) / Real(20));
        Real ft = profile_from_fourier(spec, m);
        Real pv = profile_value(ev, m);
        if (!(abs(ft - pv) / abs(pv) < Real(1e-8)))
            ok = false;
    }
    // period mean vs c_0 by trapezoid in log_b m (periodic: plain average)
    Real mean(0);
    const int n = 512;
    for (int i = 0; i < n; ++i)
        mean += profile_value(ev, Real(50) * pow(Real(3), Real(i) / Real(n)));
    mean /= static_cast<unsigned long>(n);
    Real c0 = spec.coefficients[0].re;
    if (!(abs(mean - c0) / c0 < Real(1e-6)))
        ok = false;
    std::cout << "fourier: spectrum vs theta profile and period mean"
              << (ok ? " ... pass" : " ... FAIL") << "\n";
    return ok;
}

} // namespace

int cmd_check(const std::string& suite) {
    bool ok;
    if (suite == "oracle")
        ok = check_oracle();
    else if (suite == "periodicity")
        ok = check_periodicity();
    else if (suite == "prop1")
        ok = check_prop1();
    else if (suite == "fourier")
        ok = check_fourier();
    else
        throw validation_error("unknown suite '" + suite +
                               "' (expected oracle|periodicity|prop1|fourier)");
    return ok ? 0 : 1;
}

} // namespace kempner::cli
