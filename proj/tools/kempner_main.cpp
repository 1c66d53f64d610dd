// Command-line driver: digit-restricted measure moments, their log-periodic
// asymptotic profile, Fourier spectrum, and period averages.
#include "CLI11.hpp"
#include "commands.hpp"
#include "kempner/errors.hpp"

#include <iostream>

int main(int argc, char** argv) {
    using namespace kempner;
    using namespace kempner::cli;

    CLI::App app{"moments of digit-restricted measures and their asymptotics"};
    app.require_subcommand(1);

    MomentsArgs margs;
    auto* mom = app.add_subcommand("moments", "compute scaled moments, emit CSV");
    mom->add_option("--base", margs.base, "radix b >= 2")->required();
    mom->add_option("--digits", margs.digits, "allowed digits, comma separated")
        ->required()
        ->delimiter(',');
    mom->add_option("--s", margs.s, "exponent s > log_b(N)")->required();
    mom->add_option("--m-max", margs.m_max, "largest moment index")->required();
    mom->add_option("--scale", margs.scale, "none|kappa|linear|pochhammer|power");
    mom->add_option("--precision-bits", margs.precision_bits, "significand bits (default 192)");
    mom->add_option("--csv", margs.csv_path, "output path (default stdout)");
    mom->add_flag("--with-profile", margs.with_profile,
                  "fill profile, fourier_profile and residual columns");
    mom->add_option("--stride", margs.stride, "emit every k-th m");

    FigureArgs fargs;
    auto* fig = app.add_subcommand("figure", "reproduce a built-in plot preset");
    fig->add_option("--id", fargs.id, "preset id 1..9")->required();
    fig->add_option("--out", fargs.out_dir, "output directory (default .)");
    fig->add_option("--stride", fargs.stride, "emit every k-th m");

    AverageArgs aargs;
    auto* avg = app.add_subcommand("average", "log-weighted period average of scaled moments");
    avg->add_option("--base", aargs.base, "radix b >= 2")->required();
    avg->add_option("--digits", aargs.digits, "allowed digits, comma separated")
        ->required()
        ->delimiter(',');
    avg->add_option("--s", aargs.s, "exponent s")->required();
    avg->add_option("--scale", aargs.scale, "scaling (default linear)");
    avg->add_option("--precision-bits", aargs.precision_bits, "significand bits (default 128)");
    avg->add_option("--period", aargs.period, "aligned period index p: (b^p, b^{p+1}]");
    avg->add_option("--window", aargs.window_lo, "window start m0: (m0, b*m0]");
    avg->add_option("--weighting", aargs.weighting, "left|right (default right)");
    avg->add_flag("--extrapolate", aargs.extrapolate, "refine using the previous period");
    avg->add_option("--constants", aargs.constants_path, "missing-digit harmonic constants file");

    std::string suite;
    auto* chk = app.add_subcommand("check", "run a verification suite");
    chk->add_option("suite", suite, "oracle|periodicity|prop1|fourier")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (mom->parsed())
            return cmd_moments(margs);
        if (fig->parsed())
            return cmd_figure(fargs);
        if (avg->parsed())
            return cmd_average(aargs);
        if (chk->parsed())
            return cmd_check(suite);
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const missing_constant& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const infeasible_tolerance& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
