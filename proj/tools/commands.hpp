#ifndef KEMPNER_TOOLS_COMMANDS_HPP
#define KEMPNER_TOOLS_COMMANDS_HPP

#include "kempner/moments.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace kempner::cli {

Scaling parse_scaling(const std::string& name);  // validation_error on bad name

struct MomentsArgs {
    long base = 0;
    std::vector<int> digits;
    double s = 1.0;
    long m_max = 0;
    std::string scale = "none";
    long precision_bits = 192;
    std::string csv_path;  // empty = stdout
    bool with_profile = false;
    long stride = 1;
};
int cmd_moments(const MomentsArgs& args);

struct FigureArgs {
    int id = 0;
    std::string out_dir = ".";
    long stride = 1;
};
int cmd_figure(const FigureArgs& args);

struct AverageArgs {
    long base = 0;
    std::vector<int> digits;
    double s = 1.0;
    std::string scale = "linear";
    long precision_bits = 128;
    long period = -1;       // aligned period (b^p, b^{p+1}]
    long window_lo = 0;     // or explicit window (lo, b*lo]
    std::string weighting = "right";
    bool extrapolate = false;
    std::string constants_path;
};
int cmd_average(const AverageArgs& args);

int cmd_check(const std::string& suite);

} // namespace kempner::cli

#endif
