#ifndef KEMPNER_TOOLS_FIGURE_PRESETS_HPP
#define KEMPNER_TOOLS_FIGURE_PRESETS_HPP

#include "kempner/moments.hpp"

#include <string>
#include <vector>

namespace kempner::cli {

// The nine built-in plots: digit set, exponent, m-range, scaling, and the
// x-axis label used by the generated plot script.
struct FigurePreset {
    int id;
    long base;
    std::vector<int> digits;
    double s;
    long m_min;
    long m_max;
    Scaling scaling;
    long precision_bits;
    std::string title;
};

const std::vector<FigurePreset>& figure_presets();
const FigurePreset& figure_preset(int id);  // validation_error on bad id

} // namespace kempner::cli

#endif
