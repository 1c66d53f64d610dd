#include "figure_presets.hpp"

#include "kempner/errors.hpp"

namespace kempner::cli {

const std::vector<FigurePreset>& figure_presets() {
    static const std::vector<FigurePreset> presets = {
        {1, 2, {1}, 1.0, 20, 12800, Scaling::kappa_linear, 128,
         "(m+1)u_m(1), base 2, digits {1}"},
        {2, 3, {2}, 1.0, 20, 50000, Scaling::kappa_linear, 128,
         "(m+1)u_m(1), base 3, digits {2}"},
        {3, 10, {9}, 1.0, 20, 100000, Scaling::kappa_linear, 128,
         "(m+1)u_m(1), base 10, digits {9}"},
        {4, 3, {0, 2}, 1.0, 21, 27000, Scaling::kappa_linear, 128,
         "(m+1)u_m(1), base 3, digits {0,2}"},
        {5, 3, {1, 2}, 1.0, 21, 9000, Scaling::kappa_linear, 128,
         "(m+1)u_m(1), base 3, digits {1,2}"},
        {6, 2, {0, 1}, 2.0, 16, 10000, Scaling::kappa_pochhammer, 128,
         "(m+1)(m+2)/2 u_m(2), base 2, all digits"},
        {7, 10, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, 3.0, 1, 10000, Scaling::kappa_pochhammer, 128,
         "(m+1)(m+2)(m+3)/6 u_m(3), base 10, all digits"},
        {8, 8, {0, 1, 3, 5}, 1.0, 1, 10000, Scaling::kappa_linear, 128,
         "(7/5)^m (m+1) u_m(1), base 8, digits {0,1,3,5}"},
        {9, 8, {0, 1, 3, 5}, 3.0, 1, 10000, Scaling::kappa_pochhammer, 128,
         "(7/5)^m binom(m+3,3) u_m(3), base 8, digits {0,1,3,5}"},
    };
    return presets;
}

const FigurePreset& figure_preset(int id) {
    for (const auto& p : figure_presets())
        if (p.id == id)
            return p;
    throw validation_error("figure id must be in 1..9");
}

} // namespace kempner::cli
