#include "kempner/real.hpp"

#include <cstdio>
#include <cstdlib>

namespace kempner {

namespace {
thread_local long g_working_precision = 192;
}

long working_precision() { return g_working_precision; }

void set_working_precision(long bits) {
    g_working_precision = bits < MPFR_PREC_MIN ? MPFR_PREC_MIN : bits;
}

std::string Real::str(int significant_digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", significant_digits - 1, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

} // namespace kempner
