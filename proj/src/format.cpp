#include "kecalc/format.hpp"

#include <cmath>
#include <cstdio>

namespace kecalc {

std::string format_sig12(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.11e", x);
    return buf;
}

} // namespace kecalc
