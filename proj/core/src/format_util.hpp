#pragma once

#include <cstdio>
#include <string>

namespace chebspec::detail {

// 17 significant digits: enough to round-trip any double exactly.
inline std::string format_sig17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace chebspec::detail
