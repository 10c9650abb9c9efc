#pragma once

#include <cstddef>
#include <vector>

#include "pht/errors.hpp"

namespace pht {

/// n equally spaced samples from start to stop inclusive; n == 1 yields {start}.
inline std::vector<double> uniform_grid(double start, double stop, std::size_t n) {
    if (n == 0) throw InvalidParameter("uniform_grid: at least one sample is required");
    if (n > 1 && !(stop > start)) throw InvalidParameter("uniform_grid: stop must exceed start");
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = start;
        return out;
    }
    const double step = (stop - start) / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k) out[k] = start + static_cast<double>(k) * step;
    out.back() = stop;
    return out;
}

}  // namespace pht
