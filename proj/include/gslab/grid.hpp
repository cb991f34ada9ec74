#pragma once

#include <cmath>
#include <cstddef>

#include "gslab/errors.hpp"

namespace gslab {

// Uniform grid in the log-radius variable t = -log r, ascending.
// Construction guarantees the endpoints are hit exactly: the requested step is
// shrunk (never grown) so that (t_max - t_min) is an integer multiple of it.
struct TGrid {
    double t_min = 0.0;
    double t_max = 0.0;
    std::size_t count = 0; // number of nodes, >= 2

    static TGrid uniform(double t_min, double t_max, double max_step) {
        if (!(t_max > t_min)) throw ConfigInvalid("grid: t_max must exceed t_min");
        if (!(max_step > 0.0)) throw ConfigInvalid("grid: step must be positive");
        const double span = t_max - t_min;
        auto intervals = static_cast<std::size_t>(std::ceil(span / max_step - 1e-12));
        if (intervals < 1) intervals = 1;
        return TGrid{t_min, t_max, intervals + 1};
    }

    double step() const { return (t_max - t_min) / static_cast<double>(count - 1); }

    double at(std::size_t i) const {
        // Last node is pinned to t_max so accumulated rounding cannot shift it.
        if (i + 1 == count) return t_max;
        return t_min + static_cast<double>(i) * step();
    }

    // Largest index whose node is <= t (clamped to valid range).
    std::size_t index_below(double t) const {
        if (t <= t_min) return 0;
        if (t >= t_max) return count - 1;
        auto i = static_cast<std::size_t>((t - t_min) / step());
        if (i >= count) i = count - 1;
        return i;
    }
};

} // namespace gslab
