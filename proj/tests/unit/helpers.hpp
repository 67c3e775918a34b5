#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "orgsim/interaction.hpp"
#include "orgsim/landscape.hpp"

namespace testutil {

// "1101" -> bits with the leftmost character at position 0.
inline std::uint32_t bits(const std::string& s) {
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == '1') v |= 1u << i;
    return v;
}

inline orgsim::DecisionVector concat_blocks(const std::vector<std::string>& blocks) {
    orgsim::DecisionVector x = 0;
    int offset = 0;
    for (const auto& b : blocks) {
        x |= static_cast<orgsim::DecisionVector>(bits(b)) << offset;
        offset += static_cast<int>(b.size());
    }
    return x;
}

// Landscape whose task tables are constant, so every configuration of task i
// contributes exactly values[i].
inline orgsim::LandscapeSet constant_landscape(const orgsim::InteractionMatrix& im,
                                               const std::vector<double>& per_task) {
    orgsim::LandscapeSet ls;
    ls.rho = 0.0;
    ls.row_bits = im.row_bits();
    ls.values.resize(static_cast<std::size_t>(im.tasks()) * ls.rows());
    for (int i = 0; i < im.tasks(); ++i)
        for (std::size_t r = 0; r < ls.rows(); ++r)
            ls.values[i * ls.rows() + r] = per_task[i];
    const auto [mx, arg] = orgsim::enumerate_global_max(ls, im);
    ls.global_max = mx;
    ls.global_argmax = arg;
    return ls;
}

inline double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

// Kolmogorov-Smirnov statistic against uniform(0,1).
inline double ks_uniform(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        d = std::max(d, (i + 1) / n - values[i]);
        d = std::max(d, values[i] - i / n);
    }
    return d;
}

}  // namespace testutil
