#pragma once

// Test-only oracles, independent of the library's solution paths: bisection
// on monotone functions, grid peak finding with parabolic refinement, a tiny
// deterministic RNG and percentile helper.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

// Root of a strictly increasing f on [lo, hi] with f(lo) <= 0 <= f(hi),
// bisected to a relative interval width of `rel`.
inline double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                          double rel = 1e-13) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo > 0.0 || fhi < 0.0) throw std::runtime_error("bisect_root: root not bracketed");
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((f(mid) <= 0.0)) lo = mid; else hi = mid;
        if (hi - lo <= rel * std::max(std::abs(lo), std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

// Indices of strict interior local maxima of y.
inline std::vector<std::size_t> local_maxima(const std::vector<double>& y) {
    std::vector<std::size_t> peaks;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        if (y[i] > y[i - 1] && y[i] >= y[i + 1]) peaks.push_back(i);
    }
    return peaks;
}

// Parabolic refinement of a grid extremum at index i.
inline double parabolic_peak(const std::vector<double>& x, const std::vector<double>& y,
                             std::size_t i) {
    if (i == 0 || i + 1 >= x.size()) return x[i];
    const double denom = y[i - 1] - 2.0 * y[i] + y[i + 1];
    if (denom == 0.0) return x[i];
    const double h = x[i + 1] - x[i];
    return x[i] + 0.5 * h * (y[i - 1] - y[i + 1]) / denom;
}

struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }
    // Box-Muller; deterministic across platforms.
    double gaussian() {
        const double u1 = std::max(uniform01(), 1e-300);
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }
};

inline double percentile(std::vector<double> values, double p) {
    if (values.empty()) throw std::runtime_error("percentile of empty set");
    std::sort(values.begin(), values.end());
    const double rank = p * (values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(rank);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = rank - lo;
    return values[lo] * (1.0 - frac) + values[hi] * frac;
}

}  // namespace oracles
