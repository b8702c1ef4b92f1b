#include "hardy_means/envelope_oracle.hpp"

#include "hardy_means/errors.hpp"

namespace hardy_means {

std::vector<double> upper_hull_values(std::span<const double> t, std::span<const double> v) {
    if (t.size() != v.size() || t.size() < 2) throw ArgumentError("hull needs at least two samples");
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (!(t[i] > t[i - 1])) throw ArgumentError("hull grid must be strictly increasing");
    }

    // cross > 0: counter-clockwise turn o -> a -> b, which the upper hull must not contain.
    auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
        return (t[a] - t[o]) * (v[b] - v[o]) - (v[a] - v[o]) * (t[b] - t[o]);
    };
    std::vector<std::size_t> hull;
    for (std::size_t i = 0; i < t.size(); ++i) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), i) >= 0.0) hull.pop_back();
        hull.push_back(i);
    }

    std::vector<double> out(t.size());
    std::size_t seg = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        while (seg + 1 < hull.size() && t[hull[seg + 1]] < t[i]) ++seg;
        if (seg + 1 == hull.size()) {
            out[i] = v[hull[seg]];
            continue;
        }
        const std::size_t l = hull[seg], r = hull[seg + 1];
        const double w = (t[i] - t[l]) / (t[r] - t[l]);
        out[i] = v[l] + w * (v[r] - v[l]);
    }
    return out;
}

std::vector<double> grid_envelope_oracle(const GeneratorSpec& g, std::span<const double> grid) {
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = eval(g, grid[i]);
    return upper_hull_values(grid, values);
}

}  // namespace hardy_means
