#pragma once

// Brute-force least concave majorant of sampled values. Test-only: it shares
// no code with envelope.cpp and serves as the independent check on gamma().

#include "hardy_means/generator.hpp"

#include <span>
#include <vector>

namespace hardy_means {

/// Upper hull (monotone chain) of {(t_i, g(t_i))}, evaluated piecewise-linearly
/// back on the grid. The grid must be strictly increasing; otherwise ArgumentError.
[[nodiscard]] std::vector<double> grid_envelope_oracle(const GeneratorSpec& g, std::span<const double> grid);

/// Same hull built from explicit samples.
[[nodiscard]] std::vector<double> upper_hull_values(std::span<const double> t, std::span<const double> v);

}  // namespace hardy_means
