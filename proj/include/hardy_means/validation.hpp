#pragma once

#include "hardy_means/generator.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hardy_means {

enum class ConditionId { Phi1, Phi2, Phi3a, Phi3b, Phi3c, F_i, F_ii, LHQD };

[[nodiscard]] std::string_view to_string(ConditionId id) noexcept;

/// First violating point found on the grid: the inequality lhs <= rhs
/// (or the strict/sign variant named by the condition) fails at t.
struct Witness {
    double t;
    double lhs;
    double rhs;
};

/// Grid certificate for one class condition. witness is present iff !passed.
struct ValidationReport {
    ConditionId condition;
    bool passed = true;
    std::optional<Witness> witness;
    std::size_t grid_size = 0;
    std::string note;
};

/// 2048 log-spaced points on [1e-6, 1e6].
[[nodiscard]] std::vector<double> default_grid();

/// Log-spaced points on [lo, hi], endpoints included.
[[nodiscard]] std::vector<double> log_grid(double lo, double hi, std::size_t count);

/// default_grid() merged with the generator's breakpoints, 1, and any finite alpha > 0 / beta.
[[nodiscard]] std::vector<double> grid_for(const GeneratorSpec& g);

[[nodiscard]] bool all_passed(std::span<const ValidationReport> reports) noexcept;

/// Conditions Phi1, Phi2, Phi3a, Phi3b, Phi3c on the grid (slack 1e-10, scaled
/// by the magnitude of the compared values). Phi3b is skipped when alpha = 0 and
/// Phi3c when beta = inf; otherwise g0plus / q_inf must already be resolved
/// (ConfigurationError names resolve_limits() as the fix).
[[nodiscard]] std::vector<ValidationReport> validate_phi(const GeneratorSpec& g,
                                                         std::span<const double> grid);

/// Class F conditions: (i) sign(g(t)) = sign(t - 1); (ii) for sampled x in (0,1),
/// t -> g(t)/g(t/x) strictly increasing (margin 1e-12) over grid points in (x, 1).
[[nodiscard]] std::vector<ValidationReport> validate_script_f(const GeneratorSpec& g,
                                                              std::span<const double> grid);

/// Sufficient F-certificate: t^p g(t) nondecreasing on the grid and strictly
/// increasing on grid points in (0, 1), together with the sign condition.
/// A pass certifies membership in F; a failure says nothing.
[[nodiscard]] ValidationReport check_lhqd(const GeneratorSpec& g, double p, std::span<const double> grid);

/// Midpoint concavity on consecutive grid triples over the whole grid.
[[nodiscard]] ValidationReport check_concave(const GeneratorSpec& g, std::span<const double> grid);

}  // namespace hardy_means
