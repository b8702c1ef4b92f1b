#pragma once

#include "hardy_means/generator.hpp"

#include <string>
#include <vector>

namespace hardy_means {

/// One contribution to an integral in s-space (integrand g(s)/s^2).
struct Panel {
    double lo;
    double hi;  ///< +inf for an extrapolated tail remainder
    double value;
    double abs_error;
    std::string method;  ///< "closed_form", "gauss_kronrod" or "geometric_tail"
};

/// Result of an improper integral. divergence_flag implies value == +inf and !converged.
struct IntegralResult {
    double value = 0.0;
    bool converged = true;
    double abs_error_estimate = 0.0;
    bool divergence_flag = false;
    std::vector<Panel> panels;
};

struct QuadratureOptions {
    /// Integrate polynomial pieces of degree <= 4 exactly instead of numerically.
    bool closed_form_polynomials = true;
    /// Keep per-panel contributions in IntegralResult::panels.
    bool keep_panels = false;
};

/// Integral of g(s)/s^2 over [lo, hi] with 0 < lo <= hi <= inf.
///
/// Finite stretches are split at the generator's breakpoints and into
/// geometric panels of ratio <= 4, then integrated in closed form (polynomial
/// pieces) or by adaptive Gauss-Kronrod (15 points). An infinite upper limit
/// is handled in blocks [2^k A, 2^(k+1) A]: the sweep stops once a block
/// contributes less than 1e-13; after 60 blocks the block ratios decide
/// between divergence (ratio >= 1 - 1e-6) and a geometric remainder.
[[nodiscard]] IntegralResult integrate_over_s2(const GeneratorSpec& g, double lo, double hi,
                                               const QuadratureOptions& opts = {});

/// The integral of f(1/x) over (0, c], computed as the integral of f(s)/s^2 over [1/c, inf).
[[nodiscard]] IntegralResult integral_f_inv(const GeneratorSpec& f, double c,
                                            const QuadratureOptions& opts = {});

/// K(g) = g(b)/b + integral_a^b g(s)/s^2 ds, or integral_a^inf g(s)/s^2 ds when b = inf.
/// A divergent tail comes back with divergence_flag set.
[[nodiscard]] IntegralResult K_of_g(const GeneratorSpec& g, double a, double b,
                                    const QuadratureOptions& opts = {});

}  // namespace hardy_means
