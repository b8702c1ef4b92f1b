#pragma once

#include "hardy_means/generator.hpp"

#include <utility>

namespace hardy_means {

/// conc(g) = Gamma_{a,b;p,q}(g): affine with slope p on (0, a], g on (a, b),
/// affine with slope q on [b, inf). a = 0 drops the left piece, b = inf the right.
struct EnvelopeParams {
    double a = 0.0;
    double b = kInf;
    double p = 1.0;
    double q = 1.0;
    GeneratorSpec envelope;
};

/// Left contact point: (0, 1) when alpha = 0, otherwise the smallest maximizer
/// a of (g(t) - g_+(0)) / t over [alpha, 1] and p = (g(a) - g_+(0)) / a.
/// Needs a resolved, finite g0plus when alpha > 0.
[[nodiscard]] std::pair<double, double> find_a(const GeneratorSpec& g);

/// Right contact point: (inf, 1) when beta = inf, otherwise q = q_inf and the
/// smallest maximizer b of g(t) - q t over [1, beta].
[[nodiscard]] std::pair<double, double> find_b(const GeneratorSpec& g);

/// Gamma_{a,b;p,q}(g). Requires 0 <= a < b <= inf. When a = 0 and b = inf the
/// result is g itself; otherwise g must have a piecewise-polynomial form.
[[nodiscard]] GeneratorSpec gamma(const GeneratorSpec& g, double a, double b, double p, double q);

/// Concave envelope of a Phi-class generator. Validates Phi on grid_for(g)
/// first, then checks majorization, agreement on (a, b), concavity and the
/// Dini sandwich at a and b; any failure throws ConsistencyError with the point.
[[nodiscard]] EnvelopeParams concave_envelope(const GeneratorSpec& g);

}  // namespace hardy_means
