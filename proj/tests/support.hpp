#pragma once

// Shared fixtures for the test binaries: reference generators and seeded
// random inputs.

#include "hardy_means/generator.hpp"
#include "hardy_means/json_io.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace hm_test {

using namespace hardy_means;

inline GeneratorSpec g_dip() { return preset_g_dip(); }
inline GeneratorSpec g_L() { return preset_g_L(); }

/// 2t^2 - 1 on (0, 1/2], t - 1 on [1/2, 2], 1 beyond; alpha = 1/2.
/// (g(t) + 1)/t is flat on [1/2, 1], so the left contact point is not unique.
inline GeneratorSpec g_tie() {
    PiecewisePolynomial poly{{0.5, 2.0}, {Polynomial({-1.0, 0.0, 2.0}), Polynomial({-1.0, 1.0}), Polynomial({1.0})}};
    return GeneratorSpec::piecewise(std::move(poly), 0.5).with_limits(-1.0, std::nullopt, std::nullopt);
}

/// t^2 - 1 on (0, inf): convex, violates g <= t - 1 for t > 1.
inline GeneratorSpec g_square() {
    return GeneratorSpec::piecewise(PiecewisePolynomial{{}, {Polynomial({-1.0, 0.0, 1.0})}});
}

/// Random member of Phi with alpha > 0 and beta < inf:
///   -1 + k t^2                       on (0, alpha]   (convex, below the chord)
///   (t - 1) - cL (t - 1)^2           on [alpha, 1]
///   sR (t - 1) - cR (t - 1)^2        on [1, beta]    (sR <= 1 keeps the kink concave)
///   quadratic dip of depth h         on [beta, beta + w]
///   g(beta)                          beyond
struct RandomPhi {
    GeneratorSpec g;
    double alpha;
    double beta;
};

inline RandomPhi random_phi(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double alpha = 0.2 + 0.4 * U(rng);
    const double beta = 1.5 + 1.5 * U(rng);
    const double cL_max = alpha / ((1.0 - alpha) * (1.0 - alpha));
    const double cL = 0.8 * cL_max * U(rng);
    const double sR = 0.5 + 0.5 * U(rng);
    const double cR = 0.9 * sR / (beta - 1.0) * U(rng);
    const double w = 0.5 + U(rng);

    const double mL_alpha = (alpha - 1.0) - cL * (alpha - 1.0) * (alpha - 1.0);
    const double k = (mL_alpha + 1.0) / (alpha * alpha);
    const double g_beta = sR * (beta - 1.0) - cR * (beta - 1.0) * (beta - 1.0);
    const double h = 0.8 * g_beta * U(rng);
    const double d = 4.0 * h / (w * w);

    PiecewisePolynomial poly;
    poly.breakpoints = {alpha, 1.0, beta, beta + w};
    poly.pieces = {
        Polynomial({-1.0, 0.0, k}),
        Polynomial({-1.0 - cL, 1.0 + 2.0 * cL, -cL}),
        Polynomial({-sR - cR, sR + 2.0 * cR, -cR}),
        Polynomial({g_beta + d * beta * (beta + w), -d * (2.0 * beta + w), d}),
        Polynomial({g_beta}),
    };
    // Re-evaluating the expanded pieces moves the joins by a few ulps; pin the
    // constant terms so every join is continuous to rounding.
    auto fix = [&](std::size_t i, double t, double target) {
        std::vector<double> c(poly.pieces[i].coeffs().begin(), poly.pieces[i].coeffs().end());
        c[0] += target - poly.pieces[i](t);
        poly.pieces[i] = Polynomial(std::move(c));
    };
    fix(1, 1.0, 0.0);
    fix(2, 1.0, 0.0);
    fix(0, alpha, poly.pieces[1](alpha));
    fix(3, beta, poly.pieces[2](beta));
    const double tail = poly.pieces[3](beta + w);
    poly.pieces[4] = Polynomial({tail});
    auto g = GeneratorSpec::piecewise(std::move(poly), alpha, beta).with_limits(-1.0, 0.0, std::nullopt);
    return {g, alpha, beta};
}

/// n values log-uniform in [lo, hi].
inline std::vector<double> log_uniform(std::mt19937_64& rng, std::size_t n, double lo = 1e-3, double hi = 1e3) {
    std::uniform_real_distribution<double> U(std::log(lo), std::log(hi));
    std::vector<double> x(n);
    for (auto& v : x) v = std::exp(U(rng));
    return x;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace hm_test
