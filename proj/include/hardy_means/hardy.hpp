#pragma once

#include "hardy_means/envelope.hpp"
#include "hardy_means/generator.hpp"
#include "hardy_means/quadrature.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hardy_means {

enum class HardyRoute {
    concave_integral,
    bounded_transcendental,
    envelope_case_i,
    envelope_case_ii,
    envelope_case_iii_Kneg,
    envelope_case_iii_Kpos,
};

[[nodiscard]] std::string_view to_string(HardyRoute route) noexcept;

/// One evaluation of the residual during bracketing or bisection.
struct BracketStep {
    double c;
    double residual;
    std::string phase;  ///< "bracket", "bisect" or "newton"
};

struct HardyReport {
    double constant = kInf;  ///< +inf when the mean is not a Hardy mean
    HardyRoute route = HardyRoute::concave_integral;
    std::optional<double> K_value;
    double residual = 0.0;
    std::optional<std::vector<std::pair<int, double>>> factorial_bounds;
    std::optional<EnvelopeParams> envelope;
    /// Root of the defining equation for conc(g), solved independently of the case formula.
    std::optional<double> direct_constant;
    /// Whether g itself passed the class-F grid check.
    bool g_in_F = true;
    std::string diagnosis;
    std::vector<std::string> notes;
    std::vector<BracketStep> trace;
    std::vector<Panel> panels;  ///< filled only when tracing
};

struct HardyOptions {
    bool trace = false;
};

/// Hardy constant of E_f for concave f: the root c > 1 of the integral of
/// f(1/x) over (0, c], or +inf when that integral diverges at c = 1.
/// Throws PreconditionError for generators without a concavity certificate.
[[nodiscard]] HardyReport hardy_concave(const GeneratorSpec& f, const HardyOptions& opts = {});

/// Hardy constant of E_h for h = min(t - 1, M): the root of c - 1 - ln c = ln(M + 1).
[[nodiscard]] HardyReport hardy_truncated(double M, const HardyOptions& opts = {});

/// exp((n! ln(M + 1))^(1/n)), an upper bound for hardy_truncated(M). n >= 2.
[[nodiscard]] double hardy_factorial_bound(double M, int n);

struct HardyExistence {
    bool exists = false;
    std::string branch;  ///< "beta_infinite" or "beta_finite"
    std::string diagnosis;
};

/// Hardy property of E_g for g in class Phi: with beta = inf the integral of
/// g(1/t) over (0, 1] must be finite, with beta < inf g must be bounded above.
[[nodiscard]] HardyExistence hardy_exists(const GeneratorSpec& g);

/// Hardy constant of E_conc(g) via the envelope (a, b, p, q), routed by alpha,
/// beta and the sign of K(g), and cross-checked against the direct root for conc(g).
/// Needs Phi; membership of g in F is recorded in g_in_F, not required.
[[nodiscard]] HardyReport hardy_envelope(const GeneratorSpec& g, const HardyOptions& opts = {});

/// Upper bound for the Hardy constant of E_g: the smaller of the truncated-majorant
/// bound (bounded g with g <= t - 1) and the envelope constant (g in Phi).
[[nodiscard]] HardyReport hardy_upper_bound_phi(const GeneratorSpec& g, const HardyOptions& opts = {});

/// Best constant the library can attach to g: C(p) routes for the power family,
/// hardy_truncated / hardy_concave for the other built-ins and the upper bound
/// for piecewise generators.
[[nodiscard]] HardyReport theoretical_constant(const GeneratorSpec& g, const HardyOptions& opts = {});

}  // namespace hardy_means
