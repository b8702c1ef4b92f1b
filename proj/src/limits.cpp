#include "hardy_means/limits.hpp"

#include "hardy_means/errors.hpp"
#include "hardy_means/validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace hardy_means {

namespace {

constexpr int kWindow = 4;
constexpr double kStepTol = 1e-9;

// Limit of the window-maximum sequence E_K = max term(K..K+W-1).
double sequence_limit(const std::function<double(int)>& term, int k_max) {
    std::vector<double> est;
    std::vector<double> diff;
    for (int K = 0; K + kWindow <= k_max; ++K) {
        double e = -kInf;
        for (int j = K; j < K + kWindow; ++j) e = std::max(e, term(j));
        if (std::isnan(e)) throw InconsistencyError("limit estimate hit NaN");
        if (std::isinf(e)) return e;
        est.push_back(e);
        if (est.size() < 2) continue;
        diff.push_back(est.back() - est[est.size() - 2]);
        const double d = diff.back();

        if (diff.size() >= 2) {
            const double prev = diff[diff.size() - 2];
            const double r = prev != 0.0 ? d / prev : 0.0;
            if (std::abs(d) < kStepTol) {
                if (prev != 0.0 && r > 0.0 && r < 1.0) return est.back() + d * r / (1.0 - r);
                return est.back();
            }
            // Stable geometric contraction: finish with an Aitken step.
            if (diff.size() >= 8 && K >= 50) {
                bool stable = true;
                for (std::size_t i = diff.size() - 6; i < diff.size(); ++i) {
                    if (diff[i - 1] == 0.0) { stable = false; break; }
                    const double ri = diff[i] / diff[i - 1];
                    if (!(ri > 0.0 && ri < 1.0 - 1e-4) || std::abs(ri - r) > 1e-3) { stable = false; break; }
                }
                if (stable) return est.back() + d * r / (1.0 - r);
            }
            // Non-shrinking drift in one direction: divergence.
            if (diff.size() >= 30) {
                bool drifting = true;
                for (std::size_t i = diff.size() - 29; i < diff.size(); ++i) {
                    const double ri = diff[i - 1] != 0.0 ? diff[i] / diff[i - 1] : 0.0;
                    if (!(ri >= 1.0 - 1e-4)) { drifting = false; break; }
                }
                if (drifting) return d > 0.0 ? kInf : -kInf;
            }
        }
    }
    if (diff.size() >= 2 && diff.back() * diff[diff.size() - 2] > 0.0) {
        return diff.back() > 0.0 ? kInf : -kInf;
    }
    return est.empty() ? -kInf : est.back();
}

double snap(double v, double target) { return std::abs(v - target) < 1e-12 ? target : v; }

double zero_anchor(const GeneratorSpec& g) {
    double s0 = 1.0;
    if (!g.breakpoints().empty()) s0 = std::min(s0, g.breakpoints().front());
    if (g.alpha() > 0.0) s0 = std::min(s0, g.alpha());
    return 0.5 * s0;
}

double inf_anchor(const GeneratorSpec& g) {
    double s0 = 1.0;
    if (!g.breakpoints().empty()) s0 = std::max(s0, g.breakpoints().back());
    if (std::isfinite(g.beta())) s0 = std::max(s0, g.beta());
    return 2.0 * s0;
}

}  // namespace

double estimate_limsup_at_zero(const GeneratorSpec& g) {
    const double s0 = zero_anchor(g);
    const double v = sequence_limit([&](int k) { return g.value(std::ldexp(s0, -k)); }, 990);
    return snap(v, -1.0);
}

double estimate_limsup_slope_at_inf(const GeneratorSpec& g) {
    const double s0 = inf_anchor(g);
    const double v = sequence_limit(
        [&](int k) {
            const double s = std::ldexp(s0, k);
            return g.value(s) / s;
        },
        990);
    return snap(snap(v, 0.0), 1.0);
}

double estimate_supremum(const GeneratorSpec& g) {
    const double s0 = inf_anchor(g);
    const double tail = sequence_limit([&](int k) { return g.value(std::ldexp(s0, k)); }, 990);
    if (std::isinf(tail) && tail > 0.0) return kInf;

    const auto grid = grid_for(g);
    std::size_t best = 0;
    double best_v = -kInf;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = g.value(grid[i]);
        if (v > best_v) {
            best_v = v;
            best = i;
        }
    }
    // Golden-section polish between the neighbours of the best grid point.
    double lo = grid[best > 0 ? best - 1 : 0];
    double hi = grid[std::min(best + 1, grid.size() - 1)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = g.value(x1);
    double f2 = g.value(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = g.value(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = g.value(x1);
        }
    }
    best_v = std::max({best_v, f1, f2});
    return std::max(best_v, tail);
}

double limsup_at_zero(const GeneratorSpec& g) {
    if (g.g0plus()) return *g.g0plus();
    const double v = estimate_limsup_at_zero(g);
    if (v > -1.0 + 1e-6) {
        throw InconsistencyError("estimated limsup of g at 0+ is " + std::to_string(v) +
                                 " > -1: g(t) <= t - 1 fails near 0");
    }
    return std::min(v, -1.0);
}

double limsup_slope_at_inf(const GeneratorSpec& g) {
    if (g.q_inf()) return *g.q_inf();
    const double v = estimate_limsup_slope_at_inf(g);
    if (!(v >= -1e-9 && v <= 1.0 + 1e-9)) {
        throw InconsistencyError("estimated limsup of g(t)/t at infinity is " + std::to_string(v) +
                                 ", outside [0, 1]");
    }
    return std::clamp(v, 0.0, 1.0);
}

double supremum(const GeneratorSpec& g) {
    if (g.sup_g()) return *g.sup_g();
    const double v = estimate_supremum(g);
    if (!(v > 0.0)) throw InconsistencyError("estimated supremum of g is not positive");
    return v;
}

GeneratorSpec resolve_limits(const GeneratorSpec& g) {
    DeclaredLimit g0 = g.g0plus();
    DeclaredLimit q = g.q_inf();
    DeclaredLimit sup = g.sup_g();
    if (!g0 && g.alpha() > 0.0) g0 = limsup_at_zero(g);
    if (std::isfinite(g.beta())) {
        if (!q) q = limsup_slope_at_inf(g);
        if (!sup) sup = supremum(g);
    }
    if (g0 == g.g0plus() && q == g.q_inf() && sup == g.sup_g()) return g;
    return g.with_limits(g0, q, sup);
}

}  // namespace hardy_means
