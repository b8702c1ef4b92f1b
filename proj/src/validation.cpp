#include "hardy_means/validation.hpp"

#include "hardy_means/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hardy_means {

namespace {

constexpr double kSlack = 1e-10;
constexpr double kStrictMargin = 1e-12;

double slack_for(double a, double b) { return kSlack * std::max({1.0, std::abs(a), std::abs(b)}); }

void check_grid(std::span<const double> grid) {
    if (grid.empty()) throw ArgumentError("validation grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) throw ArgumentError("grid points must be positive and finite");
        if (i > 0 && !(grid[i] > grid[i - 1])) throw ArgumentError("grid must be strictly increasing");
    }
}

ValidationReport make(ConditionId id, std::size_t n) { return ValidationReport{id, true, std::nullopt, n, {}}; }

void fail(ValidationReport& r, double t, double lhs, double rhs) {
    if (!r.passed) return;
    r.passed = false;
    r.witness = Witness{t, lhs, rhs};
}

// sign(g(t)) = sign(t - 1), checked on the grid and at t = 1.
// Witness convention: lhs = -sign(t-1) g(t) must be < 0 (|g(1)| <= slack at t = 1).
ValidationReport sign_condition(const GeneratorSpec& g, std::span<const double> grid, ConditionId id) {
    auto r = make(id, grid.size());
    std::vector<double> pts(grid.begin(), grid.end());
    pts.insert(std::lower_bound(pts.begin(), pts.end(), 1.0), 1.0);
    for (double t : pts) {
        const double v = g.value(t);
        if (t == 1.0) {
            if (std::abs(v) > kSlack) {
                fail(r, t, std::abs(v), 0.0);
                r.note = "g(1) must vanish";
            }
            continue;
        }
        const double s = t > 1.0 ? 1.0 : -1.0;
        const double signed_v = s * v;
        const bool near_one = std::abs(t - 1.0) <= 1e-9;
        const bool ok = near_one ? signed_v > -kSlack : signed_v > 0.0;
        if (!ok) {
            fail(r, t, -signed_v, 0.0);
            r.note = "sign of g(t) differs from sign of t - 1";
        }
    }
    return r;
}

}  // namespace

std::string_view to_string(ConditionId id) noexcept {
    switch (id) {
        case ConditionId::Phi1: return "Phi1";
        case ConditionId::Phi2: return "Phi2";
        case ConditionId::Phi3a: return "Phi3a";
        case ConditionId::Phi3b: return "Phi3b";
        case ConditionId::Phi3c: return "Phi3c";
        case ConditionId::F_i: return "F-i";
        case ConditionId::F_ii: return "F-ii";
        case ConditionId::LHQD: return "LHQD";
    }
    return "?";
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2) throw ArgumentError("log_grid needs 0 < lo < hi and count >= 2");
    std::vector<double> out(count);
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::vector<double> default_grid() { return log_grid(1e-6, 1e6, 2048); }

std::vector<double> grid_for(const GeneratorSpec& g) {
    auto grid = default_grid();
    for (double b : g.breakpoints()) grid.push_back(b);
    grid.push_back(1.0);
    if (g.alpha() > 0.0) grid.push_back(g.alpha());
    if (std::isfinite(g.beta())) grid.push_back(g.beta());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

bool all_passed(std::span<const ValidationReport> reports) noexcept {
    return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
}

std::vector<ValidationReport> validate_phi(const GeneratorSpec& g, std::span<const double> grid) {
    check_grid(grid);
    const double alpha = g.alpha();
    const double beta = g.beta();
    if (alpha > 0.0 && !g.g0plus()) {
        throw ConfigurationError("Phi3b needs g0plus but it is still \"estimate\"; run resolve_limits() "
                                 "(the limit estimators) first");
    }
    if (std::isfinite(beta) && !g.q_inf()) {
        throw ConfigurationError("Phi3c needs q_inf but it is still \"estimate\"; run resolve_limits() "
                                 "(the limit estimators) first");
    }

    std::vector<ValidationReport> out;
    out.push_back(sign_condition(g, grid, ConditionId::Phi1));

    auto phi2 = make(ConditionId::Phi2, grid.size());
    for (double t : grid) {
        const double v = g.value(t);
        if (v > t - 1.0 + slack_for(v, t - 1.0)) fail(phi2, t, v, t - 1.0);
    }
    out.push_back(phi2);

    auto phi3a = make(ConditionId::Phi3a, grid.size());
    std::vector<double> inner;
    for (double t : grid) {
        if (t > alpha && t < beta) inner.push_back(t);
    }
    for (std::size_t i = 1; i + 1 < inner.size(); ++i) {
        const double t1 = inner[i - 1], t2 = inner[i], t3 = inner[i + 1];
        const double g1 = g.value(t1), g2 = g.value(t2), g3 = g.value(t3);
        const double chord = g1 + (g3 - g1) * (t2 - t1) / (t3 - t1);
        if (chord > g2 + kSlack * std::max({1.0, std::abs(g1), std::abs(g2), std::abs(g3)})) {
            fail(phi3a, t2, chord, g2);
        }
    }
    out.push_back(phi3a);

    auto phi3b = make(ConditionId::Phi3b, grid.size());
    if (alpha > 0.0) {
        const double g0 = *g.g0plus();
        const double ga = g.value(alpha);
        for (double t : grid) {
            if (t > alpha) break;
            if (t == alpha) continue;
            const double rhs = (t / alpha) * ga + ((alpha - t) / alpha) * g0;
            const double v = g.value(t);
            if (v > rhs + slack_for(v, rhs)) fail(phi3b, t, v, rhs);
        }
    } else {
        phi3b.note = "skipped: alpha = 0";
    }
    out.push_back(phi3b);

    auto phi3c = make(ConditionId::Phi3c, grid.size());
    if (std::isfinite(beta)) {
        const double q = *g.q_inf();
        const double gb = g.value(beta);
        for (double t : grid) {
            if (t < beta) continue;
            const double rhs = gb + q * (t - beta);
            const double v = g.value(t);
            if (v > rhs + slack_for(v, rhs)) fail(phi3c, t, v, rhs);
        }
    } else {
        phi3c.note = "skipped: beta = inf";
    }
    out.push_back(phi3c);
    return out;
}

std::vector<ValidationReport> validate_script_f(const GeneratorSpec& g, std::span<const double> grid) {
    check_grid(grid);
    std::vector<ValidationReport> out;
    out.push_back(sign_condition(g, grid, ConditionId::F_i));

    auto ratio = make(ConditionId::F_ii, grid.size());
    for (double x : log_grid(1e-4, 0.95, 24)) {
        double prev_t = 0.0;
        double prev_r = 0.0;
        bool have_prev = false;
        for (double t : grid) {
            if (t <= x) continue;
            if (t >= 1.0) break;
            const double denom = g.value(t / x);
            if (denom == 0.0) continue;
            const double r = g.value(t) / denom;
            if (have_prev && !(r - prev_r > kStrictMargin)) {
                fail(ratio, t, prev_r, r);
                ratio.note = "t -> g(t)/g(t/x) not strictly increasing for x=" + std::to_string(x) +
                             " between t=" + std::to_string(prev_t) + " and t=" + std::to_string(t);
            }
            prev_t = t;
            prev_r = r;
            have_prev = true;
        }
        if (!ratio.passed) break;
    }
    out.push_back(ratio);
    return out;
}

ValidationReport check_lhqd(const GeneratorSpec& g, double p, std::span<const double> grid) {
    check_grid(grid);
    auto r = sign_condition(g, grid, ConditionId::LHQD);
    if (!r.passed) {
        r.note = "sign condition fails; " + r.note;
        return r;
    }
    double prev = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        const double v = std::pow(t, p) * g.value(t);
        if (i > 0) {
            const bool inside = t < 1.0;
            const bool ok = inside ? v - prev > kStrictMargin : v >= prev - slack_for(v, prev);
            if (!ok) {
                fail(r, t, prev, v);
                r.note = inside ? "t^p g(t) not strictly increasing on (0,1)" : "t^p g(t) decreases";
                break;
            }
        }
        prev = v;
    }
    if (r.passed) r.note = "sufficient certificate for class F";
    return r;
}

ValidationReport check_concave(const GeneratorSpec& g, std::span<const double> grid) {
    check_grid(grid);
    auto r = make(ConditionId::Phi3a, grid.size());
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double t1 = grid[i - 1], t2 = grid[i], t3 = grid[i + 1];
        const double g1 = g.value(t1), g2 = g.value(t2), g3 = g.value(t3);
        const double chord = g1 + (g3 - g1) * (t2 - t1) / (t3 - t1);
        if (chord > g2 + kSlack * std::max({1.0, std::abs(g1), std::abs(g2), std::abs(g3)})) {
            fail(r, t2, chord, g2);
            r.note = "midpoint concavity fails";
            break;
        }
    }
    return r;
}

}  // namespace hardy_means
