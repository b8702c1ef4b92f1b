#include "hardy_means/envelope.hpp"

#include "hardy_means/errors.hpp"
#include "hardy_means/validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

namespace hardy_means {

namespace {

constexpr int kScan = 512;
constexpr double kDiniTol = 1e-8;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(15);
    os << x;
    return os.str();
}

struct Objective {
    std::function<double(double)> value;
    /// Sign of the one-sided slope to the right of t (positive while ascending); empty if unknown.
    std::function<double(double)> slope;
};

// Smallest maximizer of obj over [lo, hi]: 512-point scan, then local refinement.
// Exact derivative signs (polynomial forms) locate interior peaks to rounding;
// otherwise golden-section search is used. Candidate special points (piece
// boundaries and interval ends) win ties so kinks are hit exactly.
double smallest_maximizer(const Objective& obj, double lo, double hi, std::vector<double> specials) {
    std::vector<double> ts(kScan), vs(kScan);
    for (int i = 0; i < kScan; ++i) {
        ts[i] = i == kScan - 1 ? hi : lo + (hi - lo) * i / (kScan - 1);
        vs[i] = obj.value(ts[i]);
    }
    const double vmax = *std::max_element(vs.begin(), vs.end());
    const double tol = 1e-13 * std::max(1.0, std::abs(vmax));
    const int i = static_cast<int>(std::find_if(vs.begin(), vs.end(), [&](double v) { return v >= vmax - tol; }) -
                                   vs.begin());
    const double left = ts[std::max(i - 1, 0)];
    const double right = ts[std::min(i + 1, kScan - 1)];

    double best_t = ts[i];
    double best_v = vs[i];
    const bool plateau = i + 1 < kScan && vs[i + 1] >= vmax - tol;
    if (i == 0) {
        best_t = lo;
    } else if (plateau) {
        // Leftmost point of the plateau inside [t_{i-1}, t_i].
        double a = ts[i - 1], b = ts[i];
        for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, b); ++it) {
            const double m = 0.5 * (a + b);
            (obj.value(m) >= vmax - tol ? b : a) = m;
        }
        best_t = b;
        best_v = obj.value(b);
    } else if (obj.slope && obj.slope(left) > 0.0 && obj.slope(right) < 0.0) {
        double a = left, b = right;
        for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, b); ++it) {
            const double m = 0.5 * (a + b);
            (obj.slope(m) > 0.0 ? a : b) = m;
        }
        best_t = 0.5 * (a + b);
        best_v = obj.value(best_t);
    } else {
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = left, b = right;
        double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
        double f1 = obj.value(x1), f2 = obj.value(x2);
        for (int it = 0; it < 200 && b - a > 1e-12 * std::max(1.0, b); ++it) {
            if (f1 >= f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - inv_phi * (b - a);
                f1 = obj.value(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + inv_phi * (b - a);
                f2 = obj.value(x2);
            }
        }
        best_t = f1 >= f2 ? x1 : x2;
        best_v = std::max(f1, f2);
        if (vs[i] >= best_v) {
            best_t = ts[i];
            best_v = vs[i];
        }
    }

    specials.push_back(lo);
    specials.push_back(hi);
    std::sort(specials.begin(), specials.end());
    const double target = std::max(best_v, vmax) - tol;
    for (double s : specials) {
        if (s < left || s > right || s > best_t + 1e-9 * std::max(1.0, best_t)) continue;
        if (obj.value(s) >= target) return s;
    }
    return best_t;
}

std::vector<double> breakpoints_in(const GeneratorSpec& g, double lo, double hi) {
    std::vector<double> out;
    for (double b : g.breakpoints()) {
        if (b >= lo && b <= hi) out.push_back(b);
    }
    return out;
}

void check_dini(const GeneratorSpec& g, double x, double slope, const char* name) {
    const double upper = dini(g, x, DiniSide::right_upper);
    const double lower = dini(g, x, DiniSide::left_lower);
    if (upper > slope + kDiniTol || slope > lower + kDiniTol) {
        throw ConsistencyError(std::string("Dini sandwich fails at ") + name + "=" + fmt(x) + ": D+g=" + fmt(upper) +
                               ", slope=" + fmt(slope) + ", D-g=" + fmt(lower));
    }
}

}  // namespace

std::pair<double, double> find_a(const GeneratorSpec& g) {
    const double alpha = g.alpha();
    if (alpha == 0.0) return {0.0, 1.0};
    if (!g.g0plus()) throw ConfigurationError("find_a needs g0plus; run resolve_limits() first");
    const double g0 = *g.g0plus();
    if (!std::isfinite(g0)) {
        throw PreconditionError("alpha > 0 with infinite g_+(0): the left slope of the envelope would be infinite");
    }
    Objective phi{[&](double t) { return (g.value(t) - g0) / t; }, {}};
    if (const auto* poly = g.polynomial_form()) {
        // sign of phi'(t) = sign(t g'(t+) - (g(t) - g0))
        phi.slope = [&g, poly, g0](double t) {
            return t * poly->pieces[poly->right_piece(t)].derivative(t) - (g.value(t) - g0);
        };
    }
    const double a = smallest_maximizer(phi, alpha, 1.0, breakpoints_in(g, alpha, 1.0));
    return {a, (g.value(a) - g0) / a};
}

std::pair<double, double> find_b(const GeneratorSpec& g) {
    const double beta = g.beta();
    if (std::isinf(beta)) return {kInf, 1.0};
    if (!g.q_inf()) throw PreconditionError("find_b needs q_inf; run resolve_limits() first");
    const double q = *g.q_inf();
    Objective psi{[&](double t) { return g.value(t) - q * t; }, {}};
    if (const auto* poly = g.polynomial_form()) {
        psi.slope = [poly, q](double t) { return poly->pieces[poly->right_piece(t)].derivative(t) - q; };
    }
    const double b = smallest_maximizer(psi, 1.0, beta, breakpoints_in(g, 1.0, beta));
    return {b, q};
}

GeneratorSpec gamma(const GeneratorSpec& g, double a, double b, double p, double q) {
    if (!(a >= 0.0) || !(a < b)) throw ArgumentError("gamma needs 0 <= a < b");
    if (a == 0.0 && std::isinf(b)) return g;
    const auto* poly = g.polynomial_form();
    if (!poly) {
        throw PreconditionError("gamma with a > 0 or b < inf needs a piecewise-polynomial generator, got " +
                                g.describe());
    }

    PiecewisePolynomial out;
    if (a > 0.0) {
        const double ga = g.value(a);
        out.pieces.emplace_back(std::vector<double>{ga - p * a, p});
        out.breakpoints.push_back(a);
    }
    // Pieces of g restricted to (a, b).
    std::size_t piece = poly->right_piece(a);
    out.pieces.push_back(poly->pieces[piece]);
    for (double t : poly->breakpoints) {
        if (t > a && t < b) {
            out.breakpoints.push_back(t);
            out.pieces.push_back(poly->pieces[poly->right_piece(t)]);
        }
    }
    if (std::isfinite(b)) {
        const double gb = g.value(b);
        out.breakpoints.push_back(b);
        out.pieces.emplace_back(std::vector<double>{gb - q * b, q});
    }
    DeclaredLimit g0 = a > 0.0 ? DeclaredLimit(g.value(a) - p * a) : g.g0plus();
    DeclaredLimit slope = std::isfinite(b) ? DeclaredLimit(q) : g.q_inf();
    if (g0 && *g0 > -1.0) g0 = -1.0;  // rounding of g(a) - p a when g_+(0) = -1
    return GeneratorSpec::piecewise(std::move(out)).with_limits(g0, slope, std::nullopt);
}

EnvelopeParams concave_envelope(const GeneratorSpec& g) {
    const auto grid = grid_for(g);
    for (const auto& rep : validate_phi(g, grid)) {
        if (!rep.passed) {
            throw PreconditionError("concave_envelope needs a Phi-class generator; " +
                                    std::string(to_string(rep.condition)) + " fails at t=" + fmt(rep.witness->t));
        }
    }

    const auto [a, p] = find_a(g);
    const auto [b, q] = find_b(g);
    EnvelopeParams env{a, b, p, q, gamma(g, a, b, p, q)};

    if (g.alpha() == 0.0 && !(a == 0.0 && p == 1.0)) throw ConsistencyError("alpha = 0 requires a = 0 and p = 1");
    if (std::isinf(g.beta()) && !(std::isinf(b) && q == 1.0)) {
        throw ConsistencyError("beta = inf requires b = inf and q = 1");
    }
    if (!(q >= 0.0 && q <= 1.0)) throw ConsistencyError("envelope slope q=" + fmt(q) + " outside [0, 1]");
    if (a > 0.0) check_dini(g, a, p, "a");
    if (std::isfinite(b)) check_dini(g, b, q, "b");

    std::vector<double> pts = grid;
    if (a > 0.0) pts.push_back(a);
    if (std::isfinite(b)) pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::vector<double> ev(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double t = pts[i];
        ev[i] = env.envelope.value(t);
        const double gv = g.value(t);
        const double scale = std::max({1.0, std::abs(gv), std::abs(ev[i])});
        if (ev[i] < gv - 1e-10 * scale) {
            throw ConsistencyError("envelope below g at t=" + fmt(t) + ": " + fmt(ev[i]) + " < " + fmt(gv));
        }
        if (t > a && t < b && std::abs(ev[i] - gv) > 1e-12 * scale) {
            throw ConsistencyError("envelope differs from g inside (a, b) at t=" + fmt(t));
        }
    }
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        const double chord = ev[i - 1] + (ev[i + 1] - ev[i - 1]) * (pts[i] - pts[i - 1]) / (pts[i + 1] - pts[i - 1]);
        const double scale = std::max({1.0, std::abs(ev[i - 1]), std::abs(ev[i]), std::abs(ev[i + 1])});
        if (chord > ev[i] + 1e-10 * scale) {
            throw ConsistencyError("envelope not concave at t=" + fmt(pts[i]));
        }
    }
    return env;
}

}  // namespace hardy_means
