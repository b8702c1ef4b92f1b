#include "hardy_means/hardy.hpp"

#include "hardy_means/errors.hpp"
#include "hardy_means/limits.hpp"
#include "hardy_means/qd_mean.hpp"
#include "hardy_means/validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace hardy_means {

namespace {

constexpr double kStart = 1.0 + 1e-8;
constexpr double kCap = 1e12;
constexpr double kRelTol = 1e-14;
constexpr double kRouteTol = 1e-6;
constexpr double kBranchTol = 1e-8;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

using Residual = std::function<double(double)>;

struct Root {
    double c;
    double residual;
};

// Root of a residual that is positive left of the root and nonpositive right of it.
// The bracket [lo, hi] is grown by doubling hi until the residual changes sign.
Root solve_decreasing(const Residual& F, double lo, double hi, std::vector<BracketStep>& trace,
                      bool grow = true) {
    auto step = [&](double c, const char* phase) {
        const double v = F(c);
        trace.push_back(BracketStep{c, v, phase});
        if (!std::isfinite(v)) throw SolverError("residual not finite at c=" + fmt(c));
        return v;
    };
    double f_lo = step(lo, "bracket");
    if (f_lo <= 0.0) {
        if (f_lo == 0.0) return {lo, 0.0};
        throw SolverError("residual already nonpositive at the lower end c=" + fmt(lo));
    }
    double f_hi = step(hi, "bracket");
    while (f_hi > 0.0) {
        if (!grow) throw SolverError("no sign change on [" + fmt(lo) + ", " + fmt(hi) + "]");
        lo = hi;
        f_lo = f_hi;
        hi *= 2.0;
        if (hi > kCap) {
            throw SolverError("no sign change below c=1e12; the constant is suspiciously large or infinite");
        }
        f_hi = step(hi, "bracket");
    }
    if (f_hi == 0.0) return {hi, 0.0};
    for (int it = 0; it < 200 && hi - lo > kRelTol * hi; ++it) {
        const double m = 0.5 * (lo + hi);
        const double fm = step(m, "bisect");
        if (fm == 0.0) return {m, 0.0};
        if (fm > 0.0) {
            lo = m;
            f_lo = fm;
        } else {
            hi = m;
            f_hi = fm;
        }
    }
    return std::abs(f_lo) <= std::abs(f_hi) ? Root{lo, std::abs(f_lo)} : Root{hi, std::abs(f_hi)};
}

double integral_or_throw(const GeneratorSpec& g, double lo, double hi) {
    const auto r = integrate_over_s2(g, lo, hi);
    if (r.divergence_flag || !r.converged) {
        throw SolverError("integral of g(s)/s^2 over [" + fmt(lo) + ", " + fmt(hi) + "] did not converge");
    }
    return r.value;
}

void attach_panels(HardyReport& rep, const GeneratorSpec& g, double lo, double hi) {
    QuadratureOptions q;
    q.keep_panels = true;
    rep.panels = integrate_over_s2(g, lo, hi, q).panels;
}

// Root of the integral of f(1/x) over (0, c] for a concave f with a convergent tail.
// Returns nullopt when the integral over (0, 1] diverges.
std::optional<Root> concave_root(const GeneratorSpec& f, std::vector<BracketStep>& trace) {
    const auto tail = integrate_over_s2(f, 1.0, kInf);
    if (tail.divergence_flag) return std::nullopt;
    if (!tail.converged) throw SolverError("tail integral of " + f.describe() + " did not converge");
    const double T = tail.value;
    const Residual psi = [&](double c) { return T + integral_or_throw(f, 1.0 / c, 1.0); };
    return solve_decreasing(psi, 1.0, kStart, trace);
}

bool concave_certificate(const GeneratorSpec& f) {
    if (!f.is_piecewise()) return is_concave_generator(f);
    const auto grid = grid_for(f);
    if (!check_concave(f, grid).passed) return false;
    const auto reports = validate_phi(resolve_limits(f), grid);
    return std::all_of(reports.begin(), reports.end(),
                       [](const ValidationReport& r) { return r.condition != ConditionId::Phi1 || r.passed; });
}

// h(u) = u - ln(1 + u), accurate for small u.
double u_minus_log1p(double u) {
    if (std::abs(u) < 1e-3) {
        double term = u * u;
        double sum = 0.0;
        for (int k = 2; k < 12; ++k) {
            sum += (k % 2 == 0 ? 1.0 : -1.0) * term / k;
            term *= u;
        }
        return sum;
    }
    return u - std::log1p(u);
}

void require_phi(const GeneratorSpec& g, const char* op) {
    for (const auto& rep : validate_phi(g, grid_for(g))) {
        if (!rep.passed) {
            throw PreconditionError(std::string(op) + " needs a Phi-class generator; " +
                                    std::string(to_string(rep.condition)) + " fails at t=" + fmt(rep.witness->t));
        }
    }
}

HardyExistence exists_resolved(const GeneratorSpec& g) {
    HardyExistence ex;
    if (std::isinf(g.beta())) {
        ex.branch = "beta_infinite";
        const auto r = integral_f_inv(g, 1.0);
        ex.exists = !r.divergence_flag;
        ex.diagnosis = ex.exists ? "integral of g(1/t) over (0, 1] is finite (" + fmt(r.value) + ")"
                                 : "integral of g(1/t) over (0, 1] diverges; not a Hardy mean";
    } else {
        ex.branch = "beta_finite";
        const double s = supremum(g);
        ex.exists = std::isfinite(s);
        ex.diagnosis = ex.exists ? "g is bounded above (sup " + fmt(s) + ")"
                                 : "g is unbounded above with beta < inf; not a Hardy mean";
    }
    return ex;
}

}  // namespace

std::string_view to_string(HardyRoute route) noexcept {
    switch (route) {
        case HardyRoute::concave_integral: return "concave_integral";
        case HardyRoute::bounded_transcendental: return "bounded_transcendental";
        case HardyRoute::envelope_case_i: return "envelope_case_i";
        case HardyRoute::envelope_case_ii: return "envelope_case_ii";
        case HardyRoute::envelope_case_iii_Kneg: return "envelope_case_iii_Kneg";
        case HardyRoute::envelope_case_iii_Kpos: return "envelope_case_iii_Kpos";
    }
    return "unknown";
}

HardyReport hardy_concave(const GeneratorSpec& f, const HardyOptions& opts) {
    HardyReport rep;
    rep.route = HardyRoute::concave_integral;
    const auto tail = integrate_over_s2(f, 1.0, kInf);
    if (tail.divergence_flag) {
        rep.constant = kInf;
        rep.diagnosis = "integral of f(1/x) over (0, 1] diverges; E_f is not a Hardy mean";
        return rep;
    }
    if (!concave_certificate(f)) {
        throw PreconditionError(f.describe() + " has no concavity certificate; use hardy_envelope instead");
    }
    const auto root = concave_root(f, rep.trace);
    rep.constant = root->c;
    rep.residual = root->residual;
    rep.diagnosis = "root of the integral of f(1/x) over (0, c]";
    if (opts.trace) attach_panels(rep, f, 1.0 / rep.constant, kInf);
    else rep.trace.clear();
    return rep;
}

HardyReport hardy_truncated(double M, const HardyOptions& opts) {
    if (!(M > 0.0) || !std::isfinite(M)) throw ArgumentError("hardy_truncated needs a finite M > 0");
    HardyReport rep;
    rep.route = HardyRoute::bounded_transcendental;
    const double L = std::log1p(M);
    auto H = [&](double u) { return u_minus_log1p(u) - L; };

    // u = c - 1; H is increasing on (0, inf) with H(0) = -L.
    double lo = 0.0;
    double hi = std::sqrt(2.0 * L);
    while (H(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        rep.trace.push_back(BracketStep{1.0 + hi, H(hi), "bracket"});
    }
    double u = hi;
    for (int it = 0; it < 200; ++it) {
        const double h = H(u);
        rep.trace.push_back(BracketStep{1.0 + u, h, "newton"});
        if (h == 0.0) break;
        (h < 0.0 ? lo : hi) = u;
        double next = u - h * (1.0 + u) / u;  // Newton step, H'(u) = u / (1 + u)
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - u) <= 1e-16 * u || hi - lo <= 1e-16 * hi) {
            u = next;
            break;
        }
        u = next;
    }
    rep.constant = 1.0 + u;
    rep.residual = std::abs(H(u));
    std::vector<std::pair<int, double>> bounds;
    for (int n = 2; n <= 6; ++n) bounds.emplace_back(n, hardy_factorial_bound(M, n));
    rep.factorial_bounds = std::move(bounds);
    rep.diagnosis = "root of c - 1 - ln c = ln(M + 1) with M = " + fmt(M);
    if (!opts.trace) rep.trace.clear();
    return rep;
}

double hardy_factorial_bound(double M, int n) {
    if (n < 2) throw ArgumentError("hardy_factorial_bound needs n >= 2");
    if (!(M > 0.0) || !std::isfinite(M)) throw ArgumentError("hardy_factorial_bound needs a finite M > 0");
    return std::exp(std::pow(std::tgamma(n + 1.0) * std::log1p(M), 1.0 / n));
}

HardyExistence hardy_exists(const GeneratorSpec& g) {
    const GeneratorSpec gr = resolve_limits(g);
    require_phi(gr, "hardy_exists");
    return exists_resolved(gr);
}

HardyReport hardy_envelope(const GeneratorSpec& g, const HardyOptions& opts) {
    const GeneratorSpec gr = resolve_limits(g);
    require_phi(gr, "hardy_envelope");

    HardyReport rep;
    const bool alpha0 = gr.alpha() == 0.0;
    const bool beta_inf = std::isinf(gr.beta());
    rep.route = !alpha0 ? HardyRoute::envelope_case_iii_Kpos
                        : (beta_inf ? HardyRoute::envelope_case_i : HardyRoute::envelope_case_ii);
    rep.g_in_F = all_passed(validate_script_f(gr, grid_for(gr)));
    if (!rep.g_in_F) {
        rep.notes.push_back("g fails the class-F grid check: the constant belongs to E_conc(g) and bounds "
                            "E_g only through the comparison E_g <= E_conc(g)");
    }

    const auto ex = exists_resolved(gr);
    if (!ex.exists) {
        rep.constant = kInf;
        rep.diagnosis = ex.diagnosis;
        return rep;
    }

    const EnvelopeParams env = concave_envelope(gr);
    const auto& [a, b, p, q, conc] = env;
    rep.envelope = env;
    Root root{};

    if (alpha0 && beta_inf) {
        root = *concave_root(gr, rep.trace);
        rep.diagnosis = "case (i): conc(g) = g; root of the integral of g(1/t) over (0, c]";
    } else if (alpha0) {
        if (!(q < 1e-10)) {
            throw PreconditionError("case (ii) needs q = 0 but q_inf = " + fmt(q));
        }
        const double B = gr.value(b) / b + integral_or_throw(gr, 1.0, b);
        const Residual F = [&](double c) { return B + integral_or_throw(gr, 1.0 / c, 1.0); };
        root = solve_decreasing(F, 1.0, kStart, rep.trace);
        rep.diagnosis = "case (ii): g(b)/b + integral of g(1/t) over [1/b, c] = 0 with b = " + fmt(b);
    } else {
        const auto Kr = K_of_g(gr, a, b);
        if (Kr.divergence_flag || !Kr.converged) throw SolverError("K(g) did not converge");
        const double K = Kr.value;
        rep.K_value = K;
        const Residual neg = [&](double c) { return K - integral_or_throw(gr, a, 1.0 / c); };
        const double ga = gr.value(a);
        const Residual pos = [&](double c) { return K + p * std::log(c * a) + (c - 1.0 / a) * (ga - p * a); };
        auto solve_neg = [&] {
            if (K == 0.0) return Root{1.0 / a, 0.0};
            return solve_decreasing(neg, 1.0, 1.0 / a, rep.trace, false);
        };
        auto solve_pos = [&] { return solve_decreasing(pos, 1.0 / a, 2.0 / a, rep.trace); };

        if (std::abs(K) <= 1e-12) {
            const Root rn = solve_neg();
            const Root rp = solve_pos();
            if (std::abs(rn.c - rp.c) > kBranchTol * rn.c) {
                throw ConsistencyError("K(g) ~ 0 but the two branch roots differ: " + fmt(rn.c) + " vs " +
                                       fmt(rp.c));
            }
            rep.notes.push_back("K(g) within 1e-12 of 0: both branches solved and agree");
        }
        if (K <= 0.0) {
            rep.route = HardyRoute::envelope_case_iii_Kneg;
            root = solve_neg();
            rep.diagnosis = "case (iii), K(g) <= 0: root in (1, 1/a] with a = " + fmt(a);
        } else {
            rep.route = HardyRoute::envelope_case_iii_Kpos;
            root = solve_pos();
            rep.diagnosis = "case (iii), K(g) > 0: root beyond 1/a with a = " + fmt(a);
        }
    }
    rep.constant = root.c;
    rep.residual = root.residual;

    std::vector<BracketStep> scratch;
    const auto direct = concave_root(conc, scratch);
    if (!direct) throw ConsistencyError("direct integral for conc(g) diverges although the case formula converged");
    rep.direct_constant = direct->c;
    if (std::abs(direct->c - root.c) > kRouteTol * root.c) {
        throw ConsistencyError("case-formula root " + fmt(root.c) + " disagrees with the direct root " +
                               fmt(direct->c) + " for conc(g)");
    }
    if (opts.trace) attach_panels(rep, conc, 1.0 / rep.constant, kInf);
    else rep.trace.clear();
    return rep;
}

HardyReport hardy_upper_bound_phi(const GeneratorSpec& g, const HardyOptions& opts) {
    const GeneratorSpec gr = resolve_limits(g);
    const auto phi = validate_phi(gr, grid_for(gr));
    const bool phi_ok = all_passed(phi);
    const bool below_line = std::any_of(phi.begin(), phi.end(), [](const ValidationReport& r) {
        return r.condition == ConditionId::Phi2 && r.passed;
    });
    const double sup = supremum(gr);

    std::optional<HardyReport> truncated;
    std::optional<HardyReport> envelope;
    std::vector<std::string> notes;
    if (std::isfinite(sup) && below_line) {
        truncated = hardy_truncated(sup, opts);
        notes.push_back("truncated route: " + fmt(truncated->constant) + " from the majorant min(t - 1, " +
                        fmt(sup) + ")");
    } else {
        notes.push_back(std::isfinite(sup) ? "truncated route skipped: g(t) <= t - 1 fails"
                                           : "truncated route skipped: g is unbounded above");
    }
    if (phi_ok) {
        envelope = hardy_envelope(gr, opts);
        notes.push_back("envelope route: " + fmt(envelope->constant));
    } else {
        notes.push_back("envelope route skipped: g is not in Phi");
    }
    if (!truncated && !envelope) {
        throw PreconditionError("no upper-bound route applies to " + g.describe() + ": " + notes.front() + "; " +
                                notes.back());
    }

    HardyReport rep;
    if (truncated && envelope) {
        const double ce = envelope->constant;
        const double ct = truncated->constant;
        const bool env_tighter = ce <= ct;
        rep = env_tighter ? *envelope : *truncated;
        if (std::abs(ce - ct) <= 1e-12 * std::max(ce, ct)) notes.push_back("both routes agree");
        else notes.push_back(env_tighter ? "envelope route is tighter" : "truncated route is tighter");
        if (!env_tighter) {
            rep.g_in_F = envelope->g_in_F;
            rep.envelope = envelope->envelope;
        }
    } else {
        rep = truncated ? *truncated : *envelope;
        if (truncated) rep.g_in_F = all_passed(validate_script_f(gr, grid_for(gr)));
    }
    rep.notes.insert(rep.notes.end(), notes.begin(), notes.end());
    rep.diagnosis = "upper bound for the Hardy constant of E_g; " + rep.diagnosis;
    return rep;
}

HardyReport theoretical_constant(const GeneratorSpec& g, const HardyOptions& opts) {
    if (const auto* pw = std::get_if<PowerKind>(&g.kind()); pw && pw->p >= 1.0) {
        HardyReport rep;
        rep.route = HardyRoute::concave_integral;
        rep.constant = kInf;
        rep.diagnosis = "power mean with p >= 1 dominates the arithmetic mean; not a Hardy mean";
        return rep;
    }
    if (const auto* tl = std::get_if<TruncatedLinearKind>(&g.kind())) return hardy_truncated(tl->M, opts);
    if (!g.is_piecewise()) return hardy_concave(g, opts);
    return hardy_upper_bound_phi(g, opts);
}

}  // namespace hardy_means
