#include "hardy_means/quadrature.hpp"

#include "hardy_means/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

namespace hardy_means {

namespace {

constexpr double kRelTol = 1e-13;
constexpr double kAbsTol = 1e-15;
constexpr double kBlockTol = 1e-13;
constexpr int kMaxBlocks = 60;
constexpr unsigned kMaxDepth = 20;
constexpr double kPanelRatio = 4.0;

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

class Accumulator {
public:
    explicit Accumulator(bool keep) : keep_(keep) {}

    void add(double lo, double hi, double value, double err, const char* method) {
        // Kahan summation; some callers add ~100 panels of mixed sign.
        const double y = value - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
        err_ += err;
        if (keep_) panels_.push_back(Panel{lo, hi, value, err, method});
    }

    IntegralResult finish(bool converged) && {
        IntegralResult r;
        r.value = sum_;
        r.abs_error_estimate = err_;
        r.converged = converged;
        r.panels = std::move(panels_);
        return r;
    }

private:
    bool keep_;
    double sum_ = 0.0;
    double comp_ = 0.0;
    double err_ = 0.0;
    std::vector<Panel> panels_;
};

IntegralResult divergent(std::vector<Panel> panels) {
    IntegralResult r;
    r.value = kInf;
    r.converged = false;
    r.divergence_flag = true;
    r.abs_error_estimate = kInf;
    r.panels = std::move(panels);
    return r;
}

// Bisecting Gauss-Kronrod that stops on either a relative or an absolute target.
// Boost's adaptive driver is relative-only and recurses to full depth on
// panels whose integral is at rounding level (e.g. a sliver next to g(1) = 0).
// With max_depth 0 Boost reports the error in the [-1, 1] variable, so it is
// rescaled by the half-width here.
template <class F>
std::pair<double, double> adapt(const F& f, double lo, double hi, double abs_tol, unsigned depth) {
    double err = 0.0;
    const double v = GK::integrate(f, lo, hi, 0, 0.0, &err);
    err *= 0.5 * (hi - lo);
    if (err <= std::max(abs_tol, kRelTol * std::abs(v)) || depth == 0) return {v, err};
    const double mid = 0.5 * (lo + hi);
    const auto [v1, e1] = adapt(f, lo, mid, 0.5 * abs_tol, depth - 1);
    const auto [v2, e2] = adapt(f, mid, hi, 0.5 * abs_tol, depth - 1);
    return {v1 + v2, e1 + e2};
}

// Integral of g(s)/s^2 over [lo, hi], both finite, no breakpoint inside.
std::pair<double, double> numeric_panel(const GeneratorSpec& g, double lo, double hi) {
    return adapt([&](double s) { return g.value(s) / (s * s); }, lo, hi, kAbsTol, kMaxDepth);
}

// Finite stretch inside a single polynomial piece (or a non-polynomial generator).
void integrate_smooth(const GeneratorSpec& g, const Polynomial* piece, double lo, double hi,
                      const QuadratureOptions& opts, Accumulator& acc) {
    if (piece && opts.closed_form_polynomials && piece->degree() <= 4) {
        acc.add(lo, hi, piece->integral_over_s2(lo, hi), 0.0, "closed_form");
        return;
    }
    double a = lo;
    while (a < hi) {
        const double b = std::min(hi, a * kPanelRatio);
        const auto [v, e] = numeric_panel(g, a, b);
        acc.add(a, b, v, e, "gauss_kronrod");
        a = b;
    }
}

// Piece active on [lo, next breakpoint].
const Polynomial* piece_from(const GeneratorSpec& g, double lo) {
    const auto* poly = g.polynomial_form();
    if (!poly) return nullptr;
    return &poly->pieces[poly->right_piece(lo)];
}

// [lo, hi] finite, split at breakpoints.
void integrate_finite(const GeneratorSpec& g, double lo, double hi, const QuadratureOptions& opts,
                      Accumulator& acc) {
    std::vector<double> cuts{lo};
    for (double b : g.breakpoints()) {
        if (b > lo && b < hi) cuts.push_back(b);
    }
    cuts.push_back(hi);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        integrate_smooth(g, piece_from(g, cuts[i]), cuts[i], cuts[i + 1], opts, acc);
    }
}

}  // namespace

IntegralResult integrate_over_s2(const GeneratorSpec& g, double lo, double hi, const QuadratureOptions& opts) {
    if (!(lo > 0.0) || !std::isfinite(lo) || !(hi >= lo)) {
        throw DomainError("integrate_over_s2 needs 0 < lo <= hi");
    }
    Accumulator acc(opts.keep_panels);
    if (std::isfinite(hi)) {
        integrate_finite(g, lo, hi, opts, acc);
        return std::move(acc).finish(true);
    }

    // Finite part up to the last breakpoint, then the tail [A, inf).
    double A = lo;
    if (!g.breakpoints().empty() && g.breakpoints().back() > lo) {
        A = g.breakpoints().back();
        integrate_finite(g, lo, A, opts, acc);
    }

    const auto* poly = g.polynomial_form();
    if (poly && opts.closed_form_polynomials && poly->pieces.back().degree() <= 4) {
        const double v = poly->pieces.back().integral_over_s2(A, kInf);
        if (std::isinf(v)) return divergent({});
        acc.add(A, kInf, v, 0.0, "closed_form");
        return std::move(acc).finish(true);
    }

    // Blocks start no lower than s = 1 so that 60 of them reach s = 2^60.
    if (A < 1.0) {
        integrate_finite(g, A, 1.0, opts, acc);
        A = 1.0;
    }
    std::vector<double> blocks;
    double a = A;
    for (int k = 0; k < kMaxBlocks; ++k) {
        const double b = 2.0 * a;
        const auto [v, e] = numeric_panel(g, a, b);
        acc.add(a, b, v, e, "gauss_kronrod");
        blocks.push_back(v);
        a = b;
        if (std::abs(v) < kBlockTol) return std::move(acc).finish(true);
    }

    // 60 blocks without settling: decide from the block ratios.
    const std::size_t n = blocks.size();
    const double r1 = blocks[n - 1] / blocks[n - 2];
    const double r2 = blocks[n - 2] / blocks[n - 3];
    if (!(r1 < 1.0 - 1e-6) || !(r2 < 1.0 - 1e-6) || blocks[n - 1] == 0.0) {
        return divergent({});
    }
    if (r1 <= 0.0 || r2 <= 0.0) {
        // Sign changes: no geometric model for the remainder.
        return std::move(acc).finish(false);
    }
    const double remainder = blocks[n - 1] * r1 / (1.0 - r1);
    const double model_err = std::abs(remainder) * std::abs(r1 - r2) / (1.0 - r1);
    acc.add(a, kInf, remainder, model_err, "geometric_tail");
    return std::move(acc).finish(std::abs(r1 - r2) <= 1e-6);
}

IntegralResult integral_f_inv(const GeneratorSpec& f, double c, const QuadratureOptions& opts) {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("integral_f_inv needs c > 0");
    return integrate_over_s2(f, 1.0 / c, kInf, opts);
}

IntegralResult K_of_g(const GeneratorSpec& g, double a, double b, const QuadratureOptions& opts) {
    if (!(a > 0.0 && a <= 1.0)) throw ArgumentError("K(g) needs a in (0, 1]");
    if (!(b >= 1.0)) throw ArgumentError("K(g) needs b >= 1");
    if (std::isinf(b)) return integrate_over_s2(g, a, kInf, opts);
    auto r = integrate_over_s2(g, a, b, opts);
    const double head = g.value(b) / b;
    r.value += head;
    if (opts.keep_panels) r.panels.push_back(Panel{b, b, head, 0.0, "closed_form"});
    return r;
}

}  // namespace hardy_means
