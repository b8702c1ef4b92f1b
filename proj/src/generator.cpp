#include "hardy_means/generator.hpp"

#include "hardy_means/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hardy_means {

namespace {

constexpr double kContinuityTol = 1e-12;

std::string fmt_double(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
    for (double c : coeffs_) {
        if (!std::isfinite(c)) throw ArgumentError("polynomial coefficients must be finite");
    }
}

double Polynomial::operator()(double t) const noexcept {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

double Polynomial::derivative(double t) const noexcept {
    double acc = 0.0;
    for (std::size_t k = coeffs_.size() - 1; k >= 1; --k) acc = acc * t + static_cast<double>(k) * coeffs_[k];
    return acc;
}

std::size_t Polynomial::degree() const noexcept {
    std::size_t d = coeffs_.size() - 1;
    while (d > 0 && coeffs_[d] == 0.0) --d;
    return d;
}

double Polynomial::integral_over_s2(double lo, double hi) const {
    if (!(lo > 0.0) || !(hi >= lo)) throw ArgumentError("integral_over_s2 needs 0 < lo <= hi");
    if (lo == hi) return 0.0;
    if (std::isinf(hi)) {
        if (degree() >= 1) return kInf;
        return coeffs_[0] / lo;
    }
    double total = coeffs_[0] * (hi - lo) / (lo * hi);
    if (coeffs_.size() > 1) total += coeffs_[1] * std::log(hi / lo);
    for (std::size_t k = 2; k < coeffs_.size(); ++k) {
        if (coeffs_[k] == 0.0) continue;
        const double e = static_cast<double>(k - 1);
        total += coeffs_[k] * (std::pow(hi, e) - std::pow(lo, e)) / e;
    }
    return total;
}

// ---------------------------------------------------------------------------
// PiecewisePolynomial

std::size_t PiecewisePolynomial::left_piece(double t) const noexcept {
    return static_cast<std::size_t>(
        std::lower_bound(breakpoints.begin(), breakpoints.end(), t) - breakpoints.begin());
}

std::size_t PiecewisePolynomial::right_piece(double t) const noexcept {
    return static_cast<std::size_t>(
        std::upper_bound(breakpoints.begin(), breakpoints.end(), t) - breakpoints.begin());
}

double PiecewisePolynomial::operator()(double t) const noexcept { return pieces[left_piece(t)](t); }

void PiecewisePolynomial::check() const {
    if (pieces.size() != breakpoints.size() + 1) {
        throw ArgumentError("piecewise generator needs exactly one more piece than breakpoints");
    }
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        const double t = breakpoints[i];
        if (!(t > 0.0) || !std::isfinite(t)) throw ArgumentError("breakpoints must be positive and finite");
        if (i > 0 && !(t > breakpoints[i - 1])) throw ArgumentError("breakpoints must be strictly increasing");
        const double jump = std::abs(pieces[i](t) - pieces[i + 1](t));
        if (jump > kContinuityTol) {
            throw ArgumentError("piecewise generator is discontinuous at t=" + fmt_double(t) +
                                " (jump " + fmt_double(jump) + ")");
        }
    }
}

// ---------------------------------------------------------------------------
// GeneratorSpec

GeneratorSpec::GeneratorSpec(GeneratorKind kind) : kind_(std::move(kind)) {}

GeneratorSpec GeneratorSpec::power(double p) {
    if (!std::isfinite(p)) throw ArgumentError("power exponent must be finite");
    GeneratorSpec g(PowerKind{p});
    if (p == 1.0) g.poly_ = PiecewisePolynomial{{}, {Polynomial({-1.0, 1.0})}};
    return g;
}

GeneratorSpec GeneratorSpec::log() { return GeneratorSpec(LogKind{}); }

GeneratorSpec GeneratorSpec::truncated_linear(double M) {
    if (!(M > 0.0) || !std::isfinite(M)) throw ArgumentError("truncated_linear needs a finite M > 0");
    GeneratorSpec g(TruncatedLinearKind{M});
    g.poly_ = PiecewisePolynomial{{M + 1.0}, {Polynomial({-1.0, 1.0}), Polynomial({M})}};
    g.g0plus_ = -1.0;
    g.q_inf_ = 0.0;
    g.sup_g_ = M;
    return g;
}

GeneratorSpec GeneratorSpec::piecewise(PiecewisePolynomial poly, double alpha, double beta) {
    poly.check();
    GeneratorSpec g(PiecewiseKind{poly});
    g.poly_ = std::move(poly);
    g.alpha_ = alpha;
    g.beta_ = beta;
    g.check_metadata();
    return g;
}

GeneratorSpec GeneratorSpec::with_interval(double alpha, double beta) const {
    if (std::holds_alternative<TruncatedLinearKind>(kind_) && (alpha != 0.0 || beta != kInf)) {
        throw ArgumentError("truncated_linear has forced alpha = 0 and beta = inf");
    }
    GeneratorSpec g = *this;
    g.alpha_ = alpha;
    g.beta_ = beta;
    g.check_metadata();
    return g;
}

GeneratorSpec GeneratorSpec::with_limits(DeclaredLimit g0plus, DeclaredLimit q_inf,
                                         DeclaredLimit sup_g) const {
    if (std::holds_alternative<TruncatedLinearKind>(kind_)) {
        const double M = std::get<TruncatedLinearKind>(kind_).M;
        const bool forced_ok = (!g0plus || *g0plus == -1.0) && (!q_inf || *q_inf == 0.0) &&
                               (!sup_g || *sup_g == M);
        if (!forced_ok) throw ArgumentError("truncated_linear limit data is forced and cannot be overridden");
        return *this;
    }
    GeneratorSpec g = *this;
    g.g0plus_ = g0plus;
    g.q_inf_ = q_inf;
    g.sup_g_ = sup_g;
    g.check_metadata();
    return g;
}

void GeneratorSpec::check_metadata() const {
    if (!(alpha_ >= 0.0 && alpha_ < 1.0)) throw ArgumentError("alpha must lie in [0, 1)");
    if (!(beta_ > 1.0)) throw ArgumentError("beta must lie in (1, inf]");
    if (g0plus_ && !(*g0plus_ <= -1.0)) throw ArgumentError("declared g0plus must be <= -1");
    if (q_inf_ && !(*q_inf_ >= 0.0 && *q_inf_ <= 1.0)) throw ArgumentError("declared q_inf must lie in [0, 1]");
    if (sup_g_ && !(*sup_g_ > 0.0)) throw ArgumentError("declared sup_g must be > 0");
}

double GeneratorSpec::value(double t) const noexcept {
    if (poly_) return (*poly_)(t);
    if (const auto* pw = std::get_if<PowerKind>(&kind_)) {
        if (pw->p > 0.0) return std::pow(t, pw->p) - 1.0;
        if (pw->p < 0.0) return 1.0 - std::pow(t, pw->p);
    }
    return std::log(t);
}

std::span<const double> GeneratorSpec::breakpoints() const noexcept {
    if (poly_) return poly_->breakpoints;
    return {};
}

std::string GeneratorSpec::describe() const {
    struct Visitor {
        std::string operator()(const PowerKind& k) const { return "power(" + fmt_double(k.p) + ")"; }
        std::string operator()(const LogKind&) const { return "log"; }
        std::string operator()(const TruncatedLinearKind& k) const {
            return "truncated_linear(" + fmt_double(k.M) + ")";
        }
        std::string operator()(const PiecewiseKind& k) const {
            return "piecewise(" + std::to_string(k.poly.pieces.size()) + " pieces)";
        }
    };
    return std::visit(Visitor{}, kind_);
}

double eval(const GeneratorSpec& g, double t) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw DomainError("generator evaluated at t=" + fmt_double(t) + "; t must be positive and finite");
    }
    return g.value(t);
}

// ---------------------------------------------------------------------------
// Dini derivatives

double dini_numeric(const GeneratorSpec& g, double x, DiniSide side) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("dini needs x > 0");
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double gx = g.value(x);
    const double dir = side == DiniSide::right_upper ? 1.0 : -1.0;

    // quotient[k] and its rounding bound
    std::vector<double> quotients;
    std::vector<double> noise;
    for (int k = 8; k <= 40; ++k) {
        const double h = std::ldexp(x, -k);
        const double gh = g.value(x + dir * h);
        quotients.push_back((gh - gx) / (dir * h));
        noise.push_back(4.0 * eps * (std::abs(gx) + std::abs(gh) + std::abs(x)) / h);
    }
    // Richardson step removes the O(h) term of one-sided quotients.
    std::vector<double> refined;
    for (std::size_t i = 0; i + 1 < quotients.size(); ++i) {
        const double r = 2.0 * quotients[i + 1] - quotients[i];
        const double bound = 3.0 * (noise[i + 1] + noise[i]);
        if (bound > 1e-9 * (1.0 + std::abs(r))) break;
        refined.push_back(r);
    }
    if (refined.empty()) return quotients.front();
    const std::size_t window = std::min<std::size_t>(3, refined.size());
    auto first = refined.end() - static_cast<std::ptrdiff_t>(window);
    return side == DiniSide::right_upper ? *std::max_element(first, refined.end())
                                         : *std::min_element(first, refined.end());
}

double dini(const GeneratorSpec& g, double x, DiniSide side) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("dini needs x > 0");
    if (const auto* poly = g.polynomial_form()) {
        const std::size_t piece = side == DiniSide::right_upper ? poly->right_piece(x) : poly->left_piece(x);
        return poly->pieces[piece].derivative(x);
    }
    return dini_numeric(g, x, side);
}

}  // namespace hardy_means
