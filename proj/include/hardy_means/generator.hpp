#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace hardy_means {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Dense polynomial with coefficients in ascending degree order.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs);

    [[nodiscard]] double operator()(double t) const noexcept;
    [[nodiscard]] double derivative(double t) const noexcept;

    /// Degree after dropping trailing zero coefficients; the zero polynomial has degree 0.
    [[nodiscard]] std::size_t degree() const noexcept;
    [[nodiscard]] std::span<const double> coeffs() const noexcept { return coeffs_; }

    /// Exact value of the integral of P(s)/s^2 over [lo, hi], 0 < lo <= hi <= inf.
    /// Returns +inf when hi is infinite and P has a nonzero coefficient of degree >= 1.
    [[nodiscard]] double integral_over_s2(double lo, double hi) const;

private:
    std::vector<double> coeffs_{0.0};
};

/// Continuous piecewise polynomial on (0, inf).
///
/// pieces[0] lives on (0, t_1], pieces[i] on [t_i, t_{i+1}] and the last piece
/// on [t_k, inf). With no breakpoints it is a single polynomial.
struct PiecewisePolynomial {
    std::vector<double> breakpoints;
    std::vector<Polynomial> pieces;

    [[nodiscard]] double operator()(double t) const noexcept;

    /// Piece governing the left neighbourhood of t (number of breakpoints < t).
    [[nodiscard]] std::size_t left_piece(double t) const noexcept;
    /// Piece governing the right neighbourhood of t (number of breakpoints <= t).
    [[nodiscard]] std::size_t right_piece(double t) const noexcept;

    /// Throws ArgumentError unless breakpoints are positive and strictly increasing,
    /// the piece count matches, and adjacent pieces agree at shared breakpoints to 1e-12.
    void check() const;
};

struct PowerKind {
    double p;
};
struct LogKind {};
struct TruncatedLinearKind {
    double M;
};
struct PiecewiseKind {
    PiecewisePolynomial poly;
};

using GeneratorKind = std::variant<PowerKind, LogKind, TruncatedLinearKind, PiecewiseKind>;

/// A limit quantity of the generator: a declared value, or nullopt for "estimate".
using DeclaredLimit = std::optional<double>;

/// Symbolic generator g together with its declared class data.
///
/// alpha/beta bound the declared concavity interval around 1. The three limit
/// fields are the limsup at 0+, the limsup of g(t)/t at infinity and the
/// supremum; each is either declared or left for the estimators in limits.hpp.
/// Values are immutable; the with_* members return modified copies.
class GeneratorSpec {
public:
    /// Generator of the p-th power mean: t^p - 1 (p > 0), ln t (p = 0), 1 - t^p (p < 0).
    [[nodiscard]] static GeneratorSpec power(double p);
    [[nodiscard]] static GeneratorSpec log();
    /// min(t - 1, M). Its class data is forced: alpha 0, beta inf, g_+(0) = -1, q = 0, sup = M.
    [[nodiscard]] static GeneratorSpec truncated_linear(double M);
    [[nodiscard]] static GeneratorSpec piecewise(PiecewisePolynomial poly, double alpha = 0.0,
                                                 double beta = kInf);

    [[nodiscard]] GeneratorSpec with_interval(double alpha, double beta) const;
    [[nodiscard]] GeneratorSpec with_limits(DeclaredLimit g0plus, DeclaredLimit q_inf,
                                            DeclaredLimit sup_g) const;

    [[nodiscard]] const GeneratorKind& kind() const noexcept { return kind_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double beta() const noexcept { return beta_; }
    [[nodiscard]] DeclaredLimit g0plus() const noexcept { return g0plus_; }
    [[nodiscard]] DeclaredLimit q_inf() const noexcept { return q_inf_; }
    [[nodiscard]] DeclaredLimit sup_g() const noexcept { return sup_g_; }

    /// g(t) without the domain check; callers guarantee t > 0.
    [[nodiscard]] double value(double t) const noexcept;

    /// Piecewise-polynomial form, available for piecewise, truncated_linear and power p = 1.
    [[nodiscard]] const PiecewisePolynomial* polynomial_form() const noexcept {
        return poly_ ? &*poly_ : nullptr;
    }

    /// Points where the closed form switches formula (empty for power and log).
    [[nodiscard]] std::span<const double> breakpoints() const noexcept;

    [[nodiscard]] bool is_piecewise() const noexcept {
        return std::holds_alternative<PiecewiseKind>(kind_);
    }

    /// Short human-readable identifier, e.g. "power(0.5)" or "truncated_linear(1)".
    [[nodiscard]] std::string describe() const;

private:
    explicit GeneratorSpec(GeneratorKind kind);
    void check_metadata() const;

    GeneratorKind kind_;
    std::optional<PiecewisePolynomial> poly_;
    double alpha_ = 0.0;
    double beta_ = kInf;
    DeclaredLimit g0plus_;
    DeclaredLimit q_inf_;
    DeclaredLimit sup_g_;
};

/// g(t); throws DomainError unless t > 0 and finite.
[[nodiscard]] double eval(const GeneratorSpec& g, double t);

enum class DiniSide { left_lower, right_upper };

/// One-sided Dini derivative: D_-g(x) (left_lower) or D^+g(x) (right_upper).
/// Exact for piecewise-polynomial forms; otherwise Richardson-corrected
/// difference quotients over offsets x * 2^-k, k = 8..40, reduced by
/// liminf/limsup over the finest quotients not swamped by rounding.
[[nodiscard]] double dini(const GeneratorSpec& g, double x, DiniSide side);

/// The difference-quotient estimator used by dini() for non-polynomial kinds,
/// exposed so tests can cross-check it against the exact path.
[[nodiscard]] double dini_numeric(const GeneratorSpec& g, double x, DiniSide side);

}  // namespace hardy_means
