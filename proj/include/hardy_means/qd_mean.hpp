#pragma once

#include "hardy_means/generator.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hardy_means {

/// Generator plus data; construction checks n >= 1 and every entry positive and finite.
struct MeanRequest {
    MeanRequest(GeneratorSpec generator, std::vector<double> data);

    GeneratorSpec generator;
    std::vector<double> data;
};

struct MeanResult {
    double value = 0.0;
    /// True when the generator carries a class-F certificate, i.e. the root is unique.
    bool certified = false;
    /// |sum_i g(x_i / y)| at the returned y.
    double residual = 0.0;
};

/// Root finder for y -> sum_i g(x_i / y) on [min x, max x], reusable across data sets.
///
/// The class-F certificate is computed once at construction: built-in kinds
/// carry one, piecewise generators are run through validate_script_f. Without
/// a certificate several roots may exist and the solver returns the first
/// sign change from the left found by a 16-point log scan.
class MeanSolver {
public:
    explicit MeanSolver(GeneratorSpec g);
    MeanSolver(GeneratorSpec g, bool certified);

    [[nodiscard]] MeanResult solve(std::span<const double> x) const;
    /// As solve(), but for a certified generator the bracket is grown outward
    /// from hint (e.g. the mean of a neighbouring data set) instead of spanning
    /// [min x, max x]. Same root; fewer residual evaluations when hint is close.
    [[nodiscard]] MeanResult solve(std::span<const double> x, double hint) const;
    [[nodiscard]] double operator()(std::span<const double> x) const { return solve(x).value; }

    [[nodiscard]] const GeneratorSpec& generator() const noexcept { return g_; }
    [[nodiscard]] bool certified() const noexcept { return certified_; }

private:
    [[nodiscard]] double residual_sum(std::span<const double> x, double y) const noexcept;

    GeneratorSpec g_;
    bool certified_;
};

/// The homogeneous quasideviation mean of req.data generated by req.generator.
[[nodiscard]] double mean_generic(const MeanRequest& req);

struct TruncatedMean {
    double value;
    std::size_t k;  ///< number of entries in the linear zone x_i <= y (M + 1)
};

/// Closed-form mean for g = min(t - 1, M): with x sorted, the largest k with
/// k > nM/(M+1) and x_k <= S_k / (k - nM/(M+1)) gives y = S_k / (k(M+1) - nM).
[[nodiscard]] TruncatedMean mean_truncated_detail(double M, std::span<const double> x);
[[nodiscard]] double mean_truncated(double M, std::span<const double> x);

/// mean_truncated of every prefix x_1..x_n, n = 1..N, in O(N log^2 N) using
/// Fenwick trees over value ranks.
[[nodiscard]] std::vector<double> truncated_prefix_means(double M, std::span<const double> x);

struct AxiomReport {
    bool passed = true;
    std::size_t trials = 0;
    std::string failure;               ///< which axiom failed first
    std::vector<double> counterexample;
};

/// Random seeded checks of internality, homogeneity (1e-10 relative) and, when
/// the generator is concave, monotonicity in each coordinate.
[[nodiscard]] AxiomReport check_mean_axioms(const GeneratorSpec& g, std::size_t trials, std::uint64_t seed);

/// True for generators known (or grid-checked) to be concave on (0, inf).
[[nodiscard]] bool is_concave_generator(const GeneratorSpec& g);

}  // namespace hardy_means
