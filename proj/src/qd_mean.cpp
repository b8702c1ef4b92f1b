#include "hardy_means/qd_mean.hpp"

#include "hardy_means/errors.hpp"
#include "hardy_means/validation.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace hardy_means {

namespace {

constexpr int kScanPoints = 16;

void check_data(std::span<const double> x) {
    if (x.empty()) throw DomainError("mean of an empty vector");
    for (double v : x) {
        if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("mean data must be positive and finite");
    }
}

bool builtin_certified(const GeneratorSpec& g) { return !g.is_piecewise(); }

std::string join(std::span<const double> x) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
    return os.str();
}

// Fenwick tree over value ranks holding counts and sums.
class RankTree {
public:
    explicit RankTree(std::size_t n) : n_(n), count_(n + 1, 0), sum_(n + 1, 0.0) {
        top_ = 1;
        while (top_ * 2 <= n_) top_ *= 2;
    }

    void insert(std::size_t rank, double v) {
        for (std::size_t i = rank + 1; i <= n_; i += i & (~i + 1)) {
            count_[i] += 1;
            sum_[i] += v;
        }
    }

    /// 0-based rank of the k-th smallest inserted element (k >= 1) and the sum of the k smallest.
    std::pair<std::size_t, double> kth(std::size_t k) const {
        std::size_t pos = 0;
        double acc = 0.0;
        for (std::size_t step = top_; step > 0; step >>= 1) {
            const std::size_t next = pos + step;
            if (next <= n_ && count_[next] < k) {
                pos = next;
                k -= count_[next];
                acc += sum_[next];
            }
        }
        // pos is the last rank with prefix count < k; element at rank pos (0-based) completes it.
        return {pos, acc};
    }

private:
    std::size_t n_;
    std::size_t top_;
    std::vector<std::size_t> count_;
    std::vector<double> sum_;
};

}  // namespace

MeanRequest::MeanRequest(GeneratorSpec g, std::vector<double> d) : generator(std::move(g)), data(std::move(d)) {
    check_data(data);
}

MeanSolver::MeanSolver(GeneratorSpec g) : g_(std::move(g)) {
    certified_ = builtin_certified(g_) || all_passed(validate_script_f(g_, grid_for(g_)));
}

MeanSolver::MeanSolver(GeneratorSpec g, bool certified) : g_(std::move(g)), certified_(certified) {}

double MeanSolver::residual_sum(std::span<const double> x, double y) const noexcept {
    const double inv = 1.0 / y;
    double acc = 0.0;
    for (double v : x) acc += g_.value(v * inv);
    return acc;
}

MeanResult MeanSolver::solve(std::span<const double> x) const {
    check_data(x);
    const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
    double lo = *mn;
    double hi = *mx;
    if (lo == hi) return MeanResult{lo, certified_, 0.0};

    auto F = [&](double y) { return residual_sum(x, y); };
    double f_lo = F(lo);
    double f_hi = F(hi);
    // Nudge inward when a ratio at the exact endpoint produced a non-finite value.
    if (!std::isfinite(f_lo)) f_lo = F(lo = std::nextafter(lo, hi));
    if (!std::isfinite(f_hi)) f_hi = F(hi = std::nextafter(hi, lo));
    if (f_lo == 0.0) return MeanResult{lo, certified_, 0.0};
    if (f_hi == 0.0) return MeanResult{hi, certified_, 0.0};
    if (!(f_lo > 0.0 && f_hi < 0.0)) {
        throw SolverError("no sign change of sum g(x_i/y) on [min x, max x] for " + g_.describe() +
                          " (F(min)=" + std::to_string(f_lo) + ", F(max)=" + std::to_string(f_hi) +
                          "); the generator violates the class conditions. data=" + join(x));
    }

    if (!certified_) {
        // First sign change from the left on a log scan.
        const double step = std::log(hi / lo) / kScanPoints;
        double prev = lo;
        double f_prev = f_lo;
        for (int j = 1; j <= kScanPoints; ++j) {
            const double y = j == kScanPoints ? hi : lo * std::exp(step * j);
            const double fy = j == kScanPoints ? f_hi : F(y);
            if (fy <= 0.0) {
                if (fy == 0.0) return MeanResult{y, false, 0.0};
                lo = prev;
                f_lo = f_prev;
                hi = y;
                f_hi = fy;
                break;
            }
            prev = y;
            f_prev = fy;
        }
    }

    std::uintmax_t max_iter = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(F, lo, hi, f_lo, f_hi,
                                                          boost::math::tools::eps_tolerance<double>(50), max_iter);
    const double y = 0.5 * (a + b);
    return MeanResult{y, certified_, std::abs(F(y))};
}

MeanResult MeanSolver::solve(std::span<const double> x, double hint) const {
    check_data(x);
    const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
    if (!certified_ || !(hint > *mn && hint < *mx)) return solve(x);

    auto F = [&](double y) { return residual_sum(x, y); };
    const double f_hint = F(hint);
    if (f_hint == 0.0) return MeanResult{hint, true, 0.0};
    // F is positive left of the root and negative right of it.
    const bool up = f_hint > 0.0;
    const double edge = up ? *mx : *mn;
    double near = hint;
    double f_near = f_hint;
    double far = hint;
    double f_far = f_hint;
    for (double step = 1e-3; (f_far > 0.0) == up; step *= 8.0) {
        near = far;
        f_near = f_far;
        far = up ? std::min(edge, hint * (1.0 + step)) : std::max(edge, hint / (1.0 + step));
        if (far == edge) return solve(x);
        f_far = F(far);
        if (f_far == 0.0) return MeanResult{far, true, 0.0};
    }
    double lo = up ? near : far, hi = up ? far : near;
    double f_lo = up ? f_near : f_far, f_hi = up ? f_far : f_near;
    std::uintmax_t max_iter = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(F, lo, hi, f_lo, f_hi,
                                                          boost::math::tools::eps_tolerance<double>(50), max_iter);
    const double y = 0.5 * (a + b);
    return MeanResult{y, true, std::abs(F(y))};
}

double mean_generic(const MeanRequest& req) { return MeanSolver(req.generator).solve(req.data).value; }

TruncatedMean mean_truncated_detail(double M, std::span<const double> x) {
    if (!(M > 0.0) || !std::isfinite(M)) throw ArgumentError("mean_truncated needs M > 0");
    check_data(x);
    std::vector<double> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + sorted[i];

    const double n0 = static_cast<double>(n) * M / (M + 1.0);
    for (std::size_t k = n; k >= 1; --k) {
        const double excess = static_cast<double>(k) - n0;
        if (!(excess > 0.0)) break;
        if (sorted[k - 1] <= prefix[k] / excess) {
            const double y = prefix[k] / (static_cast<double>(k) * (M + 1.0) - static_cast<double>(n) * M);
            return TruncatedMean{y, k};
        }
    }
    throw ConsistencyError("no admissible index k for the truncated mean; data=" + join(x));
}

double mean_truncated(double M, std::span<const double> x) { return mean_truncated_detail(M, x).value; }

std::vector<double> truncated_prefix_means(double M, std::span<const double> x) {
    if (!(M > 0.0) || !std::isfinite(M)) throw ArgumentError("mean_truncated needs M > 0");
    check_data(x);
    const std::size_t N = x.size();
    std::vector<std::size_t> order(N);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<std::size_t> rank(N);
    std::vector<double> by_rank(N);
    for (std::size_t r = 0; r < N; ++r) {
        rank[order[r]] = r;
        by_rank[r] = x[order[r]];
    }

    RankTree tree(N);
    std::vector<double> out(N);
    for (std::size_t n = 1; n <= N; ++n) {
        tree.insert(rank[n - 1], x[n - 1]);
        const double n0 = static_cast<double>(n) * M / (M + 1.0);
        auto admissible = [&](std::size_t k) {
            const auto [r, s_before] = tree.kth(k);
            const double xk = by_rank[r];
            const double sk = s_before + xk;
            return std::pair{xk <= sk / (static_cast<double>(k) - n0), sk};
        };
        std::size_t k_lo = static_cast<std::size_t>(std::floor(n0)) + 1;
        while (static_cast<double>(k_lo) - n0 <= 0.0) ++k_lo;
        if (k_lo > n) throw ConsistencyError("no admissible index k for the truncated prefix mean");
        // The admissible set is {k_lo, ..., k*}; binary search for k*.
        std::size_t good = k_lo;
        std::size_t bad = n + 1;
        if (!admissible(k_lo).first) throw ConsistencyError("truncated prefix mean: k_lo not admissible");
        while (bad - good > 1) {
            const std::size_t mid = good + (bad - good) / 2;
            if (admissible(mid).first) good = mid;
            else bad = mid;
        }
        const double sk = admissible(good).second;
        out[n - 1] = sk / (static_cast<double>(good) * (M + 1.0) - static_cast<double>(n) * M);
    }
    return out;
}

bool is_concave_generator(const GeneratorSpec& g) {
    if (const auto* pw = std::get_if<PowerKind>(&g.kind())) return pw->p <= 1.0;
    if (!g.is_piecewise()) return true;
    return check_concave(g, grid_for(g)).passed;
}

AxiomReport check_mean_axioms(const GeneratorSpec& g, std::size_t trials, std::uint64_t seed) {
    AxiomReport rep;
    const MeanSolver solver(g);
    const bool monotone = is_concave_generator(g);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> len(1, 16);
    std::uniform_real_distribution<double> logu(std::log(1e-3), std::log(1e3));
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    auto fail = [&](std::string what, std::vector<double> x) {
        rep.passed = false;
        rep.failure = std::move(what);
        rep.counterexample = std::move(x);
    };

    for (std::size_t t = 0; t < trials && rep.passed; ++t) {
        ++rep.trials;
        std::vector<double> x(len(rng));
        for (auto& v : x) v = std::exp(logu(rng));
        const double m = solver(x);
        const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
        if (m < *mn * (1.0 - 1e-12) || m > *mx * (1.0 + 1e-12)) {
            fail("internality", x);
            break;
        }
        const double lambda = std::exp(logu(rng));
        std::vector<double> scaled(x);
        for (auto& v : scaled) v *= lambda;
        const double ms = solver(scaled);
        if (std::abs(ms - lambda * m) > 1e-10 * lambda * m) {
            fail("homogeneity", x);
            break;
        }
        if (monotone) {
            std::vector<double> bumped(x);
            const std::size_t j = static_cast<std::size_t>(unit(rng) * static_cast<double>(x.size())) % x.size();
            bumped[j] *= 1.0 + unit(rng);
            if (solver(bumped) < m * (1.0 - 1e-12)) {
                fail("monotonicity", x);
                break;
            }
        }
    }
    return rep;
}

}  // namespace hardy_means
