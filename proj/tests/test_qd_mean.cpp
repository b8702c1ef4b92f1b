#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hardy_means/envelope.hpp"
#include "hardy_means/errors.hpp"
#include "hardy_means/limits.hpp"
#include "hardy_means/qd_mean.hpp"
#include "hardy_means/validation.hpp"
#include "support.hpp"

#include <numeric>

using namespace hardy_means;
using hm_test::log_uniform;
using hm_test::rel_err;

namespace {

double mean(const GeneratorSpec& g, std::vector<double> x) { return mean_generic(MeanRequest(g, std::move(x))); }

double power_mean(double p, const std::vector<double>& x) {
    const double n = static_cast<double>(x.size());
    if (p == 0.0) {
        double s = 0.0;
        for (double v : x) s += std::log(v);
        return std::exp(s / n);
    }
    double s = 0.0;
    for (double v : x) s += std::pow(v, p);
    return std::pow(s / n, 1.0 / p);
}

}  // namespace

TEST_CASE("mean_generic examples") {
    CHECK(mean(GeneratorSpec::power(1.0), {1, 2, 3}) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(mean(GeneratorSpec::log(), {1, 4}) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(mean(GeneratorSpec::truncated_linear(1.0), {1, 3}) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(mean(GeneratorSpec::power(0.5), {7}) == 7.0);
    CHECK(mean(GeneratorSpec::log(), {5, 5, 5}) == 5.0);
}

TEST_CASE("mean_generic errors") {
    CHECK_THROWS_AS(MeanRequest(GeneratorSpec::log(), {}), DomainError);
    CHECK_THROWS_AS(MeanRequest(GeneratorSpec::log(), {1.0, -2.0}), DomainError);
    CHECK_THROWS_AS(MeanRequest(GeneratorSpec::log(), {1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(MeanRequest(GeneratorSpec::log(), {1.0, kInf}), DomainError);
    // 2 - t has the wrong sign everywhere near 1: no sign change on the bracket.
    const auto wrong = GeneratorSpec::piecewise(PiecewisePolynomial{{}, {Polynomial({1.0, -1.0})}});
    CHECK_THROWS_AS((void)mean(wrong, {1.0, 3.0}), SolverError);
}

TEST_CASE("mean_truncated examples") {
    const auto a = mean_truncated_detail(1.0, std::vector<double>{1, 3});
    CHECK(a.k == 2);
    CHECK(a.value == 2.0);
    const auto b = mean_truncated_detail(1.0, std::vector<double>{10, 1});
    CHECK(b.k == 2);
    CHECK(b.value == 5.5);
    CHECK(10.0 <= b.value * 2.0);
    CHECK(mean_truncated(2.0, std::vector<double>{5, 5, 5}) == doctest::Approx(5.0).epsilon(1e-15));
    // An outlier beyond y(M + 1) leaves the linear zone.
    const auto c = mean_truncated_detail(1.0, std::vector<double>{1, 1, 100});
    CHECK(c.k == 2);
    CHECK(c.value == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS((void)mean_truncated(0.0, std::vector<double>{1}), ArgumentError);
}

TEST_CASE("property: truncated closed form equals the generic root") {
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<std::size_t> len(1, 64);
    for (int i = 0; i < 500; ++i) {
        const double M = std::array{0.1, 1.0, 10.0}[i % 3];
        const auto x = log_uniform(rng, len(rng));
        const double fast = mean_truncated(M, x);
        const double slow = mean(GeneratorSpec::truncated_linear(M), x);
        CHECK(rel_err(fast, slow) <= 1e-10);
    }
}

TEST_CASE("property: prefix means match per-prefix solves") {
    std::mt19937_64 rng(99);
    for (double M : {0.1, 1.0, 10.0}) {
        const auto x = log_uniform(rng, 300);
        const auto prefix = truncated_prefix_means(M, x);
        for (std::size_t n = 1; n <= x.size(); ++n) {
            CHECK(rel_err(prefix[n - 1], mean_truncated(M, std::span(x.data(), n))) <= 1e-12);
        }
    }
}

TEST_CASE("property: power means in closed form") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> len(1, 32);
    for (double p : {-2.0, -1.0, -0.5, 0.0, 1.0 / 3.0, 0.5, 0.75, 1.0, 2.0, 3.0}) {
        for (int i = 0; i < 40; ++i) {
            const auto x = log_uniform(rng, len(rng));
            CHECK(rel_err(mean(GeneratorSpec::power(p), x), power_mean(p, x)) <= 1e-10);
        }
    }
}

TEST_CASE("property: residual at the returned root") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::size_t> len(1, 64);
    for (const auto& g : {GeneratorSpec::log(), GeneratorSpec::power(0.5), GeneratorSpec::power(-1.0),
                          GeneratorSpec::truncated_linear(1.0), hm_test::g_L()}) {
        const MeanSolver solver(g);
        for (int i = 0; i < 50; ++i) {
            const auto x = log_uniform(rng, len(rng));
            const auto r = solver.solve(x);
            double sum = 0.0;
            for (double v : x) sum += g.value(v / r.value);
            CHECK(std::abs(sum) <= static_cast<double>(x.size()) * 1e-9);
        }
    }
}

TEST_CASE("warm-started solve finds the same root") {
    std::mt19937_64 rng(23);
    const MeanSolver solver(GeneratorSpec::power(0.5));
    for (int i = 0; i < 200; ++i) {
        const auto x = log_uniform(rng, 20);
        const double ref = solver.solve(x).value;
        for (double hint : {ref * 0.5, ref * 0.999, ref * 1.001, ref * 3.0, 1e-9, 1e9}) {
            CHECK(rel_err(solver.solve(x, hint).value, ref) <= 1e-13);
        }
    }
}

TEST_CASE("certificates") {
    CHECK(MeanSolver(GeneratorSpec::log()).certified());
    CHECK(MeanSolver(hm_test::g_L()).certified());
    // g_dip decreases on (2, 2.5), so the ratio condition fails.
    const MeanSolver dip(hm_test::g_dip());
    CHECK_FALSE(dip.certified());
    const auto r = dip.solve(std::vector<double>{1.0, 2.0, 40.0});
    CHECK_FALSE(r.certified);
    CHECK(r.residual <= 1e-9);
}

TEST_CASE("check_mean_axioms") {
    const auto log_rep = check_mean_axioms(GeneratorSpec::log(), 100, 42);
    CHECK(log_rep.passed);
    CHECK(log_rep.trials == 100);
    CHECK(check_mean_axioms(GeneratorSpec::truncated_linear(1.0), 100, 42).passed);
    CHECK(check_mean_axioms(GeneratorSpec::power(0.5), 100, 42).passed);
    CHECK(check_mean_axioms(hm_test::g_dip(), 100, 42).passed);
    // Homogeneity of the closed form: scaling (1, 3) by 3.
    CHECK(mean_truncated(1.0, std::vector<double>{3, 9}) == doctest::Approx(6.0).epsilon(1e-15));
}

TEST_CASE("property: comparison with the concave envelope") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::size_t> len(1, 32);
    for (const auto& g0 : {hm_test::g_dip(), hm_test::g_L(), hm_test::random_phi(rng).g}) {
        const auto g = resolve_limits(g0);
        const auto conc = concave_envelope(g).envelope;
        for (double t : grid_for(g)) REQUIRE(g.value(t) <= conc.value(t) + 1e-12);
        const MeanSolver sg(g);
        const MeanSolver sc(conc);
        for (int i = 0; i < 100; ++i) {
            const auto x = log_uniform(rng, len(rng));
            CHECK(sg(x) <= sc(x) * (1.0 + 1e-10));
        }
    }
}
