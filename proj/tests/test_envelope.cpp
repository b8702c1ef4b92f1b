#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hardy_means/envelope.hpp"
#include "hardy_means/envelope_oracle.hpp"
#include "hardy_means/errors.hpp"
#include "hardy_means/limits.hpp"
#include "hardy_means/validation.hpp"
#include "support.hpp"

#include <algorithm>

using namespace hardy_means;

namespace {

// Sup-norm gap between conc(g) and the sampled upper hull on 2000 log points in
// [1e-2, 1e2]. The hull grid reaches 1e-9 and 1e9 so the tails are anchored.
double oracle_gap(const GeneratorSpec& g, const EnvelopeParams& e, std::size_t per_decade) {
    const auto eval_pts = log_grid(1e-2, 1e2, 2000);
    auto grid = log_grid(1e-9, 1e9, 18 * per_decade);
    grid.insert(grid.end(), eval_pts.begin(), eval_pts.end());
    for (double b : g.breakpoints()) grid.push_back(b);
    for (double c : {e.a, e.b, 1.0}) {
        if (c > 0.0 && std::isfinite(c)) grid.push_back(c);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    const auto hull = grid_envelope_oracle(g, grid);
    double gap = 0.0;
    for (double t : eval_pts) {
        const auto i = static_cast<std::size_t>(std::lower_bound(grid.begin(), grid.end(), t) - grid.begin());
        gap = std::max(gap, std::abs(hull[i] - e.envelope.value(t)));
    }
    return gap;
}

// Up to two refinement rounds (x4 density each) before giving up.
double refined_gap(const GeneratorSpec& g, const EnvelopeParams& e) {
    double gap = 0.0;
    for (std::size_t per_decade = 100; per_decade <= 1600; per_decade *= 4) {
        gap = oracle_gap(g, e, per_decade);
        if (gap <= 5e-3) break;
    }
    return gap;
}

// One-sided optimality of the contact points.
void check_sandwich(const GeneratorSpec& g, const EnvelopeParams& e) {
    constexpr double tol = 1e-8;
    if (e.a > 0.0) {
        if (e.a < 1.0) CHECK(dini(g, e.a, DiniSide::right_upper) <= e.p + tol);
        if (e.a > g.alpha()) CHECK(dini(g, e.a, DiniSide::left_lower) >= e.p - tol);
    }
    if (std::isfinite(e.b)) {
        if (e.b < g.beta()) CHECK(dini(g, e.b, DiniSide::right_upper) <= e.q + tol);
        if (e.b > 1.0) CHECK(dini(g, e.b, DiniSide::left_lower) >= e.q - tol);
    }
}

}  // namespace

TEST_CASE("find_a and find_b") {
    const auto dip = resolve_limits(hm_test::g_dip());
    CHECK(find_a(dip) == std::pair{0.0, 1.0});
    const auto [b, q] = find_b(dip);
    CHECK(b == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(q == 0.0);

    const auto [a, p] = find_a(hm_test::g_L());
    CHECK(a == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::isinf(find_b(hm_test::g_L()).first));

    // (g + 1)/t is flat on [1/2, 1]; the smallest maximizer wins.
    const auto [ta, tp] = find_a(hm_test::g_tie());
    CHECK(ta == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(tp == doctest::Approx(1.0).epsilon(1e-12));

    const auto unresolved = GeneratorSpec::piecewise(*hm_test::g_L().polynomial_form(), 0.5);
    CHECK_THROWS_AS((void)find_a(unresolved), ConfigurationError);
}

TEST_CASE("concave_envelope examples") {
    SUBCASE("g_dip becomes min(t - 1, 1)") {
        const auto e = concave_envelope(resolve_limits(hm_test::g_dip()));
        CHECK(e.a == 0.0);
        CHECK(e.b == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(e.q == 0.0);
        for (double t : log_grid(1e-3, 1e3, 400)) {
            CHECK(std::abs(e.envelope.value(t) - std::min(t - 1.0, 1.0)) <= 1e-12);
        }
    }
    SUBCASE("g_L keeps its right part and turns affine on (0, 1]") {
        const auto e = concave_envelope(hm_test::g_L());
        CHECK(e.a == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(e.p == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::isinf(e.b));
        for (double t : log_grid(1e-3, 1e3, 400)) {
            CHECK(std::abs(e.envelope.value(t) - std::min(t - 1.0, 1.0)) <= 1e-12);
        }
    }
    SUBCASE("tie-break does not change the envelope") {
        const auto g = hm_test::g_tie();
        const auto e = concave_envelope(g);
        CHECK(e.a == doctest::Approx(0.5).epsilon(1e-12));
        const auto other = gamma(g, 1.0, kInf, 1.0, 1.0);
        for (double t : log_grid(1e-3, 1e3, 400)) {
            CHECK(std::abs(e.envelope.value(t) - other.value(t)) <= 1e-12);
        }
    }
}

TEST_CASE("envelope of an already concave generator is the identity") {
    for (const auto& g : {GeneratorSpec::log(), GeneratorSpec::truncated_linear(0.5),
                          GeneratorSpec::truncated_linear(1.0), GeneratorSpec::truncated_linear(7.0)}) {
        const auto e = concave_envelope(resolve_limits(g));
        for (double t : log_grid(1e-4, 1e4, 500)) {
            CHECK(std::abs(e.envelope.value(t) - g.value(t)) <= 1e-12);
        }
    }
}

TEST_CASE("oracle comparison") {
    for (const auto& g0 : {hm_test::g_dip(), hm_test::g_L(), hm_test::g_tie(), GeneratorSpec::log(),
                           GeneratorSpec::truncated_linear(1.0)}) {
        const auto g = resolve_limits(g0);
        const auto e = concave_envelope(g);
        CHECK(refined_gap(g, e) <= 5e-3);
    }
}

TEST_CASE("property: random Phi generators") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 5; ++i) {
        const auto [g, alpha, beta] = hm_test::random_phi(rng);
        CAPTURE(i);
        REQUIRE(all_passed(validate_phi(g, grid_for(g))));
        const auto e = concave_envelope(g);
        CHECK(e.a >= alpha);
        CHECK(e.a <= 1.0);
        CHECK(e.b >= 1.0);
        CHECK(e.b <= beta);
        CHECK(e.a < e.b);
        CHECK(refined_gap(g, e) <= 5e-3);
        check_sandwich(g, e);

        const auto grid = grid_for(g);
        CHECK(check_concave(e.envelope, grid).passed);
        for (double t : grid) CHECK(g.value(t) <= e.envelope.value(t) + 1e-10);
    }
}

TEST_CASE("dini sandwich on the fixtures") {
    for (const auto& g0 : {hm_test::g_dip(), hm_test::g_L(), hm_test::g_tie()}) {
        const auto g = resolve_limits(g0);
        check_sandwich(g, concave_envelope(g));
    }
}

TEST_CASE("gamma") {
    const auto g = hm_test::g_L();
    CHECK_THROWS_AS((void)gamma(g, 2.0, 1.0, 1.0, 1.0), ArgumentError);
    CHECK_THROWS_AS((void)gamma(g, 1.0, 1.0, 1.0, 1.0), ArgumentError);
    // a = 0, b = inf leaves g untouched.
    const auto same = gamma(GeneratorSpec::log(), 0.0, kInf, 1.0, 1.0);
    CHECK(same.value(3.0) == std::log(3.0));
    // Transcendental g with a contact point has no piecewise form.
    CHECK_THROWS_AS((void)gamma(GeneratorSpec::log(), 0.5, kInf, 2.0, 1.0), PreconditionError);
    // Right affine piece from b with slope q.
    const auto right = gamma(hm_test::g_dip(), 0.0, 1.5, 1.0, 0.25);
    CHECK(right.value(3.5) == doctest::Approx(0.5 + 0.25 * 2.0).epsilon(1e-14));
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS((void)concave_envelope(GeneratorSpec::power(2.0)), PreconditionError);
    CHECK_THROWS_AS((void)concave_envelope(hm_test::g_square()), PreconditionError);
}

TEST_CASE("upper hull oracle") {
    const std::vector<double> t{1.0, 3.0};
    const std::vector<double> v{0.0, 2.0};
    CHECK(upper_hull_values(t, v) == v);
    const std::vector<double> t3{0.0, 1.0, 2.0};
    const std::vector<double> v3{0.0, -1.0, 2.0};
    const auto h = upper_hull_values(t3, v3);
    CHECK(h[1] == doctest::Approx(1.0));
    const std::vector<double> bad{1.0, 1.0};
    CHECK_THROWS_AS((void)grid_envelope_oracle(GeneratorSpec::log(), bad), ArgumentError);
}
