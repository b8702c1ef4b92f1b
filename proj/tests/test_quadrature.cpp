#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hardy_means/errors.hpp"
#include "hardy_means/quadrature.hpp"
#include "support.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

using namespace hardy_means;

namespace {

// Integral of f(1/x) over [lo, hi] in x-space, panels of ratio 2 plus any extra cut points.
double direct_x_integral(const GeneratorSpec& f, double lo, double hi, std::vector<double> cuts = {}) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    std::vector<double> pts{lo};
    for (double a = lo * 2.0; a < hi; a *= 2.0) pts.push_back(a);
    for (double c : cuts) {
        if (c > lo && c < hi) pts.push_back(c);
    }
    pts.push_back(hi);
    std::sort(pts.begin(), pts.end());
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        sum += GK::integrate([&](double x) { return f.value(1.0 / x); }, pts[i], pts[i + 1], 10, 1e-12);
    }
    return sum;
}

}  // namespace

TEST_CASE("integral_f_inv examples") {
    const auto r = integral_f_inv(GeneratorSpec::log(), std::exp(1.0));
    CHECK(r.converged);
    CHECK_FALSE(r.divergence_flag);
    CHECK(std::abs(r.value) <= 1e-11);

    const auto d = integral_f_inv(GeneratorSpec::power(1.0), 1.0);
    CHECK(d.divergence_flag);
    CHECK_FALSE(d.converged);
    CHECK(std::isinf(d.value));

    for (double M : {0.1, 1.0, 10.0, 100.0}) {
        const auto t = integral_f_inv(GeneratorSpec::truncated_linear(M), 1.0);
        CHECK(std::abs(t.value - std::log1p(M)) <= 1e-10);
    }
    // Integral of ln(1/t) over (0, 1].
    CHECK(std::abs(integral_f_inv(GeneratorSpec::log(), 1.0).value - 1.0) <= 1e-11);
    CHECK_THROWS_AS((void)integral_f_inv(GeneratorSpec::log(), 0.0), DomainError);
}

TEST_CASE("divergence detection") {
    QuadratureOptions numeric;
    numeric.closed_form_polynomials = false;
    SUBCASE("t - 1 through the block sweep") {
        const auto r = integrate_over_s2(GeneratorSpec::power(1.0), 1.0, kInf, numeric);
        CHECK(r.divergence_flag);
        CHECK(std::isinf(r.value));
    }
    SUBCASE("faster-than-linear growth") {
        CHECK(integral_f_inv(GeneratorSpec::power(2.0), 1.0).divergence_flag);
        CHECK(integral_f_inv(GeneratorSpec::power(1.5), 1.0).divergence_flag);
    }
    SUBCASE("slowly convergent tails are not flagged") {
        const auto r = integral_f_inv(GeneratorSpec::power(0.75), 1.0);
        CHECK_FALSE(r.divergence_flag);
        // Integral of s^{-5/4} - s^{-2} over [1, inf) = 4 - 1.
        CHECK(r.value == doctest::Approx(3.0).epsilon(1e-11));
    }
}

TEST_CASE("closed-form and numeric panels agree") {
    QuadratureOptions numeric;
    numeric.closed_form_polynomials = false;
    for (const auto& g : {hm_test::g_dip(), hm_test::g_L(), GeneratorSpec::truncated_linear(3.0)}) {
        for (double lo : {0.01, 0.3, 1.0}) {
            for (double hi : {2.5, 10.0, kInf}) {
                const auto exact = integrate_over_s2(g, lo, hi);
                const auto num = integrate_over_s2(g, lo, hi, numeric);
                CHECK(num.converged);
                CHECK(std::abs(exact.value - num.value) <= 1e-11);
            }
        }
    }
}

TEST_CASE("property: substitution identity") {
    const double eps = 1e-6;
    struct Case {
        GeneratorSpec f;
        std::vector<double> cuts;
    };
    const std::vector<Case> cases{
        {GeneratorSpec::log(), {}},
        {GeneratorSpec::power(0.5), {}},
        {GeneratorSpec::power(-1.0), {}},
        {GeneratorSpec::power(1.0 / 3.0), {}},
        {GeneratorSpec::truncated_linear(1.0), {0.5}},
    };
    for (const auto& [f, cuts] : cases) {
        for (double c : {1.5, 2.0, 4.0}) {
            const double full = integral_f_inv(f, c).value;
            const double tail = integrate_over_s2(f, 1.0 / eps, kInf).value;
            const double direct = direct_x_integral(f, eps, c, cuts) + tail;
            CHECK(std::abs(full - direct) <= 1e-9);
        }
    }
}

TEST_CASE("property: additivity") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(1.0, 8.0);
    for (const auto& f : {GeneratorSpec::log(), GeneratorSpec::power(0.5), GeneratorSpec::power(-2.0),
                          GeneratorSpec::truncated_linear(0.5), hm_test::g_dip()}) {
        for (int i = 0; i < 20; ++i) {
            double c1 = U(rng), c2 = U(rng);
            if (c1 > c2) std::swap(c1, c2);
            const double left = integral_f_inv(f, c1).value;
            const double middle = integrate_over_s2(f, 1.0 / c2, 1.0 / c1).value;
            const double whole = integral_f_inv(f, c2).value;
            CHECK(std::abs(left + middle - whole) <= 1e-10);
        }
    }
}

TEST_CASE("K_of_g") {
    CHECK(K_of_g(hm_test::g_L(), 1.0, kInf).value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(K_of_g(GeneratorSpec::truncated_linear(1.0), 1.0, kInf).value ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    // g(2)/2 + integral of (s - 1)/s^2 over [1/2, 2] = 2 ln 2 - 1.
    CHECK(K_of_g(hm_test::g_dip(), 0.5, 2.0).value == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-12));
    CHECK(K_of_g(GeneratorSpec::power(1.0), 0.5, kInf).divergence_flag);
    CHECK_THROWS_AS((void)K_of_g(hm_test::g_L(), 0.0, kInf), ArgumentError);
    CHECK_THROWS_AS((void)K_of_g(hm_test::g_L(), 0.5, 0.9), ArgumentError);
}

TEST_CASE("panels are recorded on request") {
    QuadratureOptions keep;
    keep.keep_panels = true;
    const auto r = integral_f_inv(GeneratorSpec::log(), 2.0, keep);
    REQUIRE_FALSE(r.panels.empty());
    double sum = 0.0;
    for (const auto& p : r.panels) sum += p.value;
    CHECK(sum == doctest::Approx(r.value).epsilon(1e-13));
    CHECK(integral_f_inv(GeneratorSpec::log(), 2.0).panels.empty());
}
