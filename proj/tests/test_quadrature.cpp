#include "casimir/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "casimir/specfun.hpp"
#include "doctest.h"

using namespace casimir::quad;
using std::numbers::pi;

TEST_CASE("finite interval: analytic integrals") {
    const QuadratureResult s = integrate_finite([](double x) { return std::sin(x); }, 0.0, pi);
    CHECK(s.converged);
    CHECK(std::abs(s.value - 2.0) < 1e-12);

    const QuadratureResult r =
        integrate_finite([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0);
    CHECK(r.converged);
    CHECK(std::abs(r.value - pi / 4.0) < 1e-12);
}

TEST_CASE("finite interval: eccentric-force type integrand") {
    // sin(t) / (g + e sin t)^4 over a full period, g = 0.1, e = 0.05:
    // closed form -pi e (4 g^2 + e^2) / (g^2 - e^2)^(7/2)
    const double g = 0.1;
    const double e = 0.05;
    auto f = [=](double t) { return std::sin(t) / std::pow(g + e * std::sin(t), 4); };
    const QuadratureResult base = integrate_finite(f, 0.0, 2.0 * pi);
    QuadratureSpec tight;
    tight.rel_tol = 1e-10;
    const QuadratureResult ref = integrate_finite(f, 0.0, 2.0 * pi, tight);
    const double exact = -pi * e * (4 * g * g + e * e) / std::pow(g * g - e * e, 3.5);
    CHECK(base.converged);
    CHECK(ref.converged);
    CHECK(base.value == doctest::Approx(ref.value).epsilon(1e-9));
    CHECK(ref.value == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("semi-infinite: analytic integrals") {
    const QuadratureResult a = integrate_semi_infinite([](double x) { return std::exp(-x); });
    CHECK(a.converged);
    CHECK(std::abs(a.value - 1.0) < 1e-12);

    const QuadratureResult b =
        integrate_semi_infinite([](double x) { return x * std::exp(-2.0 * x); });
    CHECK(b.converged);
    CHECK(std::abs(b.value - 0.25) < 1e-12);
}

TEST_CASE("semi-infinite: y ln F_0(y, 2) against a 30-digit reference quadrature") {
    auto f = [](double y) {
        const auto r = casimir::specfun::log_ratios(0, y, 2.0);
        return y * (std::log1p(-std::exp(r.te)) + std::log1p(-std::exp(r.tm)));
    };
    QuadratureSpec spec;
    spec.tail_cut = 1.0;  // 1/(alpha - 1)
    const QuadratureResult q = integrate_semi_infinite(f, spec);
    CHECK(q.converged);
    CHECK(q.value == doctest::Approx(-0.46015145892199988245).epsilon(1e-9));
}

TEST_CASE("error estimates are honest on a suite of analytic integrals") {
    struct Case {
        std::string name;
        Integrand f;
        double lo;
        double hi;  // NaN: semi-infinite
        double exact;
        double rel_tol;
    };
    const double inf = std::nan("");
    const std::vector<Case> cases = {
        {"sin", [](double x) { return std::sin(x); }, 0, pi, 2.0, 1e-6},
        {"cos", [](double x) { return std::cos(x); }, 0, pi / 2, 1.0, 1e-10},
        {"poly5", [](double x) { return x * x * x * x * x; }, 0, 2, 64.0 / 6.0, 1e-12},
        {"lorentz", [](double x) { return 1 / (1 + x * x); }, 0, 1, pi / 4, 1e-6},
        {"narrow", [](double x) { return 1e-2 / (1e-4 + (x - 0.3) * (x - 0.3)); }, 0, 1,
         std::atan(70.0) + std::atan(30.0), 1e-8},
        {"sqrt", [](double x) { return std::sqrt(x); }, 0, 1, 2.0 / 3.0, 1e-8},
        {"log", [](double x) { return std::log(x); }, 0, 1, -1.0, 1e-8},
        {"inv_sqrt", [](double x) { return 1 / std::sqrt(x); }, 0, 1, 2.0, 1e-6},
        {"exp", [](double x) { return std::exp(x); }, -1, 3, std::exp(3.0) - std::exp(-1.0), 1e-12},
        {"osc", [](double x) { return std::cos(30 * x); }, 0, 1, std::sin(30.0) / 30.0, 1e-9},
        {"gauss", [](double x) { return std::exp(-x * x); }, -5, 5, std::sqrt(pi) * std::erf(5.0), 1e-10},
        {"x_log_x", [](double x) { return x * std::log(x); }, 0, 1, -0.25, 1e-9},
        {"abs", [](double x) { return std::abs(x - 0.37); }, 0, 1, 0.5 * (0.37 * 0.37 + 0.63 * 0.63), 1e-9},
        {"step", [](double x) { return x < 0.6180339887 ? 1.0 : 0.0; }, 0, 1, 0.6180339887, 1e-7},
        {"e^-x", [](double x) { return std::exp(-x); }, 0, inf, 1.0, 1e-10},
        {"x e^-2x", [](double x) { return x * std::exp(-2 * x); }, 0, inf, 0.25, 1e-10},
        {"x^3 e^-x", [](double x) { return x * x * x * std::exp(-x); }, 0, inf, 6.0, 1e-9},
        {"e^-x cos x", [](double x) { return std::exp(-x) * std::cos(x); }, 0, inf, 0.5, 1e-9},
        {"sech^2", [](double x) { return 1 / (std::cosh(x) * std::cosh(x)); }, 0, inf, 1.0, 1e-9},
        {"e^-x / sqrt x", [](double x) { return std::exp(-x) / std::sqrt(x); }, 0, inf, std::sqrt(pi), 1e-7},
    };
    REQUIRE(cases.size() == 20);
    for (const Case& c : cases) {
        CAPTURE(c.name);
        QuadratureSpec spec;
        spec.rel_tol = c.rel_tol;
        const QuadratureResult r = std::isnan(c.hi) ? integrate_semi_infinite(c.f, spec)
                                                    : integrate_finite(c.f, c.lo, c.hi, spec);
        const double true_error = std::abs(r.value - c.exact);
        CHECK(r.error_estimate >= 0.0);
        CHECK(true_error <= 10.0 * r.error_estimate + 1e-15 * std::abs(c.exact));
        if (r.converged) {
            CHECK(r.error_estimate <= std::max(spec.abs_tol, spec.rel_tol * std::abs(r.value)) +
                                          (std::isnan(c.hi) ? spec.abs_tol : 0.0));
        }
    }
}

TEST_CASE("results are bit-identical across repeated and concurrent calls") {
    auto f = [](double x) { return std::exp(-0.3 * x) * std::sin(x) * std::sin(x); };
    const QuadratureResult ref = integrate_semi_infinite(f);
    std::vector<QuadratureResult> results(4);
    std::vector<std::thread> workers;
    for (std::size_t i = 0; i < results.size(); ++i) {
        workers.emplace_back([&, i] { results[i] = integrate_semi_infinite(f); });
    }
    for (auto& w : workers) w.join();
    for (const auto& r : results) {
        CHECK(r.value == ref.value);
        CHECK(r.error_estimate == ref.error_estimate);
        CHECK(r.evaluations == ref.evaluations);
    }
}

TEST_CASE("failure flags") {
    SUBCASE("bisection budget exhausted") {
        QuadratureSpec spec;
        spec.max_subdivisions = 2;
        const QuadratureResult r =
            integrate_finite([](double x) { return std::cos(200 * x) / std::sqrt(x); }, 0, 1, spec);
        CHECK_FALSE(r.converged);
        CHECK(std::isfinite(r.value));
    }
    SUBCASE("no decay on [0, inf)") {
        QuadratureSpec spec;
        spec.max_subdivisions = 40;
        const QuadratureResult r = integrate_semi_infinite([](double) { return 1.0; }, spec);
        CHECK_FALSE(r.converged);
    }
    SUBCASE("invalid input") {
        QuadratureSpec bad;
        bad.rel_tol = 0.0;
        CHECK_THROWS_AS((void)integrate_finite([](double x) { return x; }, 0, 1, bad),
                        std::invalid_argument);
        bad = {};
        bad.max_subdivisions = 0;
        CHECK_THROWS_AS((void)integrate_semi_infinite([](double x) { return x; }, bad),
                        std::invalid_argument);
        CHECK_THROWS_AS((void)integrate_finite([](double x) { return x; }, 1, 1),
                        std::invalid_argument);
    }
}
