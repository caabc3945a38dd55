#include "casimir/approx.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "casimir/exact.hpp"
#include "casimir/units.hpp"
#include "doctest.h"

using namespace casimir::approx;
using casimir::units::kPfaCoefficient;

TEST_CASE("proximity energy: closed-form values") {
    CHECK(proximity_energy(1.5, {1.0}) == doctest::Approx(-kPfaCoefficient / 0.125).epsilon(1e-15));
    CHECK(proximity_energy(1.5, {1.0}) == doctest::Approx(-0.68903).epsilon(1e-5));
    CHECK(proximity_energy(4.0, {0.5}) == doctest::Approx(-kPfaCoefficient * 2.0 / 27.0).epsilon(1e-15));
    CHECK(proximity_energy(2.0, {0.0}) == doctest::Approx(-2.0 * kPfaCoefficient).epsilon(1e-15));
}

TEST_CASE("proximity energy: ordering in p and the alpha -> 1 limit") {
    for (double alpha : {1.01, 1.1, 2.0, 4.0}) {
        double prev = proximity_energy(alpha, {0.0});
        for (double p = 0.1; p <= 1.0001; p += 0.1) {
            const double v = proximity_energy(alpha, {std::min(p, 1.0)});
            CHECK(v > prev);
            prev = v;
        }
    }
    for (double d : {1e-2, 1e-3, 1e-4}) {
        const double e0 = proximity_energy(1.0 + d, {0.0});
        const double e1 = proximity_energy(1.0 + d, {1.0});
        CHECK(std::abs(e0 / e1 - 1.0) == doctest::Approx(d).epsilon(1e-6));
    }
}

TEST_CASE("proximity pressure matches a finite-difference derivative") {
    for (double p : {0.0, 0.5, 1.0, 0.3}) {
        for (double alpha : {1.1, 1.5, 2.0, 3.7}) {
            const double h = 1e-4 * (alpha - 1.0);
            auto e = [p](double a) { return proximity_energy(a, {p}); };
            const double d1 = (e(alpha + h) - e(alpha - h)) / (2 * h);
            const double d2 = (e(alpha + h / 2) - e(alpha - h / 2)) / h;
            const double fd = 2.0 * e(alpha) + alpha * (4 * d2 - d1) / 3;
            CAPTURE(p);
            CAPTURE(alpha);
            CHECK(proximity_pressure(alpha, {p}) == doctest::Approx(fd).epsilon(1e-8));
        }
    }
    const double k = kPfaCoefficient;
    CHECK(proximity_pressure(2.0, {0.5}) ==
          doctest::Approx(-2 * k * std::sqrt(2.0) + 2 * k * (3 * std::sqrt(2.0) - 0.5 / std::sqrt(2.0)))
              .epsilon(1e-14));
    // Leading term 3 K / (alpha - 1)^4 once alpha -> 1.
    const double d = 1e-4;
    CHECK(proximity_pressure(1.0 + d, {0.5}) * std::pow(d, 4) == doctest::Approx(3 * k).epsilon(1e-3));
}

TEST_CASE("semiclassical energy is the geometric-mean proximity energy") {
    for (double alpha : {1.1, 2.0, 4.0}) {
        CHECK(semiclassical_energy(alpha) == proximity_energy(alpha, {0.5}));
    }
    CHECK(semiclassical_energy(2.0) == doctest::Approx(-kPfaCoefficient * std::sqrt(2.0)).epsilon(1e-15));
    const double exact = casimir::exact::e12_reduced(1.01).e12_hat;
    CHECK(semiclassical_energy(1.01) == doctest::Approx(exact).epsilon(1e-3));
}

TEST_CASE("exact energy lies between the p = 0 and p = 1 proximity values") {
    for (double alpha : {1.1, 1.5, 2.0, 3.0, 4.0}) {
        const double e = casimir::exact::e12_reduced(alpha).e12_hat;
        CAPTURE(alpha);
        CHECK(e > proximity_energy(alpha, {0.0}));
        CHECK(e < proximity_energy(alpha, {1.0}));
    }
}

TEST_CASE("fit_p recovers the exponent of synthetic data") {
    const std::vector<double> grid = {1.5, 2.0, 2.5, 3.0};
    for (double p_true : {0.2, 0.5, 0.7}) {
        for (FitMode mode : {FitMode::energy, FitMode::pressure}) {
            std::vector<double> values;
            for (double a : grid) {
                values.push_back(mode == FitMode::energy ? proximity_energy(a, {p_true})
                                                         : proximity_pressure(a, {p_true}));
            }
            const FitResult r = fit_p(grid, values, mode);
            CAPTURE(p_true);
            CHECK(r.p_star == doctest::Approx(p_true).epsilon(1e-3));
            CHECK(r.objective < 1e-12);
            CHECK_FALSE(r.flat);
            CHECK_FALSE(r.non_unimodal);
        }
    }
}

TEST_CASE("fit_p on exact energies") {
    const std::vector<double> grid = {1.5, 2.0, 2.5, 3.0};
    std::vector<double> energy;
    std::vector<double> pressure;
    for (double a : grid) {
        energy.push_back(casimir::exact::e12_reduced(a).e12_hat);
        pressure.push_back(casimir::exact::pressure_inner(a).value);
    }
    const FitResult fe = fit_p(grid, energy, FitMode::energy);
    const FitResult fp = fit_p(grid, pressure, FitMode::pressure);
    CHECK_FALSE(fe.flat);
    CHECK_FALSE(fe.non_unimodal);
    CHECK_FALSE(fp.non_unimodal);
    // Regression values from the validated exact module.
    CHECK(fe.p_star == doctest::Approx(0.6375).epsilon(2e-3));
    CHECK(fp.p_star == doctest::Approx(0.5843).epsilon(2e-3));
    CHECK(fit_objective(fe.p_star, grid, energy, FitMode::energy) <=
          fit_objective(0.5, grid, energy, FitMode::energy));
}

TEST_CASE("fit_p flags a single point near alpha = 1") {
    const double e = casimir::exact::e12_reduced(1.01).e12_hat;
    const FitResult r = fit_p({1.01}, {e}, FitMode::energy);
    CHECK(r.flat);
    CHECK_THROWS_AS((void)fit_p({}, {}, FitMode::energy), std::invalid_argument);
    CHECK_THROWS_AS((void)fit_p({2.0}, {1.0, 2.0}, FitMode::energy), std::invalid_argument);
    CHECK_THROWS_AS((void)fit_p({0.9}, {1.0}, FitMode::energy), std::domain_error);
}

TEST_CASE("fit_p is never worse than the dense scan") {
    const std::vector<double> grid = {1.2, 1.3, 3.5, 4.0};
    const std::vector<double> values = {proximity_energy(1.2, {0.1}), proximity_energy(1.3, {0.1}),
                                        proximity_energy(3.5, {0.9}), proximity_energy(4.0, {0.9})};
    const FitResult r = fit_p(grid, values, FitMode::energy);
    double best = 1e300;
    for (int k = 0; k <= 1000; ++k) best = std::min(best, fit_objective(k / 1000.0, grid, values, FitMode::energy));
    CHECK(r.objective <= best);
    CHECK(r.objective == doctest::Approx(best).epsilon(1e-5));
}

TEST_CASE("orbit catalogue") {
    const std::vector<Orbit> orbits = enumerate_orbits(2.0, 12.0);
    REQUIRE_FALSE(orbits.empty());
    for (std::size_t i = 1; i < orbits.size(); ++i) CHECK(orbits[i - 1].length <= orbits[i].length);

    const Orbit& first = orbits.front();
    CHECK(first.kind == OrbitKind::type_ii);
    CHECK(first.repetitions == 1);
    CHECK(first.length == doctest::Approx(1.0));

    bool seen_diameter = false;
    bool seen_square = false;
    int radial = 0;
    for (const Orbit& o : orbits) {
        if (o.kind == OrbitKind::type_ii) {
            ++radial;
            CHECK(o.w == 0);
            CHECK(o.v == 1);
            CHECK(o.length == doctest::Approx(o.repetitions * 1.0));
            continue;
        }
        CHECK(std::gcd(o.v, o.w) == 1);
        CHECK(2 * o.w <= o.v);
        if (o.v == 2 && o.w == 1) {
            seen_diameter = true;
            CHECK(o.length == doctest::Approx(4.0));
            CHECK_FALSE(o.admissible);
        }
        if (o.v == 4 && o.w == 1) {
            seen_square = true;
            CHECK(o.length == doctest::Approx(4.0 * std::sqrt(2.0)));
            CHECK(o.admissible);
        }
    }
    CHECK(seen_diameter);
    CHECK(seen_square);
    CHECK(radial == 12);

    for (const Orbit& o : enumerate_orbits(1.2, 12.0)) {
        if (o.kind == OrbitKind::type_i && o.v == 4 && o.w == 1) CHECK_FALSE(o.admissible);
    }
    CHECK(enumerate_orbits(2.0, 0.1).empty());
}

TEST_CASE("orbit admissibility only grows with alpha") {
    const std::vector<double> alphas = {1.05, 1.2, 1.5, 2.0, 3.0, 6.0};
    for (std::size_t i = 0; i + 1 < alphas.size(); ++i) {
        const auto lo = enumerate_orbits(alphas[i], 6.3, 20);
        const auto hi = enumerate_orbits(alphas[i + 1], 6.3, 20);
        for (const Orbit& a : lo) {
            if (a.kind != OrbitKind::type_i || !a.admissible) continue;
            for (const Orbit& b : hi) {
                if (b.kind == OrbitKind::type_i && b.v == a.v && b.w == a.w) CHECK(b.admissible);
            }
        }
    }
    CHECK_THROWS_AS((void)enumerate_orbits(1.0, 5.0), std::domain_error);
    CHECK_THROWS_AS((void)enumerate_orbits(2.0, 0.0), std::domain_error);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((void)proximity_energy(2.0, {1.5}), std::domain_error);
    CHECK_THROWS_AS((void)proximity_energy(2.0, {-0.1}), std::domain_error);
    CHECK_THROWS_AS((void)proximity_pressure(1.0, {0.5}), std::domain_error);
    CHECK_THROWS_AS((void)semiclassical_energy(0.9), std::domain_error);
}
