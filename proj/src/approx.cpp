#include "casimir/approx.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

#include "casimir/units.hpp"

namespace casimir::approx {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 1.0) || !std::isfinite(alpha)) {
        throw std::domain_error("alpha must exceed 1, got " + std::to_string(alpha));
    }
}

constexpr int kScanSteps = 1000;

}  // namespace

void ProximityParams::validate() const {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("ProximityParams: p must lie in [0, 1]");
    }
}

double proximity_energy(double alpha, const ProximityParams& params) {
    check_alpha(alpha);
    params.validate();
    return -units::kPfaCoefficient * std::pow(alpha, 1.0 - params.p) / std::pow(alpha - 1.0, 3);
}

double proximity_pressure(double alpha, const ProximityParams& params) {
    const double e = proximity_energy(alpha, params);
    const double p = params.p;
    const double d = alpha - 1.0;
    const double de = -units::kPfaCoefficient *
                      ((1.0 - p) * std::pow(alpha, -p) / (d * d * d) -
                       3.0 * std::pow(alpha, 1.0 - p) / (d * d * d * d));
    return 2.0 * e + alpha * de;
}

double semiclassical_energy(double alpha) { return proximity_energy(alpha, {0.5}); }

double fit_objective(double p, const std::vector<double>& alpha_grid,
                     const std::vector<double>& exact_values, FitMode mode) {
    const ProximityParams params{p};
    double sum = 0.0;
    for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
        const double approx = mode == FitMode::energy ? proximity_energy(alpha_grid[i], params)
                                                      : proximity_pressure(alpha_grid[i], params);
        const double r = (approx - exact_values[i]) / exact_values[i];
        sum += r * r;
    }
    return sum;
}

FitResult fit_p(const std::vector<double>& alpha_grid, const std::vector<double>& exact_values,
                FitMode mode) {
    if (alpha_grid.empty() || alpha_grid.size() != exact_values.size()) {
        throw std::invalid_argument("fit_p: need equally sized, non-empty grids");
    }
    for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
        check_alpha(alpha_grid[i]);
        if (!(exact_values[i] != 0.0) || !std::isfinite(exact_values[i])) {
            throw std::invalid_argument("fit_p: exact values must be finite and non-zero");
        }
    }
    auto objective = [&](double p) { return fit_objective(p, alpha_grid, exact_values, mode); };

    std::vector<double> scan(kScanSteps + 1);
    for (int k = 0; k <= kScanSteps; ++k) scan[k] = objective(static_cast<double>(k) / kScanSteps);
    const auto best = std::min_element(scan.begin(), scan.end());
    const auto [lowest, highest] = std::minmax_element(scan.begin(), scan.end());

    int minima = 0;
    for (int k = 0; k <= kScanSteps; ++k) {
        const bool left = k == 0 || scan[k] < scan[k - 1];
        const bool right = k == kScanSteps || scan[k] <= scan[k + 1];
        if (left && right) ++minima;
    }

    FitResult out;
    out.flat = *highest - *lowest < kFlatObjective * static_cast<double>(alpha_grid.size());
    out.non_unimodal = minima > 1;
    if (out.non_unimodal) {
        out.p_star = static_cast<double>(best - scan.begin()) / kScanSteps;
        out.objective = *best;
        return out;
    }

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.0;
    double hi = 1.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = objective(x1);
    double f2 = objective(x2);
    while (hi - lo > 1e-9) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = objective(x2);
        }
    }
    out.p_star = 0.5 * (lo + hi);
    out.objective = objective(out.p_star);
    // The search cannot land on an end point exactly; defer to the scan there.
    if (*best < out.objective) {
        out.p_star = static_cast<double>(best - scan.begin()) / kScanSteps;
        out.objective = *best;
    }
    return out;
}

std::vector<Orbit> enumerate_orbits(double alpha, double length_cap, int max_bounces) {
    check_alpha(alpha);
    if (!(length_cap > 0.0) || !std::isfinite(length_cap)) {
        throw std::domain_error("enumerate_orbits: length_cap must be positive and finite");
    }
    if (max_bounces < 2) throw std::domain_error("enumerate_orbits: max_bounces must be >= 2");

    std::vector<Orbit> orbits;
    const double inv_alpha = 1.0 / alpha;
    for (int v = 2; v <= max_bounces; ++v) {
        for (int w = 1; 2 * w <= v; ++w) {
            if (std::gcd(v, w) != 1) continue;
            const double angle = std::numbers::pi * w / v;
            const double length = 2.0 * v * std::sin(angle);
            if (length > length_cap) continue;
            orbits.push_back({OrbitKind::type_i, v, w, 1, length, std::cos(angle) >= inv_alpha});
        }
    }
    const double radial = 2.0 * (1.0 - inv_alpha);
    for (int r = 1; r * radial <= length_cap; ++r) {
        orbits.push_back({OrbitKind::type_ii, 1, 0, r, r * radial, true});
    }

    std::sort(orbits.begin(), orbits.end(), [](const Orbit& x, const Orbit& y) {
        return std::tie(x.length, x.kind, x.v, x.w, x.repetitions) <
               std::tie(y.length, y.kind, y.v, y.w, y.repetitions);
    });
    return orbits;
}

}  // namespace casimir::approx
