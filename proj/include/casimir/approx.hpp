#pragma once

// Proximity-force and semiclassical approximations for concentric cylinders.
// Energies in units of hbar c L / a^2, pressures in hbar c / (2 pi a^4), as
// in casimir/exact.hpp.

#include <vector>

namespace casimir::approx {

/// Effective area A_eff = 2 pi L a^p b^(1-p); p = 1 uses the inner surface,
/// p = 0 the outer one, p = 1/2 their geometric mean.
struct ProximityParams {
    double p = 0.5;

    /// Throws std::domain_error unless 0 <= p <= 1.
    void validate() const;
};

/// -(pi^3/360) alpha^(1-p) / (alpha - 1)^3.
[[nodiscard]] double proximity_energy(double alpha, const ProximityParams& params);

/// 2 e + alpha e' for the proximity energy, with e' in closed form.
[[nodiscard]] double proximity_pressure(double alpha, const ProximityParams& params);

/// Dominant periodic-orbit result: identical to the p = 1/2 proximity energy.
[[nodiscard]] double semiclassical_energy(double alpha);

enum class FitMode { energy, pressure };

struct FitResult {
    double p_star = 0.0;
    double objective = 0.0;
    /// The dense scan found more than one local minimum; p_star is then
    /// the scan's global minimum.
    bool non_unimodal = false;
    /// The objective varies by less than kFlatObjective per grid point over
    /// p in [0, 1], so p is not identified by the data.
    bool flat = false;
};

inline constexpr double kFlatObjective = 1e-4;

/// Sum over the grid of ((proximity - exact) / exact)^2.
[[nodiscard]] double fit_objective(double p, const std::vector<double>& alpha_grid,
                                   const std::vector<double>& exact_values, FitMode mode);

/// argmin over p in [0, 1] of fit_objective. Golden-section search, checked
/// against a scan at dp = 1e-3. Throws std::invalid_argument for empty or
/// mismatched inputs and std::domain_error for alpha <= 1.
[[nodiscard]] FitResult fit_p(const std::vector<double>& alpha_grid,
                              const std::vector<double>& exact_values, FitMode mode);

enum class OrbitKind { type_i, type_ii };

/// Periodic orbit in the annulus between the cylinders, in a plane normal to
/// the axis. Type I: closed polygon inscribed in the outer circle with v
/// bounces and winding w. Type II: the radial orbit bouncing between the two
/// walls (v = 1, w = 0), traversed `repetitions` times.
struct Orbit {
    OrbitKind kind = OrbitKind::type_i;
    int v = 0;
    int w = 0;
    int repetitions = 1;
    /// In units of b.
    double length = 0.0;
    /// Type I: the polygon clears the inner cylinder, cos(pi w / v) >= a/b.
    bool admissible = true;
};

/// Orbits with length <= length_cap (units of b), sorted by length. Type I
/// labels are coprime with 1 <= w <= v/2 and v <= max_bounces; the (v, 1)
/// family accumulates at length 2 pi, so the bounce cap keeps the list finite.
[[nodiscard]] std::vector<Orbit> enumerate_orbits(double alpha, double length_cap,
                                                  int max_bounces = 64);

}  // namespace casimir::approx
