#pragma once

// Exact electromagnetic Casimir interaction between two perfectly conducting
// coaxial cylinders, as a mode sum over the azimuthal index n of
//
//     F_n(y, alpha) = [1 - I_n(y) K_n(alpha y) / (I_n(alpha y) K_n(y))]
//                   x [1 - I_n'(y) K_n'(alpha y) / (I_n'(alpha y) K_n'(y))],
//
// with alpha = b/a. Energies are dimensionless, in units of hbar c L / a^2;
// pressures in units of hbar c / (2 pi a^4).

#include <stdexcept>
#include <string>
#include <vector>

#include "casimir/geometry.hpp"
#include "casimir/quadrature.hpp"

namespace casimir::exact {

/// Single-cylinder Casimir energy coefficient: E_1(R) = -kSingleCylinder hbar c L / R^2.
inline constexpr double kSingleCylinder = 0.01356;

struct NumericsConfig {
    quad::QuadratureSpec quad;
    /// Mode sum stops after two consecutive terms below n_tol * |partial sum|.
    double n_tol = 1e-10;
    int n_hard_cap = 2000;
    /// Step in alpha for the pressure derivative.
    double fd_step = 1e-4;
    /// Threads used to evaluate mode terms; the result does not depend on it.
    unsigned workers = 1;

    /// Throws std::invalid_argument.
    void validate() const;
};

struct ModeTerm {
    int n = 0;
    /// Contribution to e12_hat, including the factor 2 for n >= 1.
    double contribution = 0.0;
    double quad_error = 0.0;
    bool converged = true;
};

struct EnergyResult {
    double e12_hat = 0.0;
    std::vector<ModeTerm> per_n;
    int n_max_used = 0;
    double quad_error = 0.0;
    /// Geometric-series bound on the discarded modes.
    double truncation_error = 0.0;
    bool truncation_capped = false;
    bool quadrature_failed = false;

    [[nodiscard]] bool ok() const { return !truncation_capped && !quadrature_failed; }
    [[nodiscard]] double total_error() const { return quad_error + truncation_error; }
};

/// Raised where a scalar is returned and the underlying computation did not
/// reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// ln F_n(y, alpha) < 0. Throws std::domain_error for y <= 0, alpha <= 1, or
/// alpha so close to 1 that a Bessel ratio rounds to 1.
[[nodiscard]] double log_F_n(int n, double y, double alpha);

/// Main path: e12_hat = (1/4pi) sum_{n in Z} int_0^inf y ln F_n(y, alpha) dy.
[[nodiscard]] EnergyResult e12_reduced(double alpha, const NumericsConfig& cfg = {});

/// Verification path: the mode sum in its original form
///   e12_hat = -(1/2pi) int dk/2pi sum_n Im int_0^inf dy sqrt(k^2 - y^2) d/dy ln F_n,
/// with the k integral done numerically and d/dy ln F_n by central
/// differences. Orders of magnitude slower than e12_reduced.
[[nodiscard]] EnergyResult e12_double_integral_oracle(double alpha,
                                                      const NumericsConfig& cfg = {});

/// e12_hat - kSingleCylinder (1 + alpha^-2). Throws ConvergenceError.
[[nodiscard]] double e_total(double alpha, const NumericsConfig& cfg = {});
[[nodiscard]] double e_total_from(const EnergyResult& e12, double alpha);

struct PressureResult {
    /// 2 e12_hat + alpha e12_hat'(alpha).
    double value = 0.0;
    double derivative = 0.0;
    /// |D(h) - D(h/2)| of the two central differences.
    double fd_discrepancy = 0.0;
    bool fd_consistent = true;
    bool energy_ok = true;

    [[nodiscard]] bool ok() const { return fd_consistent && energy_ok; }
};

/// Dimensionless outward pressure on the inner cylinder at fixed b,
/// P 2 pi a^4 / (hbar c). Requires alpha > 1 + 2 fd_step.
[[nodiscard]] PressureResult pressure_inner(double alpha, const NumericsConfig& cfg = {});

/// Same, reusing an already computed e12_hat(alpha).
[[nodiscard]] PressureResult pressure_inner(double alpha, const EnergyResult& at_alpha,
                                            const NumericsConfig& cfg);

/// E_12 in joules for lengths in metres.
[[nodiscard]] double e12_joules(const ConcentricGeometry& geom, const NumericsConfig& cfg = {});

/// Outward pressure on the inner cylinder in pascals.
[[nodiscard]] double pressure_pascals(const ConcentricGeometry& geom,
                                      const NumericsConfig& cfg = {});

}  // namespace casimir::exact
