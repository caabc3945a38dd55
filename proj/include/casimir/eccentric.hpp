#pragma once

// Proximity-force energy and force for an inner cylinder displaced by eps
// from the axis of the outer one, and the resulting shift of a mechanical
// resonator's frequency. SI units throughout.
//
// theta is measured from the inner axis; the gap is narrowest at
// theta = -pi/2 and widest at theta = pi/2.

#include <string>
#include <vector>

#include "casimir/geometry.hpp"
#include "casimir/quadrature.hpp"

namespace casimir::eccentric {

/// Distance from the inner axis to the outer wall along theta:
/// sqrt(b^2 - eps^2 cos^2 theta) + eps sin theta. Throws std::domain_error
/// unless 0 <= eps < b.
[[nodiscard]] double gap_radius(double theta, double b, double eps);

/// Geometric mean of the facing area elements per unit angle,
/// L sqrt(a b + eps a sin theta).
[[nodiscard]] double effective_area_element(double theta, const EccentricGeometry& geom);

struct EccentricResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
    std::vector<std::string> warnings;
};

/// Surfaces closer than this fraction of b - a trigger a warning.
inline constexpr double kNearContact = 1e-3;

/// -(pi^2 hbar c / 720) int_0^2pi dA_eff / (r - a)^3, in joules.
/// Throws std::domain_error for invalid geometry.
[[nodiscard]] EccentricResult energy_eccentric(const EccentricGeometry& geom,
                                               const quad::QuadratureSpec& spec = {});

/// -dE/d eps in newtons, the eps derivative taken inside the integral.
/// Positive values push the cylinders further off axis. Exactly zero at
/// eps = 0.
[[nodiscard]] EccentricResult force_eccentric_numeric(const EccentricGeometry& geom,
                                                      const quad::QuadratureSpec& spec = {});

/// F0 = pi^3 hbar c L a / (60 (b - a)^4).
[[nodiscard]] double force_scale(const ConcentricGeometry& geom);

/// Leading-order force F0 (e + e^3/4) / (1 - e^2)^(7/2), e = eps/(b - a).
[[nodiscard]] double force_closed_form(const EccentricGeometry& geom);

struct ResonatorParams {
    /// Effective mass, kg.
    double mass = 1.0;
    /// Natural angular frequency, rad/s.
    double omega0 = 1.0;

    /// Throws std::domain_error unless both are positive and finite.
    void validate() const;
};

/// Above this |shift| the linearised result is unreliable.
inline constexpr double kLargeShift = 0.1;

struct ShiftResult {
    double value = 0.0;
    std::vector<std::string> warnings;
};

/// Relative frequency shift -F0 / (2 (b - a) M omega0^2) of a resonator
/// carrying one of the cylinders about the concentric position. The offset
/// geom.eps is ignored.
///
/// Example: a = L = 1 cm, b - a = 1 um gives F0 = 1.63e-6 N; with M = 1 g and
/// omega0 = 904 rad/s the shift is -1.0e-3.
[[nodiscard]] ShiftResult frequency_shift(const EccentricGeometry& geom, const ResonatorParams& res);

}  // namespace casimir::eccentric
