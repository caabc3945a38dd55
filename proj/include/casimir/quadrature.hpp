#pragma once

// Adaptive Gauss-Kronrod integration on finite intervals and on [0, inf) for
// integrands with eventually exponential decay.

#include <functional>

namespace casimir::quad {

struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-14;
    /// Bisection budget per finite interval; panel budget for [0, inf).
    int max_subdivisions = 200;
    /// Width of the first panel on [0, inf). Callers set it to the natural
    /// decay length of the integrand.
    double tail_cut = 1.0;

    /// Throws std::invalid_argument if a field is out of range.
    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = true;
};

using Integrand = std::function<double(double)>;

/// Adaptive 21-point Gauss-Kronrod with bisection of the worst interval.
/// Returns the best estimate with converged = false when the bisection
/// budget runs out first. Throws std::invalid_argument for lo >= hi.
[[nodiscard]] QuadratureResult integrate_finite(const Integrand& f, double lo, double hi,
                                                const QuadratureSpec& spec = {});

/// Integral over [0, inf) on panels [0,c], [c,2c], [2c,4c], ... with
/// c = spec.tail_cut. Stops once a panel contributes less than abs_tol and
/// an exponential bound on the remaining tail, fitted to the integrand at
/// the last panel's end points, is also below abs_tol. The reported error
/// is the sum of panel errors plus that tail bound; converged means it is
/// within max(abs_tol, rel_tol |value|) + abs_tol.
[[nodiscard]] QuadratureResult integrate_semi_infinite(const Integrand& f,
                                                       const QuadratureSpec& spec = {});

}  // namespace casimir::quad
