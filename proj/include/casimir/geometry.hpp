#pragma once

namespace casimir {

/// Two coaxial cylinders: inner radius a, outer radius b, common length L.
/// Lengths in any consistent unit (SI where a unit-bearing result is asked
/// for). The model assumes L >> b; that is not checked.
struct ConcentricGeometry {
    double a = 1.0;
    double b = 2.0;
    double L = 1.0;

    [[nodiscard]] double alpha() const { return b / a; }
    [[nodiscard]] double gap() const { return b - a; }

    /// Throws std::domain_error unless 0 < a < b and L > 0.
    void validate() const;
};

/// Inner cylinder displaced from the outer axis by eps.
struct EccentricGeometry {
    ConcentricGeometry base;
    double eps = 0.0;

    [[nodiscard]] double eps_tilde() const { return eps / base.gap(); }

    /// Throws std::domain_error unless base is valid and 0 <= eps < b - a.
    void validate() const;
};

}  // namespace casimir
