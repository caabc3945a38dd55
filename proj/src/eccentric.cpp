#include "casimir/eccentric.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "casimir/units.hpp"

namespace casimir::eccentric {

namespace {

using std::numbers::pi;

// pi^2 hbar c / 720, the parallel-plate energy per unit area times l^3.
constexpr double kPlate = pi * pi * units::kHbarC / 720.0;

// Lengths in units of the gap g = b - a: rho = a/g, beta = b/g, u = eps/g.
struct Reduced {
    double rho;
    double beta;
    double u;
};

Reduced reduce(const EccentricGeometry& geom) {
    const double g = geom.base.gap();
    return {geom.base.a / g, geom.base.b / g, geom.eps / g};
}

// r(theta) - a in units of g, without the cancellation of r - a.
double reduced_gap(const Reduced& q, double s, double c) {
    const double uc2 = q.u * q.u * c * c;
    return 1.0 - uc2 / (std::sqrt(q.beta * q.beta - uc2) + q.beta) + q.u * s;
}

std::vector<std::string> geometry_warnings(const EccentricGeometry& geom) {
    std::vector<std::string> out;
    if (1.0 - geom.eps_tilde() < kNearContact) {
        out.emplace_back("surfaces nearly touch: (b - a - eps)/(b - a) < 1e-3");
    }
    if (geom.base.alpha() > 2.0) {
        out.emplace_back("b/a > 2: proximity approximation untested in this range");
    }
    return out;
}

// The integrand is symmetric under theta -> pi - theta, so the full circle
// is twice [-pi/2, pi/2].
EccentricResult integrate_circle(const quad::Integrand& f, const quad::QuadratureSpec& spec,
                                 double scale) {
    const quad::QuadratureResult r = quad::integrate_finite(f, -0.5 * pi, 0.5 * pi, spec);
    return {2.0 * scale * r.value, 2.0 * std::abs(scale) * r.error_estimate, r.converged, {}};
}

}  // namespace

double gap_radius(double theta, double b, double eps) {
    if (!(eps >= 0.0) || !(eps < b)) throw std::domain_error("gap_radius: need 0 <= eps < b");
    const double c = std::cos(theta);
    return std::sqrt(b * b - eps * eps * c * c) + eps * std::sin(theta);
}

double effective_area_element(double theta, const EccentricGeometry& geom) {
    const double a = geom.base.a;
    return geom.base.L * std::sqrt(a * geom.base.b + geom.eps * a * std::sin(theta));
}

EccentricResult energy_eccentric(const EccentricGeometry& geom, const quad::QuadratureSpec& spec) {
    geom.validate();
    const Reduced q = reduce(geom);
    const double g = geom.base.gap();
    auto f = [&q](double theta) {
        const double s = std::sin(theta);
        const double d = reduced_gap(q, s, std::cos(theta));
        return std::sqrt(q.rho * q.beta + q.u * q.rho * s) / (d * d * d);
    };
    EccentricResult out = integrate_circle(f, spec, -kPlate * geom.base.L / (g * g));
    out.warnings = geometry_warnings(geom);
    return out;
}

EccentricResult force_eccentric_numeric(const EccentricGeometry& geom,
                                        const quad::QuadratureSpec& spec) {
    geom.validate();
    if (geom.eps == 0.0) return {0.0, 0.0, true, geometry_warnings(geom)};

    const Reduced q = reduce(geom);
    const double g = geom.base.gap();
    auto f = [&q](double theta) {
        const double s = std::sin(theta);
        const double c = std::cos(theta);
        const double area = std::sqrt(q.rho * q.beta + q.u * q.rho * s);
        const double d = reduced_gap(q, s, c);
        const double d_area = 0.5 * q.rho * s / area;
        const double d_gap = s - q.u * c * c / std::sqrt(q.beta * q.beta - q.u * q.u * c * c);
        const double d3 = d * d * d;
        return d_area / d3 - 3.0 * area * d_gap / (d3 * d);
    };
    EccentricResult out = integrate_circle(f, spec, kPlate * geom.base.L / (g * g * g));
    out.warnings = geometry_warnings(geom);
    return out;
}

double force_scale(const ConcentricGeometry& geom) {
    geom.validate();
    const double g = geom.gap();
    return pi * pi * pi * units::kHbarC * geom.L * geom.a / (60.0 * g * g * g * g);
}

double force_closed_form(const EccentricGeometry& geom) {
    geom.validate();
    const double e = geom.eps_tilde();
    return force_scale(geom.base) * (e + e * e * e / 4.0) / std::pow(1.0 - e * e, 3.5);
}

void ResonatorParams::validate() const {
    if (!(mass > 0.0) || !std::isfinite(mass)) {
        throw std::domain_error("ResonatorParams: mass must be positive");
    }
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
        throw std::domain_error("ResonatorParams: omega0 must be positive");
    }
}

ShiftResult frequency_shift(const EccentricGeometry& geom, const ResonatorParams& res) {
    res.validate();
    const double f0 = force_scale(geom.base);
    ShiftResult out;
    out.value = -f0 / (2.0 * geom.base.gap() * res.mass * res.omega0 * res.omega0);
    if (std::abs(out.value) > kLargeShift) {
        out.warnings.emplace_back("|shift| > 0.1: small-shift approximation does not hold");
    }
    if (geom.base.alpha() > 2.0) {
        out.warnings.emplace_back("b/a > 2: proximity approximation untested in this range");
    }
    return out;
}

}  // namespace casimir::eccentric
