#include "casimir/exact.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "casimir/parallel.hpp"
#include "casimir/specfun.hpp"
#include "casimir/units.hpp"

namespace casimir::exact {

namespace {

using std::numbers::pi;

// ln(1 - e^t) for t < 0
double log1mexp(double t) {
    return t > -std::numbers::ln2 ? std::log(-std::expm1(t)) : std::log1p(-std::exp(t));
}

void check_alpha(double alpha) {
    if (!(alpha > 1.0) || !std::isfinite(alpha)) {
        throw std::domain_error("alpha must exceed 1, got " + std::to_string(alpha));
    }
}

// Mode n integral as a quadrature result; the driver applies the weight
// (1 for n = 0, 2 otherwise) and the overall prefactor.
using ModeIntegral = std::function<quad::QuadratureResult(int)>;

EnergyResult sum_modes(const NumericsConfig& cfg, double prefactor, const ModeIntegral& integral) {
    EnergyResult out;
    double partial = 0.0;
    int small_run = 0;
    bool done = false;
    int n = 0;
    const unsigned batch = std::max(1u, cfg.workers);

    while (!done && n <= cfg.n_hard_cap) {
        const auto count =
            static_cast<std::size_t>(std::min<long>(batch, static_cast<long>(cfg.n_hard_cap) - n + 1));
        const int first = n;
        const auto results = parallel_map(count, cfg.workers, [&](std::size_t i) {
            return integral(first + static_cast<int>(i));
        });
        // Ascending-n accumulation; terms past the stopping point are dropped.
        for (const quad::QuadratureResult& r : results) {
            const double weight = n == 0 ? 1.0 : 2.0;
            ModeTerm term{n, prefactor * weight * r.value,
                          std::abs(prefactor) * weight * r.error_estimate, r.converged};
            out.per_n.push_back(term);
            partial += term.contribution;
            out.quad_error += term.quad_error;
            out.quadrature_failed = out.quadrature_failed || !r.converged;

            if (n >= 1 && std::abs(term.contribution) < cfg.n_tol * std::abs(partial)) {
                ++small_run;
            } else {
                small_run = 0;
            }
            ++n;
            if (small_run >= 2) {
                done = true;
                break;
            }
        }
    }

    out.e12_hat = partial;
    out.n_max_used = out.per_n.back().n;
    out.truncation_capped = !done;

    // Geometric bound on the tail from the last two terms.
    const std::size_t m = out.per_n.size();
    if (m >= 2) {
        const double last = std::abs(out.per_n[m - 1].contribution);
        const double prev = std::abs(out.per_n[m - 2].contribution);
        double q = prev > 0.0 ? last / prev : 0.0;
        q = std::min(q, 0.999);
        out.truncation_error = last * q / (1.0 - q);
    }
    return out;
}

}  // namespace

void NumericsConfig::validate() const {
    quad.validate();
    if (!(n_tol > 0.0)) throw std::invalid_argument("NumericsConfig: n_tol must be positive");
    if (n_hard_cap < 1) throw std::invalid_argument("NumericsConfig: n_hard_cap must be at least 1");
    if (!(fd_step > 0.0)) throw std::invalid_argument("NumericsConfig: fd_step must be positive");
}

double log_F_n(int n, double y, double alpha) {
    const specfun::LogRatios r = specfun::log_ratios(n, y, alpha);
    if (!(r.te < 0.0) || !(r.tm < 0.0)) {
        throw std::domain_error("log_F_n: alpha too close to 1 for double precision");
    }
    return log1mexp(r.te) + log1mexp(r.tm);
}

EnergyResult e12_reduced(double alpha, const NumericsConfig& cfg) {
    check_alpha(alpha);
    cfg.validate();
    quad::QuadratureSpec spec = cfg.quad;
    spec.tail_cut = 1.0 / (alpha - 1.0);

    return sum_modes(cfg, 1.0 / (4.0 * pi), [&](int n) {
        return quad::integrate_semi_infinite(
            [n, alpha](double y) { return y * log_F_n(n, y, alpha); }, spec);
    });
}

EnergyResult e12_double_integral_oracle(double alpha, const NumericsConfig& cfg) {
    check_alpha(alpha);
    cfg.validate();
    quad::QuadratureSpec outer = cfg.quad;
    outer.tail_cut = 1.0 / (alpha - 1.0);
    // Inner variable t with y = k + t^2 removes the square-root endpoint.
    quad::QuadratureSpec inner = cfg.quad;
    inner.tail_cut = 1.0 / std::sqrt(alpha - 1.0);

    // Im sqrt(k^2 - y^2) = sqrt(y^2 - k^2) on y > |k|, zero below. The
    // k-integrand is even, so integrate k over [0, inf) and double:
    //   e12 = -(1/2pi^2) sum_n' int_0^inf dk int_k^inf dy sqrt(y^2-k^2) d/dy ln F_n
    const double prefactor = -1.0 / (2.0 * pi * pi);
    const double decay = alpha - 1.0;

    return sum_modes(cfg, prefactor, [&](int n) {
        bool inner_ok = true;
        auto dlog_f = [n, alpha, decay](double y) {
            // Step ~ cbrt(eps) times the local scale of ln F_n.
            const double h = 6e-6 * y / (1.0 + y * decay);
            return (log_F_n(n, y + h, alpha) - log_F_n(n, y - h, alpha)) / (2.0 * h);
        };
        auto g = [&](double k) {
            const quad::QuadratureResult r = quad::integrate_semi_infinite(
                [&](double t) {
                    const double t2 = t * t;
                    return 2.0 * t2 * std::sqrt(2.0 * k + t2) * dlog_f(k + t2);
                },
                inner);
            inner_ok = inner_ok && r.converged;
            return r.value;
        };
        quad::QuadratureResult r = quad::integrate_semi_infinite(g, outer);
        r.converged = r.converged && inner_ok;
        return r;
    });
}

double e_total_from(const EnergyResult& e12, double alpha) {
    check_alpha(alpha);
    return e12.e12_hat - kSingleCylinder * (1.0 + 1.0 / (alpha * alpha));
}

double e_total(double alpha, const NumericsConfig& cfg) {
    const EnergyResult e = e12_reduced(alpha, cfg);
    if (!e.ok()) {
        throw ConvergenceError("e_total: interaction energy did not converge at alpha = " +
                               std::to_string(alpha));
    }
    return e_total_from(e, alpha);
}

PressureResult pressure_inner(double alpha, const EnergyResult& at_alpha,
                              const NumericsConfig& cfg) {
    check_alpha(alpha);
    cfg.validate();
    const double h = cfg.fd_step;
    if (!(alpha > 1.0 + 2.0 * h)) {
        throw std::domain_error("pressure_inner: alpha must exceed 1 + 2 fd_step");
    }

    const EnergyResult plus = e12_reduced(alpha + h, cfg);
    const EnergyResult minus = e12_reduced(alpha - h, cfg);
    const EnergyResult plus_half = e12_reduced(alpha + 0.5 * h, cfg);
    const EnergyResult minus_half = e12_reduced(alpha - 0.5 * h, cfg);

    const double d_full = (plus.e12_hat - minus.e12_hat) / (2.0 * h);
    const double d_half = (plus_half.e12_hat - minus_half.e12_hat) / h;
    const double derivative = (4.0 * d_half - d_full) / 3.0;

    // Expected |D(h) - D(h/2)| = (h^2/8)|e'''| plus noise from the energy
    // error; e''' estimated from the (alpha-1)^-3 scaling of the energy.
    const double energy = std::abs(at_alpha.e12_hat);
    const double d = alpha - 1.0;
    const double third = 60.0 * energy / (d * d * d);
    const double noise = 3.0 * std::max({plus.total_error(), minus.total_error(),
                                         plus_half.total_error(), minus_half.total_error()}) /
                         (0.5 * h);
    const double expected = h * h / 8.0 * third + noise;

    PressureResult out;
    out.derivative = derivative;
    out.value = 2.0 * at_alpha.e12_hat + alpha * derivative;
    out.fd_discrepancy = std::abs(d_full - d_half);
    out.fd_consistent = out.fd_discrepancy <= 10.0 * expected;
    out.energy_ok = at_alpha.ok() && plus.ok() && minus.ok() && plus_half.ok() && minus_half.ok();
    return out;
}

PressureResult pressure_inner(double alpha, const NumericsConfig& cfg) {
    check_alpha(alpha);
    if (!(alpha > 1.0 + 2.0 * cfg.fd_step)) {
        throw std::domain_error("pressure_inner: alpha must exceed 1 + 2 fd_step");
    }
    return pressure_inner(alpha, e12_reduced(alpha, cfg), cfg);
}

double e12_joules(const ConcentricGeometry& geom, const NumericsConfig& cfg) {
    geom.validate();
    const EnergyResult e = e12_reduced(geom.alpha(), cfg);
    if (!e.ok()) throw ConvergenceError("e12_joules: interaction energy did not converge");
    return e.e12_hat * units::kHbarC * geom.L / (geom.a * geom.a);
}

double pressure_pascals(const ConcentricGeometry& geom, const NumericsConfig& cfg) {
    geom.validate();
    const PressureResult p = pressure_inner(geom.alpha(), cfg);
    if (!p.ok()) throw ConvergenceError("pressure_pascals: pressure did not converge");
    const double a2 = geom.a * geom.a;
    return p.value * units::kHbarC / (2.0 * pi * a2 * a2);
}

}  // namespace casimir::exact
