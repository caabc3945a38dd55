#include "casimir/specfun.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace casimir::specfun {

namespace {

#include "debye_coefficients.inc"

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIterations = 1'000'000;

void check_argument(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::domain_error("modified Bessel: argument must be positive and finite, got " +
                                std::to_string(x));
    }
}

// K_0 and K_1 at the same argument, as ln(e^x K_0) and the ratio K_1/K_0.
struct KStart {
    double log_k0_scaled;
    double k1_over_k0;
};

// Ascending series, x <= 2.
KStart k_start_series(double x) {
    constexpr double gamma = std::numbers::egamma;
    const double log_half_x = std::log(0.5 * x);
    const double q = 0.25 * x * x;

    // Below this the O(x^2 ln x) corrections vanish in double precision and
    // 1/x may not be representable.
    if (x < 1e-150) {
        const double k0 = -(log_half_x + gamma);
        // K_1/K_0 = 1/(x K_0)
        return {std::log(k0) + x, 1.0 / (x * k0)};
    }

    double term = 1.0;  // q^k / (k!)^2
    double i0 = 1.0;
    double harmonic = 0.0;
    double k0_sum = 0.0;

    double term1 = 1.0;  // q^k / (k!(k+1)!)
    double i1_sum = 1.0;
    double psi_sum = (-gamma) + (1.0 - gamma);  // psi(1) + psi(2)
    double k1_sum = psi_sum;

    for (int k = 1; k < 200; ++k) {
        const double dk = k;
        term *= q / (dk * dk);
        harmonic += 1.0 / dk;
        i0 += term;
        k0_sum += term * harmonic;

        term1 *= q / (dk * (dk + 1.0));
        i1_sum += term1;
        // psi(k+1) + psi(k+2) = 2 H_k + 1/(k+1) - 2 gamma
        psi_sum = 2.0 * harmonic + 1.0 / (dk + 1.0) - 2.0 * gamma;
        k1_sum += term1 * psi_sum;

        if (term < kEps * 1e-3 * i0 && term1 < kEps * 1e-3 * i1_sum) break;
    }
    const double i1 = 0.5 * x * i1_sum;
    const double k0 = -(log_half_x + gamma) * i0 + k0_sum;
    const double k1 = 1.0 / x + log_half_x * i1 - 0.25 * x * k1_sum;
    return {std::log(k0) + x, k1 / k0};
}

// Steed's continued fraction (Temme's CF2) at order zero, x > 2.
KStart k_start_cf2(double x) {
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    int i = 1;
    for (; i < kMaxIterations; ++i) {
        a -= 2 * i;
        c = -a * c / (i + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < kEps) break;
    }
    if (i == kMaxIterations) throw std::runtime_error("modified Bessel: CF2 failed to converge");
    h *= a1;
    // e^x K_0 = sqrt(pi/2x)/s, K_1/K_0 = (x + 1/2 - h)/x
    const double log_k0_scaled = 0.5 * std::log(std::numbers::pi / (2.0 * x)) - std::log(s);
    return {log_k0_scaled, (x + 0.5 - h) / x};
}

// I_{n+1}/I_n by the modified Lentz method.
double i_ratio_cf1(int n, double x) {
    constexpr double tiny = 1e-300;
    const double inv_x = 1.0 / x;
    double f = tiny;
    double c = f;
    double d = 0.0;
    for (int j = 1; j < kMaxIterations; ++j) {
        const double bj = 2.0 * (n + j) * inv_x;
        d = bj + d;
        if (d == 0.0) d = tiny;
        c = bj + 1.0 / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < kEps) return f;
    }
    throw std::runtime_error("modified Bessel: CF1 failed to converge");
}

LogBessel by_recurrence(int n, double x) {
    const KStart start = x <= 2.0 ? k_start_series(x) : k_start_cf2(x);

    // Walk K upward keeping ln K_m and rho_m = K_{m-1}/K_m.
    double log_k = start.log_k0_scaled;
    double rho = start.k1_over_k0;  // K_{-1}/K_0 = K_1/K_0
    double up = start.k1_over_k0;   // K_{m+1}/K_m
    double log_acc = 0.0;
    double prod = 1.0;
    for (int m = 1; m <= n; ++m) {
        // up currently holds K_m/K_{m-1}
        if (up > 1e100) {
            log_acc += std::log(up);
        } else {
            prod *= up;
            if (prod > 1e200) {
                log_acc += std::log(prod);
                prod = 1.0;
            }
        }
        rho = 1.0 / up;
        up = 2.0 * m / x + rho;
    }
    log_k += log_acc + std::log(prod);

    const double r = i_ratio_cf1(n, x);
    LogBessel out;
    out.log_k_scaled = log_k;
    // Wronskian: I_n K_{n+1} + I_{n+1} K_n = 1/x
    out.log_i_scaled = -std::log(x) - log_k - std::log(up + r);
    out.i_logderiv = n / x + r;
    out.k_logderiv = -(n / x + rho);
    return out;
}

LogBessel by_uniform_asymptotics(int n, double x) {
    const double nu = n;
    const double z = x / nu;
    const double sq = std::hypot(1.0, z);
    const double p = 1.0 / sq;
    const double p2 = p * p;
    // eta = sqrt(1+z^2) + ln(z/(1+sqrt(1+z^2))); carry eta - z, since the
    // scaled functions take out e^{-+nu z}.
    const double inv_sum = 1.0 / (sq + z);  // sqrt(1+z^2) - z
    const double eta_minus_z = z > 1.0 ? inv_sum - std::log1p((1.0 + inv_sum) / z)
                                       : inv_sum + std::log(z / (1.0 + sq));

    double su_plus = 0.0;
    double su_minus = 0.0;
    double sv_plus = 0.0;
    double sv_minus = 0.0;
    double pk_over_nuk = 1.0;  // p^k / nu^k
    for (int k = 0; k < kDebyeTerms; ++k) {
        double u = 0.0;
        double v = 0.0;
        for (int j = k; j >= 0; --j) {
            u = u * p2 + kDebyeU[k][j];
            v = v * p2 + kDebyeV[k][j];
        }
        u *= pk_over_nuk;
        v *= pk_over_nuk;
        su_plus += u;
        sv_plus += v;
        if (k % 2 == 0) {
            su_minus += u;
            sv_minus += v;
        } else {
            su_minus -= u;
            sv_minus -= v;
        }
        pk_over_nuk *= p / nu;
    }

    const double half_log_p = 0.5 * std::log(p);
    LogBessel out;
    out.log_i_scaled = nu * eta_minus_z - 0.5 * std::log(2.0 * std::numbers::pi * nu) +
                       half_log_p + std::log(su_plus);
    out.log_k_scaled = -nu * eta_minus_z + 0.5 * std::log(std::numbers::pi / (2.0 * nu)) +
                       half_log_p + std::log(su_minus);
    out.i_logderiv = sq / z * (sv_plus / su_plus);
    out.k_logderiv = -sq / z * (sv_minus / su_minus);
    return out;
}

double checked_exp(double log_value, const char* what, int n, double x) {
    constexpr double max_log = 709.782712893384;    // ln(DBL_MAX)
    constexpr double min_log = -708.3964185322641;  // ln(DBL_MIN)
    if (log_value > max_log) {
        throw std::overflow_error(std::string("scaled_modified_bessel: ") + what +
                                  " overflows at n=" + std::to_string(n) +
                                  ", x=" + std::to_string(x));
    }
    if (log_value < min_log) {
        throw std::underflow_error(std::string("scaled_modified_bessel: ") + what +
                                   " underflows at n=" + std::to_string(n) +
                                   ", x=" + std::to_string(x));
    }
    return std::exp(log_value);
}

}  // namespace

double LogBessel::log_i_prime_scaled() const { return log_i_scaled + std::log(i_logderiv); }

double LogBessel::log_abs_k_prime_scaled() const { return log_k_scaled + std::log(-k_logderiv); }

LogBessel log_modified_bessel(int n, double x, BesselRegime regime) {
    check_argument(x);
    n = std::abs(n);
    switch (regime) {
        case BesselRegime::recurrence:
            return by_recurrence(n, x);
        case BesselRegime::uniform_asymptotic:
            if (n < 1) throw std::domain_error("uniform asymptotic expansion needs order >= 1");
            return by_uniform_asymptotics(n, x);
        case BesselRegime::automatic:
            break;
    }
    return n >= kUniformOrderThreshold ? by_uniform_asymptotics(n, x) : by_recurrence(n, x);
}

ScaledBesselPair scaled_modified_bessel(int n, double x) {
    const LogBessel lb = log_modified_bessel(n, x);
    ScaledBesselPair out;
    out.order = std::abs(n);
    out.argument = x;
    out.k_scaled = checked_exp(lb.log_k_scaled, "e^x K_n", n, x);
    out.k_prime_scaled = -checked_exp(lb.log_abs_k_prime_scaled(), "e^x K_n'", n, x);
    out.i_scaled = checked_exp(lb.log_i_scaled, "e^-x I_n", n, x);
    out.i_prime_scaled = checked_exp(lb.log_i_prime_scaled(), "e^-x I_n'", n, x);
    return out;
}

LogRatios log_ratios(int n, double y, double alpha) {
    if (!(alpha > 1.0)) throw std::domain_error("log_ratio: alpha must exceed 1");
    const LogBessel inner = log_modified_bessel(n, y);
    const LogBessel outer = log_modified_bessel(n, alpha * y);
    // e^{-2y(alpha-1)} times the ratio of scaled functions
    const double exponential = -2.0 * y * (alpha - 1.0);
    LogRatios r;
    r.te = exponential + (inner.log_i_scaled - outer.log_i_scaled) +
           (outer.log_k_scaled - inner.log_k_scaled);
    r.tm = exponential + (inner.log_i_prime_scaled() - outer.log_i_prime_scaled()) +
           (outer.log_abs_k_prime_scaled() - inner.log_abs_k_prime_scaled());
    return r;
}

double log_ratio_I(int n, double y, double alpha) { return log_ratios(n, y, alpha).te; }

double log_ratio_Iprime(int n, double y, double alpha) { return log_ratios(n, y, alpha).tm; }

}  // namespace casimir::specfun
