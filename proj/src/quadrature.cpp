#include "casimir/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace casimir::quad {

namespace {

// 21-point Kronrod extension of the 10-point Gauss rule on [-1, 1]
// (QUADPACK qk21 constants). Odd indices of kXgk are the Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Segment {
    double lo;
    double hi;
    double value;
    double error;
};

Segment gk21(const Integrand& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    std::array<double, 10> f1{};
    std::array<double, 10> f2{};

    const double fc = f(center);
    double res_gauss = 0.0;
    double res_kronrod = kWgk[10] * fc;
    double res_abs = std::abs(res_kronrod);
    for (int j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        const double sum = f1[j] + f2[j];
        res_kronrod += kWgk[j] * sum;
        res_abs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) res_gauss += kWg[j / 2] * sum;
    }
    const double mean = 0.5 * res_kronrod;
    double res_asc = kWgk[10] * std::abs(fc - mean);
    for (int j = 0; j < 10; ++j) {
        res_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }

    const double scale = std::abs(half);
    res_asc *= scale;
    res_abs *= scale;
    double error = std::abs((res_kronrod - res_gauss) * half);
    if (res_asc != 0.0 && error != 0.0) {
        error = res_asc * std::min(1.0, std::pow(200.0 * error / res_asc, 1.5));
    }
    if (res_abs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
        error = std::max(50.0 * kEps * res_abs, error);
    }
    return {lo, hi, res_kronrod * half, error};
}

bool splittable(const Segment& s) {
    const double mid = 0.5 * (s.lo + s.hi);
    return mid > s.lo && mid < s.hi &&
           (s.hi - s.lo) > 100.0 * kEps * std::max(std::abs(s.lo), std::abs(s.hi));
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("QuadratureSpec: rel_tol must be positive");
    if (!(abs_tol > 0.0)) throw std::invalid_argument("QuadratureSpec: abs_tol must be positive");
    if (max_subdivisions < 1) {
        throw std::invalid_argument("QuadratureSpec: max_subdivisions must be at least 1");
    }
    if (!(tail_cut > 0.0) || !std::isfinite(tail_cut)) {
        throw std::invalid_argument("QuadratureSpec: tail_cut must be positive and finite");
    }
}

QuadratureResult integrate_finite(const Integrand& f, double lo, double hi,
                                  const QuadratureSpec& spec) {
    spec.validate();
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw std::invalid_argument("integrate_finite: need finite lo < hi");
    }

    std::vector<Segment> segments{gk21(f, lo, hi)};
    long evaluations = 21;

    auto totals = [&segments] {
        double value = 0.0;
        double error = 0.0;
        for (const Segment& s : segments) {
            value += s.value;
            error += s.error;
        }
        return std::pair{value, error};
    };

    auto [value, error] = totals();
    bool converged = error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value));

    for (int split = 1; !converged && split < spec.max_subdivisions; ++split) {
        // Worst splittable segment; first one wins ties.
        std::size_t worst = segments.size();
        for (std::size_t i = 0; i < segments.size(); ++i) {
            if (!splittable(segments[i])) continue;
            if (worst == segments.size() || segments[i].error > segments[worst].error) worst = i;
        }
        if (worst == segments.size()) break;

        const Segment parent = segments[worst];
        const double mid = 0.5 * (parent.lo + parent.hi);
        segments[worst] = gk21(f, parent.lo, mid);
        segments.insert(segments.begin() + static_cast<std::ptrdiff_t>(worst) + 1,
                        gk21(f, mid, parent.hi));
        evaluations += 42;

        std::tie(value, error) = totals();
        converged = error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
    }

    return {value, error, evaluations, converged};
}

QuadratureResult integrate_semi_infinite(const Integrand& f, const QuadratureSpec& spec) {
    spec.validate();

    QuadratureResult out;
    out.converged = false;

    double lo = 0.0;
    double hi = spec.tail_cut;
    for (int panel = 0; panel < spec.max_subdivisions; ++panel) {
        const QuadratureResult r = integrate_finite(f, lo, hi, spec);
        out.value += r.value;
        out.error_estimate += r.error_estimate;
        out.evaluations += r.evaluations;

        if (panel > 0 && std::abs(r.value) < spec.abs_tol) {
            // Fit |f| ~ exp(-rate x) through the panel end points and bound
            // the rest of the tail by twice the resulting integral.
            const double f_lo = std::abs(f(lo));
            const double f_hi = std::abs(f(hi));
            out.evaluations += 2;
            double tail = std::numeric_limits<double>::infinity();
            if (f_hi == 0.0) {
                tail = 0.0;
            } else if (f_hi < f_lo) {
                const double rate = std::log(f_lo / f_hi) / (hi - lo);
                tail = 2.0 * f_hi / rate;
            }
            if (tail < spec.abs_tol) {
                out.error_estimate += tail;
                out.converged = out.error_estimate <=
                                std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value)) +
                                    spec.abs_tol;
                return out;
            }
        }
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi)) break;
    }
    return out;
}

}  // namespace casimir::quad
