#pragma once

// High-precision reference values for I_n, K_n and derivatives, computed with
// Boost.Math on 50-digit binary floats. Test-only.

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using Real = boost::multiprecision::cpp_bin_float_50;

struct LogValues {
    double log_i;
    double log_k;
    double log_i_prime;
    double log_abs_k_prime;
};

inline LogValues log_bessel(int n, double x) {
    const Real xr = x;
    const Real i = boost::math::cyl_bessel_i(n, xr);
    const Real k = boost::math::cyl_bessel_k(n, xr);
    const Real ip = boost::math::cyl_bessel_i_prime(n, xr);
    const Real kp = boost::math::cyl_bessel_k_prime(n, xr);
    return {static_cast<double>(log(i)), static_cast<double>(log(k)),
            static_cast<double>(log(ip)), static_cast<double>(log(-kp))};
}

inline double log_ratio_te(int n, double y, double alpha) {
    const Real yr = y;
    const Real ay = Real(alpha) * yr;
    using boost::math::cyl_bessel_i;
    using boost::math::cyl_bessel_k;
    return static_cast<double>(log(cyl_bessel_i(n, yr) * cyl_bessel_k(n, ay) /
                                   (cyl_bessel_i(n, ay) * cyl_bessel_k(n, yr))));
}

inline double log_ratio_tm(int n, double y, double alpha) {
    const Real yr = y;
    const Real ay = Real(alpha) * yr;
    using boost::math::cyl_bessel_i_prime;
    using boost::math::cyl_bessel_k_prime;
    return static_cast<double>(log(cyl_bessel_i_prime(n, yr) * cyl_bessel_k_prime(n, ay) /
                                   (cyl_bessel_i_prime(n, ay) * cyl_bessel_k_prime(n, yr))));
}

/// ln F_n(y, alpha), both factors, straight from the definition.
inline double log_f(int n, double y, double alpha) {
    const Real yr = y;
    const Real ay = Real(alpha) * yr;
    using namespace boost::math;
    const Real te = 1 - cyl_bessel_i(n, yr) * cyl_bessel_k(n, ay) /
                            (cyl_bessel_i(n, ay) * cyl_bessel_k(n, yr));
    const Real tm = 1 - cyl_bessel_i_prime(n, yr) * cyl_bessel_k_prime(n, ay) /
                            (cyl_bessel_i_prime(n, ay) * cyl_bessel_k_prime(n, yr));
    return static_cast<double>(log(te * tm));
}

}  // namespace oracle
