#pragma once

// Modified Bessel functions I_n, K_n of integer order and real positive
// argument, with first derivatives, in exponentially scaled and logarithmic
// form. The logarithmic form never overflows and is what the Casimir
// integrands use; the scaled form is the conventional public interface.

namespace casimir::specfun {

/// e^{-x} I_n(x), e^{x} K_n(x) and their x-derivatives scaled the same way.
struct ScaledBesselPair {
    int order = 0;
    double argument = 0.0;
    double i_scaled = 0.0;        ///< e^{-x} I_n(x)
    double k_scaled = 0.0;        ///< e^{x} K_n(x)
    double i_prime_scaled = 0.0;  ///< e^{-x} I_n'(x)
    double k_prime_scaled = 0.0;  ///< e^{x} K_n'(x), negative
};

/// Logarithms of e^{-x} I_n(x) and e^{x} K_n(x) plus the logarithmic
/// derivatives I_n'/I_n (> 0) and K_n'/K_n (< 0). Finite for every n >= 0,
/// x > 0. Keeping the e^{+-x} factors out avoids cancellation between the
/// two logarithms at large x.
struct LogBessel {
    double log_i_scaled = 0.0;
    double log_k_scaled = 0.0;
    double i_logderiv = 0.0;
    double k_logderiv = 0.0;

    [[nodiscard]] double log_i_prime_scaled() const;
    [[nodiscard]] double log_abs_k_prime_scaled() const;
};

enum class BesselRegime {
    automatic,          ///< pick by order and argument
    recurrence,         ///< K_0, K_1 + forward recurrence, CF1 ratio for I
    uniform_asymptotic  ///< Debye expansion in 1/n, requires n >= 1
};

/// Orders at or above this threshold use the uniform asymptotic expansion
/// in automatic mode.
inline constexpr int kUniformOrderThreshold = 40;

/// Throws std::domain_error for x <= 0 or non-finite x. Negative orders are
/// folded onto |n|.
[[nodiscard]] LogBessel log_modified_bessel(int n, double x,
                                            BesselRegime regime = BesselRegime::automatic);

/// Throws std::domain_error for x <= 0 and std::overflow_error when a scaled
/// value is outside the double range (large n at small x).
[[nodiscard]] ScaledBesselPair scaled_modified_bessel(int n, double x);

/// ln[I_n(y) K_n(alpha y) / (I_n(alpha y) K_n(y))], strictly negative for
/// y > 0 and alpha > 1.
[[nodiscard]] double log_ratio_I(int n, double y, double alpha);

/// ln[I_n'(y) K_n'(alpha y) / (I_n'(alpha y) K_n'(y))], strictly negative
/// for y > 0 and alpha > 1.
[[nodiscard]] double log_ratio_Iprime(int n, double y, double alpha);

/// Both ratios from one pair of Bessel evaluations.
struct LogRatios {
    double te = 0.0;  ///< log_ratio_I
    double tm = 0.0;  ///< log_ratio_Iprime
};
[[nodiscard]] LogRatios log_ratios(int n, double y, double alpha);

}  // namespace casimir::specfun
