// Test-only oracles, independent of the library's implementation paths.
#pragma once

#include <cmath>

namespace oracles {

// log Gamma by Stirling's series in long double after raising the argument
// above 20 with the recurrence. Truncation error there is ~x^{-17}, far below
// long double epsilon, so this is a genuinely independent high-precision
// reference for the Lanczos implementation.
inline long double lgamma_oracle(long double x) {
    long double shift = 0.0L;
    while (x < 20.0L) {
        shift -= std::log(x);
        x += 1.0L;
    }
    static const long double b[8] = {
        1.0L / 12.0L,    -1.0L / 360.0L,      1.0L / 1260.0L, -1.0L / 1680.0L,
        1.0L / 1188.0L,  -691.0L / 360360.0L, 1.0L / 156.0L,  -3617.0L / 122400.0L,
    };
    const long double z = 1.0L / (x * x);
    long double s = b[7];
    for (int i = 6; i >= 0; --i) s = s * z + b[i];
    static const long double half_log_two_pi =
        0.918938533204672741780329736405617639862L;
    return shift + (x - 0.5L) * std::log(x) - x + half_log_two_pi + s / x;
}

// Closed-form one-sided 1/2-stable density (Laplace transform e^{-sqrt t}).
inline double half_stable_density(double x) {
    if (x <= 0.0) return 0.0;
    static const double inv_two_sqrt_pi = 0.28209479177387814347403972578039;
    return inv_two_sqrt_pi * std::pow(x, -1.5) * std::exp(-1.0 / (4.0 * x));
}

// E1(1) = int_1^inf e^{-t}/t dt by the convergent series
// E1(x) = -gamma - ln x + sum (-1)^{k+1} x^k / (k k!).
inline double exp_integral_e1_at_1() {
    static const double euler_gamma = 0.57721566490153286060651209008240;
    double sum = 0.0;
    double term = 1.0;  // x^k / k! at k=0
    for (int k = 1; k <= 30; ++k) {
        term /= k;  // 1/k!
        sum += ((k % 2 == 1) ? 1.0 : -1.0) * term / k;
    }
    return -euler_gamma + sum;
}

} // namespace oracles
