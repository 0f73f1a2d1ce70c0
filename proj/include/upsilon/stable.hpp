#pragma once

#include <cmath>
#include <vector>

#include "upsilon/errors.hpp"
#include "upsilon/quadrature.hpp"
#include "upsilon/special_functions.hpp"

namespace upsilon {

/// Density f_r of the fully right-skewed r-stable law on (0, infinity),
/// r in (0, 1), normalized so that int_0^inf e^{-tx} f_r(x) dx = e^{-t^r}.
///
/// Evaluation uses two routes: the Zolotarev angle integral
///   f_r(x) = r/((1-r) pi) * x^{-1/(1-r)} * int_0^pi A(u) exp(-A(u) x^{-r/(1-r)}) du,
///   A(u) = sin(ru)^{r/(1-r)} sin((1-r)u) / sin(u)^{1/(1-r)},
/// for moderate x, and the convergent large-x series
///   f_r(x) = 1/pi * sum_k (-1)^{k+1} Gamma(kr+1)/k! sin(k pi r) x^{-kr-1}
/// beyond the switch point. Construction precomputes the series coefficients,
/// so reuse one instance when evaluating many points at the same index.
class StableDensity {
public:
    explicit StableDensity(double r) : r_(r) {
        if (!(r > 0.0 && r < 1.0)) {
            throw IndexError("stable index r must lie in (0,1), got " + std::to_string(r));
        }
        sf_ = r_ / (1.0 - r_);
        a0_ = (1.0 - r_) * std::pow(r_, sf_);
        log_a0_ = std::log(a0_);
        series_coeff_.reserve(kSeriesTerms);
        for (int k = 1; k <= kSeriesTerms; ++k) {
            const double lg = log_gamma(k * r_ + 1.0) - log_gamma(k + 1.0);
            const double s = std::sin(kPi * std::fmod(k * r_, 2.0));
            const double sign = (k % 2 == 1) ? 1.0 : -1.0;
            series_coeff_.push_back(sign * std::exp(lg) * s / kPi);
        }
    }

    double index() const { return r_; }

    double operator()(double x) const { return density(x); }

    double density(double x) const {
        if (std::isnan(x)) return x;
        if (x <= 0.0) return 0.0;
        if (std::isinf(x)) return 0.0;
        if (x >= kSeriesSwitch) {
            double value = 0.0;
            if (density_series(x, &value)) return value;
        }
        return density_integral(x);
    }

    /// Large-x series route. Fails (returns false) when cancellation would
    /// eat the requested accuracy; callers fall back to the integral.
    bool density_series(double x, double* out) const {
        const double w = std::pow(x, -r_);
        double sum = 0.0;
        double term = 0.0;
        double wk = 1.0;
        double max_abs = 0.0;
        int small_run = 0;
        for (int k = 1; k <= kSeriesTerms; ++k) {
            wk *= w;
            term = series_coeff_[k - 1] * wk;
            sum += term;
            max_abs = std::max(max_abs, std::abs(term));
            if (std::abs(term) <= 1e-17 * std::abs(sum)) {
                if (++small_run >= 3) break;
            } else {
                small_run = 0;
            }
        }
        if (small_run < 3) return false;
        if (max_abs > 1e10 * std::abs(sum)) return false;  // cancellation
        *out = std::max(sum / x, 0.0);
        return true;
    }

    double density_series(double x) const {
        double v = 0.0;
        if (!density_series(x, &v)) {
            throw NonConvergence("stable density series did not converge at x=" +
                                     std::to_string(x),
                                 v, std::numeric_limits<double>::infinity());
        }
        return v;
    }

    /// Zolotarev integral route, valid for any x > 0. The peak factor
    /// exp(-A(0) xi) is pulled out so small-x evaluations stay accurate down
    /// to the underflow threshold of the result itself.
    double density_integral(double x) const {
        if (x <= 0.0) return 0.0;
        const double log_x = std::log(x);
        const double log_z0 = log_a0_ - sf_ * log_x;
        if (log_z0 > std::log(1400.0)) return 0.0;  // result underflows
        const double log_xi = -sf_ * log_x;
        const double xi = std::exp(log_xi);
        if (xi < 1e-280) {
            // Extreme index close to 1: the angle integral is not representable
            // in doubles, but the series converges there.
            return density_series(x);
        }
        const double z0 = a0_ * xi;

        // Split (0, pi) where A(u)*xi crosses a geometric ladder of levels;
        // A is increasing, so each breakpoint is a monotone bisection.
        std::vector<double> breaks;
        breaks.push_back(0.0);
        const double base = std::max(z0, 1.0);
        std::vector<double> levels;
        if (z0 < 1.0) levels.push_back(1.0);
        for (double m = 4.0; m <= 256.0; m *= 4.0) {
            const double lvl = base * m;
            if (lvl > z0 + 745.0) break;
            levels.push_back(lvl);
        }
        levels.push_back(z0 + 745.0);
        double lo = 0.0;
        for (double lvl : levels) {
            const double u = find_angle(lvl / xi, lo);
            if (u >= kPi) break;
            breaks.push_back(u);
            lo = u;
        }

        const double log_level_cap = std::log(z0 + 745.0) + 1.0;
        auto integrand = [&](double u) -> double {
            if (u <= 0.0) return a0_;
            if (u >= kPi) return 0.0;
            const double la = log_zolotarev(u);
            if (la + log_xi > log_level_cap) return 0.0;  // beyond the ladder
            const double a = std::exp(la);
            const double t = (a - a0_) * xi;
            if (!(t <= 745.0)) return 0.0;
            return a * std::exp(-t);
        };

        // Scale-aware tolerance: peak of the factored integrand.
        const double peak =
            (z0 >= 1.0) ? a0_ : std::max(a0_, std::exp(z0 - 1.0) / xi);
        const double tol = std::max(1e-12 * peak * kPi, 1e-300);

        double total = 0.0;
        const double piece_tol = tol / static_cast<double>(breaks.size());
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
            total += integrate(integrand, breaks[i], breaks[i + 1], {}, piece_tol).value;
        }
        // Remainder beyond the last break is at most e^{-745} of the peak.
        const double expo = -z0 - log_x / (1.0 - r_);
        if (expo < -745.0) return 0.0;
        return std::max((sf_ / kPi) * total * std::exp(expo), 0.0);
    }

private:
    static constexpr double kPi = 3.14159265358979323846264338327950288;
    static constexpr int kSeriesTerms = 120;
    static constexpr double kSeriesSwitch = 3.0;

    // log A(u) on (0, pi); the u-exponents cancel analytically at 0.
    double log_zolotarev(double u) const {
        return sf_ * std::log(std::sin(r_ * u)) + std::log(std::sin((1.0 - r_) * u)) -
               std::log(std::sin(u)) / (1.0 - r_);
    }

    // Smallest u in (lo, pi) with A(u) >= target (A increasing).
    double find_angle(double target, double lo) const {
        const double log_target = std::log(target);
        if (log_zolotarev(kPi * (1.0 - 1e-15)) < log_target) return kPi;
        double a = std::max(lo, 1e-300);
        double b = kPi;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            if (log_zolotarev(mid) < log_target) {
                a = mid;
            } else {
                b = mid;
            }
        }
        return b;
    }

    double r_;
    double sf_;      // r/(1-r)
    double a0_;      // lim_{u->0} A(u) = (1-r) r^{r/(1-r)}
    double log_a0_;
    std::vector<double> series_coeff_;
};

/// f_r(x); zero for x <= 0.
inline double stable_density(double r, double x) {
    return StableDensity(r).density(x);
}

/// Numeric Laplace transform int_0^inf e^{-tx} f_r(x) dx of a prebuilt density.
inline double stable_laplace(const StableDensity& f, double t) {
    if (!(t >= 0.0)) throw DomainError("stable_laplace: t must be >= 0");
    auto integrand = [&](double x) {
        const double fx = f.density(x);
        if (fx == 0.0) return 0.0;
        return std::exp(-t * x) * fx;
    };
    std::vector<SingularityHint> hints;
    if (t == 0.0) {
        // Pure power tail x^{-r-1} when nothing tempers it.
        hints.push_back({SingularityHint::Endpoint::upper, -f.index() - 1.0});
    }
    return integrate(integrand, 0.0, std::numeric_limits<double>::infinity(), hints).value;
}

inline double stable_laplace(double r, double t) {
    StableDensity f(r);
    return stable_laplace(f, t);
}

/// The constant K with f_r(x) ~ K x^{-r-1} as x -> infinity, extracted by
/// second-order Richardson extrapolation of f_r(x) x^{r+1} on a geometric
/// grid (the expansion proceeds in powers of x^{-r}).
inline double stable_tail_constant(double r) {
    StableDensity f(r);
    const double x1 = 1e2, x2 = 1e3, x3 = 1e4;
    const double h1 = f.density(x1) * std::pow(x1, r + 1.0);
    const double h2 = f.density(x2) * std::pow(x2, r + 1.0);
    const double h3 = f.density(x3) * std::pow(x3, r + 1.0);
    const double rho = std::pow(10.0, -r);
    const double a1 = (h2 - rho * h1) / (1.0 - rho);
    const double a2 = (h3 - rho * h2) / (1.0 - rho);
    return (a2 - rho * rho * a1) / (1.0 - rho * rho);
}

/// int_0^inf s^beta f_r(s) ds, finite exactly when beta < r (Lemma-style
/// boundary: the power tail kills all moments of order >= r).
inline double stable_fractional_moment(double r, double beta) {
    StableDensity f(r);
    if (!(beta < r)) {
        throw MomentDiverges("fractional moment of order " + std::to_string(beta) +
                             " diverges for stable index " + std::to_string(r));
    }
    auto integrand = [&](double s) {
        const double fs = f.density(s);
        if (fs == 0.0) return 0.0;
        return std::pow(s, beta) * fs;
    };
    std::vector<SingularityHint> hints{
        {SingularityHint::Endpoint::upper, beta - r - 1.0}};
    return integrate(integrand, 0.0, std::numeric_limits<double>::infinity(), hints).value;
}

/// |f_{rp}(u) - int_0^inf f_r(u y^{-1/r}) y^{-1/r} f_p(y) dy|: the scaling
/// composition of one-sided stable densities, evaluated as a residual.
inline double scaling_composition_residual(double r, double p, double u) {
    const StableDensity fr(r);
    const StableDensity fp(p);
    const StableDensity frp(r * p);
    if (!(u > 0.0)) throw DomainError("scaling composition: u must be > 0");

    const double lhs = frp.density(u);
    const double inv_r = 1.0 / r;
    auto integrand = [&](double y) {
        const double fy = fp.density(y);
        if (fy == 0.0) return 0.0;
        const double scale = std::pow(y, -inv_r);
        const double fa = fr.density(u * scale);
        if (fa == 0.0) return 0.0;
        return fa * scale * fy;
    };
    const double rhs =
        integrate(integrand, 0.0, std::numeric_limits<double>::infinity()).value;
    return std::abs(lhs - rhs);
}

} // namespace upsilon
