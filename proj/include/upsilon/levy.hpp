#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "upsilon/errors.hpp"
#include "upsilon/quadrature.hpp"

namespace upsilon {

/// Declared behavior of a radial density beyond r = 1. Membership in the
/// moment classes is decided from this metadata, never from quadrature.
struct PowerLawTail {
    double theta_inf;  // density ~ r^{-theta_inf-1}, theta_inf > 0
};
struct ExpPowerTail {
    double p;      // density ~ r^{power} exp(-c r^p), p > 0
    double power;
};
struct CompactTail {
    double r_max;  // density vanishes beyond r_max
};
using TailClass = std::variant<PowerLawTail, ExpPowerTail, CompactTail>;

/// Of two declared tails, the one that under-claims integrability. Used when
/// combining measures so membership decisions stay conservative.
inline TailClass weaker_tail(const TailClass& a, const TailClass& b) {
    if (const auto* pa = std::get_if<PowerLawTail>(&a)) {
        if (const auto* pb = std::get_if<PowerLawTail>(&b)) {
            return PowerLawTail{std::min(pa->theta_inf, pb->theta_inf)};
        }
        return a;
    }
    if (std::holds_alternative<PowerLawTail>(b)) return b;
    if (const auto* ea = std::get_if<ExpPowerTail>(&a)) {
        if (const auto* eb = std::get_if<ExpPowerTail>(&b)) {
            if (ea->p != eb->p) return ea->p < eb->p ? a : b;
            return ExpPowerTail{ea->p, std::max(ea->power, eb->power)};
        }
        return a;  // exp-power is weaker than compact support
    }
    if (std::holds_alternative<ExpPowerTail>(b)) return b;
    return CompactTail{std::max(std::get<CompactTail>(a).r_max,
                                std::get<CompactTail>(b).r_max)};
}

struct RadialAtom {
    double location;  // > 0
    double mass;      // > 0
};

struct RadialDensity {
    std::function<double(double)> eval;  // nonnegative on (0, inf)
    double origin_exponent;              // eval(r) ~ r^{-origin_exponent-1} as r -> 0
    TailClass tail;
};

struct RadialMeasure {
    std::vector<RadialAtom> atoms;
    std::optional<RadialDensity> density;

    bool empty() const { return atoms.empty() && !density.has_value(); }
};

struct SpectralComponent {
    std::vector<double> direction;  // unit vector in R^d
    RadialMeasure radial;
};

/// Lévy measure in finite spectral form: finitely many unit directions, each
/// carrying a radial measure on (0, inf). An empty component list is the zero
/// measure. Values are immutable by convention once built via make_measure.
struct LevyMeasure {
    int dimension = 1;
    std::vector<SpectralComponent> components;

    bool is_zero() const { return components.empty(); }
};

struct MomentClass {
    enum class Kind { M0, MLog, MAlpha, M2 };
    Kind kind = Kind::M0;
    double alpha = 0.0;

    static MomentClass m0() { return {Kind::M0, 0.0}; }
    static MomentClass mlog() { return {Kind::MLog, 0.0}; }
    static MomentClass malpha(double a) {
        if (!(a > 0.0 && a < 2.0)) throw ParamError("MAlpha requires alpha in (0,2)");
        return {Kind::MAlpha, a};
    }
    static MomentClass m2() { return {Kind::M2, 2.0}; }
};

namespace detail {

inline double norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline bool same_direction(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s) <= 1e-12;
}

} // namespace detail

/// Validates a measure built from an external description. Throws SpecError
/// naming the offending field.
inline LevyMeasure make_measure(const LevyMeasure& candidate) {
    if (candidate.dimension < 1) {
        throw SpecError("dimension: must be a positive integer");
    }
    for (std::size_t ci = 0; ci < candidate.components.size(); ++ci) {
        const auto& comp = candidate.components[ci];
        const std::string where = "components[" + std::to_string(ci) + "]";
        if (static_cast<int>(comp.direction.size()) != candidate.dimension) {
            throw SpecError(where + ".direction: length must equal dimension");
        }
        if (std::abs(detail::norm(comp.direction) - 1.0) > 1e-12) {
            throw SpecError(where + ".direction: must be a unit vector (|.|=1 within 1e-12)");
        }
        for (std::size_t cj = 0; cj < ci; ++cj) {
            if (detail::same_direction(comp.direction, candidate.components[cj].direction)) {
                throw SpecError(where + ".direction: duplicates components[" +
                                std::to_string(cj) + "]");
            }
        }
        if (comp.radial.empty()) {
            throw SpecError(where + ": component carries neither atoms nor a density");
        }
        for (std::size_t ai = 0; ai < comp.radial.atoms.size(); ++ai) {
            const auto& atom = comp.radial.atoms[ai];
            const std::string awhere = where + ".atoms[" + std::to_string(ai) + "]";
            if (!(atom.location > 0.0)) throw SpecError(awhere + ".r: must be > 0");
            if (!(atom.mass > 0.0)) throw SpecError(awhere + ".w: must be > 0");
            for (std::size_t aj = 0; aj < ai; ++aj) {
                if (comp.radial.atoms[aj].location == atom.location) {
                    throw SpecError(awhere + ".r: duplicate atom location");
                }
            }
        }
        if (comp.radial.density) {
            const auto& den = *comp.radial.density;
            if (!den.eval) throw SpecError(where + ".density.eval: missing evaluator");
            if (!(den.origin_exponent < 2.0)) {
                throw SpecError(where + ".density.origin_exponent: must be < 2 "
                                        "(Levy integrability at the origin)");
            }
            if (const auto* pl = std::get_if<PowerLawTail>(&den.tail)) {
                if (!(pl->theta_inf > 0.0)) {
                    throw SpecError(where + ".density.tail.theta_inf: must be > 0");
                }
            } else if (const auto* ep = std::get_if<ExpPowerTail>(&den.tail)) {
                if (!(ep->p > 0.0)) {
                    throw SpecError(where + ".density.tail.p: must be > 0");
                }
            } else if (const auto* cs = std::get_if<CompactTail>(&den.tail)) {
                if (!(cs->r_max > 0.0)) {
                    throw SpecError(where + ".density.tail.r_max: must be > 0");
                }
            }
            // Spot check the declared origin exponent.
            for (double r : {1e-6, 1e-5}) {
                const double v = den.eval(r);
                if (v < 0.0) throw SpecError(where + ".density.eval: negative value at r=" +
                                             std::to_string(r));
                const double scaled = v * std::pow(r, den.origin_exponent + 1.0);
                if (v > 0.0 && !(scaled >= 1e-6 && scaled <= 1e6)) {
                    throw SpecError(where + ".density.origin_exponent: declared exponent "
                                            "inconsistent with evaluator near 0");
                }
            }
        }
    }
    return candidate;
}

namespace detail {

// int over (0,inf) of weight(r) * density, split at 1 with endpoint hints
// assembled from the declared origin exponent and tail class.
// origin_weight_power: the small-r power of the weight (for the origin hint).
// tail_weight_power: the large-r power of the weight.
inline double density_weighted_integral(const RadialDensity& den,
                                        const std::function<double(double)>& weight,
                                        double origin_weight_power,
                                        double tail_weight_power,
                                        double from = 0.0) {
    const auto& eval = den.eval;
    auto f = [&](double r) {
        const double d = eval(r);
        if (d == 0.0) return 0.0;
        return weight(r) * d;
    };
    double total = 0.0;
    const double split = std::max(1.0, from);
    if (from < split) {
        std::vector<SingularityHint> hints;
        const double e0 = origin_weight_power - den.origin_exponent - 1.0;
        if (from == 0.0 && e0 < 0.0) {
            hints.push_back({SingularityHint::Endpoint::lower, e0});
        }
        total += integrate(f, from, split, hints).value;
    }
    if (const auto* cs = std::get_if<CompactTail>(&den.tail)) {
        if (cs->r_max > split) {
            total += integrate(f, split, cs->r_max).value;
        }
        return total;
    }
    std::vector<SingularityHint> hints;
    if (const auto* pl = std::get_if<PowerLawTail>(&den.tail)) {
        hints.push_back({SingularityHint::Endpoint::upper,
                         tail_weight_power - pl->theta_inf - 1.0});
    }
    total += integrate(f, split, std::numeric_limits<double>::infinity(), hints).value;
    return total;
}

} // namespace detail

/// int (|x|^2 ^ |x|^alpha) M(dx): atoms exactly, densities by quadrature.
/// Returns +infinity exactly when the declared tail diverges (power-law tail
/// index <= the weight power that applies beyond 1).
inline double moment_functional(const LevyMeasure& m, double alpha) {
    const double tail_power = std::min(2.0, alpha);
    const double origin_power = std::max(2.0, alpha);
    double total = 0.0;
    for (const auto& comp : m.components) {
        for (const auto& atom : comp.radial.atoms) {
            total += atom.mass * std::min(atom.location * atom.location,
                                          std::pow(atom.location, alpha));
        }
        if (!comp.radial.density) continue;
        const auto& den = *comp.radial.density;
        if (const auto* pl = std::get_if<PowerLawTail>(&den.tail)) {
            if (pl->theta_inf <= tail_power) {
                return std::numeric_limits<double>::infinity();
            }
        }
        auto weight = [alpha](double r) {
            return std::min(r * r, std::pow(r, alpha));
        };
        total += detail::density_weighted_integral(den, weight, origin_power, tail_power);
    }
    return total;
}

/// int_{|x|>1} log|x| M(dx). Finite for every declarable tail (even power
/// laws have finite log moments), so the numeric value is always returned.
inline double log_moment(const LevyMeasure& m) {
    double total = 0.0;
    for (const auto& comp : m.components) {
        for (const auto& atom : comp.radial.atoms) {
            if (atom.location > 1.0) total += atom.mass * std::log(atom.location);
        }
        if (!comp.radial.density) continue;
        const auto& den = *comp.radial.density;
        auto weight = [](double r) { return r > 1.0 ? std::log(r) : 0.0; };
        // Tail weight grows slower than any power; the declared power-law
        // hint still flattens the dominant factor.
        total += detail::density_weighted_integral(den, weight, 0.0, 0.05, 1.0);
    }
    return total;
}

/// Symbolic membership decision from declared metadata (Theorem-1 boundary
/// cases must be exact, so no quadrature magnitudes are consulted). Atoms are
/// finite sums and never affect membership.
inline bool class_membership(const LevyMeasure& m, const MomentClass& c) {
    for (const auto& comp : m.components) {
        if (!comp.radial.density) continue;
        const auto& den = *comp.radial.density;
        if (!(den.origin_exponent < 2.0)) return false;
        const auto* pl = std::get_if<PowerLawTail>(&den.tail);
        switch (c.kind) {
            case MomentClass::Kind::M0:
            case MomentClass::Kind::MLog:
                break;  // theta0 < 2 suffices; no declarable tail is borderline
            case MomentClass::Kind::MAlpha:
                if (pl && !(pl->theta_inf > c.alpha)) return false;
                break;
            case MomentClass::Kind::M2:
                if (pl && !(pl->theta_inf > 2.0)) return false;
                break;
        }
    }
    return true;
}

/// Image of M under x -> c x.
inline LevyMeasure scale_measure(const LevyMeasure& m, double c) {
    if (!(c > 0.0)) throw ParamError("scale_measure: scale must be > 0");
    LevyMeasure out;
    out.dimension = m.dimension;
    for (const auto& comp : m.components) {
        SpectralComponent sc;
        sc.direction = comp.direction;
        for (const auto& atom : comp.radial.atoms) {
            sc.radial.atoms.push_back({atom.location * c, atom.mass});
        }
        if (comp.radial.density) {
            const auto& den = *comp.radial.density;
            RadialDensity nd;
            auto eval = den.eval;
            nd.eval = [eval, c](double r) { return eval(r / c) / c; };
            nd.origin_exponent = den.origin_exponent;
            nd.tail = den.tail;
            if (auto* cs = std::get_if<CompactTail>(&nd.tail)) cs->r_max *= c;
            sc.radial.density = std::move(nd);
        }
        out.components.push_back(std::move(sc));
    }
    return out;
}

/// Componentwise union; components sharing a direction are merged.
inline LevyMeasure add_measures(const LevyMeasure& m1, const LevyMeasure& m2) {
    if (m1.dimension != m2.dimension) {
        throw DimensionMismatch("add_measures: dimensions " + std::to_string(m1.dimension) +
                                " and " + std::to_string(m2.dimension));
    }
    LevyMeasure out = m1;
    for (const auto& comp : m2.components) {
        SpectralComponent* match = nullptr;
        for (auto& existing : out.components) {
            if (detail::same_direction(existing.direction, comp.direction)) {
                match = &existing;
                break;
            }
        }
        if (!match) {
            out.components.push_back(comp);
            continue;
        }
        for (const auto& atom : comp.radial.atoms) {
            bool merged = false;
            for (auto& mine : match->radial.atoms) {
                if (mine.location == atom.location) {
                    mine.mass += atom.mass;
                    merged = true;
                    break;
                }
            }
            if (!merged) match->radial.atoms.push_back(atom);
        }
        if (comp.radial.density) {
            if (!match->radial.density) {
                match->radial.density = comp.radial.density;
            } else {
                const auto& a = *match->radial.density;
                const auto& b = *comp.radial.density;
                RadialDensity sum;
                auto ea = a.eval;
                auto eb = b.eval;
                sum.eval = [ea, eb](double r) { return ea(r) + eb(r); };
                // The heavier origin singularity and the heavier tail dominate.
                sum.origin_exponent = std::max(a.origin_exponent, b.origin_exponent);
                sum.tail = weaker_tail(a.tail, b.tail);
                match->radial.density = std::move(sum);
            }
        }
    }
    return out;
}

/// Radial survival mass of one component beyond y: atoms exactly, density by
/// quadrature with tail-aware hints.
inline double radial_survival(const RadialMeasure& radial, double y) {
    double total = 0.0;
    for (const auto& atom : radial.atoms) {
        if (atom.location > y) total += atom.mass;
    }
    if (radial.density) {
        const auto& den = *radial.density;
        auto weight = [](double) { return 1.0; };
        total += detail::density_weighted_integral(den, weight, 0.0, 0.0,
                                                   std::max(y, 0.0));
    }
    return total;
}

} // namespace upsilon
